# Copyright 2026 The lgtsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the lgtsim command line: exit codes, schemas, determinism."""

import csv
import json
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema
from referencing import Registry, Resource

BINARY = pathlib.Path(sys.argv.pop(1))
TOOLS = pathlib.Path(sys.argv.pop(1))
SCHEMAS = TOOLS / "schemas"
CONFIGS = TOOLS / "configs"


def registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = registry()


def validate(doc, schema_name):
    schema = json.loads((SCHEMAS / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def run(*args):
    return subprocess.run([str(BINARY), *map(str, args)], capture_output=True, text=True, timeout=900)


def write_config(directory, text):
    path = pathlib.Path(directory) / "run.toml"
    path.write_text(text)
    return path


class Simulate(unittest.TestCase):
    def test_quench_series_is_gauge_invariant_and_matches_schema(self):
        with tempfile.TemporaryDirectory() as out:
            r = run("simulate", "--config", CONFIGS / "plaquette_quench.toml", "--out", out)
            self.assertEqual(r.returncode, 0, r.stderr)
            doc = json.loads((pathlib.Path(out) / "series.json").read_text())
            validate(doc, "series.schema.json")
            self.assertEqual(len(doc["rows"]), 20)
            with open(pathlib.Path(out) / "series.csv") as f:
                rows = list(csv.DictReader(f))
            self.assertEqual(len(rows), 20)
            self.assertTrue(all(float(row["gauge_violation"]) <= 1e-10 for row in rows))
            self.assertTrue(all(float(row["ancilla_fidelity"]) >= 1 - 1e-12 for row in rows))

    def test_vacuum_without_hopping_or_plaquettes_is_constant(self):
        with tempfile.TemporaryDirectory() as out:
            cfg = write_config(out, "[couplings]\nlambda_b = 0.0\nlambda_gm = 0.0\n[run]\nt = 1.0\nsteps = 5\n")
            r = run("simulate", "--config", cfg)
            self.assertEqual(r.returncode, 0, r.stderr)
            rows = list(csv.DictReader(r.stdout.splitlines()))
            columns = [k for k in rows[0] if k != "time"]
            for k in columns:
                values = [float(row[k]) for row in rows]
                self.assertLess(max(values) - min(values), 1e-12, k)

    def test_seeded_rerun_is_byte_identical(self):
        with tempfile.TemporaryDirectory() as a, tempfile.TemporaryDirectory() as b:
            for out in (a, b):
                r = run("simulate", "--config", CONFIGS / "d3_chain.toml", "--out", out, "--seed", 5)
                self.assertEqual(r.returncode, 0, r.stderr)
            for name in ("series.csv", "series.json"):
                self.assertEqual((pathlib.Path(a) / name).read_bytes(), (pathlib.Path(b) / name).read_bytes(), name)
            validate(json.loads((pathlib.Path(a) / "series.json").read_text()), "series.schema.json")
            with open(pathlib.Path(a) / "series.csv") as f:
                header = next(csv.reader(f))
            self.assertEqual(header, ["time", "density_0", "density_1", "density_2", "gauge_violation", "ancilla_fidelity"])

    def test_oversize_instance_is_refused_with_estimate(self):
        r = run("simulate", "--config", CONFIGS / "cube_bounds.toml")
        self.assertEqual(r.returncode, 2)
        diag = json.loads(r.stderr.strip().splitlines()[-1])
        self.assertEqual(diag["error"]["kind"], "resource_limit")
        self.assertGreater(diag["error"]["estimated_bytes"], diag["error"]["max_bytes"])

    def test_invalid_config_gives_diagnostic(self):
        with tempfile.TemporaryDirectory() as out:
            cfg = write_config(out, "[group]\nkind = \"dihedral\"\nn = 4\n")
            r = run("simulate", "--config", cfg)
            self.assertEqual(r.returncode, 2)
            self.assertEqual(json.loads(r.stderr.strip().splitlines()[-1])["error"]["status"], "unsupported")
            cfg = write_config(out, "[run]\ncolour = 3\n")
            r = run("simulate", "--config", cfg)
            self.assertEqual(r.returncode, 2)
            self.assertIn("unknown key", json.loads(r.stderr.strip().splitlines()[-1])["error"]["message"])


class Bounds(unittest.TestCase):
    def test_cube_totals(self):
        r = run("bounds", "--config", CONFIGS / "cube_bounds.toml")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validate(doc, "bounds.schema.json")
        self.assertAlmostEqual(doc["first_order"], 24.3, places=10)
        self.assertAlmostEqual(doc["printed"]["first_order"], 24.3, places=10)
        d3 = run("bounds", "--config", CONFIGS / "cube_bounds.toml", "--steps", 20)
        self.assertAlmostEqual(json.loads(d3.stdout)["first_order"], 24.3 / 2, places=10)

    def test_dihedral_prefactor_doubles(self):
        with tempfile.TemporaryDirectory() as out:
            cfg = write_config(out, "[group]\nkind = \"dihedral\"\nn = 3\n[lattice]\nd = 3\nlength = 2\n[run]\nt = 1.0\nsteps = 10\n")
            r = run("bounds", "--config", cfg)
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertAlmostEqual(json.loads(r.stdout)["first_order"], 48.6, places=10)

    def test_measured_commutators_stay_below_bounds(self):
        r = run("bounds", "--measure")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validate(doc, "bounds.schema.json")
        for row in doc["commutators"] + doc["nested"]:
            self.assertLessEqual(row["measured"], row["bound"] * (1 + 1e-9) + 1e-12, row["name"])


class Verify(unittest.TestCase):
    def test_fresh_build_passes_and_exports_pulses(self):
        with tempfile.TemporaryDirectory() as out:
            r = run("verify", "all", "--out", out)
            self.assertEqual(r.returncode, 0, r.stdout + r.stderr)
            doc = json.loads((pathlib.Path(out) / "verify.json").read_text())
            validate(doc, "verify.schema.json")
            self.assertTrue(doc["passed"])
            self.assertEqual({c["suite"] for c in doc["checks"]}, {"group", "gauge", "stator", "trotter", "atomic"})
            slopes = [c for c in doc["checks"] if "slope" in c["name"]]
            self.assertEqual(len(slopes), 2)
            for target in ("plaquette", "gauge-matter", "electric"):
                pulses = json.loads((pathlib.Path(out) / f"pulses_{target}.json").read_text())
                validate(pulses, "pulses.schema.json")
                self.assertLessEqual(pulses["deviation"], 1e-10)

    def test_theta_sign_fault_breaks_the_stator_suite(self):
        r = run("verify", "stator", "--fault", "theta-sign")
        self.assertEqual(r.returncode, 1)
        self.assertIn("FAIL", r.stdout)

    def test_unknown_suite_is_a_usage_error(self):
        self.assertEqual(run("verify", "nosuch").returncode, 2)


class Compare(unittest.TestCase):
    def test_sweep_within_bounds_with_slopes(self):
        with tempfile.TemporaryDirectory() as out:
            r = run("compare", "--config", CONFIGS / "scaling.toml", "--out", out)
            self.assertEqual(r.returncode, 0, r.stderr)
            doc = json.loads((pathlib.Path(out) / "compare.json").read_text())
            validate(doc, "compare.schema.json")
            self.assertTrue(all(row["epsilon"] <= row["bound"] for row in doc["rows"]))
            self.assertAlmostEqual(doc["slopes"]["1"], -1.0, delta=0.15)
            self.assertAlmostEqual(doc["slopes"]["2"], -2.0, delta=0.15)

    def test_empty_step_list_is_a_usage_error(self):
        r = run("compare")
        self.assertEqual(r.returncode, 2)
        self.assertEqual(json.loads(r.stderr.strip().splitlines()[-1])["error"]["kind"], "usage")

    def test_bad_flag_is_a_usage_error(self):
        self.assertEqual(run("compare", "--steps-list", "2,x").returncode, 2)


if __name__ == "__main__":
    unittest.main(verbosity=2)
