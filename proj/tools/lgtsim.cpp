// Copyright 2026 The lgtsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Talks to the simulator only through the C API in lgtsim/lgtsim.h.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <tomlplusplus/toml.hpp>

#include "lgtsim/lgtsim.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

constexpr double kViolationTolerance = 1e-10;
constexpr double kFidelityTolerance = 1e-12;

/// Failure carrying the exit code and a machine-readable diagnostic.
struct Failure {
    int exit_code = kExitUsage;
    json diagnostic;
};

[[noreturn]] void usage_error(const std::string &kind, const std::string &message, json extra = json::object()) {
    extra["kind"] = kind;
    extra["message"] = message;
    throw Failure{kExitUsage, {{"error", extra}}};
}

void check(lgt_status status, const std::string &context) {
    if (status == LGT_OK) {
        return;
    }
    json e{{"kind", "library"}, {"status", lgt_status_name(status)}, {"code", (int)status}, {"context", context},
           {"message", lgt_last_error()}};
    throw Failure{status == LGT_ERR_ASSERTION ? kExitAssertion : kExitUsage, {{"error", e}}};
}

/// Owning wrapper for strings handed out by the library.
std::string take(char *s) {
    std::string out = s ? s : "";
    lgt_string_free(s);
    return out;
}

struct ModelDeleter {
    void operator()(lgt_model *m) const {
        lgt_model_destroy(m);
    }
};
struct StateDeleter {
    void operator()(lgt_state *s) const {
        lgt_state_destroy(s);
    }
};
struct TraceDeleter {
    void operator()(lgt_trace *t) const {
        lgt_trace_destroy(t);
    }
};

// Shared flags.
struct Common {
    std::string config;
    std::string out;
    uint64_t seed = 7;
    int threads = 0;
    uint64_t max_mem = uint64_t(8) << 30;
};

void add_common(CLI::App *app, Common &c) {
    app->add_option("--config", c.config, "TOML run configuration")->check(CLI::ExistingFile);
    app->add_option("--out", c.out, "output directory (stdout when absent)");
    app->add_option("--seed", c.seed, "seed for random states and probes");
    app->add_option("--threads", c.threads, "worker threads (0 keeps the library default)")->check(CLI::NonNegativeNumber);
    app->add_option("--max-mem", c.max_mem, "memory cap in bytes (suffixes such as GiB accepted)")
        ->transform(CLI::AsSizeValue(false));
}

// --- configuration -------------------------------------------------------------------------------------------------

struct RunConfig {
    lgt_model_config model{};
    std::string state_kind = "vacuum";
    std::vector<int> occupied;
    std::vector<int> links;
    bool gauge_invariant = true;
    double t = 1.0;
    int steps = 10;
    int order = 1;
    std::string variant = "direct";
    std::string probe = "operator";
    std::vector<int> steps_list;
    std::vector<std::string> observables{"plaquette", "densities", "gauge_violation", "ancilla_fidelity"};
    std::optional<uint64_t> seed;
};

const toml::table *section(const toml::table &root, const char *name) {
    const toml::node *n = root.get(name);
    if (!n) {
        return nullptr;
    }
    if (!n->is_table()) {
        usage_error("invalid_config", std::string("[") + name + "] must be a table");
    }
    return n->as_table();
}

void reject_unknown(const toml::table &t, const std::string &where, std::initializer_list<const char *> allowed) {
    for (const auto &[key, _] : t) {
        bool ok = false;
        for (const char *a : allowed) {
            ok = ok || key.str() == a;
        }
        if (!ok) {
            usage_error("invalid_config", "unknown key '" + std::string(key.str()) + "' in " + where);
        }
    }
}

template <class T>
void read(const toml::table *t, const char *key, T &value, const std::string &where) {
    if (!t) {
        return;
    }
    const toml::node *n = t->get(key);
    if (!n) {
        return;
    }
    std::optional<T> v;
    if constexpr (std::is_same_v<T, double>) {
        v = n->value<double>();
    } else if constexpr (std::is_same_v<T, bool>) {
        if (n->is_boolean()) {
            v = n->value<bool>();
        }
    } else if constexpr (std::is_integral_v<T>) {
        if (n->is_integer()) {
            v = n->value<T>();
        }
    } else {
        v = n->value<T>();
    }
    if (!v) {
        usage_error("invalid_config", "wrong type for '" + std::string(key) + "' in " + where);
    }
    value = *v;
}

template <class T>
void read_array(const toml::table *t, const char *key, std::vector<T> &out, const std::string &where) {
    if (!t || !t->get(key)) {
        return;
    }
    const toml::array *a = t->get(key)->as_array();
    if (!a) {
        usage_error("invalid_config", "'" + std::string(key) + "' in " + where + " must be an array");
    }
    out.clear();
    for (const auto &n : *a) {
        std::optional<T> v;
        if constexpr (std::is_integral_v<T>) {
            if (n.is_integer()) {
                v = n.value<T>();
            }
        } else {
            v = n.value<T>();
        }
        if (!v) {
            usage_error("invalid_config", "wrong element type in '" + std::string(key) + "' in " + where);
        }
        out.push_back(*v);
    }
}

RunConfig load_config(const std::string &path) {
    RunConfig rc;
    lgt_model_config_default(&rc.model);
    if (path.empty()) {
        return rc;
    }
    toml::table root;
    try {
        root = toml::parse_file(path);
    } catch (const toml::parse_error &e) {
        std::ostringstream where;
        where << e.source().begin;
        usage_error("invalid_config", std::string(e.description()), {{"path", path}, {"position", where.str()}});
    }
    reject_unknown(root, "the configuration", {"group", "lattice", "couplings", "electric", "model", "state", "run"});

    const toml::table *group = section(root, "group");
    if (group) {
        reject_unknown(*group, "[group]", {"kind", "n"});
        std::string kind = "cyclic";
        read(group, "kind", kind, "[group]");
        if (kind == "cyclic" || kind == "Z") {
            rc.model.group_kind = LGT_GROUP_CYCLIC;
        } else if (kind == "dihedral" || kind == "D") {
            rc.model.group_kind = LGT_GROUP_DIHEDRAL;
        } else {
            usage_error("invalid_config", "group kind must be cyclic or dihedral");
        }
        read(group, "n", rc.model.group_n, "[group]");
    }

    const toml::table *lattice = section(root, "lattice");
    if (lattice) {
        reject_unknown(*lattice, "[lattice]", {"extents", "d", "length"});
        std::vector<int> extents;
        read_array(lattice, "extents", extents, "[lattice]");
        int d = 0, length = 0;
        read(lattice, "d", d, "[lattice]");
        read(lattice, "length", length, "[lattice]");
        if (extents.empty() && d > 0) {
            extents.assign(d, length > 0 ? length : 2);
        }
        if (extents.empty() || extents.size() > LGT_MAX_DIM) {
            usage_error("invalid_config", "[lattice] needs 1 to 3 extents");
        }
        rc.model.dim = (int)extents.size();
        for (size_t i = 0; i < extents.size(); i++) {
            rc.model.extents[i] = extents[i];
        }
    }

    const toml::table *couplings = section(root, "couplings");
    if (couplings) {
        reject_unknown(*couplings, "[couplings]", {"lambda_b", "lambda_e", "lambda_gm", "mass"});
        read(couplings, "lambda_b", rc.model.lambda_b, "[couplings]");
        read(couplings, "lambda_e", rc.model.lambda_e, "[couplings]");
        read(couplings, "lambda_gm", rc.model.lambda_gm, "[couplings]");
        read(couplings, "mass", rc.model.mass, "[couplings]");
    }

    const toml::table *electric = section(root, "electric");
    if (electric) {
        reject_unknown(*electric, "[electric]", {"f_l", "f_r"});
        std::vector<double> f_l;
        read_array(electric, "f_l", f_l, "[electric]");
        if (f_l.size() > LGT_MAX_F) {
            usage_error("invalid_config", "too many f_l entries");
        }
        rc.model.f_l_count = (int)f_l.size();
        for (size_t i = 0; i < f_l.size(); i++) {
            rc.model.f_l[i] = f_l[i];
        }
        if (electric->get("f_r")) {
            rc.model.has_f_r = 1;
            read(electric, "f_r", rc.model.f_r, "[electric]");
        }
    }

    const toml::table *model = section(root, "model");
    if (model) {
        reject_unknown(*model, "[model]", {"with_matter", "ancilla_slots"});
        bool matter = rc.model.with_matter != 0;
        read(model, "with_matter", matter, "[model]");
        rc.model.with_matter = matter ? 1 : 0;
        read(model, "ancilla_slots", rc.model.ancilla_slots, "[model]");
    }

    const toml::table *state = section(root, "state");
    if (state) {
        reject_unknown(*state, "[state]", {"kind", "occupied", "links", "gauge_invariant"});
        read(state, "kind", rc.state_kind, "[state]");
        read_array(state, "occupied", rc.occupied, "[state]");
        read_array(state, "links", rc.links, "[state]");
        read(state, "gauge_invariant", rc.gauge_invariant, "[state]");
        if (rc.state_kind != "vacuum" && rc.state_kind != "basis" && rc.state_kind != "random") {
            usage_error("invalid_config", "state kind must be vacuum, basis or random");
        }
    }

    const toml::table *run = section(root, "run");
    if (run) {
        reject_unknown(*run, "[run]", {"t", "steps", "order", "variant", "probe", "steps_list", "observables", "seed"});
        read(run, "t", rc.t, "[run]");
        read(run, "steps", rc.steps, "[run]");
        read(run, "order", rc.order, "[run]");
        read(run, "variant", rc.variant, "[run]");
        read(run, "probe", rc.probe, "[run]");
        read_array(run, "steps_list", rc.steps_list, "[run]");
        read_array(run, "observables", rc.observables, "[run]");
        int64_t seed = -1;
        read(run, "seed", seed, "[run]");
        if (seed >= 0) {
            rc.seed = (uint64_t)seed;
        }
    }
    return rc;
}

void validate_run(const RunConfig &rc) {
    if (!(rc.t >= 0) || !std::isfinite(rc.t)) {
        usage_error("invalid_config", "t must be a finite non-negative number");
    }
    if (rc.steps < 1) {
        usage_error("invalid_config", "steps must be positive");
    }
    if (rc.variant != "direct" && rc.variant != "mediated") {
        usage_error("invalid_config", "variant must be direct or mediated");
    }
    if (rc.probe != "operator" && rc.probe != "state") {
        usage_error("invalid_config", "probe must be operator or state");
    }
    for (const auto &o : rc.observables) {
        if (o != "plaquette" && o != "densities" && o != "gauge_violation" && o != "ancilla_fidelity") {
            usage_error("invalid_config", "unknown observable '" + o + "'");
        }
    }
}

lgt_gm_variant variant_of(const RunConfig &rc) {
    return rc.variant == "mediated" ? LGT_GM_MEDIATED : LGT_GM_DIRECT;
}

bool wants(const RunConfig &rc, const std::string &name) {
    return std::find(rc.observables.begin(), rc.observables.end(), name) != rc.observables.end();
}

json model_json(const lgt_model_config &m) {
    json extents = json::array();
    for (int i = 0; i < m.dim; i++) {
        extents.push_back(m.extents[i]);
    }
    json j{{"group", {{"kind", m.group_kind == LGT_GROUP_CYCLIC ? "cyclic" : "dihedral"}, {"n", m.group_n}}},
           {"extents", extents},
           {"couplings", {{"lambda_b", m.lambda_b}, {"lambda_e", m.lambda_e}, {"lambda_gm", m.lambda_gm}, {"mass", m.mass}}},
           {"with_matter", m.with_matter != 0},
           {"ancilla_slots", m.ancilla_slots}};
    if (m.f_l_count > 0) {
        j["f_l"] = std::vector<double>(m.f_l, m.f_l + m.f_l_count);
    }
    if (m.has_f_r) {
        j["f_r"] = m.f_r;
    }
    return j;
}

// --- output ---------------------------------------------------------------------------------------------------------

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const Common &c, const std::string &file, const std::string &content) {
    if (c.out.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::error_code ec;
    fs::create_directories(c.out, ec);
    const fs::path path = fs::path(c.out) / file;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!content.empty() && content.back() != '\n') {
        f << '\n';
    }
    if (!f) {
        throw Failure{kExitUsage, {{"error", {{"kind", "io"}, {"message", "cannot write " + path.string()}}}}};
    }
    std::cerr << "wrote " << path.string() << "\n";
}

void apply_threads(const Common &c) {
    check(lgt_set_threads(c.threads), "threads");
}

void enforce_memory_cap(const lgt_model_config &m, const Common &c) {
    double bytes = 0;
    check(lgt_model_memory_estimate(&m, &bytes), "memory estimate");
    if (bytes > (double)c.max_mem) {
        usage_error("resource_limit", "instance exceeds the memory cap; raise --max-mem to run it",
                    {{"estimated_bytes", bytes}, {"max_bytes", (double)c.max_mem}});
    }
}

// --- subcommands ----------------------------------------------------------------------------------------------------

struct SimulateFlags {
    std::optional<double> t;
    std::optional<int> steps;
    std::optional<int> order;
    std::optional<std::string> variant;
};

int cmd_simulate(const Common &c, const SimulateFlags &f) {
    RunConfig rc = load_config(c.config);
    rc.t = f.t.value_or(rc.t);
    rc.steps = f.steps.value_or(rc.steps);
    rc.order = f.order.value_or(rc.order);
    rc.variant = f.variant.value_or(rc.variant);
    validate_run(rc);
    if (rc.order != 1 && rc.order != 2) {
        usage_error("invalid_config", "order must be 1 or 2");
    }
    apply_threads(c);
    enforce_memory_cap(rc.model, c);
    const uint64_t seed = rc.seed.value_or(c.seed);

    lgt_model *raw_model = nullptr;
    check(lgt_model_create(&rc.model, &raw_model), "model");
    std::unique_ptr<lgt_model, ModelDeleter> model(raw_model);
    int64_t dim = 0, phys = 0;
    int vertices = 0, links = 0, plaquettes = 0, ancillas = 0;
    check(lgt_model_dimensions(model.get(), &dim, &phys), "model");
    check(lgt_model_counts(model.get(), &vertices, &links, &plaquettes, &ancillas), "model");

    lgt_state *raw_state = nullptr;
    if (rc.state_kind == "vacuum") {
        check(lgt_state_vacuum(model.get(), &raw_state), "state");
    } else if (rc.state_kind == "basis") {
        check(lgt_state_basis(model.get(), rc.occupied.data(), (int)rc.occupied.size(), rc.links.data(), (int)rc.links.size(),
                              &raw_state),
              "state");
    } else {
        check(lgt_state_random(model.get(), seed, rc.gauge_invariant ? 1 : 0, &raw_state), "state");
    }
    std::unique_ptr<lgt_state, StateDeleter> state(raw_state);

    lgt_trace *raw_trace = nullptr;
    check(lgt_run(model.get(), state.get(), rc.t, rc.steps, rc.order, variant_of(rc), (double)c.max_mem, &raw_trace), "run");
    std::unique_ptr<lgt_trace, TraceDeleter> trace(raw_trace);

    int rows = 0;
    check(lgt_trace_size(trace.get(), &rows, &vertices), "trace");
    std::string csv = "time";
    if (wants(rc, "plaquette")) {
        csv += ",plaquette";
    }
    if (wants(rc, "densities")) {
        for (int v = 0; v < vertices; v++) {
            csv += ",density_" + std::to_string(v);
        }
    }
    if (wants(rc, "gauge_violation")) {
        csv += ",gauge_violation";
    }
    if (wants(rc, "ancilla_fidelity")) {
        csv += ",ancilla_fidelity";
    }
    csv += "\n";

    json series = json::array();
    double max_violation = 0, min_fidelity = 1;
    std::vector<double> dens(vertices);
    for (int r = 0; r < rows; r++) {
        double time = 0, plaq = 0, viol = 0, fid = 1;
        check(lgt_trace_row(trace.get(), r, &time, &plaq, &viol, &fid, dens.data()), "trace");
        max_violation = std::max(max_violation, viol);
        min_fidelity = std::min(min_fidelity, fid);
        json row{{"time", time}};
        csv += fmt(time);
        if (wants(rc, "plaquette")) {
            csv += "," + fmt(plaq);
            row["plaquette"] = plaq;
        }
        if (wants(rc, "densities")) {
            for (double d : dens) {
                csv += "," + fmt(d);
            }
            row["densities"] = dens;
        }
        if (wants(rc, "gauge_violation")) {
            csv += "," + fmt(viol);
            row["gauge_violation"] = viol;
        }
        if (wants(rc, "ancilla_fidelity")) {
            csv += "," + fmt(fid);
            row["ancilla_fidelity"] = fid;
        }
        csv += "\n";
        series.push_back(row);
    }
    const bool passed = max_violation <= kViolationTolerance && (ancillas == 0 || min_fidelity >= 1 - kFidelityTolerance);
    json doc{{"command", "simulate"},
             {"model", model_json(rc.model)},
             {"dimension", dim},
             {"physical_dimension", phys},
             {"counts", {{"vertices", vertices}, {"links", links}, {"plaquettes", plaquettes}, {"ancillas", ancillas}}},
             {"initial_state", rc.state_kind},
             {"t", rc.t},
             {"steps", rc.steps},
             {"order", rc.order},
             {"variant", rc.variant},
             {"seed", seed},
             {"rows", series},
             {"max_gauge_violation", max_violation},
             {"min_ancilla_fidelity", min_fidelity},
             {"passed", passed}};
    emit(c, "series.csv", csv);
    if (!c.out.empty()) {
        emit(c, "series.json", doc.dump(2));
    }
    std::cerr << "steps " << rc.steps << ", max gauge violation " << max_violation << ", min ancilla fidelity " << min_fidelity
              << (passed ? "" : "  [invariant violated]") << "\n";
    return passed ? kExitOk : kExitAssertion;
}

struct BoundsFlags {
    std::optional<double> t;
    std::optional<int> steps;
    bool measure = false;
};

int cmd_bounds(const Common &c, const BoundsFlags &f) {
    RunConfig rc = load_config(c.config);
    rc.t = f.t.value_or(rc.t);
    rc.steps = f.steps.value_or(rc.steps);
    validate_run(rc);
    apply_threads(c);
    char *raw = nullptr;
    check(lgt_bounds_json(&rc.model, rc.t, rc.steps, f.measure ? 1 : 0, &raw), "bounds");
    json doc = json::parse(take(raw));
    doc["command"] = "bounds";
    doc["model"] = model_json(rc.model);

    std::ostringstream table;
    table << "term                          bound                measured\n";
    for (const char *group : {"commutators", "nested"}) {
        for (const auto &row : doc[group]) {
            char line[160];
            std::snprintf(line, sizeof line, "%-29s %-20.12g %s\n", row["name"].get<std::string>().c_str(), row["bound"].get<double>(),
                          row.contains("measured") ? fmt(row["measured"].get<double>()).c_str() : "-");
            table << line;
        }
    }
    table << "first order total   " << fmt(doc["first_order"].get<double>()) << "\n";
    table << "second order total  " << fmt(doc["second_order"].get<double>()) << "\n";
    if (!doc["printed"].is_null()) {
        table << "printed first order " << fmt(doc["printed"]["first_order"].get<double>()) << "\n";
        table << "printed second order " << fmt(doc["printed"]["second_order"].get<double>()) << "\n";
    }
    if (c.out.empty()) {
        std::cerr << table.str();
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << table.str();
        emit(c, "bounds.json", doc.dump(2));
    }
    bool ok = true;
    for (const char *group : {"commutators", "nested"}) {
        for (const auto &row : doc[group]) {
            if (row.contains("measured")) {
                ok = ok && row["measured"].get<double>() <= row["bound"].get<double>() * (1 + 1e-9) + 1e-12;
            }
        }
    }
    return ok ? kExitOk : kExitAssertion;
}

struct VerifyFlags {
    std::string suite = "all";
    std::string fault;
    double tau = 0.1;
};

int cmd_verify(const Common &c, const VerifyFlags &f) {
    apply_threads(c);
    char *raw = nullptr;
    int all_passed = 0;
    check(lgt_verify_json(f.suite.c_str(), f.fault.c_str(), c.seed, &raw, &all_passed), "verify");
    json doc = json::parse(take(raw));
    doc["command"] = "verify";
    for (const auto &chk : doc["checks"]) {
        char line[256];
        std::snprintf(line, sizeof line, "%s  %-9s %-58s value %-12.4g tol %.3g\n", chk["passed"].get<bool>() ? "PASS" : "FAIL",
                      chk["suite"].get<std::string>().c_str(), chk["name"].get<std::string>().c_str(), chk["value"].get<double>(),
                      chk["tolerance"].get<double>());
        std::cout << line;
    }
    std::cout << (all_passed ? "all checks passed" : "some checks FAILED") << "\n";
    if (!c.out.empty()) {
        emit(c, "verify.json", doc.dump(2));
        if (f.suite == "atomic" || f.suite == "all") {
            for (const char *target : {"plaquette", "gauge-matter", "electric"}) {
                char *pulses = nullptr;
                check(lgt_compile_json(target, nullptr, f.tau, &pulses), "compile");
                emit(c, std::string("pulses_") + target + ".json", take(pulses));
            }
        }
    }
    return all_passed ? kExitOk : kExitAssertion;
}

struct CompareFlags {
    std::vector<int> steps_list;
    std::optional<double> t;
    std::optional<int> order;
    std::optional<std::string> probe;
    std::optional<std::string> variant;
};

int cmd_compare(const Common &c, const CompareFlags &f) {
    RunConfig rc = load_config(c.config);
    if (!f.steps_list.empty()) {
        rc.steps_list = f.steps_list;
    }
    rc.t = f.t.value_or(rc.t);
    rc.probe = f.probe.value_or(rc.probe);
    rc.variant = f.variant.value_or(rc.variant);
    int order = f.order.value_or(0);
    validate_run(rc);
    if (rc.steps_list.empty()) {
        usage_error("usage", "compare needs a non-empty list of step counts (--steps-list or [run] steps_list)");
    }
    for (int n : rc.steps_list) {
        if (n < 1) {
            usage_error("usage", "step counts must be positive");
        }
    }
    if (order != 0 && order != 1 && order != 2) {
        usage_error("usage", "order must be 1, 2 or 0 for both");
    }
    apply_threads(c);
    enforce_memory_cap(rc.model, c);
    const uint64_t seed = rc.seed.value_or(c.seed);
    char *raw = nullptr;
    check(lgt_compare_json(&rc.model, rc.t, rc.steps_list.data(), (int)rc.steps_list.size(), order,
                           rc.probe == "state" ? LGT_PROBE_STATE : LGT_PROBE_OPERATOR, variant_of(rc), seed, &raw),
          "compare");
    json doc = json::parse(take(raw));
    doc["command"] = "compare";
    doc["model"] = model_json(rc.model);
    doc["seed"] = seed;

    std::string csv = "order,steps,epsilon,bound,within_bound\n";
    bool ok = true;
    for (const auto &row : doc["rows"]) {
        const bool within = row["within_bound"].get<bool>();
        ok = ok && within;
        csv += std::to_string(row["order"].get<int>()) + "," + std::to_string(row["steps"].get<int>()) + "," +
               fmt(row["epsilon"].get<double>()) + "," + fmt(row["bound"].get<double>()) + "," + (within ? "1" : "0") + "\n";
    }
    doc["passed"] = ok;
    emit(c, "compare.csv", csv);
    if (!c.out.empty()) {
        emit(c, "compare.json", doc.dump(2));
    }
    for (const auto &[o, s] : doc["slopes"].items()) {
        std::cerr << "order " << o << " log-log slope " << (s.is_null() ? std::string("n/a") : fmt(s.get<double>())) << "\n";
    }
    return ok ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Trotterized Z_N / D_N lattice gauge theory simulator and verifier"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(lgt_version()));

    Common common;

    SimulateFlags sim;
    CLI::App *simulate = app.add_subcommand("simulate", "run a Trotterized evolution and write the observable series");
    add_common(simulate, common);
    simulate->add_option("--t", sim.t, "total evolution time");
    simulate->add_option("--steps", sim.steps, "number of Trotter steps");
    simulate->add_option("--order", sim.order, "product formula order (1 or 2)");
    simulate->add_option("--variant", sim.variant, "gauge-matter variant (direct or mediated)");

    BoundsFlags bnd;
    CLI::App *bounds = app.add_subcommand("bounds", "evaluate the analytic Trotter error bounds");
    add_common(bounds, common);
    bounds->add_option("--t", bnd.t, "total evolution time");
    bounds->add_option("--steps", bnd.steps, "number of Trotter steps");
    bounds->add_flag("--measure", bnd.measure, "also measure the commutator norms on the configured instance");

    VerifyFlags ver;
    CLI::App *verify = app.add_subcommand("verify", "run invariant suites");
    add_common(verify, common);
    verify->add_option("suite", ver.suite, "group | gauge | stator | trotter | atomic | all");
    verify->add_option("--fault", ver.fault, "inject a fixture fault (theta-sign)");
    verify->add_option("--tau", ver.tau, "time step for the exported pulse sequences");

    CompareFlags cmp;
    CLI::App *compare = app.add_subcommand("compare", "measure the Trotter error against the analytic bounds");
    add_common(compare, common);
    compare->add_option("--steps-list", cmp.steps_list, "step counts, e.g. 2,4,8")->delimiter(',');
    compare->add_option("--t", cmp.t, "total evolution time");
    compare->add_option("--order", cmp.order, "1, 2, or 0 for both (default)");
    compare->add_option("--probe", cmp.probe, "operator or state");
    compare->add_option("--variant", cmp.variant, "gauge-matter variant (direct or mediated)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) {
            return cmd_simulate(common, sim);
        }
        if (*bounds) {
            return cmd_bounds(common, bnd);
        }
        if (*verify) {
            return cmd_verify(common, ver);
        }
        return cmd_compare(common, cmp);
    } catch (const Failure &f) {
        std::cerr << f.diagnostic.dump() << "\n";
        return f.exit_code;
    } catch (const std::exception &e) {
        std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << "\n";
        return kExitUsage;
    }
}
