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


// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select criteria by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "lgtsim/atomic.hpp"
#include "lgtsim/bounds.hpp"
#include "lgtsim/digital.hpp"
#include "lgtsim/hamiltonians.hpp"
#include "lgtsim/verify.hpp"

using namespace lgt;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0, 1);

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Vec random_state(int64_t dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    Vec v(dim);
    for (auto &x : v) {
        x = cplx(n(rng), n(rng));
    }
    return v.normalized();
}

Vec with_reference(const Model &full, const Vec &phys) {
    Vec out = Vec::Zero(full.layout().dim());
    out.head(phys.size()) = phys;
    return out;
}

Outcome suite_outcome(const std::string &suite) {
    Outcome o{true, ""};
    int failed = 0, total = 0;
    double worst = 0;
    for (const auto &c : run_suite(suite)) {
        total++;
        if (!c.passed) {
            failed++;
            o.passed = false;
            o.detail += " [" + c.name + " = " + num(c.value) + "]";
        }
        if (c.kind == Check::Kind::kAtMost) {
            worst = std::max(worst, c.value);
        }
    }
    o.detail = std::to_string(total - failed) + "/" + std::to_string(total) + " checks, worst residual " + num(worst) + o.detail;
    return o;
}

// 1
Outcome group_representations() {
    return suite_outcome("group");
}

// 2
Outcome stator_identities() {
    return suite_outcome("stator");
}

struct SubstepStats {
    double violation = 0;
    double fidelity = 1;
    int substeps = 0;
};

SubstepStats run_with_checks(const Model &full, const Vec &phys_state, double t, int steps, int order, GmVariant variant) {
    Vec psi = with_reference(full, phys_state);
    SubstepStats s;
    RunOptions ro;
    ro.order = order;
    ro.variant = variant;
    ro.on_substep = [&](const ScheduleEntry &, const Vec &v) {
        s.violation = std::max(s.violation, gauge_violation(full, v));
        if (full.num_ancilla_slots() > 0) {
            s.fidelity = std::min(s.fidelity, ancilla_fidelity(full.layout(), v));
        }
        s.substeps++;
    };
    run_trotter(full, psi, t, steps, ro);
    return s;
}

Vec invariant_state(const Model &full, uint64_t seed) {
    const Model phys = full.with_ancilla_slots(0);
    return gauge_project(phys, random_state(phys.layout().dim(), seed)).normalized();
}

// 3
Outcome gauge_invariance() {
    Outcome o{true, ""};
    Model square(GroupSpec::cyclic(2), Lattice::cubic(2, 2), Couplings{}, ModelOptions{true, 1});
    double worst2 = 0;
    for (auto variant : {GmVariant::kDirect, GmVariant::kMediated}) {
        for (int order : {1, 2}) {
            worst2 = std::max(worst2, run_with_checks(square, invariant_state(square, 11), 0.8, 3, order, variant).violation);
        }
    }
    Model cube(GroupSpec::cyclic(2), Lattice::cubic(3, 2), Couplings{}, ModelOptions{true, 1});
    SubstepStats s3 = run_with_checks(cube, invariant_state(cube, 12), 0.5, 1, 1, GmVariant::kDirect);
    o.passed = worst2 <= 1e-10 && s3.violation <= 1e-10;
    o.detail = "d=2 (" + std::to_string(square.layout().physical_dim()) + "-dim) max violation " + num(worst2) + "; d=3 (" +
               std::to_string(cube.layout().physical_dim()) + "-dim, " + std::to_string(s3.substeps) + " substeps) max violation " +
               num(s3.violation);
    return o;
}

// 4
Outcome ancilla_disentanglement() {
    struct Case {
        Model model;
        GmVariant variant;
    };
    std::vector<Case> cases{
        {Model(GroupSpec::cyclic(2), Lattice::cubic(2, 2), Couplings{}, ModelOptions{true, 1}), GmVariant::kMediated},
        {Model(GroupSpec::cyclic(3), Lattice::cubic(2, 2), Couplings{0.7, 1.1, 0.9, 0.4}, ModelOptions{false, 1}), GmVariant::kDirect},
        {Model(GroupSpec::dihedral(3), Lattice({3}), Couplings{}, ModelOptions{true, 1}), GmVariant::kMediated},
        {Model(GroupSpec::dihedral(3), Lattice::cubic(2, 2), Couplings{}, ModelOptions{false, 1}), GmVariant::kDirect},
    };
    double worst = 1;
    int substeps = 0;
    for (const auto &c : cases) {
        for (int order : {1, 2}) {
            SubstepStats s = run_with_checks(c.model, invariant_state(c.model, 21), 0.6, 2, order, c.variant);
            worst = std::min(worst, s.fidelity);
            substeps += s.substeps;
        }
    }
    return {worst >= 1 - 1e-12, std::to_string(substeps) + " substeps, min ancilla fidelity 1 - " + num(1 - worst)};
}

double slope(const std::vector<double> &x, const std::vector<double> &y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = (double)x.size();
    for (size_t i = 0; i < x.size(); i++) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 5
Outcome trotter_scaling() {
    Model m(GroupSpec::cyclic(2), Lattice::cubic(2, 2), Couplings{}, ModelOptions{true, 0});
    const double t = 0.5;
    const std::vector<double> ns{2, 4, 8, 16, 32};
    Outcome o{true, ""};
    for (int order : {1, 2}) {
        std::vector<double> eps;
        double ratio = 0;
        for (double n : ns) {
            EmpiricalOptions eo;
            eo.order = order;
            eps.push_back(empirical_error(m, t, (int)n, eo));
            BoundParams p = BoundParams::from_model(m, t, (int)n);
            ratio = std::max(ratio, eps.back() / (order == 1 ? first_order_bound(p) : second_order_bound(p)));
        }
        const double s = slope(ns, eps);
        o.passed = o.passed && std::abs(s + order) <= 0.15 && ratio <= 1.0;
        o.detail += (order == 1 ? "" : "; ") + std::string("order ") + std::to_string(order) + " slope " + num(s) +
                    ", max eps/bound " + num(ratio);
    }
    return o;
}

// 6
Outcome printed_formulas() {
    auto v = [](BoundVar x) { return Polynomial::var(x); };
    auto c = [](int64_t n, int64_t d = 1) { return Polynomial::constant(Rational(n, d)); };
    const Polynomial lb = v(kLambdaB), le = v(kLambdaE), lg = v(kLambdaGm), m = v(kMass);
    // coefficient of t^2 (L-1) L^2 / N and t^3 (L-1) L^2 / N^2
    const Polynomial first = c(16) * lb * le + c(2) * lg * le + m * lg + c(5, 4) * lg * lg;
    const Polynomial z_first = first * Rational(3);
    const Polynomial d_first = first * Rational(6);
    const Polynomial z_second =
        c(64) * le * lb * (c(2) * le + lb) + c(2) * lg * le * (c(11) * lg + le) + lg * m * (c(6) * lg + c(1, 2) * m) + c(125, 12) * lg * lg * lg;
    const Polynomial d_second = (c(128) * le * lb * (le + lb) + c(2) * lg * le * (c(22) * lg + le) + lg * m * (c(6) * lg + c(1, 2) * m) +
                                 c(125, 12) * lg * lg * lg) *
                                Rational(2);
    const Rational maxf(2);
    bool ok = specialize_cubic3(first_order_form(3, 1), maxf) == z_first && specialize_cubic3(first_order_form(3, 2), maxf) == d_first &&
              specialize_cubic3(second_order_form(3, 1), maxf) == z_second &&
              specialize_cubic3(second_order_form(3, 2), maxf) == d_second;
    // the same forms through the numeric path: Z3 and D3 at L = 2, t = 1, N = 10
    BoundParams pz = BoundParams::from_parts(GroupSpec::cyclic(3), Lattice::cubic(3, 2), Couplings{}, true, 1.0, 10);
    BoundParams pd = BoundParams::from_parts(GroupSpec::dihedral(3), Lattice::cubic(3, 2), Couplings{}, true, 1.0, 10);
    const double fz = first_order_bound(pz), fd = first_order_bound(pd);
    ok = ok && std::abs(fz - 24.3) < 1e-12 && std::abs(fd - 2 * fz) < 1e-12;
    return {ok, std::string("exact rational match of 4 specialized forms: ") + (ok ? "yes" : "no") + "; Z3 first-order total " +
                    num(fz) + ", D3 " + num(fd)};
}

// 7
Outcome commutator_bounds_hold() {
    std::vector<Model> models{
        Model(GroupSpec::cyclic(2), Lattice::cubic(2, 2), Couplings{}, ModelOptions{true, 0}),
        Model(GroupSpec::cyclic(2), Lattice::cubic(2, 2), Couplings{0.7, 1.3, 0.4, 2.1}, ModelOptions{true, 0}),
        Model(GroupSpec::cyclic(3), Lattice({3}), Couplings{}, ModelOptions{true, 0}),
        Model(GroupSpec::cyclic(3), Lattice::cubic(2, 2), Couplings{}, ModelOptions{true, 0}),
        Model(GroupSpec::cyclic(4), Lattice({3}), Couplings{1.0, 0.5, 1.5, 0.8}, ModelOptions{true, 0}),
        Model(GroupSpec::dihedral(3), Lattice({2}), Couplings{}, ModelOptions{true, 0}),
        Model(GroupSpec::dihedral(3), Lattice({3}), Couplings{0.9, 1.2, 0.6, 1.4}, ModelOptions{true, 0}),
        Model(GroupSpec::dihedral(3), Lattice::cubic(2, 2), Couplings{}, ModelOptions{false, 0}),
    };
    const size_t ordinary = commutator_bounds(BoundParams{}).size(), nested = nested_commutator_bounds(BoundParams{}).size();
    bool ok = true;
    double ratio = 0;
    int checks = 0;
    std::string bad;
    for (const auto &m : models) {
        for (const auto &c : measure_commutators(m)) {
            checks++;
            const bool within = c.measured <= c.bound * (1 + 1e-9) + 1e-12;
            if (!within) {
                bad += " [" + m.group().name() + " " + c.name + "]";
            }
            ok = ok && within;
            if (c.bound > 0) {
                ratio = std::max(ratio, c.measured / c.bound);
            }
        }
    }
    return {ok, std::to_string(models.size()) + " instances x (" + std::to_string(ordinary) + " ordinary + " + std::to_string(nested) +
                    " nested) = " + std::to_string(checks) + " checks, max measured/bound " + num(ratio) + bad};
}

/// Two-species site Fock matrices in the n1 + 2 n2 basis.
Mat rotation_fock(int p) {
    const cplx w = std::exp(kI * (2 * kPi * p / 3));
    Mat r = Mat::Zero(4, 4);
    r(0, 0) = 1;
    r(1, 1) = w;
    r(2, 2) = std::conj(w);
    r(3, 3) = 1;
    return r;
}

Mat reflection_fock() {
    Mat x = Mat::Zero(4, 4);
    x(0, 0) = 1;
    x(1, 2) = x(2, 1) = 1;
    x(3, 3) = -1;
    return x;
}

// 8
Outcome doublet_identities() {
    const GroupSpec g = GroupSpec::dihedral(3);
    Model m(g, Lattice({2}), Couplings{}, ModelOptions{true, 0});
    const RegisterLayout &lay = m.layout();
    Mat sz = Mat::Zero(2, 2), sx = Mat::Zero(2, 2);
    sz(0, 0) = 1;
    sz(1, 1) = -1;
    sx(0, 1) = sx(1, 0) = 1;
    double conj = 0, closed = 0, factor = 0;
    for (int e = 0; e < 6; e++) {
        auto [p, r] = g.parts(e);
        const Mat &d = m.irrep().matrices[e];
        Mat up = Mat((sz * (kI * (2 * kPi * p / 3))).exp());
        closed = std::max(closed, (d - up * (r ? sx : Mat::Identity(2, 2))).norm());
        Mat block = gauge_matter_block(m, e);
        Mat expect = rotation_fock(p) * (r ? reflection_fock() : Mat::Identity(4, 4));
        factor = std::max(factor, (block - expect).norm());

        LinearOperator w = embed_local(lay, LocalGate{{LocalFactor::modes(m.first_mode(0), 2)}, block}, kOpUnitary);
        for (int n = 0; n < 2; n++) {
            LinearOperator lhs = w * fermion_operator(lay, m.mode(0, n), true) * w.adjoint();
            Mat diff = lhs.to_dense() - (fermion_operator(lay, m.mode(0, 0), true).to_dense() * d(0, n) +
                                         fermion_operator(lay, m.mode(0, 1), true).to_dense() * d(1, n));
            conj = std::max(conj, diff.cwiseAbs().maxCoeff());
        }
    }
    const bool ok = conj <= 1e-12 && closed <= 1e-12 && factor <= 1e-12;
    return {ok, "conjugation residual " + num(conj) + ", closed-form irrep residual " + num(closed) + ", U_p U_m factorization residual " +
                    num(factor)};
}

// 9
Outcome atomic_compilation() {
    double worst = 0;
    std::string detail;
    for (auto target : {CompileTarget::kElectric, CompileTarget::kPlaquette, CompileTarget::kGaugeMatter}) {
        for (double tau : {0.37, 0.11}) {
            Couplings c{0.8, 1.2, 0.7, 1.0};
            const double dev = verify_compiled(compile(target, c, tau));
            worst = std::max(worst, dev);
        }
        detail += target_name(target) + " ok; ";
    }
    // error-budget rows from their closed forms at t = 1.3, N = 12
    const double t = 1.3;
    const int n = 12;
    std::vector<ExperimentalGate> gates{
        {"statistical, timed", 0.03, ExperimentalErrorKind::kStatisticalTimed, 0},
        {"systematic, timed", 0.02, ExperimentalErrorKind::kSystematicTimed, 0},
        {"statistical, fixed", 0.05, ExperimentalErrorKind::kStatisticalFixed, 0.4},
        {"systematic, fixed", 0.01, ExperimentalErrorKind::kSystematicFixed, 0.4},
    };
    const std::vector<double> expect{0.03 * t / std::sqrt(2.0 * n), 0.02 * t, 0.05 * std::sqrt(2.0 * n) * 0.4, 0.01 * 2.0 * n * 0.4};
    const std::vector<double> got = experimental_error_budget(gates, t, n);
    double budget = 0;
    for (size_t i = 0; i < expect.size(); i++) {
        budget = std::max(budget, std::abs(got[i] - expect[i]) / expect[i]);
    }
    const bool ok = worst <= 1e-10 && budget <= 1e-15;
    return {ok, "max compiled-vs-abstract deviation " + num(worst) + " (electric, plaquette, dressed gauge-matter); budget rows relative error " +
                    num(budget)};
}

// 10
Outcome direct_vs_mediated() {
    Model full(GroupSpec::dihedral(3), Lattice({2}), Couplings{0.9, 1.1, 1.3, 0.7}, ModelOptions{true, 1});
    const int64_t pdim = full.layout().physical_dim();
    double worst = 0, leakage = 0;
    size_t direct_gates = 0, mediated_gates = 0;
    for (double tau : {0.23, 0.9}) {
        Mat a = Mat::Zero(full.layout().dim(), pdim);
        a.topRows(pdim) = Mat::Identity(pdim, pdim);
        Mat b = a;
        GateSequence direct = gauge_matter_substep(full, 0, 0, tau, GmVariant::kDirect);
        GateSequence mediated = gauge_matter_substep(full, 0, 0, tau, GmVariant::kMediated);
        direct_gates = direct.size();
        mediated_gates = mediated.size();
        direct.apply(a);
        mediated.apply(b);
        worst = std::max(worst, operator_norm(Mat(a - b)));
        leakage = std::max(leakage, b.bottomRows(b.rows() - pdim).norm());
    }
    // full Trotter runs from a gauge-invariant state
    Vec psi = with_reference(full, invariant_state(full, 31)), phi = psi;
    RunOptions direct, mediated;
    mediated.variant = GmVariant::kMediated;
    run_trotter(full, psi, 1.0, 4, direct);
    run_trotter(full, phi, 1.0, 4, mediated);
    const double run = (psi - phi).norm();
    const bool ok = worst <= 1e-10 && run <= 1e-10 && leakage <= 1e-10 && mediated_gates > direct_gates;
    return {ok, "substep operator difference " + num(worst) + " on " + std::to_string(pdim) + " physical columns (" +
                    std::to_string(direct_gates) + " direct vs " + std::to_string(mediated_gates) +
                    " mediated gates, ancilla leakage " + num(leakage) + "); 4-step run difference " + num(run)};
}

struct Criterion {
    int id;
    const char *title;
    double limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
    std::vector<Criterion> all{
        {1, "group and representation suite", 5, group_representations},
        {2, "stator identities", 30, stator_identities},
        {3, "gauge invariance after every substep", 600, gauge_invariance},
        {4, "ancilla disentanglement", 600, ancilla_disentanglement},
        {5, "Trotter error scaling", 120, trotter_scaling},
        {6, "printed bound coefficients", 60, printed_formulas},
        {7, "commutator bound validity", 600, commutator_bounds_hold},
        {8, "doublet gate identities", 60, doublet_identities},
        {9, "atomic compilation", 600, atomic_compilation},
        {10, "direct vs mediated gauge-matter", 600, direct_vs_mediated},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; i++) {
        selected.insert(std::atoi(argv[i]));
    }
    int failures = 0;
    for (const auto &c : all) {
        if (!selected.empty() && !selected.count(c.id)) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool passed = o.passed && in_time;
        failures += !passed;
        std::printf("criterion %2d %s  %s: %s (%.1f s, limit %.0f s%s)\n", c.id, passed ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs,
                    c.limit_seconds, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
