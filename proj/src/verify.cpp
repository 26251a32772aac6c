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


#include "lgtsim/verify.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "lgtsim/atomic.hpp"
#include "lgtsim/bounds.hpp"
#include "lgtsim/error.hpp"
#include "lgtsim/hamiltonians.hpp"

namespace lgt {

namespace {

constexpr double kTight = 1e-12;
constexpr double kLoose = 1e-10;

Vec random_state(int64_t dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    Vec v(dim);
    for (auto &x : v) {
        x = cplx(n(rng), n(rng));
    }
    return v.normalized();
}

double max_abs(const Mat &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double sparse_max_abs(const SparseMat &a) {
    double m = 0;
    for (int k = 0; k < a.outerSize(); k++) {
        for (SparseMat::InnerIterator it(a, k); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

void group_suite(const VerifyOptions &o, std::vector<Check> &out) {
    std::vector<GroupSpec> groups;
    for (int n = 2; n <= 6; n++) {
        groups.push_back(GroupSpec::cyclic(n));
    }
    groups.push_back(fixture_dihedral3(o));
    groups.push_back(GroupSpec::dihedral(5));
    for (const auto &g : groups) {
        const int order = g.order();
        int assoc = 0, ident = 0, inv = 0;
        for (int a = 0; a < order; a++) {
            ident += g.compose(0, a) != a || g.compose(a, 0) != a;
            inv += g.compose(a, g.inverse(a)) != 0 || g.compose(g.inverse(a), a) != 0;
            for (int b = 0; b < order; b++) {
                for (int c = 0; c < order; c++) {
                    assoc += g.compose(g.compose(a, b), c) != g.compose(a, g.compose(b, c));
                }
            }
        }
        const std::string name = g.name();
        out.push_back(make_check("group", name + " associativity violations", assoc, 0));
        out.push_back(make_check("group", name + " identity and inverse violations", ident + inv, 0));

        double hom = 0, unit = 0, schur = 0;
        int dim_sq = 0;
        for (const auto &r : g.irreps()) {
            dim_sq += r.dim * r.dim;
            for (int a = 0; a < order; a++) {
                unit = std::max(unit, max_abs(r.matrices[a] * r.matrices[a].adjoint() - Mat::Identity(r.dim, r.dim)));
                for (int b = 0; b < order; b++) {
                    hom = std::max(hom, max_abs(r.matrices[a] * r.matrices[b] - r.matrices[g.compose(a, b)]));
                }
            }
            for (const auto &s : g.irreps()) {
                for (int i = 0; i < r.dim; i++) {
                    for (int j = 0; j < r.dim; j++) {
                        for (int k = 0; k < s.dim; k++) {
                            for (int l = 0; l < s.dim; l++) {
                                cplx sum = 0;
                                for (int a = 0; a < order; a++) {
                                    sum += r.matrices[a](i, j) * std::conj(s.matrices[a](k, l));
                                }
                                const double want = (r.label == s.label && i == k && j == l) ? double(order) / r.dim : 0.0;
                                schur = std::max(schur, std::abs(sum - want));
                            }
                        }
                    }
                }
            }
        }
        out.push_back(make_check("group", name + " irrep homomorphism", hom, kTight));
        out.push_back(make_check("group", name + " irrep unitarity", unit, kTight));
        out.push_back(make_check("group", name + " Schur orthogonality", schur, kTight));
        out.push_back(make_check("group", name + " sum of squared dimensions - |G|", std::abs(dim_sq - order), 0));
        Mat f = rep_overlap(g);
        out.push_back(make_check("group", name + " representation basis unitarity",
                                 max_abs(f.adjoint() * f - Mat::Identity(order, order)), kTight));
        Mat ang = angular_overlap_matrix(g.n());
        out.push_back(make_check("group", name + " angular basis unitarity",
                                 max_abs(ang.adjoint() * ang - Mat::Identity(g.n(), g.n())), kTight));
    }
}

/// Max over vertices and elements of ||[G_g(x), H]|| for each named term.
void commutation_checks(const Model &m, const std::string &label, std::vector<Check> &out) {
    std::vector<std::pair<std::string, LinearOperator>> terms{
        {"H_E", hamiltonian_electric(m)},
        {"H_B", hamiltonian_magnetic(m)},
    };
    if (m.has_matter()) {
        terms.push_back({"H_GM", hamiltonian_gauge_matter(m)});
        terms.push_back({"H_M", hamiltonian_mass(m)});
    }
    for (const auto &[name, h] : terms) {
        double worst = 0;
        for (int v = 0; v < m.lattice().num_vertices(); v++) {
            for (int g = 1; g < m.group().order(); g++) {
                worst = std::max(worst, sparse_max_abs(commutator(gauss_operator(m, v, g), h).matrix()));
            }
        }
        out.push_back(make_check("gauge", label + " [Gauss, " + name + "]", worst, kTight));
    }
}

void gauge_suite(const VerifyOptions &o, std::vector<Check> &out) {
    std::vector<std::pair<std::string, Model>> models{
        {"Z2 2x2", Model(GroupSpec::cyclic(2), Lattice::cubic(2, 2), Couplings{}, ModelOptions{true, 1})},
        {"Z3 L=3", Model(GroupSpec::cyclic(3), Lattice({3}), Couplings{}, ModelOptions{true, 1})},
        {"D3 L=2", Model(fixture_dihedral3(o), Lattice({2}), Couplings{}, ModelOptions{true, 1})},
    };
    for (const auto &[label, full] : models) {
        Model phys = full.with_ancilla_slots(0);
        commutation_checks(phys, label, out);
        Vec seed = random_state(phys.layout().dim(), o.seed);
        Vec inv = gauge_project(phys, seed).normalized();
        out.push_back(make_check("gauge", label + " projected state violation", gauge_violation(phys, inv), kLoose));
        for (auto variant : {GmVariant::kDirect, GmVariant::kMediated}) {
            Vec psi = Vec::Zero(full.layout().dim());
            psi.head(inv.size()) = inv;
            double worst = 0, fidelity = 1;
            RunOptions ro;
            ro.order = 2;
            ro.variant = variant;
            ro.on_substep = [&](const ScheduleEntry &, const Vec &state) {
                Vec p = state.head(phys.layout().dim());
                worst = std::max(worst, gauge_violation(phys, p));
                fidelity = std::min(fidelity, ancilla_fidelity(full.layout(), state));
            };
            run_trotter(full, psi, 0.6, 2, ro);
            const std::string v = variant == GmVariant::kDirect ? "direct" : "mediated";
            out.push_back(make_check("gauge", label + " " + v + " violation after every substep", worst, kLoose));
            out.push_back(make_check("gauge", label + " " + v + " ancilla fidelity after every substep", fidelity, 1 - kTight,
                                     Check::Kind::kAtLeast));
        }
    }
}

void stator_suite(const VerifyOptions &o, std::vector<Check> &out) {
    for (const GroupSpec &g : {GroupSpec::cyclic(2), GroupSpec::cyclic(3), fixture_dihedral3(o)}) {
        const Irrep &irrep = g.default_irrep();
        const int order = g.order();
        Mat s = stator_isometry(g);
        double worst = 0;
        for (int m = 0; m < irrep.dim; m++) {
            for (int n = 0; n < irrep.dim; n++) {
                Mat u = link_u_local(g, irrep, m, n);
                Mat ua = Eigen::kroneckerProduct(u, Mat::Identity(order, order)).eval();
                worst = std::max(worst, max_abs(ua * s - s * u));
            }
        }
        out.push_back(make_check("stator", g.name() + " single-link U~ S = S U", worst, kTight));

        Model m(g, Lattice({2, 2}), Couplings{}, ModelOptions{false, 1});
        const RegisterLayout &lay = m.layout();
        const int64_t pdim = lay.physical_dim();
        const int anchor = m.anchors(0).at(0);
        SparseMat iso = plaquette_isometry(m, anchor, 0).product().matrix();
        SparseMat sq = iso.leftCols(pdim);
        const auto roles = m.lattice().plane_role_links(anchor, 0);
        const int anc = m.ancilla_register(m.slot_for_anchor(anchor));
        double elem = 0, trace = 0;
        const auto table = plaquette_table(g, irrep);
        for (int a = 0; a < irrep.dim; a++) {
            for (int b = 0; b < irrep.dim; b++) {
                LinearOperator lhs = diagonal_operator(lay.dim(), [&](int64_t i) { return irrep.matrices[lay.digit(i, anc)](a, b); }, kOpNone);
                LinearOperator rhs = diagonal_operator(pdim, [&](int64_t i) {
                    const auto &D = irrep.matrices;
                    auto el = [&](int k) { return lay.digit(i, m.link_register(roles[k])); };
                    Mat p = D[el(0)] * D[el(1)] * D[el(2)].adjoint() * D[el(3)].adjoint();
                    return p(a, b);
                }, kOpNone);
                SparseMat diff = lhs.matrix() * sq - sq * rhs.matrix();
                elem = std::max(elem, sparse_max_abs(diff));
            }
        }
        const int n = order;
        LinearOperator tl = diagonal_operator(lay.dim(), [&](int64_t i) {
            return cplx(table[((size_t(lay.digit(i, anc)) * n + 0) * n + 0) * n + 0]);
        }, kOpNone);
        LinearOperator tr = diagonal_operator(pdim, [&](int64_t i) {
            auto el = [&](int k) { return size_t(lay.digit(i, m.link_register(roles[k]))); };
            return cplx(table[((el(0) * n + el(1)) * n + el(2)) * n + el(3)]);
        }, kOpNone);
        trace = sparse_max_abs(SparseMat(tl.matrix() * sq - sq * tr.matrix()));
        const std::string dims = std::to_string(lay.dim());
        out.push_back(make_check("stator", g.name() + " plaquette U~_mn S = S (U U U^dag U^dag)_mn, " + dims + "-dim", elem, kTight));
        out.push_back(make_check("stator", g.name() + " plaquette trace eigenoperator relation, " + dims + "-dim", trace, kTight));
    }
}

void trotter_suite(const VerifyOptions &, std::vector<Check> &out) {
    Model m(GroupSpec::cyclic(2), Lattice::cubic(2, 2), Couplings{}, ModelOptions{true, 0});
    const double t = 0.5;
    const std::vector<double> ns{2, 4, 8, 16, 32};
    for (int order : {1, 2}) {
        std::vector<double> eps;
        double margin = 0;
        for (double n : ns) {
            EmpiricalOptions eo;
            eo.order = order;
            eps.push_back(empirical_error(m, t, (int)n, eo));
            BoundParams p = BoundParams::from_model(m, t, (int)n);
            const double bound = order == 1 ? first_order_bound(p) : second_order_bound(p);
            margin = std::max(margin, eps.back() / bound);
        }
        const std::string o = "order " + std::to_string(order);
        out.push_back(make_check("trotter", o + " log-log slope of the error", loglog_slope(ns, eps), 0.15, Check::Kind::kNear, -order));
        out.push_back(make_check("trotter", o + " max error / bound", margin, 1.0));
    }
}

void atomic_suite(const VerifyOptions &, std::vector<Check> &out) {
    for (auto target : {CompileTarget::kElectric, CompileTarget::kPlaquette, CompileTarget::kGaugeMatter}) {
        PulseSequence seq = compile(target, Couplings{}, 0.37);
        out.push_back(make_check("atomic", "compiled " + target_name(target) + " vs abstract gate", verify_compiled(seq), kLoose));
    }
    // psi^dag conjugation by the Fock lift of every doublet matrix
    Model m(GroupSpec::dihedral(3), Lattice({2}), Couplings{}, ModelOptions{true, 0});
    const RegisterLayout &lay = m.layout();
    double conj = 0;
    for (int e = 0; e < 6; e++) {
        LocalGate gate{{LocalFactor::modes(m.first_mode(0), 2)}, gauge_matter_block(m, e)};
        LinearOperator w = embed_local(lay, gate, kOpUnitary);
        const Mat &d = m.irrep().matrices[e];
        for (int n = 0; n < 2; n++) {
            LinearOperator lhs = w * fermion_operator(lay, m.mode(0, n), true) * w.adjoint();
            LinearOperator rhs = fermion_operator(lay, m.mode(0, 0), true).scaled(d(0, n)) +
                                 fermion_operator(lay, m.mode(0, 1), true).scaled(d(1, n));
            conj = std::max(conj, sparse_max_abs((lhs - rhs).matrix()));
        }
    }
    out.push_back(make_check("atomic", "U_W psi^dag U_W^dag = psi^dag U", conj, kTight));

    std::vector<ExperimentalGate> gates{{"stat", 0.1, ExperimentalErrorKind::kStatisticalTimed, 0}};
    out.push_back(make_check("atomic", "statistical budget row at N = 8", experimental_error_budget(gates, 1.0, 8)[0], 0, Check::Kind::kNear,
                             0.025));
}

}  // namespace

Check make_check(std::string suite, std::string name, double value, double tolerance, Check::Kind kind, double target) {
    Check c{std::move(suite), std::move(name), value, tolerance, target, kind, false};
    switch (kind) {
        case Check::Kind::kAtMost:
            c.passed = value <= tolerance;
            break;
        case Check::Kind::kAtLeast:
            c.passed = value >= tolerance;
            break;
        case Check::Kind::kNear:
            c.passed = std::abs(value - target) <= tolerance;
            break;
    }
    c.passed = c.passed && std::isfinite(value);
    return c;
}

std::vector<std::string> suite_names() {
    return {"group", "gauge", "stator", "trotter", "atomic"};
}

GroupSpec fixture_dihedral3(const VerifyOptions &options) {
    if (options.fault.empty()) {
        return GroupSpec::dihedral(3);
    }
    require(options.fault == "theta-sign", ErrorCode::kInvalidArgument, "unknown fault '" + options.fault + "'");
    // (p, m)(r, s) = (p + r, m + s): the reflection sign dropped from the composition table.
    std::vector<int> compose(36), inverse(6);
    for (int a = 0; a < 6; a++) {
        for (int b = 0; b < 6; b++) {
            compose[a * 6 + b] = (a % 3 + b % 3) % 3 + 3 * ((a / 3 + b / 3) % 2);
        }
        inverse[a] = (3 - a % 3) % 3 + 3 * (a / 3);
    }
    return GroupSpec::from_tables_unchecked(GroupKind::kDihedral, 3, compose, inverse);
}

std::vector<Check> run_suite(const std::string &suite, const VerifyOptions &options) {
    std::vector<Check> out;
    if (suite == "all") {
        for (const auto &s : suite_names()) {
            auto part = run_suite(s, options);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    if (suite == "group") {
        group_suite(options, out);
    } else if (suite == "gauge") {
        gauge_suite(options, out);
    } else if (suite == "stator") {
        stator_suite(options, out);
    } else if (suite == "trotter") {
        trotter_suite(options, out);
    } else if (suite == "atomic") {
        atomic_suite(options, out);
    } else {
        fail(ErrorCode::kInvalidArgument, "unknown suite '" + suite + "'");
    }
    return out;
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    require(x.size() == y.size() && x.size() >= 2, ErrorCode::kInvalidArgument, "slope needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = (double)x.size();
    for (size_t i = 0; i < x.size(); i++) {
        require(x[i] > 0 && y[i] > 0, ErrorCode::kInvalidArgument, "log-log slope needs positive values");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lgt
