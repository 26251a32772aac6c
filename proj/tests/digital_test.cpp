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

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "gtest/gtest.h"
#include "lgtsim/digital.hpp"
#include "lgtsim/error.hpp"
#include "lgtsim/hamiltonians.hpp"

using namespace lgt;

namespace {

Model make(GroupSpec g, Lattice lat, bool matter, int slots) {
    return Model(std::move(g), std::move(lat), Couplings{}, ModelOptions{matter, slots});
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

/// Embeds a physical state into the sector with every ancilla in the identity element.
Vec with_reference(const Model &full, const Vec &phys) {
    Vec out = Vec::Zero(full.layout().dim());
    out.head(phys.size()) = phys;
    return out;
}

}  // namespace

TEST(digital, entangler_is_left_multiplication) {
    auto g = GroupSpec::dihedral(3);
    Mat u = entangler_local(g);
    EXPECT_LT((u.adjoint() * u - Mat::Identity(36, 36)).norm(), 1e-14);
    for (int a = 0; a < 6; a++) {
        for (int b = 0; b < 6; b++) {
            Vec in = Vec::Zero(36);
            in[a + 6 * b] = 1;
            Vec out = u * in;
            EXPECT_EQ(std::abs(out[a + 6 * g.compose(a, b)]), 1.0);
        }
    }
    Mat s = stator_isometry(g);
    EXPECT_LT((s.adjoint() * s - Mat::Identity(6, 6)).norm(), 1e-14);
    for (int a = 0; a < 6; a++) {
        EXPECT_EQ(std::abs(s(a + 6 * a, a)), 1.0);
    }
}

TEST(digital, principal_log_reproduces_irreps) {
    for (auto g : {GroupSpec::cyclic(2), GroupSpec::cyclic(3), GroupSpec::cyclic(6), GroupSpec::dihedral(3), GroupSpec::dihedral(5)}) {
        for (int e = 0; e < g.order(); e++) {
            const Mat &d = g.default_irrep().matrices[e];
            Mat z = principal_log_generator(d);
            EXPECT_LT((z - z.adjoint()).norm(), 1e-12);
            Mat back = (cplx(0, 1) * z).exp();
            EXPECT_LT((back - d).norm(), 1e-10) << g.name() << " " << e;
            auto ev = hermitian_eigen(z, false).values;
            EXPECT_GT(ev.minCoeff(), -std::numbers::pi);
            EXPECT_LE(ev.maxCoeff(), std::numbers::pi + 1e-12);
        }
    }
}

TEST(digital, gauge_matter_block_is_fock_lift) {
    for (auto g : {GroupSpec::cyclic(2), GroupSpec::cyclic(5), GroupSpec::dihedral(3), GroupSpec::dihedral(5)}) {
        auto m = make(g, Lattice({2}), true, 0);
        for (int e = 0; e < g.order(); e++) {
            EXPECT_LT((gauge_matter_block(m, e) - fock_lift(m.irrep().matrices[e])).norm(), 1e-10) << g.name() << " " << e;
        }
    }
}

TEST(digital, tunneling_gate_matches_exact_evolution) {
    std::vector<Model> models{
        make(GroupSpec::cyclic(2), Lattice::cubic(2, 2), true, 0),
        make(GroupSpec::cyclic(3), Lattice::cubic(2, 2), true, 0),
        make(GroupSpec::dihedral(3), Lattice({3}), true, 0),
    };
    for (const auto &m : models) {
        for (int l = 0; l < m.lattice().num_links(); l++) {
            LinearOperator oracle = exp_hermitian(tunneling_link(m, l), 0.37);
            LinearOperator got = embed_local(m.layout(), tunneling_gate(m, l, 0.37), kOpUnitary);
            EXPECT_LT((oracle - got).matrix().norm(), 1e-10) << m.group().name() << " link " << l;
        }
    }
}

TEST(digital, direct_gauge_matter_substep_is_exact) {
    std::vector<Model> models{
        make(GroupSpec::cyclic(2), Lattice::cubic(2, 2), true, 0),
        make(GroupSpec::dihedral(3), Lattice({2}), true, 0),
        make(GroupSpec::dihedral(3), Lattice({3}), true, 0),
    };
    for (const auto &m : models) {
        for (int dir = 0; dir < m.lattice().dim(); dir++) {
            for (int parity : {0, 1}) {
                LinearOperator oracle = exp_hermitian(hamiltonian_gauge_matter(m, dir, parity), 0.41);
                LinearOperator got = gauge_matter_substep(m, dir, parity, 0.41, GmVariant::kDirect).product();
                EXPECT_LT((oracle - got).matrix().norm(), 1e-9) << m.group().name() << " " << dir << parity;
            }
        }
    }
}

TEST(digital, mediated_gauge_matter_substep_acts_on_reference_sector) {
    std::vector<Model> models{
        make(GroupSpec::cyclic(2), Lattice::cubic(2, 2), true, -1),
        make(GroupSpec::dihedral(3), Lattice({3}), true, -1),
    };
    for (const auto &full : models) {
        Model phys = full.with_ancilla_slots(0);
        for (int dir = 0; dir < full.lattice().dim(); dir++) {
            for (int parity : {0, 1}) {
                GateSequence seq = gauge_matter_substep(full, dir, parity, 0.29, GmVariant::kMediated);
                for (uint64_t seed : {1, 2}) {
                    Vec psi = random_state(phys.layout().dim(), seed);
                    EvolveOptions krylov;
                    krylov.force_krylov = true;
                    Vec oracle = evolve_exact(hamiltonian_gauge_matter(phys, dir, parity), 0.29, psi, krylov);
                    Vec got = with_reference(full, psi);
                    seq.apply(got);
                    EXPECT_LT((got - with_reference(full, oracle)).norm(), 1e-10) << full.group().name();
                }
            }
        }
    }
}

TEST(digital, plaquette_substep_acts_on_reference_sector) {
    std::vector<Model> models{
        make(GroupSpec::cyclic(2), Lattice::cubic(2, 2), false, -1),
        make(GroupSpec::cyclic(3), Lattice::cubic(2, 2), true, -1),
        make(GroupSpec::dihedral(3), Lattice::cubic(2, 2), false, 1),
        make(GroupSpec::cyclic(2), Lattice::cubic(3, 2), false, 1),
    };
    for (const auto &full : models) {
        Model phys = full.with_ancilla_slots(0);
        for (int plane = 0; plane < full.lattice().num_planes(); plane++) {
            for (int parity : {0, 1}) {
                GateSequence seq = plaquette_substep(full, plane, parity, 0.53);
                LinearOperator h = hamiltonian_magnetic(phys, plane, parity);
                Vec psi = random_state(phys.layout().dim(), 11 + plane);
                Vec oracle = psi;
                for (int64_t i = 0; i < psi.size(); i++) {
                    oracle[i] *= std::exp(cplx(0, -0.53) * h.matrix().coeff(i, i));
                }
                Vec got = with_reference(full, psi);
                seq.apply(got);
                EXPECT_LT((got - with_reference(full, oracle)).norm(), 1e-10) << full.group().name() << " plane " << plane;
            }
        }
    }
}

TEST(digital, electric_and_mass_substeps_are_exact) {
    auto m = make(GroupSpec::dihedral(3), Lattice({3}), true, 0);
    LinearOperator e = exp_hermitian(hamiltonian_electric(m), 0.61);
    EXPECT_LT((e - electric_substep(m, 0.61).product()).matrix().norm(), 1e-10);
    LinearOperator mass = exp_hermitian(hamiltonian_mass(m), 0.61);
    EXPECT_LT((mass - mass_substep(m, 0.61).product()).matrix().norm(), 1e-10);
}

TEST(digital, schedules_cover_each_term_for_the_full_time) {
    auto m = make(GroupSpec::cyclic(2), Lattice::cubic(3, 2), true, 1);
    for (int order : {1, 2}) {
        auto s = trotter_schedule(m, order, 1.5, 3);
        std::map<std::tuple<int, int, int>, double> total;
        for (const auto &e : s) {
            total[{(int)e.kind, e.piece, e.parity}] += e.duration;
        }
        // 3 planes x 2 parities + 3 directions x 2 parities + E + M.
        EXPECT_EQ(total.size(), 14u);
        for (const auto &[key, t] : total) {
            EXPECT_NEAR(t, 1.5, 1e-12);
        }
    }
    auto first = trotter_schedule(m, 1, 1.0, 1);
    ASSERT_EQ(first.size(), 14u);
    EXPECT_EQ(first[0].kind, FactorKind::kMagnetic);
    EXPECT_EQ(first[6].kind, FactorKind::kGaugeMatter);
    EXPECT_EQ(first[6].parity, 0);
    EXPECT_EQ(first[9].parity, 1);
    EXPECT_EQ(first[12].kind, FactorKind::kElectric);
    EXPECT_EQ(first[13].kind, FactorKind::kMass);
    auto second = trotter_schedule(m, 2, 1.0, 1);
    ASSERT_EQ(second.size(), 27u);
    for (size_t i = 0; i < second.size(); i++) {
        const auto &a = second[i], &b = second[second.size() - 1 - i];
        EXPECT_EQ(a.kind, b.kind);
        EXPECT_EQ(a.piece, b.piece);
        EXPECT_EQ(a.parity, b.parity);
    }
    EXPECT_THROW(trotter_schedule(m, 3, 1.0, 1), Error);
    EXPECT_THROW(trotter_schedule(m, 1, 1.0, 0), Error);
}

TEST(digital, local_error_shrinks_with_the_expected_order) {
    auto full = make(GroupSpec::cyclic(2), Lattice::cubic(2, 2), true, 1);
    Model phys = full.with_ancilla_slots(0);
    LinearOperator h = hamiltonian_total(phys);
    Vec psi = random_state(phys.layout().dim(), 5);
    for (int order : {1, 2}) {
        double err[2];
        for (int k = 0; k < 2; k++) {
            double tau = 0.04 / (1 << k);
            Vec got = with_reference(full, psi);
            trotter_step(full, order, tau, GmVariant::kMediated).apply(got);
            err[k] = (got - with_reference(full, evolve_exact(h, tau, psi))).norm();
        }
        double ratio = err[0] / err[1];
        EXPECT_NEAR(std::log2(ratio), order + 1, 0.3) << "order " << order;
    }
}

TEST(digital, observables_on_known_states) {
    auto m = make(GroupSpec::dihedral(3), Lattice::cubic(2, 2), true, 0);
    Vec vac = vacuum_state(m);
    EXPECT_NEAR(plaquette_expectation(m, vac), 0, 1e-12);
    auto dens = vertex_densities(m, vac);
    for (int v = 0; v < 4; v++) {
        EXPECT_NEAR(dens[v], m.lattice().parity(v) ? 2 : 0, 1e-12);
    }
    const auto &p = m.lattice().plaquettes()[0];
    std::vector<int> digits(m.layout().num_registers(), 0);
    int g[4] = {1, 4, 2, 3};
    for (int i = 0; i < 4; i++) {
        digits[m.link_register(p.links[i])] = g[i];
    }
    Vec basis = Vec::Zero(m.layout().dim());
    basis[m.layout().index(0, digits)] = 1;
    const auto &d = m.irrep().matrices;
    double oracle = (d[1] * d[4] * d[2].adjoint() * d[3].adjoint()).trace().real();
    EXPECT_NEAR(plaquette_expectation(m, basis), 2 * oracle, 1e-12);
    const int x = m.lattice().vertex({0, 0});
    EXPECT_NEAR(wilson_loop(m, basis, x, {1, 2, -1, -2}), oracle, 1e-12);
    EXPECT_THROW(wilson_loop(m, basis, x, {1, 2}), Error);
}

TEST(digital, run_keeps_gauge_invariance_and_ancillas_clean) {
    auto m = make(GroupSpec::dihedral(3), Lattice({3}), true, -1);
    Vec psi = vacuum_state(m);
    double worst_gauge = 0, worst_fidelity = 0;
    RunOptions opt;
    opt.order = 2;
    opt.variant = GmVariant::kMediated;
    opt.on_substep = [&](const ScheduleEntry &, const Vec &s) {
        worst_gauge = std::max(worst_gauge, gauge_violation(m, s));
        worst_fidelity = std::max(worst_fidelity, 1 - ancilla_fidelity(m.layout(), s));
    };
    auto rows = run_trotter(m, psi, 1.0, 4, opt);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_NEAR(rows.back().time, 1.0, 1e-12);
    EXPECT_LE(worst_gauge, 1e-10);
    EXPECT_LE(worst_fidelity, 1e-10);
    EXPECT_NEAR(psi.norm(), 1, 1e-10);
}
