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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "gtest/gtest.h"
#include "lgtsim/error.hpp"
#include "lgtsim/hamiltonians.hpp"

using namespace lgt;

namespace {

Model physical(GroupSpec g, Lattice lat, bool matter = true) {
    return Model(std::move(g), std::move(lat), Couplings{}, ModelOptions{matter, 0});
}

std::vector<double> sorted_eigenvalues(const Mat &h) {
    auto v = hermitian_eigen(h, false).values;
    std::vector<double> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end());
    return out;
}

/// Local creation operator on `count` modes, written out from the Jordan-Wigner string.
Mat local_creation(int count, int mode) {
    const int dim = 1 << count;
    Mat c = Mat::Zero(dim, dim);
    for (int occ = 0; occ < dim; occ++) {
        if (occ >> mode & 1) {
            continue;
        }
        int below = std::popcount((unsigned)(occ & ((1 << mode) - 1)));
        c(occ | (1 << mode), occ) = below % 2 ? -1.0 : 1.0;
    }
    return c;
}

double max_abs(const LinearOperator &a) {
    double m = 0;
    for (int r = 0; r < a.matrix().outerSize(); r++) {
        for (SparseMat::InnerIterator it(a.matrix(), r); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

}  // namespace

TEST(hamiltonians, electric_spectra) {
    auto z2 = physical(GroupSpec::cyclic(2), Lattice::cubic(1, 2));
    auto z3 = physical(GroupSpec::cyclic(3), Lattice::cubic(1, 2));
    auto d3 = physical(GroupSpec::dihedral(3), Lattice::cubic(1, 2));
    auto expect = [](const std::vector<double> &got, std::vector<double> want) {
        ASSERT_EQ(got.size(), want.size());
        for (size_t i = 0; i < want.size(); i++) {
            EXPECT_NEAR(got[i], want[i], 1e-12);
        }
    };
    expect(sorted_eigenvalues(electric_link_matrix(z2)), {-1, 3});
    expect(sorted_eigenvalues(electric_link_matrix(z3)), {-1, 2, 2});
    expect(sorted_eigenvalues(electric_link_matrix(d3)), {-1, 0, 2, 2, 2, 2});
    EXPECT_NEAR(max_electric(z2), 3, 1e-12);
    EXPECT_NEAR(max_electric(z3), 2, 1e-12);
    EXPECT_NEAR(max_electric(d3), 2, 1e-12);
}

TEST(hamiltonians, electric_angular_and_irrep_routes_agree) {
    for (auto g : {GroupSpec::cyclic(2), GroupSpec::cyclic(4), GroupSpec::cyclic(5), GroupSpec::dihedral(3), GroupSpec::dihedral(5)}) {
        Couplings c;
        std::vector<double> f;
        for (int l = 0; l <= g.n() / 2; l++) {
            f.push_back(0.3 + 0.7 * l * l - 0.1 * l);
        }
        c.f_l = f;
        if (g.kind() == GroupKind::kDihedral) {
            c.f_r = 0.45;
        }
        Model m(g, Lattice::cubic(1, 2), c, ModelOptions{true, 0});
        EXPECT_LT((electric_link_matrix(m) - electric_link_matrix_from_irreps(m)).norm(), 1e-12) << g.name();
    }
}

TEST(hamiltonians, cyclic_electric_is_one_minus_shifts) {
    for (int n : {2, 3, 4, 7}) {
        auto m = physical(GroupSpec::cyclic(n), Lattice::cubic(1, 2));
        Mat shift = Mat::Zero(n, n);
        for (int p = 0; p < n; p++) {
            shift((p + 1) % n, p) = 1;
        }
        Mat oracle = Mat::Identity(n, n) - shift - shift.adjoint();
        EXPECT_LT((electric_link_matrix(m) - oracle).norm(), 1e-12) << n;
    }
}

TEST(hamiltonians, link_transformations_rotate_connection) {
    for (auto g : {GroupSpec::cyclic(3), GroupSpec::dihedral(3), GroupSpec::dihedral(5)}) {
        const Irrep &irrep = g.default_irrep();
        for (int e = 0; e < g.order(); e++) {
            Mat left = theta_left_local(g, e), right = theta_right_local(g, e);
            const Mat &d = irrep.matrices[e];
            for (int a = 0; a < irrep.dim; a++) {
                for (int b = 0; b < irrep.dim; b++) {
                    Mat lhs_l = left * link_u_local(g, irrep, a, b) * left.adjoint();
                    Mat lhs_r = right * link_u_local(g, irrep, a, b) * right.adjoint();
                    Mat rhs_l = Mat::Zero(g.order(), g.order()), rhs_r = rhs_l;
                    for (int k = 0; k < irrep.dim; k++) {
                        rhs_l += d(a, k) * link_u_local(g, irrep, k, b);
                        rhs_r += link_u_local(g, irrep, a, k) * d(k, b);
                    }
                    EXPECT_LT((lhs_l - rhs_l).norm(), 1e-12);
                    EXPECT_LT((lhs_r - rhs_r).norm(), 1e-12);
                }
            }
        }
    }
}

TEST(hamiltonians, matter_transformation_rotates_creation_operators) {
    for (auto g : {GroupSpec::cyclic(3), GroupSpec::dihedral(3)}) {
        auto m = physical(g, Lattice::cubic(1, 2));
        const int du = m.d_u();
        for (int e = 0; e < g.order(); e++) {
            Mat theta = matter_transform_local(m, 0, e, false);
            const Mat &d = m.irrep().matrices[e];
            for (int n = 0; n < du; n++) {
                Mat lhs = theta * local_creation(du, n) * theta.adjoint();
                Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
                for (int k = 0; k < du; k++) {
                    rhs += local_creation(du, k) * d(k, n);
                }
                EXPECT_LT((lhs - rhs).norm(), 1e-12);
            }
            EXPECT_LT((theta * theta.adjoint() - Mat::Identity(theta.rows(), theta.cols())).norm(), 1e-12);
        }
    }
}

TEST(hamiltonians, staggered_odd_site_picks_up_determinant) {
    auto m = physical(GroupSpec::dihedral(3), Lattice::cubic(1, 2));
    const int reflection = m.group().element(0, 1);
    Mat odd = matter_transform_local(m, 1, reflection, true);
    Mat even = matter_transform_local(m, 0, reflection, true);
    EXPECT_NEAR(std::abs(odd(0, 0) - cplx(-1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(odd(3, 3) - cplx(1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(even(0, 0) - cplx(1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(even(3, 3) - cplx(-1)), 0, 1e-12);
}

TEST(hamiltonians, gauss_operators_commute_with_every_term) {
    std::vector<Model> models{
        physical(GroupSpec::cyclic(2), Lattice::cubic(2, 2)),
        physical(GroupSpec::cyclic(3), Lattice({3})),
        physical(GroupSpec::dihedral(3), Lattice({3})),
        physical(GroupSpec::dihedral(3), Lattice({2, 2}), false),
    };
    for (const auto &m : models) {
        std::vector<LinearOperator> terms{
            hamiltonian_electric(m), hamiltonian_magnetic(m), hamiltonian_mass(m), hamiltonian_gauge_matter(m)};
        for (int v = 0; v < m.lattice().num_vertices(); v++) {
            for (int g = 1; g < m.group().order(); g++) {
                LinearOperator gauss = gauss_operator(m, v, g);
                for (const auto &h : terms) {
                    EXPECT_LE(frobenius_norm(commutator(gauss, h)), 1e-10) << m.group().name() << " " << h.name();
                }
            }
        }
    }
}

// With left action |h> -> |g^-1 h> the vertex operators compose in reverse: G(a) G(b) = G(b a).
TEST(hamiltonians, gauss_operators_compose_in_reverse_order) {
    auto m = physical(GroupSpec::dihedral(3), Lattice({3}));
    for (int v = 0; v < 3; v++) {
        for (int a = 0; a < 6; a++) {
            for (int b = 0; b < 6; b++) {
                LinearOperator lhs = gauss_operator(m, v, a) * gauss_operator(m, v, b);
                LinearOperator rhs = gauss_operator(m, v, m.group().compose(b, a));
                EXPECT_LE(max_abs(lhs - rhs), 1e-12);
            }
        }
    }
}

TEST(hamiltonians, vacuum_is_gauge_invariant_and_charges_are_not) {
    for (auto g : {GroupSpec::cyclic(2), GroupSpec::cyclic(3), GroupSpec::dihedral(3)}) {
        auto m = physical(g, Lattice({3}));
        Vec vac = vacuum_state(m);
        EXPECT_NEAR(vac.norm(), 1, 1e-12);
        EXPECT_LE(gauge_violation(m, vac), 1e-12);
        Vec charged = fermion_operator(m.layout(), m.mode(0, 0), true).apply(vac);
        ASSERT_NEAR(charged.norm(), 1, 1e-12);
        EXPECT_GT(gauge_violation(m, charged), 0.1) << g.name();
    }
}

TEST(hamiltonians, z2_magnetic_is_product_of_link_signs) {
    Couplings c;
    c.lambda_b = 0.7;
    Model m(GroupSpec::cyclic(2), Lattice::cubic(2, 2), c, ModelOptions{false, 0});
    LinearOperator hb = hamiltonian_magnetic(m);
    const auto links = m.lattice().plaquettes()[0].links;
    for (int64_t i = 0; i < m.layout().dim(); i++) {
        int sign = 1;
        for (int l : links) {
            sign *= m.layout().digit(i, m.link_register(l)) ? -1 : 1;
        }
        EXPECT_NEAR(std::abs(hb.matrix().coeff(i, i) - cplx(2 * 0.7 * sign)), 0, 1e-12);
    }
}

TEST(hamiltonians, z2_gauge_matter_matches_operator_products) {
    Couplings c;
    c.lambda_gm = 0.8;
    Model m(GroupSpec::cyclic(2), Lattice::cubic(2, 2), c, ModelOptions{true, 0});
    const RegisterLayout &layout = m.layout();
    LinearOperator oracle = LinearOperator::zero(layout.dim());
    for (int l = 0; l < m.lattice().num_links(); l++) {
        const Link &lk = m.lattice().link(l);
        int y = m.lattice().shift(lk.base, lk.dir);
        LinearOperator sz = diagonal_operator(
            layout.dim(), [&](int64_t i) { return cplx(layout.digit(i, m.link_register(l)) ? -1.0 : 1.0); }, kOpHermitian | kOpUnitary);
        LinearOperator hopxy = fermion_operator(layout, m.mode(lk.base, 0), true) * sz * fermion_operator(layout, m.mode(y, 0), false);
        oracle = oracle + hopxy.scaled(0.8) + hopxy.adjoint().scaled(0.8);
    }
    EXPECT_LE(max_abs(hamiltonian_gauge_matter(m) - oracle), 1e-12);
    LinearOperator parts = hamiltonian_gauge_matter(m, 0, 0) + hamiltonian_gauge_matter(m, 0, 1) + hamiltonian_gauge_matter(m, 1, 0) +
                           hamiltonian_gauge_matter(m, 1, 1);
    EXPECT_LE(max_abs(parts - oracle), 1e-12);
}

TEST(hamiltonians, mass_term_is_staggered) {
    Couplings c;
    c.mass = 0.6;
    auto m = Model(GroupSpec::dihedral(3), Lattice({3}), c, ModelOptions{true, 0});
    LinearOperator hm = hamiltonian_mass(m);
    LinearOperator oracle = LinearOperator::zero(m.layout().dim());
    for (int v = 0; v < 3; v++) {
        for (int a = 0; a < 2; a++) {
            oracle = oracle + number_operator(m.layout(), m.mode(v, a)).scaled(0.6 * (v % 2 ? -1.0 : 1.0));
        }
    }
    EXPECT_LE(max_abs(hm - oracle), 1e-12);
}
