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
#include <vector>

#include "gtest/gtest.h"
#include "lgtsim/bounds.hpp"
#include "lgtsim/error.hpp"
#include "lgtsim/hamiltonians.hpp"

using namespace lgt;

namespace {

Model physical(GroupSpec g, Lattice lat, bool matter = true, Couplings c = {}) {
    return Model(std::move(g), std::move(lat), c, ModelOptions{matter, 0});
}

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = (double)x.size();
    for (size_t i = 0; i < x.size(); i++) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST(bounds, rational_arithmetic_is_exact) {
    Rational a(6, -4);
    EXPECT_EQ(a.num(), -3);
    EXPECT_EQ(a.den(), 2);
    EXPECT_EQ(a + Rational(3, 2), Rational(0));
    EXPECT_EQ(a * Rational(-2, 3), Rational(1));
    EXPECT_EQ(Rational(5, 4) / Rational(5, 2), Rational(1, 2));
    EXPECT_THROW(Rational(1, 0), Error);
}

TEST(bounds, general_forms_specialize_to_the_printed_cubic_forms) {
    const Rational maxf(2);
    EXPECT_EQ(specialize_cubic3(first_order_form(3, 1), maxf), printed_cyclic_first_order().expanded());
    EXPECT_EQ(specialize_cubic3(first_order_form(3, 2), maxf), printed_dihedral_first_order().expanded());
    EXPECT_EQ(specialize_cubic3(second_order_form(3, 1), maxf), printed_cyclic_second_order().expanded());
    EXPECT_EQ(specialize_cubic3(second_order_form(3, 2), maxf), printed_dihedral_second_order().expanded());

    Polynomial::Monomial be{1, 1, 0, 0, 0}, ge{0, 1, 1, 0, 0}, mg{0, 0, 1, 1, 0}, gg{0, 0, 2, 0, 0};
    ClosedForm z = printed_cyclic_first_order();
    EXPECT_EQ(z.prefactor, Rational(3));
    EXPECT_EQ(z.poly.coefficient(be), Rational(16));
    EXPECT_EQ(z.poly.coefficient(ge), Rational(2));
    EXPECT_EQ(z.poly.coefficient(mg), Rational(1));
    EXPECT_EQ(z.poly.coefficient(gg), Rational(5, 4));
    EXPECT_EQ(printed_dihedral_first_order().prefactor, Rational(6));
    EXPECT_EQ(printed_dihedral_second_order().prefactor, Rational(2));
    EXPECT_EQ(printed_dihedral_second_order().poly.coefficient({0, 0, 3, 0, 0}), Rational(125, 12));
}

TEST(bounds, zero_couplings_give_zero_bounds) {
    BoundParams p;
    p.num_links = 12;
    p.max_f = 2;
    p.lambda_b = p.lambda_e = p.lambda_gm = p.mass = 0;
    for (const auto &b : commutator_bounds(p)) {
        EXPECT_EQ(b.value, 0.0) << b.name;
    }
    for (const auto &b : nested_commutator_bounds(p)) {
        EXPECT_EQ(b.value, 0.0) << b.name;
    }
    EXPECT_EQ(first_order_bound(p), 0.0);
    EXPECT_EQ(second_order_bound(p), 0.0);
}

TEST(bounds, magnetic_electric_commutator_bound_arithmetic) {
    BoundParams p;
    p.d = 3;
    p.d_u = 1;
    p.max_f = 2;
    p.num_links = 12;
    double value = -1;
    for (const auto &b : commutator_bounds(p)) {
        if (b.name == "[H_B,H_E]") {
            value = b.value;
        }
    }
    EXPECT_DOUBLE_EQ(value, 384.0);
}

TEST(bounds, cubic_three_dimensional_totals) {
    BoundParams p = BoundParams::from_parts(GroupSpec::cyclic(3), Lattice::cubic(3, 2), Couplings{}, true, 1.0, 10);
    EXPECT_EQ(p.num_links, 12);
    EXPECT_NEAR(p.max_f, 2.0, 1e-12);
    EXPECT_NEAR(first_order_bound(p), 1.2 * (16 + 2 + 1 + 1.25), 1e-12);

    BoundParams q = BoundParams::from_parts(GroupSpec::dihedral(3), Lattice::cubic(3, 2), Couplings{}, true, 1.0, 10);
    EXPECT_EQ(q.d_u, 2);
    EXPECT_NEAR(q.max_f, 2.0, 1e-12);
    EXPECT_NEAR(first_order_bound(q), 2 * first_order_bound(p), 1e-12);

    // printed second-order form: 1 * t^3 (L-1) L^2 / N^2 * (...), N_links = 3 (L-1) L^2.
    const double printed_z = 4.0 / 100.0 * (64 * 3 + 2 * 12 + 6.5 + 125.0 / 12);
    EXPECT_NEAR(second_order_bound(p), printed_z, 1e-12);
    const double printed_d = 2 * 4.0 / 100.0 * (128 * 2 + 2 * 23 + 6.5 + 125.0 / 12);
    EXPECT_NEAR(second_order_bound(q), printed_d, 1e-12);
}

TEST(bounds, step_doubling_scales_the_totals) {
    BoundParams p;
    p.num_links = 12;
    p.max_f = 2;
    p.t = 0.7;
    p.steps = 5;
    const double f1 = first_order_bound(p), s1 = second_order_bound(p);
    p.steps = 10;
    EXPECT_NEAR(first_order_bound(p), f1 / 2, 1e-12);
    EXPECT_NEAR(second_order_bound(p), s1 / 4, 1e-12);
    p.steps = 0;
    EXPECT_THROW(first_order_bound(p), Error);
}

TEST(bounds, report_totals_are_consistent) {
    BoundParams p;
    p.d = 2;
    p.num_links = 4;
    p.max_f = 3;
    p.t = 0.5;
    p.steps = 4;
    BoundReport r = bound_report(p);
    EXPECT_EQ(r.commutators.size(), 7u);
    EXPECT_EQ(r.nested.size(), 7u);
    EXPECT_DOUBLE_EQ(r.first_order, first_order_bound(p));
    EXPECT_DOUBLE_EQ(r.second_order, second_order_bound(p));
    EXPECT_GE(r.first_order_from_terms, 0.0);
}

TEST(bounds, measured_commutators_respect_the_bounds) {
    std::vector<Model> models{
        physical(GroupSpec::cyclic(2), Lattice::cubic(2, 2)),
        physical(GroupSpec::cyclic(3), Lattice({3})),
        physical(GroupSpec::dihedral(3), Lattice({2})),
        physical(GroupSpec::cyclic(2), Lattice::cubic(2, 2), true, Couplings{0.7, 1.3, 0.4, 2.1}),
    };
    for (const auto &m : models) {
        int nonzero = 0;
        for (const auto &c : measure_commutators(m)) {
            EXPECT_LE(c.measured, c.bound * (1 + 1e-9) + 1e-9) << m.group().name() << " " << c.name;
            nonzero += c.measured > 1e-9;
        }
        EXPECT_GT(nonzero, 0) << m.group().name();
    }
}

TEST(bounds, commuting_pieces_have_no_trotter_error) {
    Couplings c{0.0, 1.0, 0.0, 0.8};
    Model m = physical(GroupSpec::cyclic(2), Lattice::cubic(2, 2), true, c);
    for (int steps : {1, 3}) {
        EXPECT_LT(empirical_error(m, 0.9, steps), 1e-12);
    }
}

TEST(bounds, empirical_error_follows_the_order) {
    Model m = physical(GroupSpec::cyclic(2), Lattice::cubic(2, 2));
    const double t = 0.5;
    std::vector<double> ns{2, 4, 8, 16, 32};
    std::vector<double> e1, e2;
    for (double n : ns) {
        EmpiricalOptions o1, o2;
        o2.order = 2;
        e1.push_back(empirical_error(m, t, (int)n, o1));
        e2.push_back(empirical_error(m, t, (int)n, o2));
        BoundParams p = BoundParams::from_model(m, t, (int)n);
        EXPECT_LE(e1.back(), first_order_bound(p));
        EXPECT_LE(e2.back(), second_order_bound(p));
        if (n >= 8) {
            EXPECT_LE(e2.back(), e1.back());
        }
    }
    for (size_t i = 0; i + 2 < ns.size(); i++) {
        double ratio = e1[i] / e1[i + 1];
        EXPECT_GE(ratio, 1.7);
        EXPECT_LE(ratio, 2.3);
    }
    EXPECT_NEAR(loglog_slope(ns, e1), -1.0, 0.15);
    EXPECT_NEAR(loglog_slope(ns, e2), -2.0, 0.15);
}

TEST(bounds, state_probe_is_below_the_operator_norm) {
    Model m = Model(GroupSpec::cyclic(2), Lattice::cubic(2, 2), Couplings{}, ModelOptions{true, 1});
    EmpiricalOptions op, st;
    st.mode = ProbeMode::kState;
    st.variant = op.variant = GmVariant::kMediated;
    st.random_probes = 4;
    const double a = empirical_error(m, 0.5, 4, op), b = empirical_error(m, 0.5, 4, st);
    EXPECT_GT(b, 0.0);
    EXPECT_LE(b, a * (1 + 1e-9));
    EmpiricalOptions small = op;
    small.operator_limit = 16;
    EXPECT_THROW(empirical_error(m, 0.5, 4, small), Error);
}

TEST(bounds, experimental_budget_rows) {
    std::vector<ExperimentalGate> gates{
        {"a", 0.1, ExperimentalErrorKind::kStatisticalTimed, 0},
        {"b", 0.1, ExperimentalErrorKind::kSystematicTimed, 0},
        {"c", 0.2, ExperimentalErrorKind::kStatisticalFixed, 0.5},
        {"d", 0.2, ExperimentalErrorKind::kSystematicFixed, 0.5},
    };
    auto b8 = experimental_error_budget(gates, 1.0, 8);
    EXPECT_DOUBLE_EQ(b8[0], 0.025);
    EXPECT_DOUBLE_EQ(b8[1], 0.1);
    EXPECT_DOUBLE_EQ(b8[2], 0.2 * 4 * 0.5);
    EXPECT_DOUBLE_EQ(b8[3], 0.2 * 16 * 0.5);
    auto b32 = experimental_error_budget(gates, 1.0, 32);
    EXPECT_DOUBLE_EQ(b32[1], b8[1]);
    EXPECT_DOUBLE_EQ(b32[0], 0.0125);
    EXPECT_THROW(experimental_error_budget(gates, 1.0, 0), Error);
}
