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

#ifndef LGTSIM_BOUNDS_HPP
#define LGTSIM_BOUNDS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgtsim/digital.hpp"

namespace lgt {

/// Exact rational with a positive denominator in lowest terms.
class Rational {
   public:
    Rational(int64_t num = 0, int64_t den = 1);
    int64_t num() const {
        return num_;
    }
    int64_t den() const {
        return den_;
    }
    double value() const {
        return (double)num_ / (double)den_;
    }
    Rational operator+(const Rational &o) const;
    Rational operator-(const Rational &o) const;
    Rational operator*(const Rational &o) const;
    Rational operator/(const Rational &o) const;
    bool operator==(const Rational &o) const = default;
    std::string str() const;

   private:
    int64_t num_ = 0;
    int64_t den_ = 1;
};

/// Variables of the bound polynomials.
enum BoundVar { kLambdaB, kLambdaE, kLambdaGm, kMass, kMaxF, kNumBoundVars };

/// Polynomial with rational coefficients in the couplings and max|f|.
class Polynomial {
   public:
    using Monomial = std::array<int, kNumBoundVars>;

    static Polynomial constant(Rational c);
    static Polynomial var(BoundVar v);

    Polynomial operator+(const Polynomial &o) const;
    Polynomial operator*(const Polynomial &o) const;
    Polynomial operator*(const Rational &c) const;
    bool operator==(const Polynomial &o) const {
        return terms_ == o.terms_;
    }
    /// Replaces a variable by a rational value.
    Polynomial substitute(BoundVar v, Rational value) const;
    double evaluate(const std::array<double, kNumBoundVars> &values) const;
    Rational coefficient(const Monomial &m) const;
    const std::map<Monomial, Rational> &terms() const {
        return terms_;
    }
    std::string str() const;

   private:
    void add_term(const Monomial &m, const Rational &c);
    std::map<Monomial, Rational> terms_;
};

/// bound = prefactor * t^time_power * N_links / N^(time_power - 1) * poly.
struct ClosedForm {
    int time_power = 2;
    Rational prefactor;
    Polynomial poly;
    /// prefactor * poly, the coefficient of t^k N_links / N^(k-1).
    Polynomial expanded() const {
        return poly * prefactor;
    }
};

/// General closed forms in d dimensions with irrep dimension d_U.
ClosedForm first_order_form(int d, int d_u);
ClosedForm second_order_form(int d, int d_u);
/// Closed forms printed for d = 3 cubic lattices, with max|f| = 2 already inserted. Their prefactor multiplies
/// t^k (L-1) L^2 / N^(k-1) rather than N_links.
ClosedForm printed_cyclic_first_order();
ClosedForm printed_cyclic_second_order();
ClosedForm printed_dihedral_first_order();
ClosedForm printed_dihedral_second_order();
/// Rewrites a general d = 3 form in terms of (L-1) L^2 (N_links = 3 (L-1) L^2) and inserts max|f|.
Polynomial specialize_cubic3(const ClosedForm &form, Rational max_f);

struct BoundParams {
    int d = 3;
    int64_t num_links = 0;
    int d_u = 1;
    double max_f = 0;
    double lambda_b = 1, lambda_e = 1, lambda_gm = 1, mass = 1;
    double t = 1;
    int steps = 1;

    /// max|f| is measured on a single link of the group, so no full layout is built.
    static BoundParams from_parts(
        const GroupSpec &group, const Lattice &lattice, const Couplings &couplings, bool with_matter, double t, int steps);
    static BoundParams from_model(const Model &model, double t, int steps);
};

struct NamedBound {
    std::string name;
    double value = 0;
};

struct BoundReport {
    std::vector<NamedBound> commutators;
    std::vector<NamedBound> nested;
    double first_order = 0;
    double second_order = 0;
    /// t^2/(2N) times the sum of the individual first-order terms over every pair of pieces.
    double first_order_from_terms = 0;
    std::optional<double> measured;
};

std::vector<NamedBound> commutator_bounds(const BoundParams &p);
std::vector<NamedBound> nested_commutator_bounds(const BoundParams &p);
double first_order_bound(const BoundParams &p);
double second_order_bound(const BoundParams &p);
BoundReport bound_report(const BoundParams &p);

struct CommutatorCheck {
    std::string name;
    double measured = 0;
    double bound = 0;
};

/// Measured norms of every bounded commutator on a physical (ancilla-free) model, paired with the printed bounds.
std::vector<CommutatorCheck> measure_commutators(const Model &model, const NormOptions &options = {});

enum class ProbeMode { kState, kOperator };

struct EmpiricalOptions {
    int order = 1;
    ProbeMode mode = ProbeMode::kOperator;
    GmVariant variant = GmVariant::kDirect;
    int random_probes = 32;
    uint64_t seed = 7;
    /// Largest physical dimension accepted for the operator probe.
    int64_t operator_limit = 2048;
};

/// ||U(t) - U_N(t)|| for the Trotter engine on `model` against exact evolution of the physical Hamiltonian.
/// The operator probe restricts the engine to the ancilla reference sector; the state probe maximizes over the
/// vacuum and seeded random states.
double empirical_error(const Model &model, double t, int steps, const EmpiricalOptions &options = {});

enum class ExperimentalErrorKind { kStatisticalTimed, kSystematicTimed, kStatisticalFixed, kSystematicFixed };

struct ExperimentalGate {
    std::string name;
    double norm = 0;
    ExperimentalErrorKind kind = ExperimentalErrorKind::kStatisticalTimed;
    double t_exp = 0;
};

std::vector<double> experimental_error_budget(const std::vector<ExperimentalGate> &gates, double t, int steps);

}  // namespace lgt

#endif
