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

#include "lgtsim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "lgtsim/error.hpp"
#include "lgtsim/hamiltonians.hpp"

namespace lgt {

namespace {

int64_t narrow(__int128 v) {
    require(v <= INT64_MAX && v >= -INT64_MAX, ErrorCode::kOutOfRange, "rational overflow");
    return (int64_t)v;
}

Rational make_rational(__int128 num, __int128 den) {
    require(den != 0, ErrorCode::kInvalidArgument, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 a = num < 0 ? -num : num, b = den;
    while (b != 0) {
        __int128 r = a % b;
        a = b;
        b = r;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(narrow(num), narrow(den));
}

Polynomial v(BoundVar x) {
    return Polynomial::var(x);
}

Polynomial c(int64_t num, int64_t den = 1) {
    return Polynomial::constant(Rational(num, den));
}

std::array<double, kNumBoundVars> values_of(const BoundParams &p) {
    return {p.lambda_b, p.lambda_e, p.lambda_gm, p.mass, p.max_f};
}

double evaluate_form(const ClosedForm &form, const BoundParams &p) {
    require(p.steps >= 1, ErrorCode::kInvalidArgument, "the number of Trotter steps must be at least 1");
    double scale = form.prefactor.value() * std::pow(p.t, form.time_power) * (double)p.num_links /
                   std::pow((double)p.steps, form.time_power - 1);
    return scale * form.poly.evaluate(values_of(p));
}

void check_params(const BoundParams &p) {
    require(p.d >= 1 && p.d_u >= 1 && p.num_links >= 0, ErrorCode::kInvalidArgument, "invalid lattice parameters");
    for (double x : {p.max_f, p.lambda_b, p.lambda_e, p.lambda_gm, p.mass, p.t}) {
        require(std::isfinite(x) && x >= 0, ErrorCode::kInvalidArgument, "bound parameters must be finite and non-negative");
    }
}

}  // namespace

Rational::Rational(int64_t num, int64_t den) {
    require(den != 0, ErrorCode::kInvalidArgument, "zero denominator");
    int64_t g = std::gcd(num, den);
    if (g == 0) {
        g = 1;
    }
    num_ = num / g;
    den_ = den / g;
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

Rational Rational::operator+(const Rational &o) const {
    return make_rational((__int128)num_ * o.den_ + (__int128)o.num_ * den_, (__int128)den_ * o.den_);
}

Rational Rational::operator-(const Rational &o) const {
    return make_rational((__int128)num_ * o.den_ - (__int128)o.num_ * den_, (__int128)den_ * o.den_);
}

Rational Rational::operator*(const Rational &o) const {
    return make_rational((__int128)num_ * o.num_, (__int128)den_ * o.den_);
}

Rational Rational::operator/(const Rational &o) const {
    return make_rational((__int128)num_ * o.den_, (__int128)den_ * o.num_);
}

std::string Rational::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Polynomial Polynomial::constant(Rational c) {
    Polynomial p;
    p.add_term({}, c);
    return p;
}

Polynomial Polynomial::var(BoundVar x) {
    Polynomial p;
    Monomial m{};
    m[x] = 1;
    p.add_term(m, Rational(1));
    return p;
}

void Polynomial::add_term(const Monomial &m, const Rational &c) {
    Rational sum = terms_.count(m) ? terms_[m] + c : c;
    if (sum.num() == 0) {
        terms_.erase(m);
    } else {
        terms_[m] = sum;
    }
}

Polynomial Polynomial::operator+(const Polynomial &o) const {
    Polynomial out = *this;
    for (const auto &[m, c] : o.terms_) {
        out.add_term(m, c);
    }
    return out;
}

Polynomial Polynomial::operator*(const Polynomial &o) const {
    Polynomial out;
    for (const auto &[ma, ca] : terms_) {
        for (const auto &[mb, cb] : o.terms_) {
            Monomial m;
            for (int i = 0; i < kNumBoundVars; i++) {
                m[i] = ma[i] + mb[i];
            }
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::operator*(const Rational &c) const {
    return *this * constant(c);
}

Polynomial Polynomial::substitute(BoundVar x, Rational value) const {
    Polynomial out;
    for (const auto &[m, c] : terms_) {
        Rational k = c;
        for (int i = 0; i < m[x]; i++) {
            k = k * value;
        }
        Monomial rest = m;
        rest[x] = 0;
        out.add_term(rest, k);
    }
    return out;
}

double Polynomial::evaluate(const std::array<double, kNumBoundVars> &values) const {
    double s = 0;
    for (const auto &[m, c] : terms_) {
        double t = c.value();
        for (int i = 0; i < kNumBoundVars; i++) {
            t *= std::pow(values[i], m[i]);
        }
        s += t;
    }
    return s;
}

Rational Polynomial::coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::string Polynomial::str() const {
    static const char *names[kNumBoundVars] = {"lB", "lE", "lGM", "M", "maxf"};
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        out << (first ? "" : " + ") << it->second.str();
        for (int i = 0; i < kNumBoundVars; i++) {
            for (int k = 0; k < it->first[i]; k++) {
                out << "*" << names[i];
            }
        }
        first = false;
    }
    return out.str();
}

ClosedForm first_order_form(int d, int d_u) {
    require(d >= 1 && d_u >= 1, ErrorCode::kInvalidArgument, "invalid dimension");
    Polynomial lb = v(kLambdaB), le = v(kLambdaE), lg = v(kLambdaGm), m = v(kMass), f = v(kMaxF);
    Polynomial poly = lb * le * c(4 * (d - 1)) * f + lg * le * f + m * lg + lg * lg * c(2 * d - 1, 4);
    return {2, Rational(d_u), poly};
}

ClosedForm second_order_form(int d, int d_u) {
    require(d >= 1 && d_u >= 1, ErrorCode::kInvalidArgument, "invalid dimension");
    Polynomial lb = v(kLambdaB), le = v(kLambdaE), lg = v(kLambdaGm), m = v(kMass), f = v(kMaxF);
    Polynomial be = c(16) * le * lb * f * c(d - 1) * (c(2) * le * f + lb * c(d_u * (d - 1)));
    Polynomial ge = lg * le * f * (c(2) * lg * c(d_u * (2 * (2 * d - 1) + 1)) + le * f);
    Polynomial gm = lg * m * (c(4 * d) * lg + m);
    Polynomial ggg = lg * lg * lg * c(2 * d - 1) * (c(4 * d - 1, 3) + c(1, 2));
    return {3, Rational(d_u, 6), be + ge + gm + ggg};
}

ClosedForm printed_cyclic_first_order() {
    Polynomial lb = v(kLambdaB), le = v(kLambdaE), lg = v(kLambdaGm), m = v(kMass);
    return {2, Rational(3), c(16) * lb * le + c(2) * lg * le + m * lg + lg * lg * c(5, 4)};
}

ClosedForm printed_cyclic_second_order() {
    Polynomial lb = v(kLambdaB), le = v(kLambdaE), lg = v(kLambdaGm), m = v(kMass);
    Polynomial poly = c(64) * le * lb * (c(2) * le + lb) + c(2) * lg * le * (c(11) * lg + le) + lg * m * (c(6) * lg + c(1, 2) * m) +
                      c(125, 12) * lg * lg * lg;
    return {3, Rational(1), poly};
}

ClosedForm printed_dihedral_first_order() {
    ClosedForm f = printed_cyclic_first_order();
    f.prefactor = Rational(6);
    return f;
}

ClosedForm printed_dihedral_second_order() {
    Polynomial lb = v(kLambdaB), le = v(kLambdaE), lg = v(kLambdaGm), m = v(kMass);
    Polynomial poly = c(128) * le * lb * (le + lb) + c(2) * lg * le * (c(22) * lg + le) + lg * m * (c(6) * lg + c(1, 2) * m) +
                      c(125, 12) * lg * lg * lg;
    return {3, Rational(2), poly};
}

Polynomial specialize_cubic3(const ClosedForm &form, Rational max_f) {
    return form.expanded().substitute(kMaxF, max_f) * Rational(3);
}

BoundParams BoundParams::from_parts(
    const GroupSpec &group, const Lattice &lattice, const Couplings &couplings, bool with_matter, double t, int steps) {
    BoundParams p;
    p.d = lattice.dim();
    p.num_links = lattice.num_links();
    const Model link(group, Lattice({2}), couplings, ModelOptions{false, 0});
    p.d_u = link.d_u();
    p.max_f = max_electric(link);
    p.lambda_b = std::abs(couplings.lambda_b);
    p.lambda_e = std::abs(couplings.lambda_e);
    p.lambda_gm = with_matter ? std::abs(couplings.lambda_gm) : 0.0;
    p.mass = with_matter ? std::abs(couplings.mass) : 0.0;
    p.t = t;
    p.steps = steps;
    return p;
}

BoundParams BoundParams::from_model(const Model &model, double t, int steps) {
    return from_parts(model.group(), model.lattice(), model.couplings(), model.has_matter(), t, steps);
}

std::vector<NamedBound> commutator_bounds(const BoundParams &p) {
    check_params(p);
    const double n = (double)p.num_links, du = p.d_u, d = p.d;
    return {
        {"[H_GM,i,H_GM,j]", p.lambda_gm * p.lambda_gm * n / d * du},
        {"[H_M,H_GM,i]", 2 * p.mass * p.lambda_gm * n * du},
        {"[H_GM,H_E]", n * p.lambda_gm * p.lambda_e * p.max_f * 2 * du},
        {"[H_B,H_E]", p.lambda_b * p.lambda_e * n * 8 * (d - 1) * p.max_f * du},
        {"[H_B,H_M]", 0.0},
        {"[H_E,H_M]", 0.0},
        {"[H_B,H_GM]", 0.0},
    };
}

std::vector<NamedBound> nested_commutator_bounds(const BoundParams &p) {
    check_params(p);
    const double n = (double)p.num_links, du = p.d_u, d = p.d, f = p.max_f;
    const double lb = p.lambda_b, le = p.lambda_e, lg = p.lambda_gm, m = p.mass;
    return {
        {"[[H_B,H_E],H_E]", le * le * lb * f * f * n * 64 * (d - 1) * du},
        {"[[H_B,H_E],H_B]", le * lb * lb * f * n * 64 * (d - 1) * (d - 1) * du * du},
        {"[[H_E,H_GM],H_GM]", lg * lg * le * f * n * (2 * (2 * d - 1) + 1) * 4 * du * du},
        {"[[H_E,H_GM],H_E]", lg * le * le * f * f * n * 4 * du},
        {"[[H_M,H_GM],H_GM]", lg * lg * m * n * 8 * d * du},
        {"[[H_M,H_GM],H_M]", 4 * lg * m * m * n * du},
        {"[[H_GM,i,H_GM,j],H_GM,l]", lg * lg * lg * n / d * 2 * du},
    };
}

double first_order_bound(const BoundParams &p) {
    check_params(p);
    return evaluate_form(first_order_form(p.d, p.d_u), p);
}

double second_order_bound(const BoundParams &p) {
    check_params(p);
    return evaluate_form(second_order_form(p.d, p.d_u), p);
}

BoundReport bound_report(const BoundParams &p) {
    BoundReport r;
    r.commutators = commutator_bounds(p);
    r.nested = nested_commutator_bounds(p);
    r.first_order = first_order_bound(p);
    r.second_order = second_order_bound(p);
    const double pairs = p.d * (2.0 * p.d - 1);
    double sum = pairs * r.commutators[0].value + r.commutators[1].value / 2 + r.commutators[2].value + r.commutators[3].value;
    r.first_order_from_terms = p.t * p.t / (2.0 * p.steps) * sum;
    return r;
}

std::vector<CommutatorCheck> measure_commutators(const Model &input, const NormOptions &options) {
    Model model = input.num_ancilla_slots() > 0 ? input.with_ancilla_slots(0) : input;
    const BoundParams p = BoundParams::from_model(model, 1.0, 1);
    const auto ordinary = commutator_bounds(p);
    const auto nested = nested_commutator_bounds(p);
    const LinearOperator hb = hamiltonian_magnetic(model), he = hamiltonian_electric(model), hm = hamiltonian_mass(model),
                         hgm = hamiltonian_gauge_matter(model);
    std::vector<LinearOperator> pieces;
    for (int parity : {0, 1}) {
        for (int dir = 0; dir < model.lattice().dim(); dir++) {
            pieces.push_back(hamiltonian_gauge_matter(model, dir, parity));
        }
    }
    auto norm = [&](const LinearOperator &a) { return operator_norm(a, options); };

    double gm_pair = 0, m_gm = 0, gm_triple = 0;
    for (size_t i = 0; i < pieces.size(); i++) {
        m_gm = std::max(m_gm, norm(commutator(hm, pieces[i])));
        for (size_t j = i + 1; j < pieces.size(); j++) {
            LinearOperator cij = commutator(pieces[i], pieces[j]);
            gm_pair = std::max(gm_pair, norm(cij));
            for (const auto &pl : pieces) {
                gm_triple = std::max(gm_triple, norm(commutator(cij, pl)));
            }
        }
    }
    const LinearOperator be = commutator(hb, he), eg = commutator(he, hgm), mg = commutator(hm, hgm);
    std::vector<double> measured{
        gm_pair,
        m_gm,
        norm(commutator(hgm, he)),
        norm(be),
        norm(commutator(hb, hm)),
        norm(commutator(he, hm)),
        norm(commutator(hb, hgm)),
        norm(commutator(be, he)),
        norm(commutator(be, hb)),
        norm(commutator(eg, hgm)),
        norm(commutator(eg, he)),
        norm(commutator(mg, hgm)),
        norm(commutator(mg, hm)),
        gm_triple,
    };
    std::vector<CommutatorCheck> out;
    for (size_t i = 0; i < ordinary.size(); i++) {
        out.push_back({ordinary[i].name, measured[i], ordinary[i].value});
    }
    for (size_t i = 0; i < nested.size(); i++) {
        out.push_back({nested[i].name, measured[ordinary.size() + i], nested[i].value});
    }
    return out;
}

double empirical_error(const Model &model, double t, int steps, const EmpiricalOptions &options) {
    require(steps >= 1, ErrorCode::kInvalidArgument, "the number of Trotter steps must be at least 1");
    const Model phys = model.num_ancilla_slots() > 0 ? model.with_ancilla_slots(0) : model;
    const Model engine = model.num_ancilla_slots() > 0 ? model : model.with_ancilla_slots(1);
    const LinearOperator h = hamiltonian_total(phys);
    const int64_t pdim = phys.layout().dim(), dim = engine.layout().dim();
    const GateSequence step = trotter_step(engine, options.order, t / steps, options.variant);

    if (options.mode == ProbeMode::kOperator) {
        require(
            pdim <= options.operator_limit,
            ErrorCode::kResourceLimit,
            "operator probe refused: physical dimension " + std::to_string(pdim) + " exceeds " + std::to_string(options.operator_limit));
        Mat block = Mat::Zero(dim, pdim);
        block.topRows(pdim).setIdentity();
        step.apply(block);
        Mat one = block.topRows(pdim);
        Mat total = Mat::Identity(pdim, pdim);
        for (int s = 0; s < steps; s++) {
            total = one * total;
        }
        EvolveOptions eo;
        eo.dense_threshold = std::max<int64_t>(eo.dense_threshold, pdim);
        Mat exact = dense_propagator(h, t, eo);
        return operator_norm(Mat(total - exact));
    }

    std::vector<Vec> probes{vacuum_state(phys)};
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    for (int k = 0; k < options.random_probes; k++) {
        Vec r(pdim);
        for (auto &x : r) {
            x = cplx(gauss(rng), gauss(rng));
        }
        probes.push_back(r.normalized());
    }
    double worst = 0;
    for (const Vec &psi : probes) {
        Vec full = Vec::Zero(dim);
        full.head(pdim) = psi;
        for (int s = 0; s < steps; s++) {
            step.apply(full);
        }
        Vec exact = evolve_exact(h, t, psi);
        double diff = std::sqrt((full.head(pdim) - exact).squaredNorm() + full.tail(dim - pdim).squaredNorm());
        worst = std::max(worst, diff);
    }
    return worst;
}

std::vector<double> experimental_error_budget(const std::vector<ExperimentalGate> &gates, double t, int steps) {
    require(steps >= 1, ErrorCode::kInvalidArgument, "the number of Trotter steps must be at least 1");
    require(std::isfinite(t) && t >= 0, ErrorCode::kInvalidArgument, "simulated time must be finite and non-negative");
    std::vector<double> out;
    const double two_n = 2.0 * steps;
    for (const auto &g : gates) {
        require(g.norm >= 0 && g.t_exp >= 0, ErrorCode::kInvalidArgument, "gate error norms and durations must be non-negative");
        switch (g.kind) {
            case ExperimentalErrorKind::kStatisticalTimed:
                out.push_back(g.norm * t / std::sqrt(two_n));
                break;
            case ExperimentalErrorKind::kSystematicTimed:
                out.push_back(g.norm * t);
                break;
            case ExperimentalErrorKind::kStatisticalFixed:
                out.push_back(g.norm * std::sqrt(two_n) * g.t_exp);
                break;
            case ExperimentalErrorKind::kSystematicFixed:
                out.push_back(g.norm * two_n * g.t_exp);
                break;
        }
    }
    return out;
}

}  // namespace lgt
