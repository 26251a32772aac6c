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


#include "lgtsim/atomic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "lgtsim/error.hpp"
#include "lgtsim/hamiltonians.hpp"

namespace lgt {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

Mat diag(const std::vector<cplx> &values) {
    Vec v(values.size());
    for (size_t i = 0; i < values.size(); i++) {
        v[i] = values[i];
    }
    return v.asDiagonal();
}

/// exp(-i area h) for a diagonal generator.
Mat exp_diag(const Mat &h, double area) {
    Mat out = Mat::Zero(h.rows(), h.cols());
    for (int64_t i = 0; i < h.rows(); i++) {
        out(i, i) = std::exp(-kI * area * h(i, i));
    }
    return out;
}

/// Operator on `targets` (first target fastest) of a product space with sub-dimensions `dims`, fastest first.
Mat embed_subsystems(const Mat &op, const std::vector<int> &dims, const std::vector<int> &targets) {
    std::vector<int64_t> stride(dims.size());
    int64_t total = 1;
    for (size_t i = 0; i < dims.size(); i++) {
        stride[i] = total;
        total *= dims[i];
    }
    int64_t local = 1;
    std::vector<int64_t> lstride(targets.size());
    for (size_t k = 0; k < targets.size(); k++) {
        lstride[k] = local;
        local *= dims[targets[k]];
    }
    require(local == op.rows() && op.rows() == op.cols(), ErrorCode::kInvalidArgument, "operator does not match its targets");
    Mat out = Mat::Zero(total, total);
    for (int64_t col = 0; col < total; col++) {
        int64_t lc = 0, base = col;
        for (size_t k = 0; k < targets.size(); k++) {
            int digit = (int)((col / stride[targets[k]]) % dims[targets[k]]);
            lc += digit * lstride[k];
            base -= digit * stride[targets[k]];
        }
        for (int64_t lr = 0; lr < local; lr++) {
            if (op(lr, lc) == cplx(0)) {
                continue;
            }
            int64_t row = base;
            for (size_t k = 0; k < targets.size(); k++) {
                row += ((lr / lstride[k]) % dims[targets[k]]) * stride[targets[k]];
            }
            out(row, col) = op(lr, lc);
        }
    }
    return out;
}

std::string register_label(const Model &model, const SubTarget &t) {
    if (t.kind == SubTarget::Kind::kSite) {
        return "site" + std::to_string(t.index);
    }
    const std::string base = model.layout().registers().at(t.index).label;
    return base + (t.kind == SubTarget::Kind::kThree ? ".p" : ".m");
}

Pulse adjoint_pulse(const Pulse &p) {
    Pulse out = p;
    out.name = p.name + "^dag";
    out.gate.local = p.gate.local.adjoint();
    if (p.gate.control_count > 0) {
        out.gate.local_odd = p.gate.local_odd.adjoint();
    }
    return out;
}

void append_adjoint(std::vector<Pulse> &out, const std::vector<Pulse> &block) {
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
        out.push_back(adjoint_pulse(*it));
    }
}

/// Pulses of the link-controlled left multiplication on the ancilla; `inverse` multiplies by g^-1.
std::vector<Pulse> entangler_pulses(const Model &model, int link_reg, int anc_reg, bool inverse, bool literal) {
    const auto lp = SubTarget::three(link_reg), lm = SubTarget::two(link_reg);
    const auto ap = SubTarget::three(anc_reg), am = SubTarget::two(anc_reg);
    std::vector<Pulse> q2{
        make_pulse(model, "V2~", PulseKind::kLocal, {am}, v2()),
        make_pulse(model, "U'2", PulseKind::kScattering, {lm, am}, phase_two_two(), kPi),
        make_pulse(model, "V2~^dag", PulseKind::kLocal, {am}, v2().adjoint()),
    };
    std::vector<Pulse> refl{
        make_pulse(model, "W~^dag", PulseKind::kLocal, {ap}, reflection_basis3().adjoint()),
        make_pulse(model, "U'R", PulseKind::kScattering, {lm, ap}, phase_two_three(), kPi),
        make_pulse(model, "W~", PulseKind::kLocal, {ap}, reflection_basis3()),
    };
    std::vector<Pulse> q3{make_pulse(model, "V3~", PulseKind::kLocal, {ap}, v3())};
    if (inverse) {
        q3.push_back(make_pulse(model, "VF3~", PulseKind::kLocal, {ap}, spin_flip3()));
    }
    q3.push_back(make_pulse(model, "U'3", PulseKind::kScattering, {lp, ap}, phase_three_three(), 2 * kPi / 3));
    if (inverse) {
        q3.push_back(make_pulse(model, "VF3~", PulseKind::kLocal, {ap}, spin_flip3()));
    }
    q3.push_back(make_pulse(model, "V3~^dag", PulseKind::kLocal, {ap}, v3().adjoint()));

    std::vector<Pulse> out;
    auto add = [&](const std::vector<Pulse> &b) { out.insert(out.end(), b.begin(), b.end()); };
    if (!inverse) {
        add(q2);
        if (!literal) {
            add(refl);
        }
        add(q3);
    } else {
        add(q3);
        if (!literal) {
            add(refl);
        }
        add(q2);
    }
    return out;
}

void check_tau(double tau) {
    require(std::isfinite(tau), ErrorCode::kInvalidArgument, "time step must be finite");
}

PulseSequence compile_plaquette(const Couplings &c, double tau, const CompileOptions &o) {
    PulseSequence seq{CompileTarget::kPlaquette, atomic_instance(CompileTarget::kPlaquette, c), tau};
    const Model &m = seq.instance;
    const int anchor = m.anchors(0).at(0);
    const int anc = m.ancilla_register(m.slot_for_anchor(anchor));
    const auto roles = m.lattice().plane_role_links(anchor, 0);

    std::vector<Pulse> iso;
    const std::array<bool, 4> inverse{false, false, true, true};
    for (int k = 3; k >= 0; k--) {
        auto block = entangler_pulses(m, m.link_register(roles[k]), anc, inverse[k], o.literal_entangler);
        iso.insert(iso.end(), block.begin(), block.end());
    }
    seq.pulses = iso;
    const double lb = m.couplings().lambda_b;
    Mat zeeman = diag({std::exp(kI * 2.0 * lb * tau), 1.0});
    seq.pulses.push_back(make_pulse(m, "zeeman", PulseKind::kLocal, {SubTarget::two(anc)}, zeeman));
    const double alpha = tuned_alpha(o.scattering, lb, tau) * o.area_scale[0];
    seq.pulses.push_back(make_pulse(
        m, "scat1", PulseKind::kScattering, {SubTarget::three(anc), SubTarget::two(anc)}, scat1(o.scattering, alpha), alpha));
    append_adjoint(seq.pulses, iso);
    return seq;
}

PulseSequence compile_gauge_matter(const Couplings &c, double tau, const CompileOptions &o) {
    PulseSequence seq{CompileTarget::kGaugeMatter, atomic_instance(CompileTarget::kGaugeMatter, c), tau};
    const Model &m = seq.instance;
    const int link = 0;
    const int x = m.lattice().link(link).base;
    const int anc = m.ancilla_register(m.slot_for_anchor(x));
    const int lreg = m.link_register(link);
    const ScatteringParams &s = o.scattering;
    seq.theta = dressing_angle(s);

    const auto site = SubTarget::site(x), ap = SubTarget::three(anc), am = SubTarget::two(anc);
    const double beta = tuned_beta(s) * o.area_scale[1], gamma = tuned_gamma(s) * o.area_scale[2];
    auto stator = entangler_pulses(m, lreg, anc, false, o.literal_entangler);
    std::vector<Pulse> &out = seq.pulses;
    out = stator;
    out.push_back(make_pulse(m, "scat2", PulseKind::kScattering, {site, ap}, scat2(s, beta), beta));
    std::vector<Pulse> wm{
        make_pulse(m, "VH,fer", PulseKind::kLocal, {site}, hadamard_site()),
        make_pulse(m, "scat3", PulseKind::kScattering, {site, am}, scat3(s, gamma), gamma),
        make_pulse(m, "VH,fer", PulseKind::kLocal, {site}, hadamard_site()),
    };
    out.insert(out.end(), wm.begin(), wm.end());
    const int y = m.lattice().shift(x, m.lattice().link(link).dir);
    out.push_back({"tunneling", PulseKind::kTunneling, {register_label(m, site), register_label(m, SubTarget::site(y))}, tau,
                   tunneling_gate(m, link, tau)});
    out.insert(out.end(), wm.begin(), wm.end());
    out.push_back(make_pulse(m, "VF3~", PulseKind::kLocal, {ap}, spin_flip3()));
    out.push_back(make_pulse(m, "scat2", PulseKind::kScattering, {site, ap}, scat2(s, beta), beta));
    out.push_back(make_pulse(m, "VF3~", PulseKind::kLocal, {ap}, spin_flip3()));
    append_adjoint(out, stator);
    return seq;
}

PulseSequence compile_electric(const Couplings &c, double tau, const CompileOptions &o) {
    PulseSequence seq{CompileTarget::kElectric, atomic_instance(CompileTarget::kElectric, c), tau};
    const Model &m = seq.instance;
    const int reg = m.link_register(0);
    const auto lp = SubTarget::three(reg), lm = SubTarget::two(reg);
    const double le = m.couplings().lambda_e, fr = m.f_r();
    const auto &f = m.f_l();
    const double cval = le * fr * tau;
    const double delta = tuned_delta(o.scattering, le, fr, tau) * o.area_scale[3];

    std::vector<cplx> diagonal(3);
    for (int l = 0; l < 3; l++) {
        const int al = std::min(l, 3 - l);
        diagonal[l] = std::exp(-kI * le * tau * (f[al] + (l == 0 ? fr / 2 : 0.0)));
    }
    auto &out = seq.pulses;
    out.push_back(make_pulse(m, "A3", PulseKind::kLocal, {lp}, angular_change3()));
    out.push_back(make_pulse(m, "angular phase", PulseKind::kLocal, {lp}, diag(diagonal)));
    out.push_back(make_pulse(m, "VH,2", PulseKind::kLocal, {lm}, hadamard2()));
    out.push_back(make_pulse(m, "V2cal", PulseKind::kLocal, {lp}, electric_phase3(cval)));
    out.push_back(make_pulse(m, "scat1", PulseKind::kScattering, {lp, lm}, scat1(o.scattering, delta), delta));
    out.push_back(make_pulse(m, "VH,2", PulseKind::kLocal, {lm}, hadamard2()));
    out.push_back(make_pulse(m, "A3^dag", PulseKind::kLocal, {lp}, angular_change3().adjoint()));
    return seq;
}

bool registers_preserved(const Model &m, const Pulse &p, const std::vector<int> &regs) {
    const LocalGate &g = p.gate;
    std::vector<int64_t> stride(g.factors.size());
    std::vector<int> dims(g.factors.size());
    int64_t s = 1;
    for (size_t k = 0; k < g.factors.size(); k++) {
        const auto &f = g.factors[k];
        dims[k] = f.kind == LocalFactor::Kind::kModes ? (1 << f.count) : m.layout().registers()[f.first].dim;
        stride[k] = s;
        s *= dims[k];
    }
    auto check = [&](const Mat &a) {
        for (int64_t col = 0; col < a.cols(); col++) {
            for (int64_t row = 0; row < a.rows(); row++) {
                if (std::abs(a(row, col)) < 1e-14) {
                    continue;
                }
                for (size_t k = 0; k < g.factors.size(); k++) {
                    const auto &f = g.factors[k];
                    const bool guarded = f.kind == LocalFactor::Kind::kRegister &&
                                         std::find(regs.begin(), regs.end(), f.first) != regs.end();
                    if (guarded && (row / stride[k]) % dims[k] != (col / stride[k]) % dims[k]) {
                        return false;
                    }
                }
            }
        }
        return true;
    };
    return check(g.local) && (g.control_count == 0 || check(g.local_odd));
}

}  // namespace

namespace hyperfine {

int three_level_mf(int p) {
    require(p >= 0 && p < 3, ErrorCode::kOutOfRange, "three-level index out of range");
    static const int table[3] = {0, 1, -1};
    return table[p];
}

double two_level_mf(int m) {
    require(m == 0 || m == 1, ErrorCode::kOutOfRange, "two-level index out of range");
    return m == 0 ? 0.5 : -0.5;
}

Mat p3() {
    return diag({1.0, std::exp(kI * 2.0 * kPi / 3.0), std::exp(kI * 4.0 * kPi / 3.0)});
}

Mat q3() {
    Mat q = Mat::Zero(3, 3);
    for (int p = 0; p < 3; p++) {
        q((p + 1) % 3, p) = 1;
    }
    return q;
}

Mat p2() {
    return diag({1.0, -1.0});
}

Mat q2() {
    Mat q = Mat::Zero(2, 2);
    q(0, 1) = q(1, 0) = 1;
    return q;
}

Mat fz3() {
    return diag({0.0, 1.0, -1.0});
}

Mat fz2() {
    return diag({0.5, -0.5});
}

Mat n0() {
    return diag({1.0, 0.0, 0.0});
}

Mat n_up() {
    return diag({1.0, 0.0});
}

Mat n_down() {
    return diag({0.0, 1.0});
}

Mat site_n1() {
    return diag({0.0, 1.0, 0.0, 1.0});
}

Mat site_n2() {
    return diag({0.0, 0.0, 1.0, 1.0});
}

}  // namespace hyperfine

double tuned_alpha(const ScatteringParams &s, double lambda_b, double tau) {
    return 6 * lambda_b * tau / s.g0();
}

double tuned_beta(const ScatteringParams &s) {
    require(s.g1() != 0, ErrorCode::kInvalidArgument, "g1 vanishes: equal scattering lengths");
    return 2 * kPi / (3 * s.g1());
}

double tuned_gamma(const ScatteringParams &s) {
    require(s.g0() + s.g1() != 0, ErrorCode::kInvalidArgument, "g0 + g1 vanishes");
    return kPi / (s.g0() + s.g1());
}

double tuned_delta(const ScatteringParams &s, double lambda_e, double f_r, double tau) {
    return lambda_e * f_r * tau / s.g0();
}

double dressing_angle(const ScatteringParams &s) {
    return tuned_beta(s) * s.g0();
}

Mat scat1_generator(const ScatteringParams &s) {
    return embed_subsystems(hyperfine::n0(), {3, 2}, {0}) * embed_subsystems(hyperfine::n_up(), {3, 2}, {1}) * s.g0();
}

Mat scat2_generator(const ScatteringParams &s) {
    using namespace hyperfine;
    Mat n = site_n1() + site_n2(), dn = site_n1() - site_n2();
    return embed_subsystems(n, {4, 3}, {0}) * s.g0() + embed_subsystems(fz3(), {4, 3}, {1}) * embed_subsystems(dn, {4, 3}, {0}) * s.g1();
}

Mat scat3_generator(const ScatteringParams &s) {
    using namespace hyperfine;
    return embed_subsystems(n_down(), {4, 2}, {1}) * embed_subsystems(site_n2(), {4, 2}, {0}) * (s.g0() + s.g1());
}

Mat scat1(const ScatteringParams &s, double alpha) {
    return exp_diag(scat1_generator(s), alpha);
}

Mat scat2(const ScatteringParams &s, double beta) {
    require(s.g1() != 0, ErrorCode::kInvalidArgument, "g1 vanishes: equal scattering lengths");
    return exp_diag(scat2_generator(s), beta);
}

Mat scat3(const ScatteringParams &s, double gamma) {
    return exp_diag(scat3_generator(s), gamma);
}

Mat v3() {
    Mat f(3, 3);
    for (int p = 0; p < 3; p++) {
        for (int k = 0; k < 3; k++) {
            f(p, k) = std::exp(-kI * 2.0 * kPi * double(k * p) / 3.0) / std::sqrt(3.0);
        }
    }
    return f.adjoint();
}

Mat v2() {
    return hadamard2();
}

Mat spin_flip3() {
    Mat f = Mat::Zero(3, 3);
    f(0, 0) = f(1, 2) = f(2, 1) = 1;
    return f;
}

Mat hadamard2() {
    Mat h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

Mat hadamard_site() {
    Mat h(2, 2);
    h << 1, 1, 1, -1;
    return fock_lift(h / std::sqrt(2.0));
}

Mat electric_phase3(double c) {
    return diag({std::exp(kI * c / 2.0), 1.0, 1.0});
}

Mat matter_dressing(double theta) {
    return diag({1.0, std::exp(-kI * theta), std::exp(-kI * theta), std::exp(-kI * 2.0 * theta)});
}

Mat angular_change3() {
    return angular_overlap_matrix(3);
}

Mat reflection_basis3() {
    Mat w = Mat::Zero(3, 3);
    const double r = 1 / std::sqrt(2.0);
    w(0, 0) = 1;
    w(1, 1) = w(2, 1) = r;
    w(1, 2) = r;
    w(2, 2) = -r;
    return w;
}

Mat phase_three_three() {
    Mat out = Mat::Zero(9, 9);
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            out(a + 3 * b, a + 3 * b) =
                std::exp(kI * 2.0 * kPi / 3.0 * double(hyperfine::three_level_mf(a) * hyperfine::three_level_mf(b)));
        }
    }
    return out;
}

Mat phase_two_two() {
    Mat out = Mat::Zero(4, 4);
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            double x = (1 - 2 * hyperfine::two_level_mf(a)) * (1 - 2 * hyperfine::two_level_mf(b));
            out(a + 2 * b, a + 2 * b) = std::exp(kI * kPi / 4.0 * x);
        }
    }
    return out;
}

Mat phase_two_three() {
    Mat out = Mat::Identity(6, 6);
    out(1 + 2 * 2, 1 + 2 * 2) = -1;
    return out;
}

Mat controlled_q3(int power) {
    // (link three, ancilla three): |p>|q~> -> |p>|q~ + power * p>.
    Mat out = Mat::Zero(9, 9);
    for (int p = 0; p < 3; p++) {
        for (int q = 0; q < 3; q++) {
            out(p + 3 * (((q + power * p) % 3 + 3) % 3), p + 3 * q) = 1;
        }
    }
    return out;
}

Mat controlled_q2() {
    Mat out = Mat::Zero(4, 4);
    for (int m = 0; m < 2; m++) {
        for (int q = 0; q < 2; q++) {
            out(m + 2 * ((q + m) % 2), m + 2 * q) = 1;
        }
    }
    return out;
}

double mass_trick_duration(double mass, double mass_even, double tau) {
    require(mass_even != 0, ErrorCode::kInvalidArgument, "the superlattice offset must be non-zero");
    return mass * tau / mass_even;
}

GateSequence mass_lattice_gate(const Model &model, double mass_even, double duration) {
    const RegisterLayout lay = model.layout();
    GateSequence out(lay.dim());
    if (!model.has_matter()) {
        return out;
    }
    uint64_t even = 0;
    for (int v = 0; v < model.lattice().num_vertices(); v++) {
        if (model.lattice().parity(v) == 0) {
            for (int c = 0; c < model.d_u(); c++) {
                even |= uint64_t(1) << model.mode(v, c);
            }
        }
    }
    out.add_diagonal("superlattice", [=](int64_t i) {
        return std::exp(-kI * duration * mass_even * 2.0 * double(std::popcount(lay.occupation(i) & even)));
    });
    return out;
}

CompileTarget parse_compile_target(const std::string &name) {
    if (name == "plaquette") {
        return CompileTarget::kPlaquette;
    }
    if (name == "gauge-matter" || name == "gauge_matter") {
        return CompileTarget::kGaugeMatter;
    }
    if (name == "electric") {
        return CompileTarget::kElectric;
    }
    fail(ErrorCode::kInvalidArgument, "unknown compile target '" + name + "'");
}

std::string target_name(CompileTarget target) {
    switch (target) {
        case CompileTarget::kPlaquette:
            return "plaquette";
        case CompileTarget::kGaugeMatter:
            return "gauge-matter";
        case CompileTarget::kElectric:
            return "electric";
    }
    return "unknown";
}

Model atomic_instance(CompileTarget target, const Couplings &couplings) {
    switch (target) {
        case CompileTarget::kPlaquette:
            return Model(GroupSpec::dihedral(3), Lattice({2, 2}), couplings, ModelOptions{false, 1});
        case CompileTarget::kGaugeMatter:
            return Model(GroupSpec::dihedral(3), Lattice({2}), couplings, ModelOptions{true, 1});
        case CompileTarget::kElectric:
            return Model(GroupSpec::dihedral(3), Lattice({2}), couplings, ModelOptions{false, 0});
    }
    fail(ErrorCode::kInvalidArgument, "unknown compile target");
}

Pulse make_pulse(const Model &model, std::string name, PulseKind kind, const std::vector<SubTarget> &targets, const Mat &op, double area) {
    require(model.group().kind() == GroupKind::kDihedral && model.group().n() == 3, ErrorCode::kUnsupported,
            "hyperfine pulses are defined for D3 registers only");
    std::vector<int> sites, regs;
    for (const auto &t : targets) {
        auto &list = t.kind == SubTarget::Kind::kSite ? sites : regs;
        if (std::find(list.begin(), list.end(), t.index) == list.end()) {
            list.push_back(t.index);
        }
    }
    std::sort(sites.begin(), sites.end());
    std::sort(regs.begin(), regs.end());
    require(sites.size() <= 1, ErrorCode::kInvalidArgument, "a pulse acts on at most one site");

    Pulse p;
    p.name = std::move(name);
    p.kind = kind;
    p.area = area;
    std::vector<int> dims;
    for (int v : sites) {
        p.gate.factors.push_back(LocalFactor::modes(model.first_mode(v), model.d_u()));
        dims.push_back(1 << model.d_u());
    }
    for (int r : regs) {
        p.gate.factors.push_back(LocalFactor::reg(r));
        dims.push_back(3);
        dims.push_back(2);
    }
    std::vector<int> slots;
    for (const auto &t : targets) {
        if (t.kind == SubTarget::Kind::kSite) {
            slots.push_back(0);
        } else {
            int pos = (int)sites.size() + 2 * (int)(std::find(regs.begin(), regs.end(), t.index) - regs.begin());
            slots.push_back(pos + (t.kind == SubTarget::Kind::kTwo ? 1 : 0));
        }
        p.registers.push_back(register_label(model, t));
    }
    p.gate.local = embed_subsystems(op, dims, slots);
    return p;
}

PulseSequence compile(CompileTarget target, const Couplings &couplings, double tau, const CompileOptions &options) {
    check_tau(tau);
    switch (target) {
        case CompileTarget::kPlaquette:
            return compile_plaquette(couplings, tau, options);
        case CompileTarget::kGaugeMatter:
            return compile_gauge_matter(couplings, tau, options);
        case CompileTarget::kElectric:
            return compile_electric(couplings, tau, options);
    }
    fail(ErrorCode::kInvalidArgument, "unknown compile target");
}

GateSequence PulseSequence::gates() const {
    GateSequence out(instance.layout().dim());
    for (const auto &p : pulses) {
        out.add_local(p.name, instance.layout(), p.gate);
    }
    return out;
}

std::string PulseSequence::to_json(int indent) const {
    nlohmann::json records = nlohmann::json::array();
    for (const auto &p : pulses) {
        static const char *kinds[] = {"local", "scattering", "tunneling"};
        records.push_back({{"gate", p.name}, {"kind", kinds[(int)p.kind]}, {"registers", p.registers}, {"area", p.area}});
    }
    nlohmann::json doc{{"target", target_name(target)}, {"tau", tau}, {"pulses", records}};
    if (target == CompileTarget::kGaugeMatter) {
        doc["theta"] = theta;
    }
    return doc.dump(indent);
}

namespace {

LinearOperator abstract_operator(const PulseSequence &seq) {
    const Model phys = seq.instance.with_ancilla_slots(0);
    switch (seq.target) {
        case CompileTarget::kPlaquette: {
            LinearOperator h = hamiltonian_magnetic(phys, 0, 0);
            const double tau = seq.tau;
            return diagonal_operator(phys.layout().dim(), [&](int64_t i) { return std::exp(-kI * tau * h.matrix().coeff(i, i)); },
                                     kOpUnitary, "expHB");
        }
        case CompileTarget::kGaugeMatter: {
            const int x = phys.lattice().link(0).base;
            LocalGate dress{{LocalFactor::modes(phys.first_mode(x), phys.d_u())}, matter_dressing(seq.theta)};
            LinearOperator v = embed_local(phys.layout(), dress, kOpUnitary, "VW'");
            LinearOperator w = gauge_matter_substep(phys, 0, 0, seq.tau, GmVariant::kDirect).product();
            return v * w * v;
        }
        case CompileTarget::kElectric:
            return exp_hermitian(hamiltonian_electric(phys), seq.tau, "expHE");
    }
    fail(ErrorCode::kInvalidArgument, "unknown compile target");
}

}  // namespace

Mat abstract_gate(const PulseSequence &sequence) {
    return abstract_operator(sequence).to_dense();
}

Mat compiled_block(const PulseSequence &sequence) {
    const int64_t dim = sequence.instance.layout().dim(), pdim = sequence.instance.layout().physical_dim();
    require(dim * pdim <= (int64_t)1 << 22, ErrorCode::kResourceLimit, "compiled block too large for a dense probe");
    Mat block = Mat::Zero(dim, pdim);
    block.topRows(pdim).setIdentity();
    sequence.gates().apply(block);
    return block;
}

double verify_compiled(const PulseSequence &sequence, const std::function<bool(int64_t)> &column_filter) {
    const Model &m = sequence.instance;
    const int64_t dim = m.layout().dim(), pdim = m.layout().physical_dim();
    const LinearOperator target = abstract_operator(sequence);

    std::vector<int> links;
    for (int l = 0; l < m.lattice().num_links(); l++) {
        links.push_back(m.link_register(l));
    }
    bool link_diagonal = m.layout().num_modes() == 0;
    for (const auto &p : sequence.pulses) {
        link_diagonal = link_diagonal && registers_preserved(m, p, links);
    }
    link_diagonal = link_diagonal && target.matrix().nonZeros() == pdim;

    if (link_diagonal) {
        // Every pulse keeps the link registers fixed, so the block is a direct sum over link configurations and its
        // norm is the largest column norm. One probe with all columns superposed recovers every column.
        Vec probe = Vec::Zero(dim);
        for (int64_t c = 0; c < pdim; c++) {
            if (!column_filter || column_filter(c)) {
                probe[c] = 1;
            }
        }
        Vec got = probe;
        sequence.gates().apply(got);
        Vec want = Vec::Zero(dim);
        want.head(pdim) = target.apply(Vec(probe.head(pdim)));
        Vec diff = got - want;
        const int64_t anc = dim / pdim;
        double worst = 0;
        for (int64_t c = 0; c < pdim; c++) {
            double s = 0;
            for (int64_t a = 0; a < anc; a++) {
                s += std::norm(diff[c + a * pdim]);
            }
            worst = std::max(worst, std::sqrt(s));
        }
        return worst;
    }

    Mat block = compiled_block(sequence);
    Mat want = Mat::Zero(dim, pdim);
    want.topRows(pdim) = target.to_dense();
    Mat diff = block - want;
    if (column_filter) {
        for (int64_t c = 0; c < pdim; c++) {
            if (!column_filter(c)) {
                diff.col(c).setZero();
            }
        }
    }
    return operator_norm(diff);
}

}  // namespace lgt
