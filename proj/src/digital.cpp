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

#include "lgtsim/digital.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "lgtsim/error.hpp"
#include "lgtsim/hamiltonians.hpp"

namespace lgt {

namespace {

/// Quadratic form sum_mn a_mn psi^dag_m psi_n on `count` local modes.
Mat quadratic_form(const Mat &a, int count, int offset_row = 0, int offset_col = 0, int total = -1) {
    if (total < 0) {
        total = count;
    }
    const int dim = 1 << total;
    Mat q = Mat::Zero(dim, dim);
    for (int occ = 0; occ < dim; occ++) {
        for (int m = 0; m < count; m++) {
            for (int n = 0; n < count; n++) {
                if (a(m, n) == cplx(0)) {
                    continue;
                }
                if (auto f = hop((uint64_t)occ, offset_row + m, offset_col + n)) {
                    q((int)f->first, occ) += a(m, n) * (double)f->second;
                }
            }
        }
    }
    return q;
}

void check_tau(double tau) {
    require(std::isfinite(tau), ErrorCode::kInvalidArgument, "evolution time must be finite");
}

uint64_t staggered_mask(const Model &model, int parity) {
    uint64_t mask = 0;
    for (int v = 0; v < model.lattice().num_vertices(); v++) {
        if (model.lattice().parity(v) == parity) {
            for (int m = 0; m < model.d_u(); m++) {
                mask |= uint64_t{1} << model.mode(v, m);
            }
        }
    }
    return mask;
}

int require_slot(const Model &model, int anchor) {
    require(model.num_ancilla_slots() > 0, ErrorCode::kInvalidArgument, "gate needs a layout with ancilla registers");
    return model.slot_for_anchor(anchor);
}

}  // namespace

std::string factor_name(FactorKind kind) {
    switch (kind) {
        case FactorKind::kMagnetic:
            return "B";
        case FactorKind::kGaugeMatter:
            return "GM";
        case FactorKind::kElectric:
            return "E";
        case FactorKind::kMass:
            return "M";
    }
    return "?";
}

Mat entangler_local(const GroupSpec &group) {
    const int n = group.order();
    Mat u = Mat::Zero(n * n, n * n);
    for (int g = 0; g < n; g++) {
        for (int h = 0; h < n; h++) {
            u(g + n * group.compose(g, h), g + n * h) = 1;
        }
    }
    return u;
}

Mat stator_isometry(const GroupSpec &group) {
    return entangler_local(group).leftCols(group.order());
}

LocalGate entangler_gate(const Model &model, int link, int slot) {
    require(link >= 0 && link < model.lattice().num_links(), ErrorCode::kOutOfRange, "link out of range");
    require(slot >= 0 && slot < model.num_ancilla_slots(), ErrorCode::kOutOfRange, "ancilla slot out of range");
    return LocalGate{
        {LocalFactor::reg(model.link_register(link)), LocalFactor::reg(model.ancilla_register(slot))},
        entangler_local(model.group()),
        Mat(),
        0,
        0};
}

Eigen::VectorXd ancilla_magnetic_diagonal(const Model &model) {
    const auto &mats = model.irrep().matrices;
    Eigen::VectorXd out(model.group().order());
    for (int g = 0; g < model.group().order(); g++) {
        out[g] = model.couplings().lambda_b * 2 * mats[g].trace().real();
    }
    return out;
}

GateSequence plaquette_isometry(const Model &model, int anchor, int plane) {
    const int slot = require_slot(model, anchor);
    const auto links = model.lattice().plane_role_links(anchor, plane);
    const RegisterLayout &layout = model.layout();
    GateSequence out(layout.dim());
    for (int i : {3, 2}) {
        GateSequence one(layout.dim());
        one.add_local("U" + std::to_string(links[i]), layout, entangler_gate(model, links[i], slot));
        out.append(one.adjoint());
    }
    for (int i : {1, 0}) {
        out.add_local("U" + std::to_string(links[i]), layout, entangler_gate(model, links[i], slot));
    }
    return out;
}

GateSequence plaquette_substep(const Model &model, int plane, int parity, double tau) {
    check_tau(tau);
    const Lattice &lat = model.lattice();
    const RegisterLayout &layout = model.layout();
    GateSequence out(layout.dim());
    const Eigen::VectorXd energy = ancilla_magnetic_diagonal(model);
    for (int anchor : model.anchors(parity)) {
        if (lat.plaquette_id(anchor, plane) < 0) {
            continue;
        }
        GateSequence iso = plaquette_isometry(model, anchor, plane);
        const int slot = model.slot_for_anchor(anchor);
        Mat phase = Mat::Zero(energy.size(), energy.size());
        for (int g = 0; g < energy.size(); g++) {
            phase(g, g) = std::exp(cplx(0, -tau * energy[g]));
        }
        out.append(iso);
        out.add_local(
            "expB" + std::to_string(anchor), layout, LocalGate{{LocalFactor::reg(model.ancilla_register(slot))}, phase, Mat(), 0, 0});
        out.append(iso.adjoint());
    }
    return out;
}

Mat principal_log_generator(const Mat &unitary) {
    require(unitary.rows() == unitary.cols(), ErrorCode::kInvalidArgument, "logarithm needs a square matrix");
    Eigen::ComplexSchur<Mat> schur(unitary);
    const Mat &t = schur.matrixT();
    const Mat &q = schur.matrixU();
    Eigen::VectorXd phases(t.rows());
    for (int i = 0; i < t.rows(); i++) {
        double a = std::arg(t(i, i));
        phases[i] = a <= -std::numbers::pi + 1e-12 ? std::numbers::pi : a;
    }
    Mat z = q * phases.cast<cplx>().asDiagonal() * q.adjoint();
    return (z + z.adjoint()) / 2.0;
}

Mat gauge_matter_block(const Model &model, int g) {
    const int du = model.d_u();
    Mat z = principal_log_generator(model.irrep().matrices.at(g));
    return exp_hermitian_dense(quadratic_form(z, du), -1.0);
}

Mat gauge_matter_local(const Model &model) {
    const int block = 1 << model.d_u();
    const int n = model.group().order();
    Mat u = Mat::Zero(block * n, block * n);
    for (int g = 0; g < n; g++) {
        u.block(g * block, g * block, block, block) = gauge_matter_block(model, g);
    }
    return u;
}

LocalGate gauge_matter_gate(const Model &model, int link) {
    require(model.has_matter(), ErrorCode::kInvalidArgument, "gauge-matter gates need matter");
    const Link &lk = model.lattice().link(link);
    return LocalGate{
        {LocalFactor::modes(model.first_mode(lk.base), model.d_u()), LocalFactor::reg(model.link_register(link))},
        gauge_matter_local(model),
        Mat(),
        0,
        0};
}

LocalGate tunneling_gate(const Model &model, int link, double tau) {
    require(model.has_matter(), ErrorCode::kInvalidArgument, "tunneling gates need matter");
    check_tau(tau);
    const Link &lk = model.lattice().link(link);
    const int x = lk.base, y = model.lattice().shift(lk.base, lk.dir);
    const int du = model.d_u();
    Mat hop_x_y = Mat::Zero(2 * du, 2 * du);
    for (int m = 0; m < du; m++) {
        hop_x_y(m, du + m) = model.couplings().lambda_gm;
        hop_x_y(du + m, m) = model.couplings().lambda_gm;
    }
    Mat h = quadratic_form(hop_x_y, 2 * du);
    LocalGate gate{
        {LocalFactor::modes(model.first_mode(x), du), LocalFactor::modes(model.first_mode(y), du)},
        exp_hermitian_dense(h, tau),
        Mat(),
        model.first_mode(x) + du,
        model.first_mode(y) - model.first_mode(x) - du};
    if (gate.control_count > 0) {
        // An odd number of occupied modes between the blocks flips the sign of every hop.
        gate.local_odd = exp_hermitian_dense(h, -tau);
    } else {
        gate.control_first = 0;
    }
    return gate;
}

GateSequence gauge_matter_substep(const Model &model, int dir, int parity, double tau, GmVariant variant) {
    check_tau(tau);
    const Lattice &lat = model.lattice();
    const RegisterLayout &layout = model.layout();
    GateSequence out(layout.dim());
    if (!model.has_matter()) {
        return out;
    }
    for (int l = 0; l < lat.num_links(); l++) {
        const Link &lk = lat.link(l);
        if (lk.dir != dir || lat.parity(lk.base) != parity) {
            continue;
        }
        const std::string tag = std::to_string(l);
        GateSequence w(layout.dim());
        GateSequence stator(layout.dim());
        if (variant == GmVariant::kDirect) {
            w.add_local("UW" + tag, layout, gauge_matter_gate(model, l));
        } else {
            const int slot = require_slot(model, lk.base);
            stator.add_local("U" + tag, layout, entangler_gate(model, l, slot));
            LocalGate mediated = gauge_matter_gate(model, l);
            mediated.factors[1] = LocalFactor::reg(model.ancilla_register(slot));
            w.add_local("UW~" + tag, layout, std::move(mediated));
        }
        out.append(stator);
        out.append(w.adjoint());
        out.add_local("expHt" + tag, layout, tunneling_gate(model, l, tau));
        out.append(w);
        out.append(stator.adjoint());
    }
    return out;
}

GateSequence electric_substep(const Model &model, double tau) {
    check_tau(tau);
    const RegisterLayout &layout = model.layout();
    GateSequence out(layout.dim());
    Mat u = exp_hermitian_dense(model.couplings().lambda_e * electric_link_matrix(model), tau);
    for (int l = 0; l < model.lattice().num_links(); l++) {
        out.add_local("expE" + std::to_string(l), layout, LocalGate{{LocalFactor::reg(model.link_register(l))}, u, Mat(), 0, 0});
    }
    return out;
}

GateSequence mass_substep(const Model &model, double tau) {
    check_tau(tau);
    const RegisterLayout &layout = model.layout();
    GateSequence out(layout.dim());
    if (!model.has_matter()) {
        return out;
    }
    const uint64_t even = staggered_mask(model, 0), odd = staggered_mask(model, 1);
    const double mass = model.couplings().mass;
    const RegisterLayout lay = layout;
    out.add_diagonal("expM", [=](int64_t i) {
        uint64_t occ = lay.occupation(i);
        int signed_count = std::popcount(occ & even) - std::popcount(occ & odd);
        return std::exp(cplx(0, -tau * mass * signed_count));
    });
    return out;
}

std::vector<ScheduleEntry> trotter_schedule(const Model &model, int order, double t, int steps) {
    require(order == 1 || order == 2, ErrorCode::kInvalidArgument, "Trotter order must be 1 or 2");
    require(steps >= 1, ErrorCode::kInvalidArgument, "at least one Trotter step is required");
    require(std::isfinite(t) && t >= 0, ErrorCode::kInvalidArgument, "total time must be finite and non-negative");
    const double tau = t / steps;
    const Lattice &lat = model.lattice();

    std::vector<std::vector<ScheduleEntry>> factors;
    if (lat.num_plaquettes() > 0) {
        std::vector<ScheduleEntry> b;
        for (int plane = 0; plane < lat.num_planes(); plane++) {
            for (int parity : {0, 1}) {
                b.push_back({FactorKind::kMagnetic, plane, parity, 1});
            }
        }
        factors.push_back(b);
    }
    if (model.has_matter()) {
        for (int parity : {0, 1}) {
            for (int dir = 0; dir < lat.dim(); dir++) {
                factors.push_back({{FactorKind::kGaugeMatter, dir, parity, 1}});
            }
        }
    }
    factors.push_back({{FactorKind::kElectric, 0, 0, 1}});
    if (model.has_matter()) {
        factors.push_back({{FactorKind::kMass, 0, 0, 1}});
    }

    std::vector<ScheduleEntry> one;
    auto emit = [&](const std::vector<ScheduleEntry> &f, double duration, bool reversed) {
        std::vector<ScheduleEntry> copy = f;
        if (reversed) {
            std::reverse(copy.begin(), copy.end());
        }
        for (auto e : copy) {
            e.duration = duration;
            one.push_back(e);
        }
    };
    if (order == 1) {
        for (const auto &f : factors) {
            emit(f, tau, false);
        }
    } else {
        const size_t p = factors.size();
        for (size_t i = 0; i + 1 < p; i++) {
            emit(factors[i], tau / 2, false);
        }
        emit(factors[p - 1], tau, false);
        for (size_t i = p - 1; i-- > 0;) {
            emit(factors[i], tau / 2, true);
        }
    }
    std::vector<ScheduleEntry> out;
    out.reserve(one.size() * steps);
    for (int s = 0; s < steps; s++) {
        out.insert(out.end(), one.begin(), one.end());
    }
    return out;
}

GateSequence entry_gates(const Model &model, const ScheduleEntry &entry, GmVariant variant) {
    switch (entry.kind) {
        case FactorKind::kMagnetic:
            return plaquette_substep(model, entry.piece, entry.parity, entry.duration);
        case FactorKind::kGaugeMatter:
            return gauge_matter_substep(model, entry.piece, entry.parity, entry.duration, variant);
        case FactorKind::kElectric:
            return electric_substep(model, entry.duration);
        case FactorKind::kMass:
            return mass_substep(model, entry.duration);
    }
    fail(ErrorCode::kInvalidArgument, "unknown factor kind");
}

GateSequence trotter_step(const Model &model, int order, double tau, GmVariant variant) {
    GateSequence out(model.layout().dim());
    for (const auto &e : trotter_schedule(model, order, tau, 1)) {
        out.append(entry_gates(model, e, variant));
    }
    return out;
}

double plaquette_expectation(const Model &model, const Vec &psi) {
    const Lattice &lat = model.lattice();
    const RegisterLayout &layout = model.layout();
    require(psi.size() == layout.dim(), ErrorCode::kInvalidArgument, "state dimension does not match layout");
    if (lat.num_plaquettes() == 0) {
        return 0;
    }
    const auto table = plaquette_table(model.group(), model.irrep());
    const int n = model.group().order();
    double total = 0;
    for (int64_t i = 0; i < psi.size(); i++) {
        double w = std::norm(psi[i]);
        if (w == 0) {
            continue;
        }
        double s = 0;
        for (const auto &p : lat.plaquettes()) {
            size_t key = 0;
            for (int l : p.links) {
                key = key * n + layout.digit(i, model.link_register(l));
            }
            s += table[key];
        }
        total += w * s;
    }
    return total / lat.num_plaquettes();
}

std::vector<double> vertex_densities(const Model &model, const Vec &psi) {
    const RegisterLayout &layout = model.layout();
    require(psi.size() == layout.dim(), ErrorCode::kInvalidArgument, "state dimension does not match layout");
    const int nv = model.lattice().num_vertices();
    std::vector<double> out(nv, 0.0);
    if (!model.has_matter()) {
        return out;
    }
    const uint64_t block = (uint64_t{1} << model.d_u()) - 1;
    for (int64_t i = 0; i < psi.size(); i++) {
        double w = std::norm(psi[i]);
        if (w == 0) {
            continue;
        }
        uint64_t occ = layout.occupation(i);
        for (int v = 0; v < nv; v++) {
            out[v] += w * std::popcount((occ >> model.first_mode(v)) & block);
        }
    }
    return out;
}

double wilson_loop(const Model &model, const Vec &psi, int start, const std::vector<int> &steps) {
    const Lattice &lat = model.lattice();
    const RegisterLayout &layout = model.layout();
    require(psi.size() == layout.dim(), ErrorCode::kInvalidArgument, "state dimension does not match layout");
    require(start >= 0 && start < lat.num_vertices(), ErrorCode::kOutOfRange, "loop start out of range");
    require(!steps.empty(), ErrorCode::kInvalidArgument, "loop needs at least one step");
    std::vector<std::pair<int, bool>> path;
    int v = start;
    for (int s : steps) {
        int dir = std::abs(s) - 1;
        require(s != 0 && dir < lat.dim(), ErrorCode::kInvalidArgument, "loop step direction out of range");
        if (s > 0) {
            int next = lat.shift(v, dir);
            require(next >= 0, ErrorCode::kInvalidArgument, "loop leaves the lattice");
            path.push_back({lat.link_id(v, dir), false});
            v = next;
        } else {
            int prev = lat.shift(v, dir, -1);
            require(prev >= 0, ErrorCode::kInvalidArgument, "loop leaves the lattice");
            path.push_back({lat.link_id(prev, dir), true});
            v = prev;
        }
    }
    require(v == start, ErrorCode::kInvalidArgument, "loop is not closed");
    const auto &mats = model.irrep().matrices;
    double total = 0;
    for (int64_t i = 0; i < psi.size(); i++) {
        double w = std::norm(psi[i]);
        if (w == 0) {
            continue;
        }
        Mat prod = Mat::Identity(model.d_u(), model.d_u());
        for (const auto &[l, backwards] : path) {
            const Mat &d = mats[layout.digit(i, model.link_register(l))];
            prod = backwards ? Mat(prod * d.adjoint()) : Mat(prod * d);
        }
        total += w * prod.trace().real();
    }
    return total;
}

TraceRow measure(const Model &model, const Vec &psi, double time) {
    TraceRow row;
    row.time = time;
    row.plaquette = plaquette_expectation(model, psi);
    row.densities = vertex_densities(model, psi);
    row.gauge_violation = gauge_violation(model, psi);
    row.ancilla_fidelity = model.num_ancilla_slots() > 0 ? ancilla_fidelity(model.layout(), psi) : 1.0;
    return row;
}

std::vector<TraceRow> run_trotter(const Model &model, Vec &psi, double t, int steps, const RunOptions &options) {
    require(psi.size() == model.layout().dim(), ErrorCode::kInvalidArgument, "state dimension does not match layout");
    const auto schedule = trotter_schedule(model, options.order, t / steps, 1);
    std::vector<GateSequence> gates;
    gates.reserve(schedule.size());
    for (const auto &e : schedule) {
        gates.push_back(entry_gates(model, e, options.variant));
    }
    std::vector<TraceRow> rows;
    rows.reserve(steps);
    for (int s = 0; s < steps; s++) {
        for (size_t k = 0; k < schedule.size(); k++) {
            gates[k].apply(psi);
            if (options.on_substep) {
                options.on_substep(schedule[k], psi);
            }
        }
        rows.push_back(measure(model, psi, t * (s + 1) / steps));
    }
    return rows;
}

}  // namespace lgt
