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

#include "lgtsim/hamiltonians.hpp"

#include <bit>
#include <cmath>

#include "lgtsim/error.hpp"

namespace lgt {

namespace {

/// Re-usable action for sums of diagonal terms: value(index) accumulated over a term list.
LinearOperator diagonal_sum(const Model &model, const std::function<double(int64_t)> &value, std::string name) {
    return diagonal_operator(
        model.layout().dim(), [&](int64_t i) { return cplx(value(i)); }, kOpHermitian, std::move(name));
}

std::vector<int> selected_links(const Model &model, int dir, int parity) {
    std::vector<int> out;
    const Lattice &lat = model.lattice();
    for (int l = 0; l < lat.num_links(); l++) {
        const Link &lk = lat.link(l);
        if ((dir < 0 || lk.dir == dir) && (parity < 0 || lat.parity(lk.base) == parity)) {
            out.push_back(l);
        }
    }
    return out;
}

/// Hopping sum over links; `with_link` multiplies by U_mn, otherwise the components hop diagonally.
LinearOperator hopping_sum(const Model &model, const std::vector<int> &links, bool with_link, std::string name) {
    const RegisterLayout &layout = model.layout();
    if (!model.has_matter()) {
        return LinearOperator::zero(layout.dim());
    }
    const double lambda = model.couplings().lambda_gm;
    const Lattice &lat = model.lattice();
    const int du = model.d_u();
    const auto &mats = model.irrep().matrices;
    return build_operator(
        layout.dim(),
        [&](int64_t col, const std::function<void(int64_t, cplx)> &emit) {
            uint64_t occ = layout.occupation(col);
            int64_t rest = col - (int64_t)occ;
            for (int l : links) {
                const Link &lk = lat.link(l);
                int y = lat.shift(lk.base, lk.dir);
                int g = layout.digit(col, model.link_register(l));
                for (int m = 0; m < du; m++) {
                    for (int n = 0; n < du; n++) {
                        cplx u = with_link ? mats[g](m, n) : cplx(m == n ? 1.0 : 0.0);
                        if (u == cplx(0)) {
                            continue;
                        }
                        int a = model.mode(lk.base, m), b = model.mode(y, n);
                        if (auto f = hop(occ, a, b)) {
                            emit(rest + (int64_t)f->first, lambda * u * (double)f->second);
                        }
                        if (auto f = hop(occ, b, a)) {
                            emit(rest + (int64_t)f->first, lambda * std::conj(u) * (double)f->second);
                        }
                    }
                }
            }
        },
        kOpHermitian,
        std::move(name));
}

}  // namespace

std::vector<double> plaquette_table(const GroupSpec &group, const Irrep &irrep) {
    const int n = group.order();
    std::vector<double> table((size_t)n * n * n * n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            Mat ab = irrep.matrices[a] * irrep.matrices[b];
            for (int c = 0; c < n; c++) {
                Mat abc = ab * irrep.matrices[c].adjoint();
                for (int d = 0; d < n; d++) {
                    table[((size_t)(a * n + b) * n + c) * n + d] = 2 * (abc * irrep.matrices[d].adjoint()).trace().real();
                }
            }
        }
    }
    return table;
}

Mat link_u_local(const GroupSpec &group, const Irrep &irrep, int m, int n) {
    require(m >= 0 && m < irrep.dim && n >= 0 && n < irrep.dim, ErrorCode::kOutOfRange, "irrep matrix index out of range");
    Mat out = Mat::Zero(group.order(), group.order());
    for (int g = 0; g < group.order(); g++) {
        out(g, g) = irrep.matrices[g](m, n);
    }
    return out;
}

Mat theta_left_local(const GroupSpec &group, int g) {
    Mat out = Mat::Zero(group.order(), group.order());
    int gi = group.inverse(g);
    for (int h = 0; h < group.order(); h++) {
        out(group.compose(gi, h), h) = 1;
    }
    return out;
}

Mat theta_right_local(const GroupSpec &group, int g) {
    Mat out = Mat::Zero(group.order(), group.order());
    int gi = group.inverse(g);
    for (int h = 0; h < group.order(); h++) {
        out(group.compose(h, gi), h) = 1;
    }
    return out;
}

Mat fock_lift(const Mat &a) {
    require(a.rows() == a.cols() && a.rows() <= 8, ErrorCode::kInvalidArgument, "fock_lift expects a small square matrix");
    const int d = (int)a.rows();
    const int dim = 1 << d;
    Mat out = Mat::Zero(dim, dim);
    for (int s = 0; s < dim; s++) {
        std::vector<int> cols;
        for (int i = 0; i < d; i++) {
            if (s >> i & 1) {
                cols.push_back(i);
            }
        }
        for (int t = 0; t < dim; t++) {
            if (std::popcount((unsigned)t) != (int)cols.size()) {
                continue;
            }
            std::vector<int> rows;
            for (int i = 0; i < d; i++) {
                if (t >> i & 1) {
                    rows.push_back(i);
                }
            }
            Mat sub(rows.size(), cols.size());
            for (size_t r = 0; r < rows.size(); r++) {
                for (size_t c = 0; c < cols.size(); c++) {
                    sub(r, c) = a(rows[r], cols[c]);
                }
            }
            out(t, s) = rows.empty() ? cplx(1) : sub.determinant();
        }
    }
    return out;
}

Mat matter_transform_local(const Model &model, int vertex, int g, bool staggered) {
    const Mat &d = model.irrep().matrices.at(g);
    Mat out = fock_lift(d);
    if (staggered && model.lattice().parity(vertex) == 1) {
        out *= std::conj(d.determinant());
    }
    return out;
}

LinearOperator link_u(const Model &model, int reg, int m, int n) {
    return embed_local(
        model.layout(), {LocalFactor::reg(reg)}, link_u_local(model.group(), model.irrep(), m, n), kOpNone,
        "U" + std::to_string(m) + std::to_string(n));
}

LinearOperator theta_left(const Model &model, int reg, int g) {
    return embed_local(model.layout(), {LocalFactor::reg(reg)}, theta_left_local(model.group(), g), kOpUnitary, "ThetaL");
}

LinearOperator theta_right(const Model &model, int reg, int g) {
    return embed_local(model.layout(), {LocalFactor::reg(reg)}, theta_right_local(model.group(), g), kOpUnitary, "ThetaR");
}

LinearOperator matter_transform(const Model &model, int vertex, int g, bool staggered) {
    return embed_local(
        model.layout(),
        {LocalFactor::modes(model.first_mode(vertex), model.d_u())},
        matter_transform_local(model, vertex, g, staggered),
        kOpUnitary,
        "theta");
}

namespace {

std::vector<LocalGate> gauss_factors(const Model &model, int vertex, int g) {
    const Lattice &lat = model.lattice();
    std::vector<LocalGate> out;
    for (int k = 0; k < lat.dim(); k++) {
        int outgoing = lat.link_id(vertex, k);
        if (outgoing >= 0) {
            out.push_back({{LocalFactor::reg(model.link_register(outgoing))}, theta_left_local(model.group(), g), Mat(), 0, 0});
        }
        int prev = lat.shift(vertex, k, -1);
        int incoming = prev >= 0 ? lat.link_id(prev, k) : -1;
        if (incoming >= 0) {
            out.push_back(
                {{LocalFactor::reg(model.link_register(incoming))}, theta_right_local(model.group(), model.group().inverse(g)), Mat(), 0, 0});
        }
    }
    if (model.has_matter()) {
        out.push_back(
            {{LocalFactor::modes(model.first_mode(vertex), model.d_u())},
             matter_transform_local(model, vertex, g, true).adjoint(),
             Mat(),
             0,
             0});
    }
    return out;
}

}  // namespace

void apply_gauss(const Model &model, int vertex, int g, Vec &psi) {
    for (const auto &f : gauss_factors(model, vertex, g)) {
        apply_local(model.layout(), f, psi);
    }
}

Vec gauge_project(const Model &model, const Vec &psi) {
    require(psi.size() == model.layout().dim(), ErrorCode::kInvalidArgument, "state dimension does not match model layout");
    Vec cur = psi;
    const int order = model.group().order();
    for (int v = 0; v < model.lattice().num_vertices(); v++) {
        Vec acc = cur;
        for (int g = 1; g < order; g++) {
            Vec phi = cur;
            apply_gauss(model, v, g, phi);
            acc += phi;
        }
        cur = acc / double(order);
    }
    return cur;
}

LinearOperator gauss_operator(const Model &model, int vertex, int g) {
    LinearOperator acc = LinearOperator::identity(model.layout().dim());
    for (const auto &f : gauss_factors(model, vertex, g)) {
        acc = embed_local(model.layout(), f, kOpUnitary) * acc;
    }
    return LinearOperator(acc.matrix(), kOpUnitary, "Gauss");
}

double gauge_violation(const Model &model, const Vec &psi) {
    require(psi.size() == model.layout().dim(), ErrorCode::kInvalidArgument, "state dimension does not match model layout");
    double worst = 0;
    for (int v = 0; v < model.lattice().num_vertices(); v++) {
        for (int g = 1; g < model.group().order(); g++) {
            Vec phi = psi;
            for (const auto &f : gauss_factors(model, v, g)) {
                apply_local(model.layout(), f, phi);
            }
            worst = std::max(worst, (phi - psi).norm());
        }
    }
    return worst;
}

Mat electric_link_matrix(const Model &model) {
    const GroupSpec &group = model.group();
    const int n = group.n();
    const auto &f = model.f_l();
    auto f_of = [&](int l) { return f[std::min(l, n - l)]; };
    Mat ang = angular_overlap_matrix(n);
    if (group.kind() == GroupKind::kCyclic) {
        Mat h = Mat::Zero(n, n);
        for (int l = 0; l < n; l++) {
            h(l, l) = f_of(l);
        }
        return ang.adjoint() * h * ang;
    }
    const int order = group.order();
    Mat t = Mat::Zero(order, order);
    Mat h = Mat::Zero(order, order);
    for (int m = 0; m < 2; m++) {
        t.block(m * n, m * n, n, n) = ang;
        for (int l = 0; l < n; l++) {
            h(l + n * m, l + n * m) += f_of(l);
        }
        for (int mp = 0; mp < 2; mp++) {
            h(n * m, n * mp) += 0.5 * model.f_r();
        }
    }
    return t.adjoint() * h * t;
}

Mat electric_link_matrix_from_irreps(const Model &model) {
    const GroupSpec &group = model.group();
    Mat r = rep_overlap(group);
    auto values = model.electric_irrep_values();
    Vec diag(group.order());
    int col = 0;
    for (const Irrep &irr : group.irreps()) {
        for (int k = 0; k < irr.dim * irr.dim; k++) {
            diag[col++] = values[irr.label];
        }
    }
    return r * diag.asDiagonal() * r.adjoint();
}

double max_electric(const Model &model) {
    Eigen::SelfAdjointEigenSolver<Mat> es(electric_link_matrix(model), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

LinearOperator electric_link(const Model &model, int link) {
    return embed_local(
        model.layout(),
        {LocalFactor::reg(model.link_register(link))},
        model.couplings().lambda_e * electric_link_matrix(model),
        kOpHermitian,
        "hE" + std::to_string(link));
}

LinearOperator hamiltonian_electric(const Model &model) {
    const RegisterLayout &layout = model.layout();
    const Mat h = model.couplings().lambda_e * electric_link_matrix(model);
    const int nl = model.lattice().num_links();
    return build_operator(
        layout.dim(),
        [&](int64_t col, const std::function<void(int64_t, cplx)> &emit) {
            for (int l = 0; l < nl; l++) {
                int reg = model.link_register(l);
                int d = layout.digit(col, reg);
                for (int r = 0; r < h.rows(); r++) {
                    if (h(r, d) != cplx(0)) {
                        emit(col + (int64_t)(r - d) * layout.stride(reg), h(r, d));
                    }
                }
            }
        },
        kOpHermitian,
        "H_E");
}

LinearOperator plaquette_term(const Model &model, int plaquette) {
    const Lattice &lat = model.lattice();
    require(plaquette >= 0 && plaquette < lat.num_plaquettes(), ErrorCode::kOutOfRange, "plaquette out of range");
    const auto table = plaquette_table(model.group(), model.irrep());
    const auto links = lat.plaquettes()[plaquette].links;
    const RegisterLayout &layout = model.layout();
    const int n = model.group().order();
    return diagonal_sum(
        model,
        [&](int64_t i) {
            size_t key = 0;
            for (int l : links) {
                key = key * n + layout.digit(i, model.link_register(l));
            }
            return table[key];
        },
        "plaquette" + std::to_string(plaquette));
}

LinearOperator hamiltonian_magnetic(const Model &model, int plane, int parity) {
    const Lattice &lat = model.lattice();
    const auto table = plaquette_table(model.group(), model.irrep());
    std::vector<std::array<int, 4>> regs;
    for (const auto &p : lat.plaquettes()) {
        if ((plane < 0 || p.plane() == plane) && (parity < 0 || lat.parity(p.base) == parity)) {
            std::array<int, 4> r;
            for (int i = 0; i < 4; i++) {
                r[i] = model.link_register(p.links[i]);
            }
            regs.push_back(r);
        }
    }
    const RegisterLayout &layout = model.layout();
    const int n = model.group().order();
    const double lambda = model.couplings().lambda_b;
    return diagonal_sum(
        model,
        [&](int64_t i) {
            double s = 0;
            for (const auto &r : regs) {
                size_t key = 0;
                for (int reg : r) {
                    key = key * n + layout.digit(i, reg);
                }
                s += table[key];
            }
            return lambda * s;
        },
        "H_B");
}

LinearOperator hamiltonian_mass(const Model &model) {
    const RegisterLayout &layout = model.layout();
    if (!model.has_matter()) {
        return LinearOperator::zero(layout.dim());
    }
    uint64_t even_mask = 0, odd_mask = 0;
    for (int v = 0; v < model.lattice().num_vertices(); v++) {
        for (int m = 0; m < model.d_u(); m++) {
            (model.lattice().parity(v) ? odd_mask : even_mask) |= uint64_t{1} << model.mode(v, m);
        }
    }
    const double mass = model.couplings().mass;
    return diagonal_sum(
        model,
        [&](int64_t i) {
            uint64_t occ = layout.occupation(i);
            return mass * (std::popcount(occ & even_mask) - std::popcount(occ & odd_mask));
        },
        "H_M");
}

LinearOperator gauge_matter_link(const Model &model, int link) {
    model.lattice().link(link);
    return hopping_sum(model, {link}, true, "hGM" + std::to_string(link));
}

LinearOperator hamiltonian_gauge_matter(const Model &model, int dir, int parity) {
    return hopping_sum(model, selected_links(model, dir, parity), true, "H_GM");
}

LinearOperator tunneling_link(const Model &model, int link) {
    model.lattice().link(link);
    return hopping_sum(model, {link}, false, "H_t" + std::to_string(link));
}

LinearOperator hamiltonian_total(const Model &model) {
    LinearOperator h = hamiltonian_magnetic(model) + hamiltonian_electric(model) + hamiltonian_mass(model) + hamiltonian_gauge_matter(model);
    return LinearOperator(h.matrix(), kOpHermitian, "H");
}

uint64_t dirac_sea(const Model &model) {
    uint64_t occ = 0;
    if (!model.has_matter()) {
        return occ;
    }
    for (int v = 0; v < model.lattice().num_vertices(); v++) {
        if (model.lattice().parity(v) == 1) {
            for (int m = 0; m < model.d_u(); m++) {
                occ |= uint64_t{1} << model.mode(v, m);
            }
        }
    }
    return occ;
}

Vec vacuum_state(const Model &model) {
    const RegisterLayout &layout = model.layout();
    Vec psi = Vec::Zero(layout.dim());
    const int64_t fermion_dim = int64_t{1} << layout.num_modes();
    const int64_t link_configs = layout.physical_dim() / fermion_dim;
    const double amp = std::pow((double)model.group().order(), -0.5 * model.lattice().num_links());
    const uint64_t occ = dirac_sea(model);
    for (int64_t k = 0; k < link_configs; k++) {
        psi[(int64_t)occ + k * fermion_dim] = amp;
    }
    return psi;
}

}  // namespace lgt
