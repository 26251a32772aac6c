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

#include "lgtsim/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <memory>
#include <random>


#include "lgtsim/error.hpp"

namespace lgt {

namespace {

constexpr double kFlagTolerance = 1e-10;
constexpr int64_t kMaxDim = int64_t{1} << 36;
constexpr int64_t kExactFlagCheckDim = 4096;
constexpr int64_t kMaxBlock = 4096;

Vec random_unit_vector(int64_t dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Vec v(dim);
    for (int64_t i = 0; i < dim; i++) {
        v[i] = cplx(gauss(rng), gauss(rng));
    }
    return v / v.norm();
}

double max_abs(const SparseMat &m) {
    double out = 0;
    for (int k = 0; k < m.outerSize(); k++) {
        for (SparseMat::InnerIterator it(m, k); it; ++it) {
            out = std::max(out, std::abs(it.value()));
        }
    }
    return out;
}

int jw_sign(uint64_t occupation, int mode) {
    return std::popcount(occupation & ((uint64_t{1} << mode) - 1)) % 2 ? -1 : 1;
}

}  // namespace

HermitianEigen hermitian_eigen(const Mat &h, bool vectors) {
    require(h.rows() == h.cols(), ErrorCode::kInvalidArgument, "eigendecomposition needs a square matrix");
    HermitianEigen out;
    if (h.rows() == 0) {
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    require(es.info() == Eigen::Success, ErrorCode::kAssertionFailed, "hermitian eigendecomposition failed");
    out.values = es.eigenvalues();
    if (vectors) {
        out.vectors = es.eigenvectors();
    }
    return out;
}

RegisterLayout::RegisterLayout(int num_modes, std::vector<Register> registers)
    : num_modes_(num_modes), registers_(std::move(registers)) {
    require(num_modes_ >= 0 && num_modes_ <= 40, ErrorCode::kResourceLimit, "at most 40 fermion modes are supported");
    mode_mask_ = (uint64_t{1} << num_modes_) - 1;
    dim_ = int64_t{1} << num_modes_;
    bool seen_ancilla = false;
    for (const auto &r : registers_) {
        require(r.dim >= 1, ErrorCode::kInvalidArgument, "register dimension must be positive");
        if (r.kind == RegisterKind::kAncilla) {
            seen_ancilla = true;
            num_ancillas_++;
        } else {
            require(!seen_ancilla, ErrorCode::kInvalidArgument, "ancilla registers must follow all other registers");
        }
        strides_.push_back(dim_);
        require(dim_ <= kMaxDim / r.dim, ErrorCode::kResourceLimit, "layout dimension overflows the supported range");
        dim_ *= r.dim;
        if (r.kind != RegisterKind::kAncilla) {
            physical_dim_ = dim_;
        }
    }
    if (registers_.empty() || registers_.front().kind == RegisterKind::kAncilla) {
        physical_dim_ = int64_t{1} << num_modes_;
    }
}

int64_t RegisterLayout::index(uint64_t occupation, const std::vector<int> &digits) const {
    require((int)digits.size() == num_registers(), ErrorCode::kInvalidArgument, "digit count does not match layout");
    require((occupation & ~mode_mask_) == 0, ErrorCode::kOutOfRange, "occupation has bits beyond the mode count");
    int64_t idx = (int64_t)occupation;
    for (int r = 0; r < num_registers(); r++) {
        require(digits[r] >= 0 && digits[r] < registers_[r].dim, ErrorCode::kOutOfRange, "register digit out of range");
        idx += digits[r] * strides_[r];
    }
    return idx;
}

RegisterLayout RegisterLayout::without_ancillas() const {
    std::vector<Register> regs;
    for (const auto &r : registers_) {
        if (r.kind != RegisterKind::kAncilla) {
            regs.push_back(r);
        }
    }
    return RegisterLayout(num_modes_, std::move(regs));
}

LinearOperator::LinearOperator(SparseMat matrix, unsigned flags, std::string name)
    : matrix_(std::move(matrix)), flags_(flags), name_(std::move(name)) {
    require(matrix_.rows() == matrix_.cols(), ErrorCode::kInvalidArgument, "operator must be square");
    matrix_.makeCompressed();
    check_flags();
}

LinearOperator LinearOperator::identity(int64_t dim) {
    SparseMat m(dim, dim);
    m.setIdentity();
    return LinearOperator(std::move(m), kOpHermitian | kOpUnitary, "identity");
}

LinearOperator LinearOperator::zero(int64_t dim) {
    return LinearOperator(SparseMat(dim, dim), kOpHermitian, "zero");
}

LinearOperator LinearOperator::from_dense(const Mat &m, unsigned flags, std::string name) {
    return LinearOperator(m.sparseView(0.0, 0.0), flags, std::move(name));
}

void LinearOperator::check_flags() const {
    if (flags_ == kOpNone) {
        return;
    }
    const std::string label = name_.empty() ? std::string("operator") : name_;
    if (dim() <= kExactFlagCheckDim) {
        double scale = std::max(1.0, max_abs(matrix_));
        if (flags_ & kOpHermitian) {
            SparseMat diff = matrix_ - SparseMat(matrix_.adjoint());
            require(max_abs(diff) <= kFlagTolerance * scale, ErrorCode::kAssertionFailed, label + " is flagged hermitian but is not");
        }
        if (flags_ & kOpUnitary) {
            SparseMat id(dim(), dim());
            id.setIdentity();
            SparseMat prod = SparseMat(matrix_.adjoint()) * matrix_;
            SparseMat diff = prod - id;
            require(max_abs(diff) <= kFlagTolerance, ErrorCode::kAssertionFailed, label + " is flagged unitary but is not");
        }
        return;
    }
    Vec v = random_unit_vector(dim(), 12345);
    Vec av = matrix_ * v;
    if (flags_ & kOpHermitian) {
        Vec w = random_unit_vector(dim(), 54321);
        Vec aw = matrix_ * w;
        double scale = std::max(1.0, av.norm() + aw.norm());
        require(
            std::abs(w.dot(av) - aw.dot(v)) <= kFlagTolerance * scale,
            ErrorCode::kAssertionFailed,
            label + " is flagged hermitian but is not");
    }
    if (flags_ & kOpUnitary) {
        require(std::abs(av.norm() - 1.0) <= kFlagTolerance, ErrorCode::kAssertionFailed, label + " is flagged unitary but is not");
    }
}

Vec LinearOperator::apply(const Vec &v) const {
    require(v.size() == dim(), ErrorCode::kInvalidArgument, "vector dimension does not match operator");
    return matrix_ * v;
}

Mat LinearOperator::apply(const Mat &v) const {
    require(v.rows() == dim(), ErrorCode::kInvalidArgument, "block dimension does not match operator");
    return matrix_ * v;
}

LinearOperator LinearOperator::adjoint() const {
    LinearOperator out;
    out.matrix_ = SparseMat(matrix_.adjoint());
    out.flags_ = flags_;
    out.name_ = name_ + "^dag";
    return out;
}

Mat LinearOperator::to_dense() const {
    require(dim() <= 8192, ErrorCode::kResourceLimit, "refusing to densify an operator above dimension 8192");
    return Mat(matrix_);
}

LinearOperator LinearOperator::operator*(const LinearOperator &other) const {
    require(dim() == other.dim(), ErrorCode::kInvalidArgument, "operator dimensions differ");
    LinearOperator out;
    out.matrix_ = (matrix_ * other.matrix_).pruned(1e-300);
    out.flags_ = (flags_ & other.flags_ & kOpUnitary);
    out.name_ = name_ + "*" + other.name_;
    return out;
}

LinearOperator LinearOperator::operator+(const LinearOperator &other) const {
    require(dim() == other.dim(), ErrorCode::kInvalidArgument, "operator dimensions differ");
    LinearOperator out;
    out.matrix_ = matrix_ + other.matrix_;
    out.flags_ = flags_ & other.flags_ & kOpHermitian;
    out.name_ = name_ + "+" + other.name_;
    return out;
}

LinearOperator LinearOperator::operator-(const LinearOperator &other) const {
    require(dim() == other.dim(), ErrorCode::kInvalidArgument, "operator dimensions differ");
    LinearOperator out;
    out.matrix_ = matrix_ - other.matrix_;
    out.flags_ = flags_ & other.flags_ & kOpHermitian;
    out.name_ = name_ + "-" + other.name_;
    return out;
}

LinearOperator LinearOperator::scaled(cplx factor) const {
    LinearOperator out;
    out.matrix_ = matrix_ * factor;
    out.flags_ = (factor.imag() == 0 ? (flags_ & kOpHermitian) : 0u) | (std::abs(std::abs(factor) - 1) < 1e-15 ? (flags_ & kOpUnitary) : 0u);
    out.name_ = name_;
    return out;
}

LinearOperator commutator(const LinearOperator &a, const LinearOperator &b) {
    require(a.dim() == b.dim(), ErrorCode::kInvalidArgument, "operator dimensions differ");
    SparseMat c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    return LinearOperator(std::move(c), kOpNone, "[" + a.name() + "," + b.name() + "]");
}

LinearOperator build_operator(
    int64_t dim,
    const std::function<void(int64_t, const std::function<void(int64_t, cplx)> &)> &action,
    unsigned flags,
    std::string name) {
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve((size_t)dim);
    int64_t col = 0;
    std::function<void(int64_t, cplx)> emit = [&](int64_t row, cplx value) {
        if (value != cplx(0)) {
            trips.emplace_back((int)row, (int)col, value);
        }
    };
    for (col = 0; col < dim; col++) {
        action(col, emit);
    }
    SparseMat m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    return LinearOperator(std::move(m), flags, std::move(name));
}

LinearOperator diagonal_operator(int64_t dim, const std::function<cplx(int64_t)> &value, unsigned flags, std::string name) {
    SparseMat m(dim, dim);
    m.reserve(Eigen::VectorXi::Constant(dim, 1));
    for (int64_t i = 0; i < dim; i++) {
        cplx v = value(i);
        if (v != cplx(0)) {
            m.insert(i, i) = v;
        }
    }
    return LinearOperator(std::move(m), flags, std::move(name));
}

namespace {

/// Precomputed column structure of a local gate.
class LocalKernel {
   public:
    LocalKernel(const RegisterLayout &layout, const LocalGate &gate) {
        int64_t local_dim = 1;
        int last_mode = -1;
        for (const auto &f : gate.factors) {
            Slot s{};
            if (f.kind == LocalFactor::Kind::kRegister) {
                require(f.first >= 0 && f.first < layout.num_registers(), ErrorCode::kOutOfRange, "register index out of range");
                s = {layout.stride(f.first), local_dim, layout.registers()[f.first].dim, false, 0, 0};
            } else {
                require(
                    f.first >= 0 && f.count >= 1 && f.first + f.count <= layout.num_modes(),
                    ErrorCode::kOutOfRange,
                    "mode block out of range");
                require(f.first > last_mode, ErrorCode::kInvalidArgument, "mode blocks must be disjoint and ascending");
                last_mode = f.first + f.count - 1;
                s = {int64_t{1} << f.first, local_dim, 1 << f.count, true, f.first, (uint64_t{1} << f.count) - 1};
            }
            local_dim *= s.dim;
            slots_.push_back(s);
        }
        require(
            gate.local.rows() == local_dim && gate.local.cols() == local_dim,
            ErrorCode::kInvalidArgument,
            "local matrix does not match factor dimensions");
        controlled_ = gate.control_count > 0;
        if (controlled_) {
            require(
                gate.local_odd.rows() == local_dim && gate.local_odd.cols() == local_dim,
                ErrorCode::kInvalidArgument,
                "odd-parity local matrix does not match factor dimensions");
            require(
                gate.control_first >= 0 && gate.control_first + gate.control_count <= layout.num_modes(),
                ErrorCode::kOutOfRange,
                "control mode range out of range");
            control_mask_ = ((uint64_t{1} << gate.control_count) - 1) << gate.control_first;
        }
        columns_[0] = tabulate(gate.local, local_dim);
        if (controlled_) {
            columns_[1] = tabulate(gate.local_odd, local_dim);
        }
    }

    template <class Emit>
    void for_column(int64_t col, Emit &&emit) const {
        int64_t lc = 0, base = col;
        for (const auto &s : slots_) {
            int64_t d = s.is_modes ? (int64_t)(((uint64_t)col >> s.first) & s.mask) : (col / s.global_stride) % s.dim;
            lc += d * s.local_stride;
            base -= d * s.global_stride;
        }
        int which = controlled_ ? std::popcount((uint64_t)col & control_mask_) % 2 : 0;
        for (const auto &[offset, v] : columns_[which][lc]) {
            emit(base + offset, v);
        }
    }

   private:
    struct Slot {
        int64_t global_stride;
        int64_t local_stride;
        int dim;
        bool is_modes;
        int first;
        uint64_t mask;
    };

    int64_t local_digit(int64_t local_index, const Slot &s) const {
        return (local_index / s.local_stride) % s.dim;
    }

    std::vector<std::vector<std::pair<int64_t, cplx>>> tabulate(const Mat &local, int64_t local_dim) const {
        std::vector<std::vector<std::pair<int64_t, cplx>>> columns(local_dim);
        for (int64_t c = 0; c < local_dim; c++) {
            for (int64_t r = 0; r < local_dim; r++) {
                cplx v = local(r, c);
                if (v == cplx(0)) {
                    continue;
                }
                int parity = 0;
                int64_t offset = 0;
                for (const auto &s : slots_) {
                    if (s.is_modes) {
                        parity += std::popcount((uint64_t)local_digit(r, s)) + std::popcount((uint64_t)local_digit(c, s));
                    }
                    offset += local_digit(r, s) * s.global_stride;
                }
                require(
                    parity % 2 == 0 || std::abs(v) < 1e-14,
                    ErrorCode::kInvalidArgument,
                    "local fermion operator must preserve fermion parity");
                columns[c].emplace_back(offset, v);
            }
        }
        return columns;
    }

    std::vector<Slot> slots_;
    bool controlled_ = false;
    uint64_t control_mask_ = 0;
    std::vector<std::vector<std::pair<int64_t, cplx>>> columns_[2];
};

}  // namespace

LinearOperator embed_local(const RegisterLayout &layout, const LocalGate &gate, unsigned flags, std::string name) {
    LocalKernel kernel(layout, gate);
    return build_operator(
        layout.dim(),
        [&](int64_t col, const std::function<void(int64_t, cplx)> &emit) { kernel.for_column(col, emit); },
        flags,
        std::move(name));
}

LinearOperator embed_local(
    const RegisterLayout &layout, const std::vector<LocalFactor> &factors, const Mat &local, unsigned flags, std::string name) {
    return embed_local(layout, LocalGate{factors, local, Mat(), 0, 0}, flags, std::move(name));
}

void apply_local(const RegisterLayout &layout, const LocalGate &gate, Vec &psi) {
    require(psi.size() == layout.dim(), ErrorCode::kInvalidArgument, "state dimension does not match layout");
    LocalKernel kernel(layout, gate);
    Vec out = Vec::Zero(psi.size());
    for (int64_t col = 0; col < psi.size(); col++) {
        cplx a = psi[col];
        if (a == cplx(0)) {
            continue;
        }
        kernel.for_column(col, [&](int64_t row, cplx v) { out[row] += v * a; });
    }
    psi = std::move(out);
}

std::optional<std::pair<uint64_t, int>> hop(uint64_t occupation, int a, int b) {
    const uint64_t ba = uint64_t{1} << a, bb = uint64_t{1} << b;
    if (a == b) {
        if (occupation & ba) {
            return std::make_pair(occupation, 1);
        }
        return std::nullopt;
    }
    if (!(occupation & bb)) {
        return std::nullopt;
    }
    int sign = jw_sign(occupation, b);
    uint64_t mid = occupation & ~bb;
    if (mid & ba) {
        return std::nullopt;
    }
    sign *= jw_sign(mid, a);
    return std::make_pair(mid | ba, sign);
}

LinearOperator fermion_operator(const RegisterLayout &layout, int mode, bool dagger) {
    require(mode >= 0 && mode < layout.num_modes(), ErrorCode::kOutOfRange, "mode out of range");
    const uint64_t bit = uint64_t{1} << mode;
    return build_operator(
        layout.dim(),
        [&](int64_t col, const std::function<void(int64_t, cplx)> &emit) {
            uint64_t occ = layout.occupation(col);
            bool occupied = occ & bit;
            if (occupied == dagger) {
                return;
            }
            int64_t row = dagger ? col + (int64_t)bit : col - (int64_t)bit;
            emit(row, (double)jw_sign(occ, mode));
        },
        kOpNone,
        (dagger ? "cdag" : "c") + std::to_string(mode));
}

LinearOperator number_operator(const RegisterLayout &layout, int mode) {
    require(mode >= 0 && mode < layout.num_modes(), ErrorCode::kOutOfRange, "mode out of range");
    return diagonal_operator(
        layout.dim(),
        [&](int64_t i) { return cplx((layout.occupation(i) >> mode) & 1); },
        kOpHermitian,
        "n" + std::to_string(mode));
}

Mat exp_hermitian_dense(const Mat &h, double t) {
    HermitianEigen es = hermitian_eigen(h, true);
    Vec phases = (es.values.cast<cplx>() * cplx(0, -t)).array().exp();
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

LinearOperator exp_hermitian(const LinearOperator &h, double t, std::string name) {
    require(h.is_hermitian(), ErrorCode::kInvalidArgument, "exp_hermitian requires a hermitian operator");
    const SparseMat &m = h.matrix();
    const int64_t dim = h.dim();

    std::vector<int64_t> parent(dim);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int64_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int64_t r = 0; r < dim; r++) {
        for (SparseMat::InnerIterator it(m, r); it; ++it) {
            if (it.col() != r && it.value() != cplx(0)) {
                int64_t a = find(r), b = find(it.col());
                if (a != b) {
                    parent[std::max(a, b)] = std::min(a, b);
                }
            }
        }
    }
    // Bucket indices by root; roots are the smallest member so buckets come out sorted.
    std::vector<int64_t> root(dim), count(dim, 0);
    for (int64_t i = 0; i < dim; i++) {
        root[i] = find(i);
        count[root[i]]++;
    }
    std::vector<int64_t> start(dim + 1, 0);
    for (int64_t i = 0; i < dim; i++) {
        start[i + 1] = start[i] + count[i];
    }
    std::vector<int64_t> members(dim), fill(start.begin(), start.end() - 1), position(dim);
    for (int64_t i = 0; i < dim; i++) {
        position[i] = fill[root[i]] - start[root[i]];
        members[fill[root[i]]++] = i;
    }

    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve((size_t)dim);
    for (int64_t rt = 0; rt < dim; rt++) {
        int64_t size = count[rt];
        if (size == 0) {
            continue;
        }
        if (size == 1) {
            trips.emplace_back((int)rt, (int)rt, std::exp(cplx(0, -t) * m.coeff(rt, rt)));
            continue;
        }
        require(size <= kMaxBlock, ErrorCode::kResourceLimit, "connected block too large for exact exponentiation");
        const int64_t *idx = &members[start[rt]];
        Mat block = Mat::Zero(size, size);
        for (int64_t a = 0; a < size; a++) {
            for (SparseMat::InnerIterator it(m, idx[a]); it; ++it) {
                block(a, position[it.col()]) = it.value();
            }
        }
        Mat e = exp_hermitian_dense(block, t);
        for (int64_t a = 0; a < size; a++) {
            for (int64_t b = 0; b < size; b++) {
                if (std::abs(e(a, b)) > 1e-300) {
                    trips.emplace_back((int)idx[a], (int)idx[b], e(a, b));
                }
            }
        }
    }
    SparseMat out(dim, dim);
    out.setFromTriplets(trips.begin(), trips.end());
    return LinearOperator(std::move(out), kOpUnitary, name.empty() ? "exp(" + h.name() + ")" : std::move(name));
}

namespace {

Vec krylov_evolve(const LinearOperator &h, double t, const Vec &psi, const EvolveOptions &options) {
    const SparseMat &m = h.matrix();
    double norm_estimate = 0;
    for (int r = 0; r < m.outerSize(); r++) {
        double s = 0;
        for (SparseMat::InnerIterator it(m, r); it; ++it) {
            s += std::abs(it.value());
        }
        norm_estimate = std::max(norm_estimate, s);
    }
    Vec w = psi;
    if (norm_estimate == 0 || t == 0) {
        return w;
    }
    const int max_m = (int)std::min<int64_t>(options.krylov_dim, h.dim());
    double done = 0;
    double dt = std::min(std::abs(t), 10.0 / norm_estimate);
    const double sign = t < 0 ? -1 : 1;
    const double total = std::abs(t);
    std::vector<Vec> basis;
    while (done < total) {
        dt = std::min(dt, total - done);
        double beta0 = w.norm();
        if (beta0 == 0) {
            break;
        }
        basis.assign(1, w / beta0);
        std::vector<double> alpha, beta;
        bool exact = false;
        for (int j = 0; j < max_m; j++) {
            Vec u = m * basis[j];
            alpha.push_back(basis[j].dot(u).real());
            for (int i = 0; i <= j; i++) {
                u -= basis[i].dot(u) * basis[i];
            }
            for (int i = 0; i <= j; i++) {
                u -= basis[i].dot(u) * basis[i];
            }
            double b = u.norm();
            beta.push_back(b);
            if (b < 1e-13 * norm_estimate || j + 1 == h.dim()) {
                exact = true;
                break;
            }
            if (j + 1 < max_m) {
                basis.push_back(u / b);
            }
        }
        int mdim = (int)alpha.size();
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(mdim, mdim);
        for (int j = 0; j < mdim; j++) {
            tri(j, j) = alpha[j];
            if (j + 1 < mdim) {
                tri(j, j + 1) = tri(j + 1, j) = beta[j];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        Vec y;
        for (int attempt = 0;; attempt++) {
            require(attempt < 60, ErrorCode::kAssertionFailed, "Krylov step size underflow");
            Vec phases = (es.eigenvalues().cast<cplx>() * cplx(0, -sign * dt)).array().exp();
            Vec e1 = es.eigenvectors().row(0).transpose().cast<cplx>();
            y = es.eigenvectors().cast<cplx>() * phases.asDiagonal() * e1;
            double err = exact ? 0.0 : beta0 * beta[mdim - 1] * std::abs(y[mdim - 1]);
            if (err <= options.tolerance * std::max(dt / total, 1e-3)) {
                break;
            }
            dt *= 0.5;
        }
        Vec next = Vec::Zero(w.size());
        for (int j = 0; j < mdim; j++) {
            next += (beta0 * y[j]) * basis[j];
        }
        w = std::move(next);
        done += dt;
        dt *= 1.25;
    }
    return w;
}

}  // namespace

Vec evolve_exact(const LinearOperator &h, double t, const Vec &psi, const EvolveOptions &options) {
    require(h.is_hermitian(), ErrorCode::kInvalidArgument, "evolve_exact requires a hermitian generator");
    require(psi.size() == h.dim(), ErrorCode::kInvalidArgument, "state dimension does not match the generator");
    if (!options.force_krylov && h.dim() <= options.dense_threshold) {
        HermitianEigen es = hermitian_eigen(Mat(h.matrix()), true);
        Vec phases = (es.values.cast<cplx>() * cplx(0, -t)).array().exp();
        return es.vectors * (phases.asDiagonal() * (es.vectors.adjoint() * psi));
    }
    return krylov_evolve(h, t, psi, options);
}

Mat dense_propagator(const LinearOperator &h, double t, const EvolveOptions &options) {
    require(h.is_hermitian(), ErrorCode::kInvalidArgument, "dense_propagator requires a hermitian generator");
    require(h.dim() <= options.dense_threshold, ErrorCode::kResourceLimit, "dense propagator refused above the dense threshold");
    return exp_hermitian_dense(Mat(h.matrix()), t);
}

double operator_norm(const Mat &a) {
    if (a.size() == 0) {
        return 0;
    }
    double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0) {
        return 0;
    }
    if (a.rows() == a.cols()) {
        double herm = (a - a.adjoint()).cwiseAbs().maxCoeff();
        double anti = (a + a.adjoint()).cwiseAbs().maxCoeff();
        if (herm <= 1e-13 * scale) {
            return hermitian_eigen(a, false).values.cwiseAbs().maxCoeff();
        }
        if (anti <= 1e-13 * scale) {
            return hermitian_eigen(Mat(cplx(0, 1) * a), false).values.cwiseAbs().maxCoeff();
        }
    }
    Eigen::BDCSVD<Mat> svd(a);
    return svd.singularValues()(0);
}

double operator_norm(const LinearOperator &a, const NormOptions &options) {
    if (!options.force_iterative && a.dim() <= options.exact_threshold) {
        return operator_norm(Mat(a.matrix()));
    }
    const SparseMat &m = a.matrix();
    SparseMat adj = m.adjoint();
    Vec v = random_unit_vector(a.dim(), options.seed);
    double last = -1;
    for (int it = 0; it < options.max_iterations; it++) {
        Vec av = m * v;
        double rayleigh = av.squaredNorm();
        Vec u = adj * av;
        double un = u.norm();
        if (un == 0) {
            return 0;
        }
        v = u / un;
        if (last >= 0 && std::abs(rayleigh - last) <= 1e-2 * options.relative_tolerance * rayleigh) {
            return std::sqrt(rayleigh);
        }
        last = rayleigh;
    }
    return std::sqrt(std::max(last, 0.0));
}

double frobenius_norm(const LinearOperator &a) {
    return a.matrix().norm();
}

StateVector::StateVector(RegisterLayout layout) : layout_(std::move(layout)), amp_(Vec::Zero(layout_.dim())) {
}

StateVector::StateVector(RegisterLayout layout, Vec amplitudes) : layout_(std::move(layout)), amp_(std::move(amplitudes)) {
    require(amp_.size() == layout_.dim(), ErrorCode::kInvalidArgument, "amplitude count does not match layout");
}

StateVector StateVector::basis(RegisterLayout layout, int64_t index) {
    StateVector s(std::move(layout));
    require(index >= 0 && index < s.layout_.dim(), ErrorCode::kOutOfRange, "basis index out of range");
    s.amp_[index] = 1;
    return s;
}

void StateVector::apply(const LinearOperator &op) {
    double before = amp_.norm();
    amp_ = op.apply(amp_);
    if (op.is_unitary()) {
        require(std::abs(amp_.norm() - before) <= 1e-10, ErrorCode::kAssertionFailed, "unitary application changed the state norm");
    }
}

double ancilla_fidelity(const RegisterLayout &layout, const Vec &psi, const std::vector<int> &reference) {
    require(psi.size() == layout.dim(), ErrorCode::kInvalidArgument, "state dimension does not match layout");
    int64_t offset = 0;
    int first = layout.num_registers() - layout.num_ancillas();
    if (!reference.empty()) {
        require((int)reference.size() == layout.num_ancillas(), ErrorCode::kInvalidArgument, "reference must list every ancilla");
        for (int a = 0; a < layout.num_ancillas(); a++) {
            int r = first + a;
            require(reference[a] >= 0 && reference[a] < layout.registers()[r].dim, ErrorCode::kOutOfRange, "reference digit out of range");
            offset += reference[a] * layout.stride(r);
        }
    }
    const double norm = psi.squaredNorm();
    require(norm > 0, ErrorCode::kInvalidArgument, "fidelity of the zero vector");
    return psi.segment(offset, layout.physical_dim()).squaredNorm() / norm;
}

void GateSequence::add(std::string name, std::function<LinearOperator()> build) {
    gates_.push_back({std::move(name), std::move(build), {}, {}});
}

void GateSequence::add(const LinearOperator &op) {
    require(dim_ == 0 || op.dim() == dim_, ErrorCode::kInvalidArgument, "gate dimension does not match sequence");
    gates_.push_back({op.name(), [op]() { return op; }, [op](Vec &psi) { psi = op.apply(psi); }, [op](Vec &psi) { psi = op.matrix().adjoint() * psi; }});
}

void GateSequence::add_local(std::string name, const RegisterLayout &layout, LocalGate gate, unsigned flags) {
    require(dim_ == 0 || layout.dim() == dim_, ErrorCode::kInvalidArgument, "gate dimension does not match sequence");
    auto shared = std::make_shared<LocalGate>(std::move(gate));
    auto dagger = std::make_shared<LocalGate>(*shared);
    dagger->local = shared->local.adjoint();
    if (shared->control_count > 0) {
        dagger->local_odd = shared->local_odd.adjoint();
    }
    gates_.push_back(
        {name,
         [layout, shared, flags, name]() { return embed_local(layout, *shared, flags, name); },
         [layout, shared](Vec &psi) { apply_local(layout, *shared, psi); },
         [layout, dagger](Vec &psi) { apply_local(layout, *dagger, psi); }});
}

void GateSequence::add_diagonal(std::string name, std::function<cplx(int64_t)> value) {
    require(dim_ > 0, ErrorCode::kInvalidArgument, "diagonal gates need a sequence dimension");
    int64_t dim = dim_;
    gates_.push_back(
        {name,
         [dim, value, name]() { return diagonal_operator(dim, value, kOpUnitary, name); },
         [value](Vec &psi) {
             for (int64_t i = 0; i < psi.size(); i++) {
                 psi[i] *= value(i);
             }
         },
         [value](Vec &psi) {
             for (int64_t i = 0; i < psi.size(); i++) {
                 psi[i] *= std::conj(value(i));
             }
         }});
}

void GateSequence::append(const GateSequence &other) {
    require(dim_ == 0 || other.dim_ == 0 || dim_ == other.dim_, ErrorCode::kInvalidArgument, "sequence dimensions differ");
    if (dim_ == 0) {
        dim_ = other.dim_;
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

void GateSequence::apply(Vec &psi) const {
    for (const auto &g : gates_) {
        double before = psi.norm();
        bool unitary = true;
        if (g.act) {
            g.act(psi);
        } else {
            LinearOperator op = g.build();
            psi = op.apply(psi);
            unitary = op.is_unitary();
        }
        if (unitary) {
            require(
                std::abs(psi.norm() - before) <= 1e-10 * std::max(1.0, before),
                ErrorCode::kAssertionFailed,
                "gate " + g.name + " changed the state norm");
        }
    }
}

void GateSequence::apply(Mat &block) const {
    for (const auto &g : gates_) {
        block = g.build().apply(block);
    }
}

LinearOperator GateSequence::product() const {
    require(dim_ > 0, ErrorCode::kInvalidArgument, "gate sequence has no dimension");
    LinearOperator acc = LinearOperator::identity(dim_);
    for (const auto &g : gates_) {
        acc = g.build() * acc;
    }
    return acc;
}

GateSequence GateSequence::adjoint() const {
    GateSequence out(dim_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        auto build = it->build;
        out.gates_.push_back({it->name + "^dag", [build]() { return build().adjoint(); }, it->act_adjoint, it->act});
    }
    return out;
}

}  // namespace lgt
