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

#ifndef LGTSIM_STATE_HPP
#define LGTSIM_STATE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lgtsim/group.hpp"

namespace lgt {

using SparseMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

enum class RegisterKind { kLink, kAncilla, kGeneric };

struct Register {
    RegisterKind kind = RegisterKind::kGeneric;
    int dim = 2;
    std::string label;
};

/// Ordered tensor layout: fermion modes (one bit each, least significant first), then registers with the first
/// register fastest. Ancilla registers must come last so the ancilla-reference sector is a contiguous block.
class RegisterLayout {
   public:
    RegisterLayout() = default;
    RegisterLayout(int num_modes, std::vector<Register> registers);

    int num_modes() const {
        return num_modes_;
    }
    const std::vector<Register> &registers() const {
        return registers_;
    }
    int num_registers() const {
        return (int)registers_.size();
    }
    int num_ancillas() const {
        return num_ancillas_;
    }
    int64_t dim() const {
        return dim_;
    }
    /// Dimension of everything except the ancilla registers.
    int64_t physical_dim() const {
        return physical_dim_;
    }
    int64_t stride(int reg) const {
        return strides_[reg];
    }
    uint64_t occupation(int64_t index) const {
        return (uint64_t)index & mode_mask_;
    }
    int digit(int64_t index, int reg) const {
        return (int)((index / strides_[reg]) % registers_[reg].dim);
    }
    int64_t with_digit(int64_t index, int reg, int value) const {
        return index + (int64_t)(value - digit(index, reg)) * strides_[reg];
    }
    int64_t index(uint64_t occupation, const std::vector<int> &digits) const;
    /// Layout with the ancilla registers removed.
    RegisterLayout without_ancillas() const;

   private:
    int num_modes_ = 0;
    std::vector<Register> registers_;
    std::vector<int64_t> strides_;
    int64_t dim_ = 1;
    int64_t physical_dim_ = 1;
    int num_ancillas_ = 0;
    uint64_t mode_mask_ = 0;
};

enum OpFlag : unsigned {
    kOpNone = 0,
    kOpHermitian = 1,
    kOpUnitary = 2,
};

/// Sparse row-compressed operator on a layout. Flags are verified on construction: exactly up to dimension 4096,
/// by action on a random vector above that.
class LinearOperator {
   public:
    LinearOperator() = default;
    LinearOperator(SparseMat matrix, unsigned flags, std::string name = {});
    static LinearOperator identity(int64_t dim);
    static LinearOperator zero(int64_t dim);
    static LinearOperator from_dense(const Mat &m, unsigned flags, std::string name = {});

    int64_t dim() const {
        return matrix_.rows();
    }
    const SparseMat &matrix() const {
        return matrix_;
    }
    unsigned flags() const {
        return flags_;
    }
    const std::string &name() const {
        return name_;
    }
    bool is_hermitian() const {
        return flags_ & kOpHermitian;
    }
    bool is_unitary() const {
        return flags_ & kOpUnitary;
    }

    Vec apply(const Vec &v) const;
    Mat apply(const Mat &v) const;
    LinearOperator adjoint() const;
    Mat to_dense() const;

    LinearOperator operator*(const LinearOperator &other) const;
    LinearOperator operator+(const LinearOperator &other) const;
    LinearOperator operator-(const LinearOperator &other) const;
    LinearOperator scaled(cplx factor) const;

   private:
    void check_flags() const;

    SparseMat matrix_;
    unsigned flags_ = kOpNone;
    std::string name_;
};

LinearOperator commutator(const LinearOperator &a, const LinearOperator &b);

/// Builds an operator from its action on basis columns: action(col, emit) calls emit(row, value).
LinearOperator build_operator(
    int64_t dim,
    const std::function<void(int64_t, const std::function<void(int64_t, cplx)> &)> &action,
    unsigned flags,
    std::string name = {});

/// Diagonal operator from a per-basis-state value.
LinearOperator diagonal_operator(int64_t dim, const std::function<cplx(int64_t)> &value, unsigned flags, std::string name = {});

/// One tensor factor of a local operator: a register, or a contiguous block of fermion modes.
struct LocalFactor {
    enum class Kind { kRegister, kModes };
    Kind kind = Kind::kRegister;
    int first = 0;
    int count = 1;
    static LocalFactor reg(int r) {
        return {Kind::kRegister, r, 1};
    }
    static LocalFactor modes(int first, int count) {
        return {Kind::kModes, first, count};
    }
};

/// Small matrix acting on a few factors (first factor fastest in the local index). Mode blocks must be listed in
/// ascending mode order and the matrix must preserve total fermion parity. When the matrix moves a fermion between
/// non-adjacent blocks, the parity of the modes in [control_first, control_first + control_count) selects
/// `local_odd` (odd) instead of `local` (even), which reproduces the Jordan-Wigner string across the gap.
struct LocalGate {
    std::vector<LocalFactor> factors;
    Mat local;
    Mat local_odd;
    int control_first = 0;
    int control_count = 0;
};

LinearOperator embed_local(const RegisterLayout &layout, const LocalGate &gate, unsigned flags, std::string name = {});
LinearOperator embed_local(
    const RegisterLayout &layout, const std::vector<LocalFactor> &factors, const Mat &local, unsigned flags, std::string name = {});
/// Matrix-free application of a local gate.
void apply_local(const RegisterLayout &layout, const LocalGate &gate, Vec &psi);

/// psi^dag_a psi_b on an occupation bit string: the new occupation and the Jordan-Wigner sign, or nothing.
std::optional<std::pair<uint64_t, int>> hop(uint64_t occupation, int a, int b);

/// Annihilation (dagger = false) or creation operator of one mode with Jordan-Wigner strings.
LinearOperator fermion_operator(const RegisterLayout &layout, int mode, bool dagger);
LinearOperator number_operator(const RegisterLayout &layout, int mode);

struct HermitianEigen {
    Eigen::VectorXd values;
    Mat vectors;
};
/// Dense hermitian eigendecomposition, eigenvalues ascending.
HermitianEigen hermitian_eigen(const Mat &h, bool vectors = true);

/// exp(-i t H) for hermitian sparse H by exact diagonalization of each connected block of H.
LinearOperator exp_hermitian(const LinearOperator &h, double t, std::string name = {});
/// exp(-i t H) for a small dense hermitian matrix.
Mat exp_hermitian_dense(const Mat &h, double t);

struct EvolveOptions {
    int64_t dense_threshold = 4096;
    int krylov_dim = 30;
    double tolerance = 1e-12;
    bool force_krylov = false;
};

/// exp(-i t H) psi: dense diagonalization up to the threshold, Lanczos with adaptive sub-stepping above.
Vec evolve_exact(const LinearOperator &h, double t, const Vec &psi, const EvolveOptions &options = {});
/// Full dense propagator exp(-i t H); refuses dimensions above the dense threshold.
Mat dense_propagator(const LinearOperator &h, double t, const EvolveOptions &options = {});

struct NormOptions {
    int64_t exact_threshold = 2048;
    double relative_tolerance = 1e-6;
    int max_iterations = 100000;
    uint64_t seed = 7;
    bool force_iterative = false;
};

/// Largest singular value: exact up to the threshold, power iteration on A^dag A above.
double operator_norm(const LinearOperator &a, const NormOptions &options = {});
double operator_norm(const Mat &a);
double frobenius_norm(const LinearOperator &a);

/// Dense amplitude vector tied to a layout.
class StateVector {
   public:
    explicit StateVector(RegisterLayout layout);
    StateVector(RegisterLayout layout, Vec amplitudes);
    static StateVector basis(RegisterLayout layout, int64_t index);

    const RegisterLayout &layout() const {
        return layout_;
    }
    const Vec &amplitudes() const {
        return amp_;
    }
    Vec &amplitudes() {
        return amp_;
    }
    double norm() const {
        return amp_.norm();
    }
    /// Applies an operator; unitary operators must keep the norm within 1e-10.
    void apply(const LinearOperator &op);

   private:
    RegisterLayout layout_;
    Vec amp_;
};

/// Relative weight of the sector where every ancilla register holds `reference` (all identity when empty).
double ancilla_fidelity(const RegisterLayout &layout, const Vec &psi, const std::vector<int> &reference = {});

/// Named gates built lazily, listed in application order (first entry acts first).
class GateSequence {
   public:
    struct Gate {
        std::string name;
        std::function<LinearOperator()> build;
        /// Optional matrix-free actions of the gate and its adjoint, used by apply(Vec&).
        std::function<void(Vec &)> act;
        std::function<void(Vec &)> act_adjoint;
    };

    GateSequence() = default;
    explicit GateSequence(int64_t dim) : dim_(dim) {
    }
    int64_t dim() const {
        return dim_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    size_t size() const {
        return gates_.size();
    }

    void add(std::string name, std::function<LinearOperator()> build);
    void add(const LinearOperator &op);
    void add_local(std::string name, const RegisterLayout &layout, LocalGate gate, unsigned flags = kOpUnitary);
    /// Diagonal gate given by a per-basis-state phase factor.
    void add_diagonal(std::string name, std::function<cplx(int64_t)> value);
    void append(const GateSequence &other);

    void apply(Vec &psi) const;
    void apply(Mat &block) const;
    /// Ordered product of all gates, last gate leftmost.
    LinearOperator product() const;
    /// Reversed sequence of adjoints.
    GateSequence adjoint() const;

   private:
    int64_t dim_ = 0;
    std::vector<Gate> gates_;
};

}  // namespace lgt

#endif
