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

#ifndef LGTSIM_GROUP_HPP
#define LGTSIM_GROUP_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lgt {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

enum class GroupKind { kCyclic, kDihedral };

/// A unitary irreducible representation, stored as one matrix per group element.
struct Irrep {
    int label = 0;
    std::string name;
    int dim = 1;
    std::vector<Mat> matrices;
};

/// Finite gauge group Z_N or D_N (odd N). Elements are flat indices 0..|G|-1 with 0 the identity.
/// Dihedral elements encode (p, m) as p + N*m, m = 1 marking a reflection.
class GroupSpec {
   public:
    static GroupSpec cyclic(int n);
    static GroupSpec dihedral(int n);
    /// Builds a group from raw tables without closure checks. Intended for fault-injection tests.
    static GroupSpec from_tables_unchecked(
        GroupKind kind, int n, std::vector<int> compose_table, std::vector<int> inverse_table);

    GroupKind kind() const {
        return kind_;
    }
    int n() const {
        return n_;
    }
    int order() const {
        return order_;
    }
    int identity() const {
        return 0;
    }
    int compose(int a, int b) const;
    int inverse(int a) const;
    std::string name() const;
    std::string element_name(int g) const;

    /// (p, m) parts of a dihedral element; cyclic elements return (p, 0).
    std::pair<int, int> parts(int g) const;
    int element(int p, int m) const;

    const std::vector<Irrep> &irreps() const {
        return irreps_;
    }
    const Irrep &irrep(int label) const;
    /// Faithful irrep used for matter and links: j = 1 for Z_N, the k = 1 doublet for D_N.
    const Irrep &default_irrep() const;

   private:
    GroupSpec() = default;
    void build_irreps();

    GroupKind kind_ = GroupKind::kCyclic;
    int n_ = 0;
    int order_ = 0;
    std::vector<int> compose_;
    std::vector<int> inverse_;
    std::vector<Irrep> irreps_;
    int default_label_ = 1;
};

/// <g|j m n> = sqrt(dim_j / |G|) D^j_mn(g). Rows are elements, columns run over (irrep, m, n) with n fastest.
Mat rep_overlap(const GroupSpec &group);
cplx rep_overlap(const GroupSpec &group, int g, int label, int m, int n);

/// <l|p> = exp(-2 pi i l p / N) / sqrt(N), the angular-momentum basis of the Z_N part.
cplx angular_overlap(int l, int p, int n);
/// Matrix with rows l = 0..N-1 (negative l wrap mod N) and columns p.
Mat angular_overlap_matrix(int n);

}  // namespace lgt

#endif
