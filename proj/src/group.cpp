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

#include "lgtsim/group.hpp"

#include <cmath>
#include <numbers>

#include "lgtsim/error.hpp"

namespace lgt {

namespace {

constexpr int kMaxGroupN = 64;

Mat phase_diag(double angle) {
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = std::polar(1.0, angle);
    d(1, 1) = std::polar(1.0, -angle);
    return d;
}

}  // namespace

GroupSpec GroupSpec::cyclic(int n) {
    require(n >= 2 && n <= kMaxGroupN, ErrorCode::kUnsupported, "Z_N requires 2 <= N <= 64, got N=" + std::to_string(n));
    GroupSpec g;
    g.kind_ = GroupKind::kCyclic;
    g.n_ = n;
    g.order_ = n;
    g.compose_.resize(n * n);
    g.inverse_.resize(n);
    for (int a = 0; a < n; a++) {
        g.inverse_[a] = (n - a) % n;
        for (int b = 0; b < n; b++) {
            g.compose_[a * n + b] = (a + b) % n;
        }
    }
    g.build_irreps();
    return g;
}

GroupSpec GroupSpec::dihedral(int n) {
    require(n >= 3 && n <= kMaxGroupN, ErrorCode::kUnsupported, "D_N requires 3 <= N <= 64, got N=" + std::to_string(n));
    require(n % 2 == 1, ErrorCode::kUnsupported, "D_N with even N is not supported, got N=" + std::to_string(n));
    GroupSpec g;
    g.kind_ = GroupKind::kDihedral;
    g.n_ = n;
    g.order_ = 2 * n;
    g.compose_.resize(g.order_ * g.order_);
    g.inverse_.resize(g.order_);
    for (int a = 0; a < g.order_; a++) {
        int p = a % n, m = a / n;
        // (p,m)^-1 = (p (-1)^(m+1), m)
        int ip = m == 0 ? (n - p) % n : p;
        g.inverse_[a] = ip + n * m;
        for (int b = 0; b < g.order_; b++) {
            int r = b % n, s = b / n;
            int q = m == 0 ? (p + r) % n : ((p - r) % n + n) % n;
            g.compose_[a * g.order_ + b] = q + n * ((m + s) % 2);
        }
    }
    g.build_irreps();
    return g;
}

GroupSpec GroupSpec::from_tables_unchecked(
    GroupKind kind, int n, std::vector<int> compose_table, std::vector<int> inverse_table) {
    GroupSpec g = kind == GroupKind::kCyclic ? cyclic(n) : dihedral(n);
    require(
        (int)compose_table.size() == g.order_ * g.order_ && (int)inverse_table.size() == g.order_,
        ErrorCode::kInvalidArgument,
        "table sizes do not match group order");
    g.compose_ = std::move(compose_table);
    g.inverse_ = std::move(inverse_table);
    return g;
}

void GroupSpec::build_irreps() {
    const double w = 2 * std::numbers::pi / n_;
    irreps_.clear();
    if (kind_ == GroupKind::kCyclic) {
        for (int j = 0; j < n_; j++) {
            Irrep r{j, "j=" + std::to_string(j), 1, {}};
            for (int p = 0; p < n_; p++) {
                r.matrices.push_back(Mat::Constant(1, 1, std::polar(1.0, w * j * p)));
            }
            irreps_.push_back(std::move(r));
        }
        default_label_ = 1;
        return;
    }
    Irrep trivial{0, "trivial", 1, {}};
    Irrep sign{1, "sign", 1, {}};
    for (int g = 0; g < order_; g++) {
        trivial.matrices.push_back(Mat::Constant(1, 1, 1.0));
        sign.matrices.push_back(Mat::Constant(1, 1, g / n_ == 0 ? 1.0 : -1.0));
    }
    irreps_.push_back(std::move(trivial));
    irreps_.push_back(std::move(sign));
    Mat sx = Mat::Zero(2, 2);
    sx(0, 1) = sx(1, 0) = 1.0;
    for (int k = 1; k <= (n_ - 1) / 2; k++) {
        Irrep r{1 + k, "k=" + std::to_string(k), 2, {}};
        for (int g = 0; g < order_; g++) {
            int p = g % n_, m = g / n_;
            Mat d = phase_diag(w * p * k);
            r.matrices.push_back(m == 0 ? d : Mat(d * sx));
        }
        irreps_.push_back(std::move(r));
    }
    default_label_ = 2;
}

int GroupSpec::compose(int a, int b) const {
    require(a >= 0 && a < order_ && b >= 0 && b < order_, ErrorCode::kOutOfRange, "group element out of range");
    return compose_[a * order_ + b];
}

int GroupSpec::inverse(int a) const {
    require(a >= 0 && a < order_, ErrorCode::kOutOfRange, "group element out of range");
    return inverse_[a];
}

std::string GroupSpec::name() const {
    return (kind_ == GroupKind::kCyclic ? "Z" : "D") + std::to_string(n_);
}

std::string GroupSpec::element_name(int g) const {
    require(g >= 0 && g < order_, ErrorCode::kOutOfRange, "group element out of range");
    if (kind_ == GroupKind::kCyclic) {
        return std::to_string(g);
    }
    return "(" + std::to_string(g % n_) + "," + std::to_string(g / n_) + ")";
}

std::pair<int, int> GroupSpec::parts(int g) const {
    require(g >= 0 && g < order_, ErrorCode::kOutOfRange, "group element out of range");
    return {g % n_, g / n_};
}

int GroupSpec::element(int p, int m) const {
    int mmax = kind_ == GroupKind::kCyclic ? 1 : 2;
    require(p >= 0 && p < n_ && m >= 0 && m < mmax, ErrorCode::kOutOfRange, "group element parts out of range");
    return p + n_ * m;
}

const Irrep &GroupSpec::irrep(int label) const {
    require(label >= 0 && label < (int)irreps_.size(), ErrorCode::kOutOfRange, "irrep label out of range");
    return irreps_[label];
}

const Irrep &GroupSpec::default_irrep() const {
    return irreps_[default_label_];
}

cplx rep_overlap(const GroupSpec &group, int g, int label, int m, int n) {
    const Irrep &r = group.irrep(label);
    require(m >= 0 && m < r.dim && n >= 0 && n < r.dim, ErrorCode::kOutOfRange, "irrep matrix index out of range");
    require(g >= 0 && g < group.order(), ErrorCode::kOutOfRange, "group element out of range");
    return std::sqrt((double)r.dim / group.order()) * r.matrices[g](m, n);
}

Mat rep_overlap(const GroupSpec &group) {
    int order = group.order();
    Mat out(order, order);
    int col = 0;
    for (const Irrep &r : group.irreps()) {
        for (int m = 0; m < r.dim; m++) {
            for (int n = 0; n < r.dim; n++) {
                for (int g = 0; g < order; g++) {
                    out(g, col) = std::sqrt((double)r.dim / order) * r.matrices[g](m, n);
                }
                col++;
            }
        }
    }
    return out;
}

cplx angular_overlap(int l, int p, int n) {
    require(n >= 1, ErrorCode::kInvalidArgument, "angular_overlap requires N >= 1");
    double angle = -2 * std::numbers::pi * (double)(((long long)l * p) % n) / n;
    return std::polar(1.0 / std::sqrt((double)n), angle);
}

Mat angular_overlap_matrix(int n) {
    Mat out(n, n);
    for (int l = 0; l < n; l++) {
        for (int p = 0; p < n; p++) {
            out(l, p) = angular_overlap(l, p, n);
        }
    }
    return out;
}

}  // namespace lgt
