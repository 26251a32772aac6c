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

#include "lgtsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lgtsim/error.hpp"

namespace lgt {

Model::Model(GroupSpec group, Lattice lattice, Couplings couplings, ModelOptions options)
    : group_(std::move(group)), lattice_(std::move(lattice)), couplings_(std::move(couplings)), options_(options) {
    const int n = group_.n();
    const int half = n / 2;
    if (couplings_.f_l) {
        require((int)couplings_.f_l->size() == half + 1, ErrorCode::kInvalidArgument, "f_l must list N/2 + 1 coefficients");
        f_l_ = *couplings_.f_l;
    } else {
        for (int l = 0; l <= half; l++) {
            f_l_.push_back(1 - 2 * std::cos(2 * std::numbers::pi * l / n));
        }
    }
    if (couplings_.f_r) {
        require(group_.kind() == GroupKind::kDihedral, ErrorCode::kInvalidArgument, "f_r applies only to dihedral groups");
        f_r_ = *couplings_.f_r;
    }
    for (double c : {couplings_.lambda_b, couplings_.lambda_e, couplings_.lambda_gm, couplings_.mass}) {
        require(std::isfinite(c), ErrorCode::kInvalidArgument, "couplings must be finite");
    }

    for (int a : lattice_.anchors()) {
        anchors_[lattice_.parity(a)].push_back(a);
    }
    int slots = options_.ancilla_slots;
    if (slots < 0) {
        slots = (int)std::max(anchors_[0].size(), anchors_[1].size());
    }
    options_.ancilla_slots = slots;
    anchor_slot_.assign(lattice_.num_vertices(), -1);
    if (slots > 0) {
        for (const auto &list : anchors_) {
            for (size_t i = 0; i < list.size(); i++) {
                anchor_slot_[list[i]] = (int)(i % slots);
            }
        }
    }

    std::vector<Register> regs;
    for (int l = 0; l < lattice_.num_links(); l++) {
        regs.push_back({RegisterKind::kLink, group_.order(), "link" + std::to_string(l)});
    }
    for (int s = 0; s < slots; s++) {
        regs.push_back({RegisterKind::kAncilla, group_.order(), "ancilla" + std::to_string(s)});
    }
    int modes = options_.with_matter ? lattice_.num_vertices() * d_u() : 0;
    layout_ = RegisterLayout(modes, std::move(regs));
}

Model Model::with_ancilla_slots(int slots) const {
    ModelOptions o = options_;
    o.ancilla_slots = slots;
    return Model(group_, lattice_, couplings_, o);
}

Model Model::with_couplings(const Couplings &couplings) const {
    ModelOptions o = options_;
    return Model(group_, lattice_, couplings, o);
}

int Model::mode(int vertex, int component) const {
    require(options_.with_matter, ErrorCode::kInvalidArgument, "model has no matter fields");
    require(vertex >= 0 && vertex < lattice_.num_vertices(), ErrorCode::kOutOfRange, "vertex out of range");
    require(component >= 0 && component < d_u(), ErrorCode::kOutOfRange, "matter component out of range");
    return vertex * d_u() + component;
}

int Model::first_mode(int vertex) const {
    return mode(vertex, 0);
}

int Model::link_register(int link) const {
    require(link >= 0 && link < lattice_.num_links(), ErrorCode::kOutOfRange, "link out of range");
    return link;
}

int Model::ancilla_register(int slot) const {
    require(slot >= 0 && slot < num_ancilla_slots(), ErrorCode::kOutOfRange, "ancilla slot out of range");
    return lattice_.num_links() + slot;
}

const std::vector<int> &Model::anchors(int parity) const {
    require(parity == 0 || parity == 1, ErrorCode::kInvalidArgument, "parity must be 0 or 1");
    return anchors_[parity];
}

int Model::slot_for_anchor(int anchor) const {
    require(num_ancilla_slots() > 0, ErrorCode::kInvalidArgument, "model layout has no ancilla registers");
    require(anchor >= 0 && anchor < lattice_.num_vertices(), ErrorCode::kOutOfRange, "vertex out of range");
    int s = anchor_slot_[anchor];
    require(s >= 0, ErrorCode::kInvalidArgument, "vertex " + std::to_string(anchor) + " anchors no ancilla");
    return s;
}

std::vector<double> Model::electric_irrep_values() const {
    std::vector<double> out;
    const int n = group_.n();
    if (group_.kind() == GroupKind::kCyclic) {
        for (int j = 0; j < n; j++) {
            out.push_back(f_l_[std::min(j, n - j)]);
        }
        return out;
    }
    out.push_back(f_r_ + f_l_[0]);
    out.push_back(f_l_[0]);
    for (int k = 1; k <= (n - 1) / 2; k++) {
        out.push_back(f_l_[k]);
    }
    return out;
}

}  // namespace lgt
