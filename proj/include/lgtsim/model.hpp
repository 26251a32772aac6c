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

#ifndef LGTSIM_MODEL_HPP
#define LGTSIM_MODEL_HPP

#include <optional>
#include <vector>

#include "lgtsim/group.hpp"
#include "lgtsim/lattice.hpp"
#include "lgtsim/state.hpp"

namespace lgt {

struct Couplings {
    double lambda_b = 1.0;
    double lambda_e = 1.0;
    double lambda_gm = 1.0;
    double mass = 1.0;
    /// Electric coefficients f_l indexed by |l| = 0..N/2. Default 1 - 2 cos(2 pi l / N).
    std::optional<std::vector<double>> f_l;
    /// Coefficient of the l = 0 reflection mixing term (dihedral groups only). Default 1.
    std::optional<double> f_r;
};

struct ModelOptions {
    bool with_matter = true;
    /// Number of ancilla registers; -1 gives one per anchor of the larger parity class, 0 a purely physical layout.
    int ancilla_slots = -1;
};

/// A gauge group on a lattice with staggered matter in the faithful irrep and its register layout:
/// fermion modes (d_U per vertex, vertex-major), then one register per link, then ancilla registers.
class Model {
   public:
    Model(GroupSpec group, Lattice lattice, Couplings couplings = {}, ModelOptions options = {});

    const GroupSpec &group() const {
        return group_;
    }
    const Lattice &lattice() const {
        return lattice_;
    }
    const Couplings &couplings() const {
        return couplings_;
    }
    const ModelOptions &options() const {
        return options_;
    }
    const Irrep &irrep() const {
        return group_.default_irrep();
    }
    int d_u() const {
        return irrep().dim;
    }
    bool has_matter() const {
        return options_.with_matter;
    }
    const RegisterLayout &layout() const {
        return layout_;
    }
    int num_ancilla_slots() const {
        return layout_.num_ancillas();
    }

    /// Same model with a different number of ancilla registers (0 for the physical layout).
    Model with_ancilla_slots(int slots) const;
    Model with_couplings(const Couplings &couplings) const;

    int mode(int vertex, int component) const;
    int first_mode(int vertex) const;
    int link_register(int link) const;
    int ancilla_register(int slot) const;

    /// Anchors (lattice vertices hosting an ancilla) of the given parity, in vertex order.
    const std::vector<int> &anchors(int parity) const;
    /// Ancilla slot serving an anchor; anchors beyond the slot count reuse slots sequentially.
    int slot_for_anchor(int anchor) const;

    /// Electric coefficient f_|l| for |l| = 0..N/2.
    const std::vector<double> &f_l() const {
        return f_l_;
    }
    double f_r() const {
        return f_r_;
    }
    /// Electric eigenvalue attached to each irrep label (rep-basis form of the same operator).
    std::vector<double> electric_irrep_values() const;

   private:
    GroupSpec group_;
    Lattice lattice_;
    Couplings couplings_;
    ModelOptions options_;
    RegisterLayout layout_;
    std::vector<double> f_l_;
    double f_r_ = 1.0;
    std::vector<int> anchors_[2];
    std::vector<int> anchor_slot_;
};

}  // namespace lgt

#endif
