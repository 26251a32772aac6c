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

#ifndef LGTSIM_DIGITAL_HPP
#define LGTSIM_DIGITAL_HPP

#include <functional>
#include <string>
#include <vector>

#include "lgtsim/model.hpp"

namespace lgt {

enum class GmVariant { kDirect, kMediated };
enum class FactorKind { kMagnetic, kGaugeMatter, kElectric, kMass };

std::string factor_name(FactorKind kind);

/// |g>|h~> -> |g>|g h~> on a (link, ancilla) register pair, link index fastest.
Mat entangler_local(const GroupSpec &group);
/// Entangler restricted to the ancilla starting in |e~>: the |G|^2 x |G| isometry |g> -> |g>|g~>.
Mat stator_isometry(const GroupSpec &group);
LocalGate entangler_gate(const Model &model, int link, int slot);

/// Diagonal of lambda_B Tr(U~ + U~^dag) over ancilla group elements.
Eigen::VectorXd ancilla_magnetic_diagonal(const Model &model);

/// U_a U_b U_c^dag U_d^dag for the role set of `plane` at `anchor` (U_d^dag acts first).
GateSequence plaquette_isometry(const Model &model, int anchor, int plane);
/// isometry^dag exp(-i tau H~_B) isometry on every anchor of the given parity hosting a plaquette in `plane`.
GateSequence plaquette_substep(const Model &model, int plane, int parity, double tau);

/// Principal-branch Z = -i log(U) of a unitary, eigenphases in (-pi, pi].
Mat principal_log_generator(const Mat &unitary);
/// exp(i Z_mn psi^dag_m psi_n) on the d_U modes of one vertex, Z = -i log D(g); one block per element g.
Mat gauge_matter_block(const Model &model, int g);
/// Controlled gauge-matter unitary on (vertex modes, control register) with the control holding g.
Mat gauge_matter_local(const Model &model);
LocalGate gauge_matter_gate(const Model &model, int link);
/// exp(-i tau H_t) across one link as a local gate with a Jordan-Wigner parity control.
LocalGate tunneling_gate(const Model &model, int link, double tau);

GateSequence gauge_matter_substep(const Model &model, int dir, int parity, double tau, GmVariant variant);
GateSequence electric_substep(const Model &model, double tau);
GateSequence mass_substep(const Model &model, double tau);

struct ScheduleEntry {
    FactorKind kind = FactorKind::kMagnetic;
    /// Plane for magnetic entries, direction for gauge-matter entries, unused otherwise.
    int piece = 0;
    int parity = 0;
    double duration = 0;
};

/// Sub-evolutions of a whole run in application order. First order per step: B (all planes and parities),
/// GM 1e..de, GM 1o..do, E, M. Second order mirrors the factor list with half steps around a full M step.
std::vector<ScheduleEntry> trotter_schedule(const Model &model, int order, double t, int steps);
GateSequence entry_gates(const Model &model, const ScheduleEntry &entry, GmVariant variant = GmVariant::kDirect);
GateSequence trotter_step(const Model &model, int order, double tau, GmVariant variant = GmVariant::kDirect);

/// Mean of <Tr U_p + H.c.> over plaquettes (0 without plaquettes).
double plaquette_expectation(const Model &model, const Vec &psi);
/// <sum_m n_m(x)> per vertex.
std::vector<double> vertex_densities(const Model &model, const Vec &psi);
/// Re <Tr prod U> along a closed path. Steps are +-(dir + 1); a negative step walks backwards with U^dag.
double wilson_loop(const Model &model, const Vec &psi, int start, const std::vector<int> &steps);

struct TraceRow {
    double time = 0;
    double plaquette = 0;
    std::vector<double> densities;
    double gauge_violation = 0;
    double ancilla_fidelity = 1;
};

TraceRow measure(const Model &model, const Vec &psi, double time);

struct RunOptions {
    int order = 1;
    GmVariant variant = GmVariant::kDirect;
    /// Called after every schedule entry with the entry and the current state.
    std::function<void(const ScheduleEntry &, const Vec &)> on_substep;
};

/// Evolves psi in place through `steps` Trotter steps of total time t; returns one row per step.
std::vector<TraceRow> run_trotter(const Model &model, Vec &psi, double t, int steps, const RunOptions &options = {});

}  // namespace lgt

#endif
