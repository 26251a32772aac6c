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


#ifndef LGTSIM_ATOMIC_HPP
#define LGTSIM_ATOMIC_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "lgtsim/digital.hpp"

namespace lgt {

/// Gate-level model of the D_3 cold-atom implementation. A link or ancilla register |p, m> (index p + 3 m) is a
/// three-level atom carrying p and a two-level atom carrying m; a vertex is one fermionic site with two species.
namespace hyperfine {

/// m_F of the three-level atom encoding p: 0, +1, -1.
int three_level_mf(int p);
/// m_F of the two-level atom encoding m: +1/2, -1/2.
double two_level_mf(int m);

Mat p3();
Mat q3();
Mat p2();
Mat q2();
Mat fz3();
Mat fz2();
/// Projectors onto p = 0, m = 0 (m_F = +1/2) and m = 1 (m_F = -1/2).
Mat n0();
Mat n_up();
Mat n_down();
/// Number operators of the two species on a site; the Fock index is n1 + 2 n2.
Mat site_n1();
Mat site_n2();

}  // namespace hyperfine

/// Channel couplings from the two scattering lengths.
struct ScatteringParams {
    double a_half = 1.0;
    double a_three_half = 2.0;

    double g0() const {
        return (3 * a_half + 4 * a_three_half) / 6;
    }
    double g1() const {
        return 2 * (a_three_half - a_half) / 3;
    }
};

/// Pulse areas that turn the scattering gates into the target unitaries.
double tuned_alpha(const ScatteringParams &s, double lambda_b, double tau);
double tuned_beta(const ScatteringParams &s);
double tuned_gamma(const ScatteringParams &s);
double tuned_delta(const ScatteringParams &s, double lambda_e, double f_r, double tau);
/// Phase angle of the matter dressing V_W'(theta) produced by the tuned scat2.
double dressing_angle(const ScatteringParams &s);

/// exp(-i g0 alpha N0~ N~_1/2) on a (three-level, two-level) pair, index p + 3 m.
Mat scat1(const ScatteringParams &s, double alpha);
/// exp(-i beta (g0 n + g1 F~z3 (n1 - n2))) on (site, three-level), index occ + 4 p.
Mat scat2(const ScatteringParams &s, double beta);
/// exp(-i gamma (g0 + g1) N~_-1/2 n2) on (site, two-level), index occ + 4 m: the gradient leaves only the
/// m_F = -1/2 components overlapping.
Mat scat3(const ScatteringParams &s, double gamma);

/// Generators of the three scattering gates, for sensitivity estimates.
Mat scat1_generator(const ScatteringParams &s);
Mat scat2_generator(const ScatteringParams &s);
Mat scat3_generator(const ScatteringParams &s);

/// Local rotations.
Mat v3();
Mat v2();
Mat spin_flip3();
Mat hadamard2();
/// Fock lift of (sigma_x + sigma_z)/sqrt(2) on the two species of a site.
Mat hadamard_site();
/// exp(i (c/2) N0) on the three-level atom.
Mat electric_phase3(double c);
/// exp(-i theta n) on a site.
Mat matter_dressing(double theta);
/// Basis change of the three-level atom from group elements to angular momentum, <l|p>.
Mat angular_change3();
/// Eigenbasis of the reflection p -> -p, so that R = W diag(1, 1, -1) W^dag.
Mat reflection_basis3();

/// Two-body phases between a control and a target atom, index control + dim(control) * target.
Mat phase_three_three();
Mat phase_two_two();
/// exp(-i pi N_-1/2 (control two-level) |k=2><k=2| (target three-level in the reflection basis)).
Mat phase_two_three();

/// Controlled group actions: Q~3^p, Q~2^m and R~^m as dense matrices on (link three, link two, ancilla three,
/// ancilla two), for oracles.
Mat controlled_q3(int power);
Mat controlled_q2();

/// Duration of the superlattice offset M_even that reproduces exp(-i H_M tau) within each particle-number sector.
double mass_trick_duration(double mass, double mass_even, double tau);
/// exp(-i H'_M duration) with H'_M = M_even sum_x (1 + (-1)^x) n(x), as a diagonal gate.
GateSequence mass_lattice_gate(const Model &model, double mass_even, double duration);

enum class CompileTarget { kPlaquette, kGaugeMatter, kElectric };
CompileTarget parse_compile_target(const std::string &name);
std::string target_name(CompileTarget target);

enum class PulseKind { kLocal, kScattering, kTunneling };

/// One sub-register of an instance: the three- or two-level atom of a register, or a fermionic site.
struct SubTarget {
    enum class Kind { kThree, kTwo, kSite };
    Kind kind = Kind::kThree;
    /// Register index for kThree/kTwo, vertex for kSite.
    int index = 0;
    static SubTarget three(int reg) {
        return {Kind::kThree, reg};
    }
    static SubTarget two(int reg) {
        return {Kind::kTwo, reg};
    }
    static SubTarget site(int vertex) {
        return {Kind::kSite, vertex};
    }
};

struct Pulse {
    std::string name;
    PulseKind kind = PulseKind::kLocal;
    std::vector<std::string> registers;
    /// Pulse area for scattering gates, duration for tunneling, 0 otherwise.
    double area = 0;
    LocalGate gate;
};

struct CompileOptions {
    ScatteringParams scattering;
    /// Use the abelian Q~3^p Q~2^m entangler instead of the group product.
    bool literal_entangler = false;
    /// Multipliers of the tuned areas alpha, beta, gamma, delta.
    std::array<double, 4> area_scale{1, 1, 1, 1};
};

struct PulseSequence {
    CompileTarget target;
    Model instance;
    double tau = 0;
    /// Phase angle of the matter dressing (gauge-matter only).
    double theta = 0;
    std::vector<Pulse> pulses;

    GateSequence gates() const;
    /// Ordered records {name, kind, registers, area} as JSON text.
    std::string to_json(int indent = 2) const;
};

/// Single-cube D_3 instance for a target: one plaquette without matter, one link between two sites, or one bare
/// link. Plaquette and gauge-matter instances carry one ancilla register.
Model atomic_instance(CompileTarget target, const Couplings &couplings = {});
/// Embeds a small operator acting on `targets` (first target fastest) as a pulse on the instance layout.
Pulse make_pulse(const Model &model, std::string name, PulseKind kind, const std::vector<SubTarget> &targets, const Mat &op, double area = 0);

PulseSequence compile(CompileTarget target, const Couplings &couplings, double tau, const CompileOptions &options = {});
/// Abstract gate the sequence must reproduce on the ancilla reference sector, on the physical layout:
/// plaquette_substep, V_W' W_GM V_W', or exp(-i tau H_E).
Mat abstract_gate(const PulseSequence &sequence);
/// Compiled product restricted to the ancilla reference sector, as a (full x physical) block.
Mat compiled_block(const PulseSequence &sequence);
/// Operator-norm distance between the compiled block and the abstract gate embedded at the reference sector.
/// `column_filter` restricts the comparison to selected physical basis columns.
double verify_compiled(const PulseSequence &sequence, const std::function<bool(int64_t)> &column_filter = {});

}  // namespace lgt

#endif
