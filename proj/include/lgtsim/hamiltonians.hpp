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

#ifndef LGTSIM_HAMILTONIANS_HPP
#define LGTSIM_HAMILTONIANS_HPP

#include "lgtsim/model.hpp"

namespace lgt {

/// U_mn = sum_g D_mn(g) |g><g| on one register (|G| x |G| diagonal).
Mat link_u_local(const GroupSpec &group, const Irrep &irrep, int m, int n);
/// Theta^L_g |h> = |g^-1 h> and Theta^R_g |h> = |h g^-1> as |G| x |G| permutations.
Mat theta_left_local(const GroupSpec &group, int g);
Mat theta_right_local(const GroupSpec &group, int g);
/// Fock-space lift of a d x d single-particle matrix: psi^dag_i -> sum_n psi^dag_n A_ni (2^d x 2^d).
Mat fock_lift(const Mat &single_particle);
/// Matter transformation at a vertex, with the staggered det(D(g^-1)) factor on odd sites when requested.
Mat matter_transform_local(const Model &model, int vertex, int g, bool staggered = true);

LinearOperator link_u(const Model &model, int reg, int m, int n);
LinearOperator theta_left(const Model &model, int reg, int g);
LinearOperator theta_right(const Model &model, int reg, int g);
LinearOperator matter_transform(const Model &model, int vertex, int g, bool staggered = true);
/// Gauss-law generator at a vertex: product of Theta^L on outgoing links, Theta^R^dag on incoming links and the
/// conjugate staggered matter transformation. Boundary links that do not exist are omitted.
LinearOperator gauss_operator(const Model &model, int vertex, int g);
/// Matrix-free action of the same operator.
void apply_gauss(const Model &model, int vertex, int g, Vec &psi);
/// Projection onto the gauge-invariant subspace (the group average of every vertex operator).
Vec gauge_project(const Model &model, const Vec &psi);

/// Single-link electric operator in the group-element basis, built in the angular basis and rotated back.
Mat electric_link_matrix(const Model &model);
/// The same operator assembled from irrep projectors: sum_j f(j) sum_mn |jmn><jmn|.
Mat electric_link_matrix_from_irreps(const Model &model);
/// Largest |eigenvalue| of the single-link electric operator.
double max_electric(const Model &model);

LinearOperator electric_link(const Model &model, int link);
LinearOperator hamiltonian_electric(const Model &model);

/// Tr(U U U^dag U^dag) + H.c. for one plaquette (diagonal).
/// 2 Re Tr(D(a) D(b) D(c)^dag D(d)^dag) indexed by ((a n + b) n + c) n + d.
std::vector<double> plaquette_table(const GroupSpec &group, const Irrep &irrep);
LinearOperator plaquette_term(const Model &model, int plaquette);
/// lambda_B * sum of plaquette terms; plane and parity -1 select everything.
LinearOperator hamiltonian_magnetic(const Model &model, int plane = -1, int parity = -1);

LinearOperator hamiltonian_mass(const Model &model);

/// lambda_GM (psi^dag_m(x) U_mn psi_n(x+k) + H.c.) on one link.
LinearOperator gauge_matter_link(const Model &model, int link);
/// Sum over links with direction `dir` whose base has the given parity; -1 selects everything.
LinearOperator hamiltonian_gauge_matter(const Model &model, int dir = -1, int parity = -1);
/// Bare tunneling lambda_GM (psi^dag_m(x) psi_m(x+k) + H.c.) across one link.
LinearOperator tunneling_link(const Model &model, int link);

LinearOperator hamiltonian_total(const Model &model);

/// Gauge-invariant vacuum: odd sites filled, even sites empty, links in the uniform superposition, ancillas at e.
Vec vacuum_state(const Model &model);
/// Occupation bit string of the filled Dirac sea.
uint64_t dirac_sea(const Model &model);

/// max_{x,g} || Theta_g(x) psi - psi ||.
double gauge_violation(const Model &model, const Vec &psi);

}  // namespace lgt

#endif
