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


/* C interface of the lgtsim shared library. Every function returns an lgt_status; on failure the message of the last
 * error on the calling thread is available from lgt_last_error(). Strings returned through char** are owned by the
 * caller and released with lgt_string_free(). */

#ifndef LGTSIM_H
#define LGTSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LGT_API __declspec(dllexport)
#else
#define LGT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    LGT_OK = 0,
    LGT_ERR_INVALID_ARGUMENT = 1,
    LGT_ERR_OUT_OF_RANGE = 2,
    LGT_ERR_UNSUPPORTED = 3,
    LGT_ERR_RESOURCE_LIMIT = 4,
    LGT_ERR_ASSERTION = 5,
    LGT_ERR_IO = 6,
    LGT_ERR_INTERNAL = 7
} lgt_status;

typedef enum { LGT_GROUP_CYCLIC = 0, LGT_GROUP_DIHEDRAL = 1 } lgt_group_kind;
typedef enum { LGT_GM_DIRECT = 0, LGT_GM_MEDIATED = 1 } lgt_gm_variant;
typedef enum { LGT_PROBE_OPERATOR = 0, LGT_PROBE_STATE = 1 } lgt_probe_mode;

#define LGT_MAX_DIM 3
#define LGT_MAX_F 16

typedef struct {
    lgt_group_kind group_kind;
    int group_n;
    int dim;
    int extents[LGT_MAX_DIM];
    double lambda_b;
    double lambda_e;
    double lambda_gm;
    double mass;
    int with_matter;
    /* -1: one per anchor of the larger parity class; 0: physical layout only. */
    int ancilla_slots;
    /* Electric overrides: f_l for |l| = 0..N/2 when f_l_count > 0, f_r when has_f_r. */
    int f_l_count;
    double f_l[LGT_MAX_F];
    int has_f_r;
    double f_r;
} lgt_model_config;

typedef struct lgt_model lgt_model;
typedef struct lgt_state lgt_state;
typedef struct lgt_trace lgt_trace;

LGT_API const char *lgt_version(void);
LGT_API const char *lgt_last_error(void);
LGT_API void lgt_string_free(char *s);
LGT_API const char *lgt_status_name(lgt_status status);
/* Worker threads for dense kernels; 0 keeps the default. */
LGT_API lgt_status lgt_set_threads(int threads);

/* Unit couplings, Z2 on a 2x2 lattice with matter and default ancillas. */
LGT_API void lgt_model_config_default(lgt_model_config *config);
LGT_API lgt_status lgt_model_create(const lgt_model_config *config, lgt_model **out);
LGT_API void lgt_model_destroy(lgt_model *model);
LGT_API lgt_status lgt_model_dimensions(const lgt_model *model, int64_t *dim, int64_t *physical_dim);
LGT_API lgt_status lgt_model_counts(const lgt_model *model, int *vertices, int *links, int *plaquettes, int *ancillas);
/* Bytes needed to simulate the model: state vectors plus working copies. */
LGT_API lgt_status lgt_model_memory_estimate(const lgt_model_config *config, double *bytes);

LGT_API lgt_status lgt_state_vacuum(const lgt_model *model, lgt_state **out);
/* Basis state: occupied fermion modes and one group element per link (ancillas at the identity). */
LGT_API lgt_status lgt_state_basis(
    const lgt_model *model, const int *occupied_modes, int num_occupied, const int *link_elements, int num_links, lgt_state **out);
/* Seeded random physical state, projected onto the gauge-invariant subspace when gauge_invariant is non-zero. */
LGT_API lgt_status lgt_state_random(const lgt_model *model, uint64_t seed, int gauge_invariant, lgt_state **out);
LGT_API void lgt_state_destroy(lgt_state *state);
LGT_API lgt_status lgt_state_norm(const lgt_state *state, double *norm);

/* Trotterized evolution of `state` in place; one trace row per step. Refuses models above max_bytes (0: no cap). */
LGT_API lgt_status lgt_run(
    const lgt_model *model, lgt_state *state, double t, int steps, int order, lgt_gm_variant variant, double max_bytes,
    lgt_trace **out);
LGT_API void lgt_trace_destroy(lgt_trace *trace);
LGT_API lgt_status lgt_trace_size(const lgt_trace *trace, int *rows, int *vertices);
/* densities must hold `vertices` entries (may be NULL). */
LGT_API lgt_status lgt_trace_row(
    const lgt_trace *trace, int row, double *time, double *plaquette, double *gauge_violation, double *ancilla_fidelity,
    double *densities);

/* Bound report for the configured couplings and lattice as JSON. measure != 0 adds measured commutator norms when
 * the physical dimension is at most 4096. */
LGT_API lgt_status lgt_bounds_json(const lgt_model_config *config, double t, int steps, int measure, char **json);

/* Empirical Trotter errors for each N in `steps` against both bounds, as JSON. */
LGT_API lgt_status lgt_compare_json(
    const lgt_model_config *config, double t, const int *steps, int num_steps, int order, lgt_probe_mode probe,
    lgt_gm_variant variant, uint64_t seed, char **json);

/* Runs a verification suite (group, gauge, stator, trotter, atomic, all); fault may be NULL. all_passed is set to 1
 * when every check passes. */
LGT_API lgt_status lgt_verify_json(const char *suite, const char *fault, uint64_t seed, char **json, int *all_passed);

/* Pulse sequence of an atomic compile target (plaquette, gauge-matter, electric) with its verification distance. */
LGT_API lgt_status lgt_compile_json(const char *target, const lgt_model_config *couplings, double tau, char **json);

#ifdef __cplusplus
}
#endif

#endif
