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


#include <cmath>
#include <cstring>
#include <new>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "lgtsim/atomic.hpp"
#include "lgtsim/bounds.hpp"
#include "lgtsim/error.hpp"
#include "lgtsim/hamiltonians.hpp"
#include "lgtsim/lgtsim.h"
#include "lgtsim/verify.hpp"

#ifdef LGTSIM_HAVE_OPENMP
#include <omp.h>
#endif

using nlohmann::json;

struct lgt_model {
    lgt::Model model;
};

struct lgt_state {
    lgt::Vec amplitudes;
    int64_t dim = 0;
};

struct lgt_trace {
    std::vector<lgt::TraceRow> rows;
    int vertices = 0;
};

namespace {

thread_local std::string g_last_error;

/// Resident state-sized vectors during a run: the state, gate scratch and the gauge-check copies.
constexpr double kResidentVectors = 8;

template <class F>
lgt_status guard(F &&f) {
    try {
        f();
        g_last_error.clear();
        return LGT_OK;
    } catch (const lgt::Error &e) {
        g_last_error = e.what();
        return (lgt_status)(int)e.code();
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return LGT_ERR_RESOURCE_LIMIT;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return LGT_ERR_INTERNAL;
    }
}

void need(const void *p, const char *what) {
    lgt::require(p != nullptr, lgt::ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

lgt::GroupSpec make_group(const lgt_model_config &c) {
    lgt::require(c.group_kind == LGT_GROUP_CYCLIC || c.group_kind == LGT_GROUP_DIHEDRAL, lgt::ErrorCode::kInvalidArgument,
                 "unknown group kind");
    return c.group_kind == LGT_GROUP_CYCLIC ? lgt::GroupSpec::cyclic(c.group_n) : lgt::GroupSpec::dihedral(c.group_n);
}

lgt::Lattice make_lattice(const lgt_model_config &c) {
    lgt::require(c.dim >= 1 && c.dim <= LGT_MAX_DIM, lgt::ErrorCode::kInvalidArgument, "lattice dimension must be 1..3");
    return lgt::Lattice(std::vector<int>(c.extents, c.extents + c.dim));
}

lgt::Couplings make_couplings(const lgt_model_config &c) {
    lgt::Couplings k{c.lambda_b, c.lambda_e, c.lambda_gm, c.mass};
    lgt::require(c.f_l_count >= 0 && c.f_l_count <= LGT_MAX_F, lgt::ErrorCode::kInvalidArgument, "too many f_l entries");
    if (c.f_l_count > 0) {
        k.f_l = std::vector<double>(c.f_l, c.f_l + c.f_l_count);
    }
    if (c.has_f_r) {
        k.f_r = c.f_r;
    }
    return k;
}

lgt::Model make_model(const lgt_model_config &c) {
    return lgt::Model(make_group(c), make_lattice(c), make_couplings(c), lgt::ModelOptions{c.with_matter != 0, c.ancilla_slots});
}

double estimate_bytes(const lgt_model_config &c) {
    const lgt::GroupSpec g = make_group(c);
    const lgt::Lattice lat = make_lattice(c);
    int slots = c.ancilla_slots;
    if (slots < 0) {
        int count[2] = {0, 0};
        for (int a : lat.anchors()) {
            count[lat.parity(a)]++;
        }
        slots = std::max(count[0], count[1]);
    }
    const int d_u = g.default_irrep().dim;
    double log2dim = (c.with_matter ? double(lat.num_vertices()) * d_u : 0.0) + double(lat.num_links() + slots) * std::log2(g.order());
    return std::exp2(log2dim) * sizeof(lgt::cplx) * kResidentVectors;
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

json params_json(const lgt::BoundParams &p) {
    return {{"d", p.d},           {"num_links", p.num_links}, {"d_u", p.d_u},   {"max_f", p.max_f}, {"lambda_b", p.lambda_b},
            {"lambda_e", p.lambda_e}, {"lambda_gm", p.lambda_gm}, {"mass", p.mass}, {"t", p.t},         {"steps", p.steps}};
}

/// Printed d = 3 forms evaluated at the configured couplings, when they apply (cubic lattice, max|f| = 2).
json printed_json(const lgt_model_config &c, const lgt::BoundParams &p) {
    if (c.dim != 3 || c.extents[0] != c.extents[1] || c.extents[1] != c.extents[2] || std::abs(p.max_f - 2) > 1e-12) {
        return nullptr;
    }
    const bool cyclic = c.group_kind == LGT_GROUP_CYCLIC;
    if (!cyclic && c.group_n != 3) {
        return nullptr;
    }
    const double l = c.extents[0], cells = (l - 1) * l * l, n = p.steps;
    std::array<double, lgt::kNumBoundVars> vars{p.lambda_b, p.lambda_e, p.lambda_gm, p.mass, p.max_f};
    auto first = cyclic ? lgt::printed_cyclic_first_order() : lgt::printed_dihedral_first_order();
    auto second = cyclic ? lgt::printed_cyclic_second_order() : lgt::printed_dihedral_second_order();
    return {{"first_order", first.expanded().evaluate(vars) * p.t * p.t * cells / n},
            {"second_order", second.expanded().evaluate(vars) * p.t * p.t * p.t * cells / (n * n)},
            {"first_order_form", first.expanded().str()},
            {"second_order_form", second.expanded().str()}};
}

}  // namespace

extern "C" {

const char *lgt_version(void) {
    return "1.0.0";
}

const char *lgt_last_error(void) {
    return g_last_error.c_str();
}

void lgt_string_free(char *s) {
    std::free(s);
}

const char *lgt_status_name(lgt_status status) {
    switch (status) {
        case LGT_OK:
            return "ok";
        case LGT_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case LGT_ERR_OUT_OF_RANGE:
            return "out of range";
        case LGT_ERR_UNSUPPORTED:
            return "unsupported";
        case LGT_ERR_RESOURCE_LIMIT:
            return "resource limit";
        case LGT_ERR_ASSERTION:
            return "assertion failed";
        case LGT_ERR_IO:
            return "i/o error";
        case LGT_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown";
}

lgt_status lgt_set_threads(int threads) {
    return guard([&] {
        lgt::require(threads >= 0, lgt::ErrorCode::kInvalidArgument, "thread count must be non-negative");
        if (threads > 0) {
            Eigen::setNbThreads(threads);
#ifdef LGTSIM_HAVE_OPENMP
            omp_set_num_threads(threads);
#endif
        }
    });
}

void lgt_model_config_default(lgt_model_config *config) {
    if (!config) {
        return;
    }
    *config = lgt_model_config{};
    config->group_kind = LGT_GROUP_CYCLIC;
    config->group_n = 2;
    config->dim = 2;
    config->extents[0] = config->extents[1] = config->extents[2] = 2;
    config->lambda_b = config->lambda_e = config->lambda_gm = config->mass = 1.0;
    config->with_matter = 1;
    config->ancilla_slots = -1;
}

lgt_status lgt_model_create(const lgt_model_config *config, lgt_model **out) {
    return guard([&] {
        need(config, "config");
        need(out, "out");
        *out = new lgt_model{make_model(*config)};
    });
}

void lgt_model_destroy(lgt_model *model) {
    delete model;
}

lgt_status lgt_model_dimensions(const lgt_model *model, int64_t *dim, int64_t *physical_dim) {
    return guard([&] {
        need(model, "model");
        if (dim) {
            *dim = model->model.layout().dim();
        }
        if (physical_dim) {
            *physical_dim = model->model.layout().physical_dim();
        }
    });
}

lgt_status lgt_model_counts(const lgt_model *model, int *vertices, int *links, int *plaquettes, int *ancillas) {
    return guard([&] {
        need(model, "model");
        const auto &lat = model->model.lattice();
        if (vertices) {
            *vertices = lat.num_vertices();
        }
        if (links) {
            *links = lat.num_links();
        }
        if (plaquettes) {
            *plaquettes = lat.num_plaquettes();
        }
        if (ancillas) {
            *ancillas = model->model.num_ancilla_slots();
        }
    });
}

lgt_status lgt_model_memory_estimate(const lgt_model_config *config, double *bytes) {
    return guard([&] {
        need(config, "config");
        need(bytes, "bytes");
        *bytes = estimate_bytes(*config);
    });
}

lgt_status lgt_state_vacuum(const lgt_model *model, lgt_state **out) {
    return guard([&] {
        need(model, "model");
        need(out, "out");
        lgt::Vec v = lgt::vacuum_state(model->model);
        *out = new lgt_state{std::move(v), model->model.layout().dim()};
    });
}

lgt_status lgt_state_basis(
    const lgt_model *model, const int *occupied_modes, int num_occupied, const int *link_elements, int num_links, lgt_state **out) {
    return guard([&] {
        need(model, "model");
        need(out, "out");
        const lgt::Model &m = model->model;
        const lgt::RegisterLayout &lay = m.layout();
        uint64_t occ = 0;
        for (int i = 0; i < num_occupied; i++) {
            need(occupied_modes, "occupied_modes");
            lgt::require(occupied_modes[i] >= 0 && occupied_modes[i] < lay.num_modes(), lgt::ErrorCode::kOutOfRange,
                         "occupied mode out of range");
            occ |= uint64_t(1) << occupied_modes[i];
        }
        std::vector<int> digits(lay.num_registers(), 0);
        lgt::require(num_links == 0 || num_links == m.lattice().num_links(), lgt::ErrorCode::kInvalidArgument,
                     "link elements must list every link");
        for (int l = 0; l < num_links; l++) {
            need(link_elements, "link_elements");
            lgt::require(link_elements[l] >= 0 && link_elements[l] < m.group().order(), lgt::ErrorCode::kOutOfRange,
                         "link element out of range");
            digits[m.link_register(l)] = link_elements[l];
        }
        lgt::Vec v = lgt::Vec::Zero(lay.dim());
        v[lay.index(occ, digits)] = 1;
        *out = new lgt_state{std::move(v), lay.dim()};
    });
}

lgt_status lgt_state_random(const lgt_model *model, uint64_t seed, int gauge_invariant, lgt_state **out) {
    return guard([&] {
        need(model, "model");
        need(out, "out");
        const lgt::Model &m = model->model;
        const lgt::Model phys = m.with_ancilla_slots(0);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> n;
        lgt::Vec p(phys.layout().dim());
        for (auto &x : p) {
            x = lgt::cplx(n(rng), n(rng));
        }
        if (gauge_invariant) {
            p = lgt::gauge_project(phys, p);
        }
        lgt::require(p.norm() > 1e-12, lgt::ErrorCode::kInvalidArgument, "projected random state vanished");
        lgt::Vec v = lgt::Vec::Zero(m.layout().dim());
        v.head(p.size()) = p.normalized();
        *out = new lgt_state{std::move(v), m.layout().dim()};
    });
}

void lgt_state_destroy(lgt_state *state) {
    delete state;
}

lgt_status lgt_state_norm(const lgt_state *state, double *norm) {
    return guard([&] {
        need(state, "state");
        need(norm, "norm");
        *norm = state->amplitudes.norm();
    });
}

lgt_status lgt_run(
    const lgt_model *model, lgt_state *state, double t, int steps, int order, lgt_gm_variant variant, double max_bytes,
    lgt_trace **out) {
    return guard([&] {
        need(model, "model");
        need(state, "state");
        need(out, "out");
        const lgt::Model &m = model->model;
        lgt::require(state->dim == m.layout().dim(), lgt::ErrorCode::kInvalidArgument, "state does not belong to this model");
        const double bytes = double(m.layout().dim()) * sizeof(lgt::cplx) * kResidentVectors;
        lgt::require(max_bytes <= 0 || bytes <= max_bytes, lgt::ErrorCode::kResourceLimit,
                     "instance needs about " + std::to_string((long long)bytes) + " bytes, above the cap of " +
                         std::to_string((long long)max_bytes));
        lgt::RunOptions ro;
        ro.order = order;
        ro.variant = variant == LGT_GM_MEDIATED ? lgt::GmVariant::kMediated : lgt::GmVariant::kDirect;
        auto rows = lgt::run_trotter(m, state->amplitudes, t, steps, ro);
        *out = new lgt_trace{std::move(rows), m.lattice().num_vertices()};
    });
}

void lgt_trace_destroy(lgt_trace *trace) {
    delete trace;
}

lgt_status lgt_trace_size(const lgt_trace *trace, int *rows, int *vertices) {
    return guard([&] {
        need(trace, "trace");
        if (rows) {
            *rows = (int)trace->rows.size();
        }
        if (vertices) {
            *vertices = trace->vertices;
        }
    });
}

lgt_status lgt_trace_row(
    const lgt_trace *trace, int row, double *time, double *plaquette, double *gauge_violation, double *ancilla_fidelity,
    double *densities) {
    return guard([&] {
        need(trace, "trace");
        lgt::require(row >= 0 && row < (int)trace->rows.size(), lgt::ErrorCode::kOutOfRange, "trace row out of range");
        const auto &r = trace->rows[row];
        if (time) {
            *time = r.time;
        }
        if (plaquette) {
            *plaquette = r.plaquette;
        }
        if (gauge_violation) {
            *gauge_violation = r.gauge_violation;
        }
        if (ancilla_fidelity) {
            *ancilla_fidelity = r.ancilla_fidelity;
        }
        if (densities) {
            for (size_t i = 0; i < r.densities.size(); i++) {
                densities[i] = r.densities[i];
            }
        }
    });
}

lgt_status lgt_bounds_json(const lgt_model_config *config, double t, int steps, int measure, char **out) {
    return guard([&] {
        need(config, "config");
        need(out, "out");
        const lgt::BoundParams p =
            lgt::BoundParams::from_parts(make_group(*config), make_lattice(*config), make_couplings(*config), config->with_matter != 0, t, steps);
        const lgt::BoundReport r = lgt::bound_report(p);
        json doc{{"params", params_json(p)},
                 {"first_order", r.first_order},
                 {"second_order", r.second_order},
                 {"first_order_from_terms", r.first_order_from_terms},
                 {"printed", printed_json(*config, p)}};
        json comm = json::array(), nested = json::array();
        for (const auto &b : r.commutators) {
            comm.push_back({{"name", b.name}, {"bound", b.value}});
        }
        for (const auto &b : r.nested) {
            nested.push_back({{"name", b.name}, {"bound", b.value}});
        }
        if (measure) {
            lgt_model_config phys = *config;
            phys.ancilla_slots = 0;
            lgt::require(estimate_bytes(phys) / (sizeof(lgt::cplx) * kResidentVectors) <= 4096, lgt::ErrorCode::kResourceLimit,
                         "measured commutators need a physical dimension of at most 4096");
            auto checks = lgt::measure_commutators(make_model(phys));
            for (size_t i = 0; i < checks.size(); i++) {
                json &slot = i < comm.size() ? comm[i] : nested[i - comm.size()];
                slot["measured"] = checks[i].measured;
            }
        }
        doc["commutators"] = comm;
        doc["nested"] = nested;
        *out = dup_string(doc.dump(2));
    });
}

lgt_status lgt_compare_json(
    const lgt_model_config *config, double t, const int *steps, int num_steps, int order, lgt_probe_mode probe,
    lgt_gm_variant variant, uint64_t seed, char **out) {
    return guard([&] {
        need(config, "config");
        need(out, "out");
        lgt::require(num_steps > 0 && steps != nullptr, lgt::ErrorCode::kInvalidArgument, "the list of step counts is empty");
        lgt::require(order == 0 || order == 1 || order == 2, lgt::ErrorCode::kInvalidArgument, "order must be 1, 2 or 0 for both");
        const lgt::Model model = make_model(*config);
        json rows = json::array(), slopes = json::object();
        std::vector<int> orders = order == 0 ? std::vector<int>{1, 2} : std::vector<int>{order};
        for (int o : orders) {
            std::vector<double> ns, eps;
            for (int i = 0; i < num_steps; i++) {
                lgt::EmpiricalOptions eo;
                eo.order = o;
                eo.mode = probe == LGT_PROBE_STATE ? lgt::ProbeMode::kState : lgt::ProbeMode::kOperator;
                eo.variant = variant == LGT_GM_MEDIATED ? lgt::GmVariant::kMediated : lgt::GmVariant::kDirect;
                eo.seed = seed;
                const double e = lgt::empirical_error(model, t, steps[i], eo);
                const lgt::BoundParams p = lgt::BoundParams::from_model(model, t, steps[i]);
                const double bound = o == 1 ? lgt::first_order_bound(p) : lgt::second_order_bound(p);
                rows.push_back({{"order", o}, {"steps", steps[i]}, {"epsilon", e}, {"bound", bound}, {"within_bound", e <= bound}});
                ns.push_back(steps[i]);
                eps.push_back(e);
            }
            bool positive = true;
            for (double e : eps) {
                positive = positive && e > 0;
            }
            slopes[std::to_string(o)] = (ns.size() >= 2 && positive) ? json(lgt::loglog_slope(ns, eps)) : json(nullptr);
        }
        json doc{{"t", t}, {"probe", probe == LGT_PROBE_STATE ? "state" : "operator"}, {"rows", rows}, {"slopes", slopes}};
        *out = dup_string(doc.dump(2));
    });
}

lgt_status lgt_verify_json(const char *suite, const char *fault, uint64_t seed, char **out, int *all_passed) {
    return guard([&] {
        need(suite, "suite");
        need(out, "out");
        lgt::VerifyOptions vo;
        vo.fault = fault ? fault : "";
        vo.seed = seed;
        auto checks = lgt::run_suite(suite, vo);
        json list = json::array();
        bool ok = true;
        static const char *kinds[] = {"at_most", "at_least", "near"};
        for (const auto &c : checks) {
            json j{{"suite", c.suite}, {"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"kind", kinds[(int)c.kind]},
                   {"passed", c.passed}};
            if (c.kind == lgt::Check::Kind::kNear) {
                j["target"] = c.target;
            }
            list.push_back(j);
            ok = ok && c.passed;
        }
        json doc{{"suite", suite}, {"fault", vo.fault}, {"checks", list}, {"passed", ok}};
        if (all_passed) {
            *all_passed = ok ? 1 : 0;
        }
        *out = dup_string(doc.dump(2));
    });
}

lgt_status lgt_compile_json(const char *target, const lgt_model_config *couplings, double tau, char **out) {
    return guard([&] {
        need(target, "target");
        need(out, "out");
        lgt::Couplings c;
        if (couplings) {
            c = make_couplings(*couplings);
        }
        lgt::PulseSequence seq = lgt::compile(lgt::parse_compile_target(target), c, tau);
        json doc = json::parse(seq.to_json());
        doc["deviation"] = lgt::verify_compiled(seq);
        *out = dup_string(doc.dump(2));
    });
}

}  // extern "C"
