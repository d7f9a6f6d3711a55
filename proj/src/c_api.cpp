#include "tropbscs/tropbscs.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "tropbscs/bscs.hpp"
#include "tropbscs/io.hpp"
#include "tropbscs/matrix.hpp"
#include "tropbscs/network.hpp"

struct tb_matrix {
    tropbscs::Matrix value;
};
struct tb_station {
    tropbscs::bscs::StationParams value;
};
struct tb_trace {
    tropbscs::bscs::SimTrace value;
};
struct tb_network {
    std::vector<tropbscs::network::NetworkStation> stations;
};
struct tb_plan {
    tropbscs::network::AllocationPlan value;
};

namespace {

using namespace tropbscs;

thread_local std::string g_last_error;

tb_status fail(tb_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
tb_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return TB_OK;
    } catch (const DimensionError& e) {
        return fail(TB_ERR_DIMENSION, e.what());
    } catch (const DomainError& e) {
        return fail(TB_ERR_DOMAIN, e.what());
    } catch (const PreconditionError& e) {
        return fail(TB_ERR_PRECONDITION, e.what());
    } catch (const ParseError& e) {
        return fail(TB_ERR_PARSE, e.what());
    } catch (const InfeasibleError& e) {
        return fail(TB_ERR_INFEASIBLE, e.what());
    } catch (const TooLargeError& e) {
        return fail(TB_ERR_TOO_LARGE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(TB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(TB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(TB_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class... Ptrs>
bool any_null(const Ptrs*... ptrs) {
    return ((ptrs == nullptr) || ...);
}

tb_status null_arg() { return fail(TB_ERR_INVALID_ARGUMENT, "null pointer argument"); }

tb_status matrix_unary(const tb_matrix* a, tb_matrix** out, Matrix (*op)(const Matrix&)) {
    if (any_null(a, out)) return null_arg();
    return guarded([&] { *out = new tb_matrix{op(a->value)}; });
}

tb_status scalar_query(const tb_matrix* a, double* out, Trop (*op)(const Matrix&)) {
    if (any_null(a, out)) return null_arg();
    return guarded([&] { *out = op(a->value).value(); });
}

}  // namespace

extern "C" {

const char* tb_version(void) { return "1.0.0"; }

const char* tb_status_name(tb_status status) {
    switch (status) {
        case TB_OK: return "ok";
        case TB_ERR_INVALID_ARGUMENT: return "invalid argument";
        case TB_ERR_DIMENSION: return "dimension mismatch";
        case TB_ERR_DOMAIN: return "domain error";
        case TB_ERR_PRECONDITION: return "precondition violated";
        case TB_ERR_PARSE: return "parse error";
        case TB_ERR_INFEASIBLE: return "infeasible";
        case TB_ERR_TOO_LARGE: return "instance too large";
        case TB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* tb_last_error(void) { return g_last_error.c_str(); }

void tb_string_free(char* s) { delete[] s; }

tb_status tb_matrix_from_json(const char* json, tb_matrix** out) {
    if (any_null(json, out)) return null_arg();
    return guarded([&] { *out = new tb_matrix{io::matrix_from_json(json)}; });
}

tb_status tb_matrix_to_json(const tb_matrix* a, char** out) {
    if (any_null(a, out)) return null_arg();
    return guarded([&] { *out = dup_string(io::to_json(a->value)); });
}

tb_status tb_matrix_shape(const tb_matrix* a, size_t* rows, size_t* cols) {
    if (any_null(a, rows, cols)) return null_arg();
    *rows = a->value.rows();
    *cols = a->value.cols();
    return TB_OK;
}

tb_status tb_matrix_get(const tb_matrix* a, size_t i, size_t j, double* out) {
    if (any_null(a, out)) return null_arg();
    if (i >= a->value.rows() || j >= a->value.cols()) {
        return fail(TB_ERR_INVALID_ARGUMENT, "matrix index out of range");
    }
    *out = a->value(i, j).value();
    return TB_OK;
}

void tb_matrix_free(tb_matrix* a) { delete a; }

tb_status tb_matrix_add(const tb_matrix* a, const tb_matrix* b, tb_matrix** out) {
    if (any_null(a, b, out)) return null_arg();
    return guarded([&] { *out = new tb_matrix{a->value + b->value}; });
}

tb_status tb_matrix_mul(const tb_matrix* a, const tb_matrix* b, tb_matrix** out) {
    if (any_null(a, b, out)) return null_arg();
    return guarded([&] { *out = new tb_matrix{a->value * b->value}; });
}

tb_status tb_matrix_pow(const tb_matrix* a, size_t p, tb_matrix** out) {
    if (any_null(a, out)) return null_arg();
    return guarded([&] { *out = new tb_matrix{power(a->value, p)}; });
}

tb_status tb_matrix_conjugate(const tb_matrix* a, tb_matrix** out) {
    return matrix_unary(a, out, &conjugate);
}

tb_status tb_matrix_kleene_star(const tb_matrix* a, tb_matrix** out) {
    return matrix_unary(a, out, &kleene_star);
}

tb_status tb_matrix_solve_implicit(const tb_matrix* a, const tb_matrix* b, tb_matrix** out) {
    if (any_null(a, b, out)) return null_arg();
    return guarded([&] {
        if (b->value.cols() != 1) throw DimensionError("right-hand side must be a column");
        const Vector rhs(std::vector<Trop>(b->value.entries().begin(), b->value.entries().end()));
        const Vector x = solve_implicit(a->value, rhs);
        *out = new tb_matrix{
            Matrix(x.size(), 1, std::vector<Trop>(x.entries().begin(), x.entries().end()))};
    });
}

tb_status tb_matrix_trace(const tb_matrix* a, double* out) { return scalar_query(a, out, &trace); }

tb_status tb_matrix_tropical_det(const tb_matrix* a, double* out) {
    return scalar_query(a, out, &tropical_det);
}

tb_status tb_matrix_norm(const tb_matrix* a, double* out) {
    if (any_null(a, out)) return null_arg();
    *out = norm(a->value).value();
    return TB_OK;
}

tb_status tb_matrix_spectral_radius(const tb_matrix* a, double* out) {
    return scalar_query(a, out, &spectral_radius);
}

tb_status tb_scalar_pow(double x, int64_t num, int64_t den, double* out) {
    if (any_null(out)) return null_arg();
    return guarded([&] {
        const Trop base = std::isinf(x) && x < 0 ? Trop::zero() : Trop(x);
        *out = pow(base, Rational(num, den)).value();
    });
}

tb_status tb_station_from_json(const char* json, tb_station** out) {
    if (any_null(json, out)) return null_arg();
    return guarded([&] { *out = new tb_station{io::station_from_json(json)}; });
}

tb_status tb_station_to_json(const tb_station* st, char** out) {
    if (any_null(st, out)) return null_arg();
    return guarded([&] { *out = dup_string(io::to_json(st->value)); });
}

tb_status tb_station_with(const tb_station* st, const char* name, double value, tb_station** out) {
    if (any_null(st, name, out)) return null_arg();
    const std::string key = name;
    if (key != "a" && key != "b" && key != "c" && key != "m") {
        return fail(TB_ERR_INVALID_ARGUMENT, "unknown station parameter \"" + key + "\"");
    }
    return guarded([&] {
        bscs::StationParams p = st->value;
        if (key == "b") {
            p.b = value;
        } else if (key == "c") {
            p.c = value;
        } else if (key == "m") {
            if (value < 1 || value != std::floor(value)) {
                throw PreconditionError("m must be a positive integer");
            }
            p.m = static_cast<std::size_t>(value);
        } else {
            const double old_mean = p.dist.mean();
            p.dist = std::visit(
                [&](const auto& d) -> bscs::InterarrivalDist {
                    using D = std::decay_t<decltype(d)>;
                    if constexpr (std::is_same_v<D, bscs::Uniform>) {
                        if (old_mean > 0.0) {
                            const double s = value / old_mean;
                            return bscs::InterarrivalDist::uniform(d.lo * s, d.hi * s);
                        }
                        return bscs::InterarrivalDist::uniform(value, value);
                    } else if constexpr (std::is_same_v<D, bscs::Exponential>) {
                        return bscs::InterarrivalDist::exponential(value);
                    } else {
                        return bscs::InterarrivalDist::deterministic(value);
                    }
                },
                p.dist.kind());
        }
        p.validate();
        *out = new tb_station{p};
    });
}

void tb_station_free(tb_station* st) { delete st; }

tb_status tb_station_exact_cycle_time(const tb_station* st, double* out) {
    if (any_null(st, out)) return null_arg();
    return guarded([&] { *out = bscs::mean_cycle_time_exact(st->value); });
}

tb_status tb_station_estimate_cycle_time(const tb_station* st, size_t horizon, size_t replications,
                                         uint64_t seed, double* estimate, double* std_error) {
    if (any_null(st, estimate, std_error)) return null_arg();
    return guarded([&] {
        const auto r =
            lyapunov_estimate(bscs::station_process(st->value), horizon, replications, seed);
        *estimate = r.estimate;
        *std_error = r.std_error;
    });
}

tb_status tb_station_check_equivalence(const tb_station* st, size_t horizon, uint64_t seed,
                                       int* equal) {
    if (any_null(st, equal)) return null_arg();
    return guarded([&] {
        if (horizon < 1) throw PreconditionError("equivalence check needs K >= 1");
        *equal = bscs::scalar_vs_matrix_equivalence(st->value, horizon, seed) ? 1 : 0;
    });
}

tb_status tb_simulate(const tb_station* st, size_t horizon, uint64_t seed, tb_trace** out) {
    if (any_null(st, out)) return null_arg();
    return guarded([&] {
        if (horizon < 1) throw PreconditionError("simulation needs K >= 1");
        *out = new tb_trace{bscs::simulate_recurrence(st->value, horizon, seed)};
    });
}

tb_status tb_trace_length(const tb_trace* tr, size_t* out) {
    if (any_null(tr, out)) return null_arg();
    *out = tr->value.rows.size();
    return TB_OK;
}

tb_status tb_trace_row(const tb_trace* tr, size_t index, size_t* k, double* x, double* y,
                       double* lambda_hat) {
    if (any_null(tr, k, x, y, lambda_hat)) return null_arg();
    if (index >= tr->value.rows.size()) return fail(TB_ERR_INVALID_ARGUMENT, "trace index out of range");
    const auto& row = tr->value.rows[index];
    *k = row.k;
    *x = row.x;
    *y = row.y;
    *lambda_hat = row.lambda_hat;
    return TB_OK;
}

tb_status tb_trace_to_csv(const tb_trace* tr, size_t stride, char** out) {
    if (any_null(tr, out)) return null_arg();
    return guarded([&] { *out = dup_string(io::trace_to_csv(tr->value, stride)); });
}

tb_status tb_trace_to_figure_csv(const tb_trace* tr, size_t stride, double exact, char** out) {
    if (any_null(tr, out)) return null_arg();
    return guarded([&] { *out = dup_string(io::figure_to_csv(tr->value, stride, exact)); });
}

void tb_trace_free(tb_trace* tr) { delete tr; }

tb_status tb_network_from_json(const char* json, tb_network** out, size_t* fleet) {
    if (any_null(json, out, fleet)) return null_arg();
    return guarded([&] {
        auto cfg = io::network_from_json(json);
        *fleet = cfg.fleet;
        *out = new tb_network{std::move(cfg.stations)};
    });
}

tb_status tb_network_size(const tb_network* net, size_t* out) {
    if (any_null(net, out)) return null_arg();
    *out = net->stations.size();
    return TB_OK;
}

void tb_network_free(tb_network* net) { delete net; }

tb_status tb_allocate_heuristic(const tb_network* net, size_t fleet, tb_plan** out) {
    if (any_null(net, out)) return null_arg();
    return guarded([&] { *out = new tb_plan{network::allocate_heuristic(net->stations, fleet)}; });
}

tb_status tb_allocate_bruteforce(const tb_network* net, size_t fleet, tb_plan** out) {
    if (any_null(net, out)) return null_arg();
    return guarded([&] { *out = new tb_plan{network::allocate_bruteforce(net->stations, fleet)}; });
}

tb_status tb_plan_objective(const tb_plan* plan, double* out) {
    if (any_null(plan, out)) return null_arg();
    *out = plan->value.total_income_rate;
    return TB_OK;
}

tb_status tb_plan_count(const tb_plan* plan, size_t station, size_t* out) {
    if (any_null(plan, out)) return null_arg();
    if (station >= plan->value.counts.size()) return fail(TB_ERR_INVALID_ARGUMENT, "station index out of range");
    *out = plan->value.counts[station];
    return TB_OK;
}

tb_status tb_plan_to_json(const tb_plan* plan, const tb_network* net, char** out) {
    if (any_null(plan, net, out)) return null_arg();
    return guarded([&] { *out = dup_string(io::plan_to_json(plan->value, net->stations)); });
}

void tb_plan_free(tb_plan* plan) { delete plan; }

}  // extern "C"
