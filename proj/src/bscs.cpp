#include "tropbscs/bscs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tropbscs::bscs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

// Simulation paths use grid-snapped constants so both evaluation orders agree.
struct GridParams {
    double b;
    double c;
    std::size_t m;
};

GridParams grid(const StationParams& p) {
    p.validate();
    return {snap_to_time_grid(p.b), snap_to_time_grid(p.c), p.m};
}

}  // namespace

InterarrivalDist::InterarrivalDist(Kind kind) : kind_(kind) {
    std::visit(Overloaded{
                   [](const Exponential& e) {
                       if (!(e.mean >= 0.0) || !std::isfinite(e.mean))
                           throw PreconditionError("exponential mean must be finite and >= 0");
                   },
                   [](const Uniform& u) {
                       if (!(u.lo >= 0.0) || !(u.hi >= u.lo) || !std::isfinite(u.hi))
                           throw PreconditionError("uniform support needs 0 <= lo <= hi");
                   },
                   [](const Deterministic& d) {
                       if (!(d.a >= 0.0) || !std::isfinite(d.a))
                           throw PreconditionError("deterministic interarrival must be >= 0");
                   },
               },
               kind_);
}

double InterarrivalDist::mean() const noexcept {
    return std::visit(Overloaded{
                          [](const Exponential& e) { return e.mean; },
                          [](const Uniform& u) { return 0.5 * (u.lo + u.hi); },
                          [](const Deterministic& d) { return d.a; },
                      },
                      kind_);
}

double InterarrivalDist::variance() const noexcept {
    return std::visit(Overloaded{
                          [](const Exponential& e) { return e.mean * e.mean; },
                          [](const Uniform& u) { return (u.hi - u.lo) * (u.hi - u.lo) / 12.0; },
                          [](const Deterministic&) { return 0.0; },
                      },
                      kind_);
}

double InterarrivalDist::sample(RandomStream& stream) const {
    const double v = std::visit(Overloaded{
                                    [&](const Exponential& e) {
                                        return -e.mean * std::log(stream.uniform_open0());
                                    },
                                    [&](const Uniform& u) {
                                        return u.lo + (u.hi - u.lo) * stream.uniform();
                                    },
                                    [](const Deterministic& d) { return d.a; },
                                },
                                kind_);
    return snap_to_time_grid(v);
}

void StationParams::validate() const {
    if (!(b > 0.0) || !std::isfinite(b)) throw PreconditionError("swap time b must be > 0");
    if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("charge time c must be > 0");
    if (m < 1) throw PreconditionError("battery count m must be >= 1");
}

std::vector<double> sample_interarrivals(const InterarrivalDist& dist, std::size_t count,
                                         RandomStream& stream) {
    std::vector<double> out(count);
    for (auto& a : out) a = dist.sample(stream);
    return out;
}

SimTrace simulate_recurrence(const StationParams& params, std::span<const double> alphas) {
    const auto [b, c, m] = grid(params);
    SimTrace trace;
    trace.rows.reserve(alphas.size());
    // history[k % m] holds y(k - m) when step k is computed.
    std::vector<double> history(m, 0.0);
    double x = 0.0;
    double y = 0.0;
    for (std::size_t k = 1; k <= alphas.size(); ++k) {
        x += snap_to_time_grid(alphas[k - 1]);
        double& y_back = history[k % m];
        y = std::max({x, y, y_back + c}) + b;
        y_back = y;
        trace.rows.push_back({k, x, y, y / static_cast<double>(k)});
    }
    return trace;
}

SimTrace simulate_recurrence(const StationParams& params, std::size_t horizon,
                             std::uint64_t seed, std::uint64_t replication) {
    params.validate();
    RandomStream stream(seed, replication);
    const auto alphas = sample_interarrivals(params.dist, horizon, stream);
    return simulate_recurrence(params, alphas);
}

Matrix build_transition_matrix(double alpha, const StationParams& params) {
    const auto [b, c, m] = grid(params);
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw PreconditionError("interarrival time must be finite and >= 0");
    }
    const double a = snap_to_time_grid(alpha);
    const std::size_t n = m + 1;
    std::vector<Trop> e(n * n, Trop::zero());
    auto at = [&](std::size_t i, std::size_t j) -> Trop& { return e[i * n + j]; };

    at(0, 0) = Trop(a);
    at(1, 0) = Trop(a + b);
    at(1, 1) = Trop(b);
    at(1, m) += Trop(b + c);  // m = 1 merges b and bc into one entry
    for (std::size_t r = 2; r <= m; ++r) at(r, r - 1) = Trop::one();
    return Matrix(n, n, std::move(e));
}

Matrix coupling_matrix_b(const StationParams& params) {
    const auto [b, c, m] = grid(params);
    const std::size_t n = m + 1;
    std::vector<Trop> e(n * n, Trop::zero());
    e[1 * n + 0] = Trop(b);
    return Matrix(n, n, std::move(e));
}

Matrix input_matrix_c(double alpha, const StationParams& params) {
    const auto [b, c, m] = grid(params);
    const std::size_t n = m + 1;
    std::vector<Trop> e(n * n, Trop::zero());
    e[0] = Trop(snap_to_time_grid(alpha));
    e[1 * n + 1] = Trop(b);
    e[1 * n + m] += Trop(b + c);
    for (std::size_t r = 2; r <= m; ++r) e[r * n + (r - 1)] = Trop::one();
    return Matrix(n, n, std::move(e));
}

Matrix assemble_implicit_and_solve(double alpha, const StationParams& params) {
    const Matrix b = coupling_matrix_b(params);
    if (!tropical_det(b).is_zero()) {
        throw Error("internal: Tr(B) is expected to be 𝟘");
    }
    return kleene_star(b) * input_matrix_c(alpha, params);
}

TransitionBlocks block_decompose(const Matrix& transition, const StationParams& params) {
    params.validate();
    const std::size_t m = params.m;
    if (transition.rows() != m + 1 || transition.cols() != m + 1) {
        throw DimensionError("transition matrix must be (m+1)x(m+1)");
    }
    const Matrix a = transition.transpose();
    for (std::size_t i = 1; i <= m; ++i) {
        if (a(i, 0).is_finite()) throw DimensionError("matrix is not block upper triangular");
    }
    std::vector<Trop> t(m), d(m * m);
    for (std::size_t j = 0; j < m; ++j) t[j] = a(0, j + 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) d[i * m + j] = a(i + 1, j + 1);
    return {a(0, 0), Matrix(1, m, std::move(t)), Matrix(m, m, std::move(d))};
}

Matrix reassemble_transition(const TransitionBlocks& blocks) {
    return assemble_block_triangular(blocks.d1, blocks.t12, blocks.d2).transpose();
}

Matrix charging_block(const StationParams& params) {
    const auto [b, c, m] = grid(params);
    std::vector<Trop> e(m * m, Trop::zero());
    e[0] = Trop(b);
    for (std::size_t i = 0; i + 1 < m; ++i) e[i * m + i + 1] = Trop::one();
    e[(m - 1) * m] += Trop(b + c);
    return Matrix(m, m, std::move(e));
}

double mean_cycle_time_exact(const StationParams& params) {
    params.validate();
    return std::max({params.dist.mean(), params.b,
                     (params.b + params.c) / static_cast<double>(params.m)});
}

std::vector<double> matrix_path_norms(const StationParams& params,
                                      std::span<const double> alphas) {
    std::vector<double> norms;
    norms.reserve(alphas.size());
    Matrix product = Matrix::identity(params.m + 1);
    for (double alpha : alphas) {
        product = product * build_transition_matrix(alpha, params).transpose();
        norms.push_back(norm(product).value());
    }
    return norms;
}

bool scalar_vs_matrix_equivalence(const StationParams& params, std::size_t horizon,
                                  std::uint64_t seed) {
    params.validate();
    RandomStream stream(seed, 0);
    const auto alphas = sample_interarrivals(params.dist, horizon, stream);
    const SimTrace trace = simulate_recurrence(params, alphas);
    const auto norms = matrix_path_norms(params, alphas);
    for (std::size_t k = 0; k < horizon; ++k) {
        if (trace.rows[k].y != norms[k]) return false;
    }
    return true;
}

MatrixProcess station_process(const StationParams& params) {
    params.validate();
    return MatrixProcess(params.m + 1, [params](std::uint64_t, RandomStream& s) {
        return build_transition_matrix(params.dist.sample(s), params).transpose();
    });
}

BlockTriangularSpec station_block_spec(const StationParams& params) {
    params.validate();
    BlockTriangularSpec spec;
    spec.mu1 = params.dist.mean();
    spec.d = charging_block(params);
    spec.alpha = [dist = params.dist](RandomStream& s) { return dist.sample(s); };
    spec.coupling = [b = snap_to_time_grid(params.b), m = params.m](double alpha, std::uint64_t,
                                                                    RandomStream&) {
        std::vector<Trop> row(m, Trop::zero());
        row[0] = Trop(snap_to_time_grid(alpha) + b);
        return Matrix(1, m, std::move(row));
    };
    return spec;
}

std::vector<EstimatePoint> estimator_series(const SimTrace& trace, std::size_t stride) {
    if (stride < 1) throw PreconditionError("stride must be >= 1");
    std::vector<EstimatePoint> out;
    for (const auto& row : trace.rows) {
        if (row.k % stride == 0) out.push_back({row.k, row.lambda_hat});
    }
    return out;
}

}  // namespace tropbscs::bscs
