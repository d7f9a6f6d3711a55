#pragma once

// Battery swapping and charging station (BSCS) with m battery packs.
//
// Scalar dynamics, with x(j) = y(j) = 0 for j <= 0:
//   x(k) = x(k-1) + α_k
//   y(k) = max(x(k), y(k-1), y(k-m) + c) + b
//
// Max-plus form: v(k) = (x(k), y(k), y(k-1), ..., y(k-m+1))ᵀ satisfies
// v(k) = B v(k) ⊕ C(k) v(k-1), solved as v(k) = Aᵀ(k) v(k-1) with
// Aᵀ(k) = B* C(k).

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "tropbscs/dynamics.hpp"
#include "tropbscs/matrix.hpp"
#include "tropbscs/random.hpp"

namespace tropbscs::bscs {

struct Exponential {
    double mean;
};
struct Uniform {
    double lo;
    double hi;
};
struct Deterministic {
    double a;
};

/// Distribution of the interarrival times α_k.
class InterarrivalDist {
public:
    using Kind = std::variant<Exponential, Uniform, Deterministic>;

    /// Throws PreconditionError on negative parameters or lo > hi.
    explicit InterarrivalDist(Kind kind);

    static InterarrivalDist exponential(double mean) { return InterarrivalDist(Exponential{mean}); }
    static InterarrivalDist uniform(double lo, double hi) { return InterarrivalDist(Uniform{lo, hi}); }
    static InterarrivalDist deterministic(double a) { return InterarrivalDist(Deterministic{a}); }

    [[nodiscard]] const Kind& kind() const noexcept { return kind_; }
    [[nodiscard]] double mean() const noexcept;
    [[nodiscard]] double variance() const noexcept;

    /// Exponential: -mean·ln(U); uniform: lo + (hi-lo)·U; snapped to the time grid.
    double sample(RandomStream& stream) const;

private:
    Kind kind_;
};

struct StationParams {
    InterarrivalDist dist;
    double b;       // swap time of one pack
    double c;       // charge time of one pack
    std::size_t m;  // packs at the station

    /// b > 0, c > 0, m >= 1.
    void validate() const;
};

struct TraceRow {
    std::size_t k;
    double x;
    double y;
    double lambda_hat;  // y / k
};

struct SimTrace {
    std::vector<TraceRow> rows;
};

/// Draws α_1..α_K from stream.
std::vector<double> sample_interarrivals(const InterarrivalDist& dist, std::size_t count,
                                         RandomStream& stream);

/// Runs the scalar recurrence on the given interarrival times.
SimTrace simulate_recurrence(const StationParams& params, std::span<const double> alphas);

/// Runs the scalar recurrence for K customers drawing from RandomStream(seed, replication).
SimTrace simulate_recurrence(const StationParams& params, std::size_t horizon,
                             std::uint64_t seed, std::uint64_t replication = 0);

/// Aᵀ(k) written out directly, (m+1) x (m+1).
Matrix build_transition_matrix(double alpha, const StationParams& params);

/// The implicit-equation matrices B and C(k).
Matrix coupling_matrix_b(const StationParams& params);
Matrix input_matrix_c(double alpha, const StationParams& params);

/// B* C(k), with B* obtained from kleene_star after checking Tr(B) = 𝟘.
Matrix assemble_implicit_and_solve(double alpha, const StationParams& params);

/// Blocks of A(k) = (Aᵀ(k))ᵀ = [[D1, T12], [𝟎, D2]].
struct TransitionBlocks {
    Trop d1;     // α_k
    Matrix t12;  // (α_k b, 𝟘, ..., 𝟘)
    Matrix d2;   // constant m x m block
};

/// Splits a matrix built by build_transition_matrix (the Aᵀ orientation).
TransitionBlocks block_decompose(const Matrix& transition, const StationParams& params);

/// Inverse of block_decompose; returns the Aᵀ orientation.
Matrix reassemble_transition(const TransitionBlocks& blocks);

/// The constant lower block D2 for the given parameters.
Matrix charging_block(const StationParams& params);

/// λ = max(a, b, (b+c)/m).
double mean_cycle_time_exact(const StationParams& params);

/// ||A_k|| for k = 1..K with A(k) built from the given interarrival times.
std::vector<double> matrix_path_norms(const StationParams& params, std::span<const double> alphas);

/// Runs the recurrence and the matrix product on the same α draws and
/// reports whether y(k) == ||A_k|| exactly for every k <= K.
bool scalar_vs_matrix_equivalence(const StationParams& params, std::size_t horizon,
                                  std::uint64_t seed);

/// The station as a random matrix process A(1), A(2), ...
MatrixProcess station_process(const StationParams& params);

/// The station in the form of a block-triangular spec (mu1 = a, D = D2).
BlockTriangularSpec station_block_spec(const StationParams& params);

struct EstimatePoint {
    std::size_t k;
    double lambda_hat;
};

/// λ̂ at k = stride, 2·stride, ...
std::vector<EstimatePoint> estimator_series(const SimTrace& trace, std::size_t stride);

}  // namespace tropbscs::bscs
