#pragma once

// Stochastic max-plus linear systems x(k) = Aᵀ(k) x(k-1).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tropbscs/matrix.hpp"
#include "tropbscs/random.hpp"

namespace tropbscs {

/// Draws A(step) from the stream. Steps are 1-based.
using MatrixSampler = std::function<Matrix(std::uint64_t step, RandomStream& stream)>;

/// An i.i.d. sequence of square random matrices A(1), A(2), ...
class MatrixProcess {
public:
    MatrixProcess(std::size_t dimension, MatrixSampler sampler);

    /// A(k) = a for every k.
    static MatrixProcess constant(Matrix a);

    [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }

    /// Throws DimensionError if the sampler returns a matrix of the wrong shape.
    [[nodiscard]] Matrix sample(std::uint64_t step, RandomStream& stream) const;

private:
    std::size_t dim_;
    MatrixSampler sampler_;
};

/// x(k) after k left-multiplications by sampled Aᵀ(i); x(0) = x0.
Vector evolve(const MatrixProcess& process, const Vector& x0, std::size_t k,
              RandomStream& stream);

struct GrowthRecord {
    std::size_t k;
    Trop norm;        // ||A_k||
    double estimate;  // ||A_k|| / k
};

struct GrowthTrace {
    std::vector<GrowthRecord> steps;
};

/// Running product A_k = A(1)···A(k) with its norm recorded every `stride`
/// steps (and always at k = K).
GrowthTrace product_norm_trace(const MatrixProcess& process, std::size_t horizon,
                               RandomStream& stream, std::size_t stride = 1);

/// Lyapunov exponent of a block-diagonal system from its per-block rates.
Trop lyapunov_block_diagonal(std::span<const Trop> block_rates);

/// Draws the scalar upper diagonal block α_k.
using AlphaSampler = std::function<double(RandomStream& stream)>;
/// Draws the 1 x n coupling row T(k); it may depend on the α_k of the same step.
using CouplingSampler =
    std::function<Matrix(double alpha, std::uint64_t step, RandomStream& stream)>;

/// A(k) = [[α_k, T(k)], [𝟎, D]] with constant D.
struct BlockTriangularSpec {
    double mu1 = 0.0;  // E α_k
    Matrix d;
    AlphaSampler alpha;
    CouplingSampler coupling;

    /// mu1 >= 0, D square, and some power of D fully finite.
    void validate() const;
};

/// Exact exponent max(mu1, ρ(D)).
Trop lyapunov_block_triangular(const BlockTriangularSpec& spec);

/// Builds [[d1, t12], [𝟎, d2]].
Matrix assemble_block_triangular(Trop d1, const Matrix& t12, const Matrix& d2);

/// The random process described by a block-triangular spec. A coupling draw
/// with norm 𝟘 raises PreconditionError.
MatrixProcess block_triangular_process(const BlockTriangularSpec& spec);

struct SandwichBounds {
    Trop lower;
    Trop upper;
};

/// Lower and upper envelopes on ||A_k|| for a product of block-triangular
/// matrices with scalar upper blocks α_i, lower blocks D(i), and coupling
/// norms ||T(i)||:
///   lower = α_1···α_k ⊕ ||D(1)···D(k)||
///   upper = lower ⊕ (⊕_j ||T(j)||) ⊗ ⊕_i (α_1···α_{i-1}) ||D(i+1)···D(k)||
/// Pass the same D at every step for the constant-block case.
SandwichBounds sandwich_bounds(std::span<const Trop> diag1, std::span<const Matrix> d_blocks,
                               std::span<const Trop> t_norms);

struct LyapunovEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Mean of ||A_K||/K over independent replications, with its standard error.
/// Replication r draws from RandomStream(seed, r); replications run
/// concurrently and the result does not depend on scheduling.
LyapunovEstimate lyapunov_estimate(const MatrixProcess& process, std::size_t horizon,
                                   std::size_t replications, std::uint64_t seed);

/// A'(k) = A(pk-p+1)···A(pk). A horizon of K steps of the base process maps
/// to floor(K/p) steps of this one.
MatrixProcess p_step_process(const MatrixProcess& process, std::size_t p);

}  // namespace tropbscs
