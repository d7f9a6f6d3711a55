#include "tropbscs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <thread>

namespace tropbscs {

MatrixProcess::MatrixProcess(std::size_t dimension, MatrixSampler sampler)
    : dim_(dimension), sampler_(std::move(sampler)) {
    if (!sampler_) throw PreconditionError("matrix process needs a sampler");
}

MatrixProcess MatrixProcess::constant(Matrix a) {
    if (!a.is_square()) throw DimensionError("constant process matrix must be square");
    const std::size_t n = a.rows();
    return MatrixProcess(n, [a = std::move(a)](std::uint64_t, RandomStream&) { return a; });
}

Matrix MatrixProcess::sample(std::uint64_t step, RandomStream& stream) const {
    Matrix a = sampler_(step, stream);
    if (a.rows() != dim_ || a.cols() != dim_) {
        throw DimensionError("sampled matrix is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", process dimension is " +
                             std::to_string(dim_));
    }
    return a;
}

Vector evolve(const MatrixProcess& process, const Vector& x0, std::size_t k,
              RandomStream& stream) {
    if (x0.size() != process.dimension()) {
        throw DimensionError("initial state length differs from process dimension");
    }
    Vector x = x0;
    for (std::size_t step = 1; step <= k; ++step) {
        x = process.sample(step, stream).transpose() * x;
    }
    return x;
}

GrowthTrace product_norm_trace(const MatrixProcess& process, std::size_t horizon,
                               RandomStream& stream, std::size_t stride) {
    if (horizon < 1) throw PreconditionError("product_norm_trace needs K >= 1");
    if (stride < 1) throw PreconditionError("stride must be >= 1");
    GrowthTrace trace;
    trace.steps.reserve(horizon / stride + 1);
    Matrix product = Matrix::identity(process.dimension());
    for (std::size_t k = 1; k <= horizon; ++k) {
        product = product * process.sample(k, stream);
        if (k % stride == 0 || k == horizon) {
            const Trop n = norm(product);
            trace.steps.push_back({k, n, n.value() / static_cast<double>(k)});
        }
    }
    return trace;
}

Trop lyapunov_block_diagonal(std::span<const Trop> block_rates) {
    if (block_rates.empty()) throw PreconditionError("no block rates given");
    Trop lambda = Trop::zero();
    for (Trop mu : block_rates) {
        if (mu.is_zero()) throw DomainError("block rates must be finite");
        lambda += mu;
    }
    return lambda;
}

void BlockTriangularSpec::validate() const {
    if (!(mu1 >= 0.0) || !std::isfinite(mu1)) {
        throw PreconditionError("mu1 must be finite and nonnegative");
    }
    if (!d.is_square() || d.rows() == 0) {
        throw DimensionError("lower diagonal block must be a nonempty square matrix");
    }
    if (fully_finite_power(d) == 0) {
        throw PreconditionError("no power of the lower diagonal block is fully finite");
    }
}

Trop lyapunov_block_triangular(const BlockTriangularSpec& spec) {
    spec.validate();
    return Trop(spec.mu1) + spectral_radius(spec.d);
}

Matrix assemble_block_triangular(Trop d1, const Matrix& t12, const Matrix& d2) {
    if (!d2.is_square()) throw DimensionError("lower block must be square");
    if (t12.rows() != 1 || t12.cols() != d2.rows()) {
        throw DimensionError("coupling block must be a 1 x n row");
    }
    const std::size_t n = d2.rows() + 1;
    std::vector<Trop> e(n * n, Trop::zero());
    e[0] = d1;
    for (std::size_t j = 0; j < d2.cols(); ++j) e[j + 1] = t12(0, j);
    for (std::size_t i = 0; i < d2.rows(); ++i)
        for (std::size_t j = 0; j < d2.cols(); ++j) e[(i + 1) * n + (j + 1)] = d2(i, j);
    return Matrix(n, n, std::move(e));
}

MatrixProcess block_triangular_process(const BlockTriangularSpec& spec) {
    spec.validate();
    if (!spec.alpha || !spec.coupling) {
        throw PreconditionError("block-triangular spec needs alpha and coupling samplers");
    }
    return MatrixProcess(spec.d.rows() + 1, [spec](std::uint64_t step, RandomStream& s) {
        const double alpha = spec.alpha(s);
        Matrix t = spec.coupling(alpha, step, s);
        if (norm(t).is_zero()) {
            throw PreconditionError("coupling block drew an all-𝟘 row");
        }
        return assemble_block_triangular(Trop(alpha), t, spec.d);
    });
}

SandwichBounds sandwich_bounds(std::span<const Trop> diag1, std::span<const Matrix> d_blocks,
                               std::span<const Trop> t_norms) {
    const std::size_t k = diag1.size();
    if (k == 0) throw PreconditionError("sandwich_bounds needs at least one step");
    if (d_blocks.size() != k || t_norms.size() != k) {
        throw DimensionError("sandwich_bounds inputs differ in length");
    }
    const std::size_t n = d_blocks.front().rows();
    for (const auto& d : d_blocks) {
        if (!d.is_square() || d.rows() != n) throw DimensionError("D blocks must share one square shape");
    }

    // suffix[i] = ||D(i+1)···D(k)|| for i = 1..k (0-based: index i-1).
    std::vector<Trop> suffix(k);
    Matrix tail = Matrix::identity(n);
    for (std::size_t i = k; i >= 1; --i) {
        suffix[i - 1] = norm(tail);
        tail = d_blocks[i - 1] * tail;
    }
    const Trop d_product = norm(tail);

    Trop alpha_prefix = Trop::one();
    Trop coupled = Trop::zero();
    for (std::size_t i = 0; i < k; ++i) {
        coupled += alpha_prefix * suffix[i];
        alpha_prefix *= diag1[i];
    }
    Trop t_max = Trop::zero();
    for (Trop t : t_norms) t_max += t;

    const Trop lower = alpha_prefix + d_product;
    return {lower, lower + t_max * coupled};
}

LyapunovEstimate lyapunov_estimate(const MatrixProcess& process, std::size_t horizon,
                                   std::size_t replications, std::uint64_t seed) {
    if (horizon < 1) throw PreconditionError("lyapunov_estimate needs K >= 1");
    if (replications < 1) throw PreconditionError("lyapunov_estimate needs >= 1 replication");

    // ||x(K)|| with x(0) = 𝟏 equals ||A_K||; the vector recurrence is O(n²) per step.
    std::vector<double> rates(replications);
    auto run = [&](std::size_t rep) {
        RandomStream stream(seed, rep);
        const Vector x = evolve(process, Vector::ones(process.dimension()), horizon, stream);
        rates[rep] = norm(x).value() / static_cast<double>(horizon);
    };

    const std::size_t workers =
        std::min<std::size_t>(replications, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t rep = w; rep < replications; rep += workers) run(rep);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    // Shifted by the first rate so identical replications give an exact mean.
    double shift = 0.0;
    for (double r : rates) shift += r - rates.front();
    const double mean = rates.front() + shift / static_cast<double>(replications);
    double ss = 0.0;
    for (double r : rates) ss += (r - mean) * (r - mean);
    const double se =
        replications > 1
            ? std::sqrt(ss / static_cast<double>(replications - 1) / static_cast<double>(replications))
            : 0.0;
    return {mean, se};
}

MatrixProcess p_step_process(const MatrixProcess& process, std::size_t p) {
    if (p < 1) throw PreconditionError("p-step process needs p >= 1");
    return MatrixProcess(process.dimension(), [process, p](std::uint64_t step, RandomStream& s) {
        Matrix product = Matrix::identity(process.dimension());
        const std::uint64_t first = p * (step - 1) + 1;
        for (std::uint64_t i = first; i < first + p; ++i) product = product * process.sample(i, s);
        return product;
    });
}

}  // namespace tropbscs
