#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "tropbscs/scalar.hpp"

namespace tropbscs {

/// Dense max-plus column vector.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n, Trop fill = Trop::zero()) : data_(n, fill) {}
    explicit Vector(std::vector<Trop> entries) : data_(std::move(entries)) {}
    Vector(std::initializer_list<double> entries);

    /// 𝟏 = (𝟙, ..., 𝟙)ᵀ
    static Vector ones(std::size_t n) { return Vector(n, Trop::one()); }

    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] Trop operator[](std::size_t i) const { return data_[i]; }
    [[nodiscard]] std::span<const Trop> entries() const noexcept { return data_; }

    /// No entry equals 𝟘.
    [[nodiscard]] bool is_regular() const noexcept;

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<Trop> data_;
};

/// Dense row-major max-plus matrix. Values are immutable once built; every
/// operation returns a fresh matrix.
class Matrix {
public:
    Matrix() = default;
    /// Throws DimensionError unless entries.size() == rows * cols.
    Matrix(std::size_t rows, std::size_t cols, std::vector<Trop> entries);
    /// Row lists of conventional doubles; -inf is 𝟘.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix zero(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] Trop operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    [[nodiscard]] std::span<const Trop> entries() const noexcept { return data_; }

    /// No entry equals 𝟘 (the hypothesis of the power-norm bound).
    [[nodiscard]] bool is_fully_finite() const noexcept;
    /// At least one entry differs from 𝟘.
    [[nodiscard]] bool is_nonzero() const noexcept;

    [[nodiscard]] Matrix transpose() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Trop> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& c);
Vector operator*(const Matrix& a, const Vector& x);
Matrix operator*(Trop x, const Matrix& a);
Vector operator+(const Vector& x, const Vector& y);

/// A⁻: transposed shape, a⁻_ij = -a_ji for finite a_ji, 𝟘 otherwise.
Matrix conjugate(const Matrix& a);

/// tr A, the ⊕ of the diagonal.
Trop trace(const Matrix& a);

/// Tr(A) = tr A ⊕ tr A² ⊕ ... ⊕ tr Aⁿ.
Trop tropical_det(const Matrix& a);

/// A⁰ = I, Aᵖ = A·Aᵖ⁻¹.
Matrix power(const Matrix& a, std::size_t p);

/// A* = I ⊕ A ⊕ ... ⊕ Aⁿ⁻¹. Requires Tr(A) <= 𝟙.
Matrix kleene_star(const Matrix& a);

/// Maximum entry; 𝟘 for an all-𝟘 operand.
Trop norm(const Matrix& a) noexcept;
Trop norm(const Vector& x) noexcept;

/// ρ(A) = ⊕_{m=1..n} tr^{1/m}(A^m), the maximum cycle mean of A's digraph.
/// Returns 𝟘 when the digraph is acyclic.
Trop spectral_radius(const Matrix& a);

/// Unique solution x = A*·b of A·x ⊕ b = x. Requires Tr(A) < 𝟙.
Vector solve_implicit(const Matrix& a, const Vector& b);

/// Smallest p >= 1 with A^p fully finite, searched up to the primitivity
/// bound (n-1)^2 + 1; 0 when no such power exists.
std::size_t fully_finite_power(const Matrix& a);

}  // namespace tropbscs
