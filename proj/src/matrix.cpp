#include "tropbscs/matrix.hpp"

#include <algorithm>
#include <string>

namespace tropbscs {

namespace {

Trop from_double(double v) {
    return v == -std::numeric_limits<double>::infinity() ? Trop::zero() : Trop(v);
}

void require_square(const Matrix& a, const char* what) {
    if (!a.is_square()) {
        throw DimensionError(std::string(what) + ": matrix must be square, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

}  // namespace

Vector::Vector(std::initializer_list<double> entries) {
    data_.reserve(entries.size());
    for (double v : entries) data_.push_back(from_double(v));
}

bool Vector::is_regular() const noexcept {
    return std::ranges::none_of(data_, [](Trop t) { return t.is_zero(); });
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Trop> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("matrix entry count " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("ragged matrix literal");
        for (double v : row) data_.push_back(from_double(v));
    }
}

Matrix Matrix::zero(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, std::vector<Trop>(rows * cols, Trop::zero()));
}

Matrix Matrix::identity(std::size_t n) {
    std::vector<Trop> e(n * n, Trop::zero());
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = Trop::one();
    return Matrix(n, n, std::move(e));
}

bool Matrix::is_fully_finite() const noexcept {
    return std::ranges::none_of(data_, [](Trop t) { return t.is_zero(); });
}

bool Matrix::is_nonzero() const noexcept {
    return std::ranges::any_of(data_, [](Trop t) { return t.is_finite(); });
}

Matrix Matrix::transpose() const {
    std::vector<Trop> e(data_.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) e[j * rows_ + i] = data_[i * cols_ + j];
    return Matrix(cols_, rows_, std::move(e));
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix sum of mismatched shapes");
    }
    std::vector<Trop> e(a.entries().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries()[i] + b.entries()[i];
    return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator*(const Matrix& a, const Matrix& c) {
    if (a.cols() != c.rows()) throw DimensionError("matrix product inner dimensions differ");
    const std::size_t n = a.rows(), inner = a.cols(), p = c.cols();
    std::vector<Trop> e(n * p, Trop::zero());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < inner; ++k) {
            const Trop aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < p; ++j) e[i * p + j] += aik * c(k, j);
        }
    }
    return Matrix(n, p, std::move(e));
}

Vector operator*(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw DimensionError("matrix-vector product size mismatch");
    std::vector<Trop> e(a.rows(), Trop::zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) e[i] += a(i, j) * x[j];
    return Vector(std::move(e));
}

Matrix operator*(Trop x, const Matrix& a) {
    std::vector<Trop> e(a.entries().begin(), a.entries().end());
    for (auto& t : e) t = x * t;
    return Matrix(a.rows(), a.cols(), std::move(e));
}

Vector operator+(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw DimensionError("vector sum of mismatched sizes");
    std::vector<Trop> e(x.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = x[i] + y[i];
    return Vector(std::move(e));
}

Matrix conjugate(const Matrix& a) {
    if (!a.is_nonzero()) throw DomainError("conjugate of the zero matrix is undefined");
    std::vector<Trop> e(a.entries().size(), Trop::zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j).is_finite()) e[j * a.rows() + i] = inverse(a(i, j));
    return Matrix(a.cols(), a.rows(), std::move(e));
}

Trop trace(const Matrix& a) {
    require_square(a, "trace");
    Trop t = Trop::zero();
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

Trop tropical_det(const Matrix& a) {
    require_square(a, "tropical_det");
    Trop t = Trop::zero();
    Matrix p = a;
    for (std::size_t m = 1; m <= a.rows(); ++m) {
        if (m > 1) p = p * a;
        t += trace(p);
    }
    return t;
}

Matrix power(const Matrix& a, std::size_t p) {
    require_square(a, "power");
    Matrix r = Matrix::identity(a.rows());
    for (std::size_t i = 0; i < p; ++i) r = a * r;
    return r;
}

Matrix kleene_star(const Matrix& a) {
    require_square(a, "kleene_star");
    if (tropical_det(a) > Trop::one()) {
        throw PreconditionError("kleene_star requires Tr(A) <= 0");
    }
    Matrix star = Matrix::identity(a.rows());
    Matrix p = star;
    for (std::size_t m = 1; m < a.rows(); ++m) {
        p = p * a;
        star = star + p;
    }
    return star;
}

Trop norm(const Matrix& a) noexcept {
    Trop t = Trop::zero();
    for (Trop e : a.entries()) t += e;
    return t;
}

Trop norm(const Vector& x) noexcept {
    Trop t = Trop::zero();
    for (Trop e : x.entries()) t += e;
    return t;
}

Trop spectral_radius(const Matrix& a) {
    require_square(a, "spectral_radius");
    Trop rho = Trop::zero();
    Matrix p = a;
    for (std::size_t m = 1; m <= a.rows(); ++m) {
        if (m > 1) p = p * a;
        rho += pow(trace(p), Rational(1, static_cast<std::int64_t>(m)));
    }
    return rho;
}

Vector solve_implicit(const Matrix& a, const Vector& b) {
    require_square(a, "solve_implicit");
    if (a.rows() != b.size()) throw DimensionError("solve_implicit: b has wrong length");
    if (tropical_det(a) >= Trop::one()) {
        throw PreconditionError("solve_implicit requires Tr(A) < 0");
    }
    return kleene_star(a) * b;
}

std::size_t fully_finite_power(const Matrix& a) {
    require_square(a, "fully_finite_power");
    const std::size_t n = a.rows();
    if (n == 0) return 0;
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    Matrix p = a;
    for (std::size_t k = 1; k <= bound; ++k) {
        if (k > 1) p = p * a;
        if (p.is_fully_finite()) return k;
    }
    return 0;
}

}  // namespace tropbscs
