#pragma once

#include "qdouble/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qdouble {

using Vec = std::vector<Scalar>;

/// Dense row-major matrix over Q(v).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const Vec& d);
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t nrows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec column(std::size_t j) const;
    Vec row(std::size_t i) const;

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Matrix transpose() const;
    Matrix scaled(const Scalar& c) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vec operator*(const Matrix& a, const Vec& x);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
/// Block-diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

Scalar dot(const Vec& a, const Vec& b);
Vec vadd(Vec a, const Vec& b);
Vec vscale(Vec a, const Scalar& c);
bool is_zero(const Vec& v);
Vec kron(const Vec& a, const Vec& b);

/// Reduced row echelon form.
struct Rref {
    Matrix r;
    std::vector<std::size_t> pivots;  // pivot column of row i
};
Rref rref(Matrix a);

std::size_t rank(const Matrix& a);
/// Rank of the specialization v = t^{5040/L} mod p: a lower bound for the exact rank.
/// Entries with a pole at t are treated as failure (std::domain_error).
std::size_t rank_modp(const Matrix& a, ModP t);
/// A fixed, arbitrary evaluation point for mod-p specializations.
ModP default_modp_point();

/// Basis of {x : a x = 0}, as column vectors.
std::vector<Vec> nullspace(const Matrix& a);
/// Solve a X = b; nullopt when inconsistent. Picks the solution with free variables zero.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Vec> solve(const Matrix& a, const Vec& b);
/// Throws std::domain_error when singular.
Matrix inverse(const Matrix& a);

/// Maximal linearly independent subset of the given vectors (indices, in order).
std::vector<std::size_t> independent_subset(const std::vector<Vec>& vs);
/// Basis of the span, reduced (rows of an rref).
std::vector<Vec> span_basis(const std::vector<Vec>& vs);

/// Incrementally maintained span with membership queries.
class SpanBuilder {
public:
    explicit SpanBuilder(std::size_t dim) : dim_(dim) {}
    /// Adds v if independent; returns true when the span grew.
    bool add(const Vec& v);
    bool contains(const Vec& v) const;
    std::size_t size() const { return basis_.size(); }
    const std::vector<Vec>& vectors() const { return original_; }

private:
    Vec reduce(Vec v) const;
    std::size_t dim_;
    std::vector<Vec> basis_;  // echelon rows, leading entry 1 at pivot
    std::vector<std::size_t> pivots_;
    std::vector<Vec> original_;
};

/// Floating specializations.
std::vector<double> specialize(const Vec& v, double q0);
std::vector<std::vector<double>> specialize(const Matrix& m, double q0);
/// Smallest eigenvalue of a symmetric real matrix.
double min_eigenvalue_symmetric(const std::vector<std::vector<double>>& m);

}  // namespace qdouble
