#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qdouble {

/// Sparse Laurent polynomial in one variable with rational coefficients.
/// Terms are kept sorted by exponent with no zero coefficients.
class LaurentPoly {
public:
    using Term = std::pair<long, mpq_class>;

    LaurentPoly() = default;
    explicit LaurentPoly(const mpq_class& c);
    static LaurentPoly monomial(long exponent, const mpq_class& c = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    const std::vector<Term>& terms() const { return terms_; }

    long min_exponent() const { return terms_.front().first; }
    long max_exponent() const { return terms_.back().first; }
    const mpq_class& leading_coeff() const { return terms_.back().second; }
    const mpq_class& trailing_coeff() const { return terms_.front().second; }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    LaurentPoly scaled(const mpq_class& c) const;
    /// Multiply by v^k.
    LaurentPoly shifted(long k) const;
    /// Substitute v -> v^k (k > 0).
    LaurentPoly stretched(long k) const;
    /// Substitute v -> v^{1/k}; requires every exponent divisible by k.
    LaurentPoly compressed(long k) const;
    /// Substitute v -> v^{-1}.
    LaurentPoly reflected() const;

    /// gcd of all exponents (0 for the zero polynomial).
    long exponent_gcd() const;

    /// Exact division; throws std::domain_error when the divisor does not divide.
    LaurentPoly divexact(const LaurentPoly& d) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

    std::string to_string(const std::string& var = "v") const;

    /// Monic gcd of two polynomials after shifting both to have nonzero constant term.
    /// The result has min exponent 0.
    static LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

private:
    std::vector<Term> terms_;
    void normalize();
};

}  // namespace qdouble
