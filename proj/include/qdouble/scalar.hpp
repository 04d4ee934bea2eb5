#pragma once

#include "qdouble/laurent.hpp"
#include "qdouble/modp.hpp"

#include <gmpxx.h>

#include <string>

namespace qdouble {

/// Exact element of Q(v) with v = q^{1/L}.
///
/// Canonical form: the denominator is a monic polynomial with nonzero
/// constant term, numerator and denominator are coprime, and L is the least
/// root order that expresses the element. Zero stores an empty denominator
/// so that zero-filled matrices do not allocate. Two scalars are equal iff their
/// canonical forms coincide, which makes operator== structural.
/// Scalars of different root orders combine by passing to the lcm.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : num_(mpq_class(n)), den_(n == 0 ? LaurentPoly() : LaurentPoly(1)) {}  // NOLINT: implicit on purpose
    Scalar(const mpq_class& c) : num_(c), den_(c == 0 ? LaurentPoly() : LaurentPoly(1)) {}  // NOLINT
    Scalar(LaurentPoly num, LaurentPoly den, long root_order);

    /// q^{e} for rational e; the root order becomes the denominator of e.
    static Scalar q_power(const mpq_class& e);
    /// v^{k} with v = q^{1/L}.
    static Scalar v_power(long k, long root_order);

    const LaurentPoly& numerator() const { return num_; }
    /// Empty for zero.
    const LaurentPoly& denominator() const { return den_; }
    long root_order() const { return root_order_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return root_order_ == 1 && den_.is_constant() && num_.is_constant() && !num_.is_zero() && num_.terms()[0].second == 1; }
    bool is_laurent() const { return den_.is_constant(); }
    /// Rational constant (no v dependence)?
    bool is_rational() const { return den_.is_constant() && num_.is_constant(); }
    /// c·q^e with c < 0; printers pull the sign out of such coefficients.
    bool is_negative_monomial() const {
        return is_laurent() && num_.is_monomial() && sgn(num_.leading_coeff()) * sgn(den_.leading_coeff()) < 0;
    }
    mpq_class rational_value() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar inverse() const;
    Scalar pow(long e) const;

    /// The *-structure on the ground field: q is real, so this is the identity.
    Scalar conj() const { return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.root_order_ == b.root_order_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    /// Arbitrary but deterministic total order (for canonical output).
    friend bool operator<(const Scalar& a, const Scalar& b);

    /// Floating evaluation at q = q0 (v = q0^{1/L}). Throws on a pole.
    double specialize(double q0) const;
    /// Evaluation in F_p at v = t^{kMasterRootOrder / L}; throws on a pole.
    ModP specialize_mod(ModP t) const;
    static constexpr long kMasterRootOrder = 5040;

    /// Human-readable form in terms of q (fractional powers when L > 1).
    std::string to_string() const;

private:
    LaurentPoly num_;
    LaurentPoly den_;
    long root_order_ = 1;

    void canonicalize();
    void lift_to(long root_order);
};

/// [n]_{q^d}.
Scalar qint(long n, long d = 1);
/// [n]_{q^d}!.
Scalar qfact(long n, long d = 1);
/// q-binomial (m choose n)_{q^d}; throws std::invalid_argument unless 0 <= n <= m.
Scalar qbinom(long m, long n, long d = 1);

}  // namespace qdouble
