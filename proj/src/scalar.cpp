#include "qdouble/scalar.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qdouble {

namespace {

std::string poly_in_q(const LaurentPoly& p, long L) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& ts = p.terms();
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        const auto& [e, c] = *it;
        mpq_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << "*";
        mpq_class ex(e, L);
        ex.canonicalize();
        os << "q";
        if (ex != 1) {
            std::string s = ex.get_str();
            if (ex < 0 || ex.get_den() != 1) s = "(" + s + ")";
            os << "^" << s;
        }
    }
    return os.str();
}

}  // namespace

Scalar::Scalar(LaurentPoly num, LaurentPoly den, long root_order)
    : num_(std::move(num)), den_(std::move(den)), root_order_(root_order) {
    if (den_.is_zero()) throw std::domain_error("Scalar: zero denominator");
    if (root_order_ <= 0) throw std::invalid_argument("Scalar: root order must be positive");
    canonicalize();
}

Scalar Scalar::q_power(const mpq_class& e) {
    mpq_class c = e;
    c.canonicalize();
    long L = c.get_den().get_si();
    long k = c.get_num().get_si();
    return v_power(k, L);
}

Scalar Scalar::v_power(long k, long root_order) {
    return Scalar(LaurentPoly::monomial(k), LaurentPoly(1), root_order);
}

void Scalar::canonicalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly();
        root_order_ = 1;
        return;
    }
    // denominator: min exponent 0, monic
    long s = den_.min_exponent();
    if (s != 0) {
        den_ = den_.shifted(-s);
        num_ = num_.shifted(-s);
    }
    if (!den_.is_constant()) {
        long ns = num_.min_exponent();
        LaurentPoly g = LaurentPoly::poly_gcd(num_.shifted(-ns), den_);
        if (!g.is_constant()) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
    }
    mpq_class lead = den_.leading_coeff();
    if (lead != 1) {
        mpq_class inv = 1 / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
    long g = std::gcd(root_order_, std::gcd(num_.exponent_gcd(), den_.exponent_gcd()));
    if (g > 1) {
        num_ = num_.compressed(g);
        den_ = den_.compressed(g);
        root_order_ /= g;
    }
}

void Scalar::lift_to(long root_order) {
    if (root_order == root_order_) return;
    long k = root_order / root_order_;
    num_ = num_.stretched(k);
    den_ = den_.stretched(k);
    root_order_ = root_order;
}

mpq_class Scalar::rational_value() const {
    if (!is_rational()) throw std::domain_error("Scalar::rational_value: not a rational constant");
    if (is_zero()) return 0;
    return num_.terms()[0].second / den_.terms()[0].second;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    Scalar b = o;
    long L = std::lcm(root_order_, b.root_order_);
    lift_to(L);
    b.lift_to(L);
    if (den_ == b.den_) {
        num_ += b.num_;
    } else if (den_.is_constant()) {
        num_ = num_ * b.den_ + b.num_.scaled(den_.terms()[0].second);
        den_ = b.den_.scaled(den_.terms()[0].second);
    } else if (b.den_.is_constant()) {
        num_ = num_.scaled(b.den_.terms()[0].second) + b.num_ * den_;
        den_ = den_.scaled(b.den_.terms()[0].second);
    } else {
        LaurentPoly g = LaurentPoly::poly_gcd(den_, b.den_);
        LaurentPoly da = den_.divexact(g);
        LaurentPoly db = b.den_.divexact(g);
        num_ = num_ * db + b.num_ * da;
        den_ = den_ * db;
    }
    canonicalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = Scalar();
    Scalar b = o;
    long L = std::lcm(root_order_, b.root_order_);
    lift_to(L);
    b.lift_to(L);
    if (den_.is_constant() && b.den_.is_constant()) {
        num_ = num_ * b.num_;
        den_ = den_ * b.den_;
        canonicalize();
        return *this;
    }
    // cross-cancel before multiplying
    LaurentPoly n1 = num_, d1 = den_, n2 = b.num_, d2 = b.den_;
    auto cancel = [](LaurentPoly& n, LaurentPoly& d) {
        if (d.is_constant()) return;
        long s = n.min_exponent();
        LaurentPoly g = LaurentPoly::poly_gcd(n.shifted(-s), d);
        if (!g.is_constant()) {
            n = n.divexact(g);
            d = d.divexact(g);
        }
    };
    cancel(n1, d2);
    cancel(n2, d1);
    num_ = n1 * n2;
    den_ = d1 * d2;
    canonicalize();
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("Scalar::inverse: division by zero");
    return Scalar(den_, num_, root_order_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.root_order_ != b.root_order_) return a.root_order_ < b.root_order_;
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
}

double Scalar::specialize(double q0) const {
    if (is_zero()) return 0.0;
    const long double v = std::pow(static_cast<long double>(q0), 1.0L / static_cast<long double>(root_order_));
    auto eval = [v](const LaurentPoly& p) {
        long double s = 0;
        for (const auto& [e, c] : p.terms()) s += static_cast<long double>(c.get_d()) * std::pow(v, static_cast<long double>(e));
        return s;
    };
    long double d = eval(den_);
    if (std::fabs(static_cast<double>(d)) < 1e-300) throw std::domain_error("Scalar::specialize: pole");
    return static_cast<double>(eval(num_) / d);
}

ModP Scalar::specialize_mod(ModP t) const {
    if (is_zero()) return ModP(0);
    if (kMasterRootOrder % root_order_ != 0) throw std::domain_error("Scalar::specialize_mod: unsupported root order");
    ModP v = t.pow(static_cast<std::uint64_t>(kMasterRootOrder / root_order_));
    auto eval = [v](const LaurentPoly& p) {
        ModP s(0);
        for (const auto& [e, c] : p.terms()) s += ModP::from_mpq(c) * v.pow_signed(e);
        return s;
    };
    ModP d = eval(den_);
    if (d.is_zero()) throw std::domain_error("Scalar::specialize_mod: pole");
    return eval(num_) * d.inverse();
}

std::string Scalar::to_string() const {
    if (is_zero()) return "0";
    std::string n = poly_in_q(num_, root_order_);
    if (den_.is_constant()) {
        mpq_class d = den_.terms()[0].second;
        if (d == 1) return n;
        return "(" + n + ")/" + d.get_str();
    }
    return "(" + n + ")/(" + poly_in_q(den_, root_order_) + ")";
}

Scalar qint(long n, long d) {
    if (n == 0) return Scalar();
    if (n < 0) return -qint(-n, d);
    // q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}
    LaurentPoly p;
    for (long k = -(n - 1); k <= n - 1; k += 2) p += LaurentPoly::monomial(d * k);
    return Scalar(p, LaurentPoly(1), 1);
}

Scalar qfact(long n, long d) {
    if (n < 0) throw std::invalid_argument("qfact: negative argument");
    Scalar r(1);
    for (long k = 2; k <= n; ++k) r *= qint(k, d);
    return r;
}

Scalar qbinom(long m, long n, long d) {
    if (m < 0 || n < 0 || n > m) throw std::invalid_argument("qbinom: requires 0 <= n <= m");
    return qfact(m, d) / (qfact(n, d) * qfact(m - n, d));
}

}  // namespace qdouble
