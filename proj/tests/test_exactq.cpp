#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qdouble/linalg.hpp"
#include "qdouble/scalar.hpp"

#include <cmath>
#include <random>

using namespace qdouble;

namespace {

Scalar q() { return Scalar::q_power(1); }

Scalar random_scalar(std::mt19937& rng, long root_order = 1) {
    std::uniform_int_distribution<int> coef(-3, 3), expo(-4, 4), len(1, 3);
    LaurentPoly num, den;
    for (int i = 0, n = len(rng); i < n; ++i) num += LaurentPoly::monomial(expo(rng), coef(rng));
    for (int i = 0, n = len(rng); i < n; ++i) den += LaurentPoly::monomial(expo(rng), coef(rng));
    if (den.is_zero()) den = LaurentPoly(1);
    return Scalar(num, den, root_order);
}

}  // namespace

TEST_CASE("qint values") {
    CHECK(qint(0, 1).is_zero());
    CHECK(qint(2, 1) == q() + q().inverse());
    CHECK(qint(3, 2) == q().pow(4) + 1 + q().pow(-4));
    CHECK(qint(-3, 2) == -qint(3, 2));
    // defining quotient
    Scalar q2 = q().pow(2);
    CHECK(qint(3, 2) == (q2.pow(3) - q2.pow(-3)) / (q2 - q2.inverse()));
}

TEST_CASE("qbinom values and clearing") {
    CHECK(qbinom(5, 0, 2).is_one());
    CHECK(qbinom(2, 1, 1) == q() + q().inverse());
    Scalar b = qbinom(4, 2, 1);
    CHECK(b == q().pow(4) + q().pow(2) + 2 + q().pow(-2) + q().pow(-4));
    CHECK(b.is_laurent());
    CHECK_THROWS_AS(qbinom(2, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(qbinom(-1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(qfact(-1, 1), std::invalid_argument);
}

TEST_CASE("qbinom symmetry") {
    for (long d = 1; d <= 3; ++d)
        for (long m = 0; m <= 8; ++m)
            for (long n = 0; n <= m; ++n) {
                CHECK(qbinom(m, n, d) == qbinom(m, m - n, d));
                CHECK(qbinom(m, n, d).is_laurent());
            }
}

TEST_CASE("specialize") {
    CHECK(Scalar(1).specialize(0.5) == doctest::Approx(1.0));
    CHECK((q() + q().inverse()).specialize(0.5) == doctest::Approx(2.5));
    CHECK(qbinom(4, 2, 1).specialize(0.5) == doctest::Approx(22.3125).epsilon(1e-14));
    Scalar pole = Scalar(1) / (q() - Scalar(mpq_class(1, 2)));
    CHECK_THROWS_AS(pole.specialize(0.5), std::domain_error);
    CHECK(Scalar::q_power(mpq_class(1, 2)).specialize(0.25) == doctest::Approx(0.5));
}

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(7);
    for (int it = 0; it < 60; ++it) {
        long la = 1 + it % 2, lb = 1 + (it / 2) % 3;
        Scalar a = random_scalar(rng, la), b = random_scalar(rng, lb), c = random_scalar(rng, 1);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == Scalar());
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        CHECK(a.conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
    }
}

TEST_CASE("specialize is a ring homomorphism") {
    std::mt19937 rng(11);
    for (int it = 0; it < 40; ++it) {
        Scalar a = random_scalar(rng, 2), b = random_scalar(rng, 1);
        for (double q0 : {0.3, 0.5, 0.8}) {
            double sa, sb;
            try {
                sa = a.specialize(q0);
                sb = b.specialize(q0);
            } catch (const std::domain_error&) {
                continue;
            }
            double scale = 1.0 + std::abs(sa * sb) + std::abs(sa) + std::abs(sb);
            CHECK(std::abs((a * b).specialize(q0) - sa * sb) < 1e-12 * scale);
            CHECK(std::abs((a + b).specialize(q0) - (sa + sb)) < 1e-12 * scale);
        }
    }
}

TEST_CASE("canonical form is structural") {
    Scalar x = (q().pow(2) - 1) / (q() - 1);
    CHECK(x == q() + 1);
    CHECK(x.is_laurent());
    Scalar h = Scalar::q_power(mpq_class(1, 2));
    CHECK(h.root_order() == 2);
    CHECK((h * h) == q());
    CHECK((h * h).root_order() == 1);
    CHECK(Scalar::q_power(mpq_class(2, 4)) == h);
    CHECK(Scalar(mpq_class(3, 6)).rational_value() == mpq_class(1, 2));
}

TEST_CASE("mod p specialization agrees with arithmetic") {
    std::mt19937 rng(3);
    ModP t = default_modp_point();
    for (int it = 0; it < 30; ++it) {
        Scalar a = random_scalar(rng, 2), b = random_scalar(rng, 3);
        try {
            CHECK((a * b).specialize_mod(t) == a.specialize_mod(t) * b.specialize_mod(t));
            CHECK((a + b).specialize_mod(t) == a.specialize_mod(t) + b.specialize_mod(t));
        } catch (const std::domain_error&) {
        }
    }
}

TEST_CASE("linear algebra over Q(v)") {
    Matrix a(2, 2);
    a(0, 0) = q();
    a(0, 1) = 1;
    a(1, 0) = 1;
    a(1, 1) = q().inverse();
    CHECK(rank(a) == 1);
    auto ns = nullspace(a);
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(a * ns[0]));
    a(1, 1) = q();
    Matrix inv = inverse(a);
    CHECK(a * inv == Matrix::identity(2));
    CHECK(rank_modp(a, default_modp_point()) == 2);
}
