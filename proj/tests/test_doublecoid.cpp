#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qdouble/doublecoid.hpp"
#include "qdouble/errors.hpp"

using namespace qdouble;

namespace {

struct Sl2 {
    std::shared_ptr<const RootDatum> datum = std::make_shared<const RootDatum>(RootDatum::build("A", 1, "P"));
    std::shared_ptr<const Uq> uq = std::make_shared<const Uq>(datum);
    std::shared_ptr<const CqgAlgebra> A = std::make_shared<const CqgAlgebra>(uq);
    CoidealPresentation pres = coideal_generators(uq, SatakeDiagram(datum, {}, {0}), 4);
    const AlgElem& B() const { return pres.generators[0].elem; }
};

Scalar q() { return Scalar::q_power(1); }

AElem coeff(const Vec& xi, Vec eta) { return AElem(ACoeff{{{{2}, false}}, xi, std::move(eta)}); }

// generators of D(B,I) at low height: (b,1) for b in the coset space of V(0), V(2), and (1,B)
std::vector<DblElem> generators(const Sl2& s) {
    std::vector<DblElem> out;
    for (long n : {0, 2})
        for (auto& b : homspace_B(*s.A, {n}, s.pres)) out.push_back(DblElem::from_B(std::move(b), *s.uq));
    out.push_back(DblElem::from_I(s.B(), *s.A));
    return out;
}

}  // namespace

TEST_CASE("double multiplication") {
    Sl2 s;
    const CqgAlgebra& A = *s.A;
    const Uq& u = *s.uq;
    auto hb = homspace_B(A, {2}, s.pres);
    REQUIRE(hb.size() == 3);
    const Vec xi = hb[1].terms[0].xi;

    DblElem bu = DblElem::from_B(hb[0], u);
    bu.terms[0].second = s.B();
    const DblElem unit = DblElem::from_B(A.one(), u);
    CHECK(dbl_equal(A, dbl_multiply(A, unit, bu, 4), bu));
    CHECK(dbl_equal(A, dbl_multiply(A, bu, unit, 4), bu));

    // (1,B)·(b,1) with b = U(ξ_inv, e_1), e_1 the weight-zero vector of V(2ω)
    const DblElem prod = dbl_multiply(A, DblElem::from_I(s.B(), A), DblElem::from_B(hb[1], u), 4);
    CHECK(prod.terms.size() == 3);
    DblElem expect;
    expect.terms.emplace_back(coeff(xi, {Scalar(0), Scalar(1), Scalar(0)}), s.B());
    expect.terms.emplace_back(coeff(xi, {q() + q().inverse(), Scalar(0), Scalar(0)}), u.one());
    expect.terms.emplace_back(coeff(xi, {Scalar(0), Scalar(0), Scalar(1)}), u.one().scaled(Scalar(-1)));
    CHECK(dbl_equal(A, prod, expect));
    CHECK_FALSE(dbl_equal(A, prod, DblElem::from_B(hb[1], u)));

    auto cert = certify_normal_form(A, s.pres, prod, 4);
    CHECK(cert.ok());
    CHECK(cert.i_certificates.size() == 3);

    // the U-leg bound is enforced
    DblElem bbb = DblElem::from_I(u.power(s.B(), 3), A);
    CHECK_THROWS_AS(dbl_multiply(A, bbb, DblElem::from_B(hb[1], u), 2), UndecidedError);
}

TEST_CASE("associativity on generator triples") {
    Sl2 s;
    const auto gens = generators(s);
    REQUIRE(gens.size() == 5);
    std::size_t checked = 0;
    for (const auto& a : gens)
        for (const auto& b : gens)
            for (const auto& c : gens) {
                const DblElem l = dbl_multiply(*s.A, dbl_multiply(*s.A, a, b, 8), c, 8);
                const DblElem r = dbl_multiply(*s.A, a, dbl_multiply(*s.A, b, c, 8), 8);
                CHECK(dbl_equal(*s.A, l, r));
                ++checked;
            }
    CHECK(checked == 125);
}

TEST_CASE("double star") {
    Sl2 s;
    const CqgAlgebra& A = *s.A;
    const Uq& u = *s.uq;
    const DblElem x = DblElem::from_I(s.B(), A);
    CHECK(dbl_equal(A, dbl_star(A, x, 4), x.scaled(Scalar(-1))));
    auto hb = homspace_B(A, {2}, s.pres);
    for (const auto& b : hb)
        CHECK(dbl_equal(A, dbl_star(A, DblElem::from_B(b, u), 4), DblElem::from_B(A.star(b), u)));

    std::mt19937 rng(9);
    for (int i = 0; i < 10; ++i) {
        DblElem y;
        for (int t = 0; t < 2; ++t) {
            AElem b = hb[rng() % hb.size()].scaled(Scalar(static_cast<long>(rng() % 5) + 1));
            y.terms.emplace_back(std::move(b), u.power(s.B(), static_cast<int>(rng() % 3)));
        }
        const DblElem ys = dbl_star(A, y, 8);
        CHECK(certify_normal_form(A, s.pres, ys, 4).ok());
        CHECK(dbl_equal(A, dbl_star(A, ys, 8), y));
    }
}

TEST_CASE("Doi-Koppinen module on the sl2 pair") {
    Sl2 s;
    std::vector<std::size_t> sizes;
    for (long h = 0; h <= 2; ++h) {
        DKModule m = build_dk_module(s.A, s.pres, h);
        sizes.push_back(m.carrier.size());
        DKReport r = verify_dk_compat(m);
        CHECK(r.pass);
        CHECK(r.checked == m.carrier.size() * m.b_generators.size());
        CHECK(m.faithful_rank == m.faithful_expected);
        CHECK(min_eigenvalue_symmetric(specialize(m.gram, 0.5)) >= -1e-9);
    }
    CHECK(sizes == std::vector<std::size_t>{1, 5, 14});
}

TEST_CASE("every single-constant mutation is rejected") {
    Sl2 s;
    DKModule m = build_dk_module(s.A, s.pres, 2);
    std::size_t total = 0, caught = 0;
    std::string first;
    for (std::size_t g = 0; g < m.b_generators.size(); ++g) {
        const auto [terms, entries] = delta_B_shape(m, g);
        for (std::size_t t = 0; t < terms; ++t)
            for (std::size_t e = 0; e < entries; ++e) {
                DKModule mm = m;
                perturb_delta_B(mm, g, t, e);
                DKReport r = verify_dk_compat(mm, true);
                ++total;
                if (!r.pass) {
                    ++caught;
                    if (first.empty()) first = r.failures.at(0);
                }
            }
    }
    CHECK(total == 28);
    CHECK(caught == total);
    CHECK(first == "b(0)[0] on u(0)[0,0]: pairings differ on 1 ⊗ 1 by -1");
}

TEST_CASE("representation of the double on the module") {
    Sl2 s;
    for (long h = 1; h <= 2; ++h) {
        CorrespondenceReport r = double_rep_correspondence(build_dk_module(s.A, s.pres, h));
        INFO(h);
        CHECK(r.identity);
        CHECK(r.interchange);
        CHECK(r.star_b);
        CHECK(r.star_i);
        CHECK(r.nondegenerate);
        CHECK(r.idempotent_residual < 1e-9);
        CHECK(r.failures.empty());
    }
}

TEST_CASE("cotensor products") {
    Sl2 s;
    for (long n = 0; n <= 3; ++n) {
        CBlock c = quotient_block(*s.A, {n}, s.pres);
        INFO(n);
        CHECK(cotensor(regular_right(c), regular_left(c)).size() == c.dim());
        // regression value
        CHECK(cotensor(row_comodule(c), column_comodule(c)).size() == static_cast<std::size_t>(n + 1));
        if (n % 2 == 0) {
            const std::size_t inv = invariant_vectors(*c.rep, s.pres).size();
            CHECK(cotensor(trivial_right(c, s.pres), column_comodule(c)).size() == inv);
        } else {
            CHECK_THROWS_AS(trivial_right(c, s.pres), std::invalid_argument);
        }
    }
    CBlock c1 = quotient_block(*s.A, {1}, s.pres), c2 = quotient_block(*s.A, {2}, s.pres);
    CHECK_THROWS_AS(cotensor(row_comodule(c1), column_comodule(c2)), std::invalid_argument);
    CHECK_THROWS_AS(cotensor(column_comodule(c1), row_comodule(c1)), std::invalid_argument);
}

TEST_CASE("diagonal pair reproduces the Drinfeld double") {
    DiagonalReport r = diagonal_double_check();
    CHECK(r.embedding_ok);
    CHECK(r.b_image_ok);
    CHECK(r.commutation_ok);
    CHECK(r.pairs == 20);
    CHECK(r.failures.empty());
}
