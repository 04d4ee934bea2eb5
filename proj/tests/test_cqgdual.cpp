#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qdouble/cqgdual.hpp"

using namespace qdouble;

namespace {

struct Fixture {
    std::shared_ptr<const RootDatum> datum;
    std::shared_ptr<const Uq> uq;
    CqgAlgebra A;
    explicit Fixture(const std::string& t = "A", int n = 1)
        : datum(std::make_shared<const RootDatum>(RootDatum::build(t, n, "P"))),
          uq(std::make_shared<const Uq>(datum)),
          A(uq) {}
};

Scalar q() { return Scalar::q_power(1); }

ATensor tensor_of(const AElem& x, const AElem& y) {
    ATensor t;
    for (const auto& a : x.terms)
        for (const auto& b : y.terms) t.terms.emplace_back(a, b);
    return t;
}

// (id⊗Φ)Δ(a) and (Φ⊗id)Δ(a)
AElem haar_right_leg(const CqgAlgebra& A, const AElem& a) {
    AElem out;
    for (const auto& [l, r] : A.coproduct(a).terms) out += AElem(l).scaled(A.haar(AElem(r)));
    return out;
}
AElem haar_left_leg(const CqgAlgebra& A, const AElem& a) {
    AElem out;
    for (const auto& [l, r] : A.coproduct(a).terms) out += AElem(r).scaled(A.haar(AElem(l)));
    return out;
}

}  // namespace

TEST_CASE("pairing examples") {
    Fixture f;
    const Uq& u = *f.uq;
    Rep v = build_irrep(f.datum, {1});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(f.A.pairing(f.A.matrix_coeff({1}, i, j), u.one()) == v.gram(i, j));
    CHECK(f.A.pairing(f.A.matrix_coeff({1}, 0, 1), u.E(0)) == v.gram(0, 0));
    CHECK(f.A.pairing(f.A.matrix_coeff({1}, 1, 0), u.F(0)) == v.gram(1, 1));
    CHECK(f.A.pairing(f.A.unit_coeff({1}, 1, 1), u.K_alpha(0)) == q().inverse());
    CHECK(f.A.pairing(f.A.one(), u.E(0)).is_zero());
    CHECK(f.A.pairing(f.A.one(), u.K_alpha(0)) == Scalar(1));
}

TEST_CASE("Hopf structure at pairing level") {
    Fixture f;
    const Uq& u = *f.uq;
    std::mt19937 rng(11);
    for (int i = 0; i < 8; ++i) {
        AElem a = f.A.random_element(rng, 2), b = f.A.random_element(rng, 2);
        AlgElem x = u.random_element(rng, 3, 2), y = u.random_element(rng, 3, 2);
        CHECK(f.A.pairing(f.A.product(a, b), x) == f.A.pairing(tensor_of(a, b), u.coproduct(x)));
        CHECK(f.A.pairing(f.A.coproduct(a), TensorElem::pure({x, y})) == f.A.pairing(a, u.multiply(x, y)));
        CHECK(f.A.pairing(f.A.star(a), x) == f.A.pairing(a, u.star(u.antipode(x))));
        CHECK(f.A.equal(f.A.star(f.A.star(a)), a));
        CHECK(f.A.equal(f.A.product(f.A.one(), a), a));
        // Δ(a*) = a_(1)* ⊗ a_(2)*
        ATensor ds;
        for (const auto& [l, r] : f.A.coproduct(a).terms) ds.terms.emplace_back(f.A.star(l), f.A.star(r));
        CHECK(f.A.pairing(f.A.coproduct(f.A.star(a)), TensorElem::pure({x, y})) ==
              f.A.pairing(ds, TensorElem::pure({x, y})));
    }
}

TEST_CASE("spin one-half corepresentation") {
    Fixture f;
    const Uq& u = *f.uq;
    std::mt19937 rng(5);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            AElem uij = f.A.unit_coeff({1}, i, j);
            ATensor sum;
            for (std::size_t k = 0; k < 2; ++k)
                for (const auto& t : tensor_of(f.A.unit_coeff({1}, i, k), f.A.unit_coeff({1}, k, j)).terms)
                    sum.terms.push_back(t);
            for (int s = 0; s < 4; ++s) {
                TensorElem xy = TensorElem::pure({u.random_element(rng, 3, 2), u.random_element(rng, 3, 2)});
                CHECK(f.A.pairing(f.A.coproduct(uij), xy) == f.A.pairing(sum, xy));
            }
        }
}

TEST_CASE("zero test") {
    Fixture f;
    AElem a = f.A.matrix_coeff({1}, 0, 1);
    CHECK(f.A.is_zero(a - a));
    CHECK_FALSE(f.A.is_zero(a));
    // U(ξ,η)·1 and U(ξ,η) carry different labels but agree
    CHECK(f.A.equal(f.A.product(a, f.A.one()), a));
    CHECK_FALSE(f.A.equal(f.A.product(a, f.A.matrix_coeff({1}, 0, 0)), f.A.product(f.A.matrix_coeff({1}, 0, 0), a)));
}

TEST_CASE("Haar state") {
    Fixture f;
    CHECK(f.A.haar(f.A.one()) == Scalar(1));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(f.A.haar(f.A.matrix_coeff({1}, i, j)).is_zero());
    std::mt19937 rng(3);
    for (int s = 0; s < 20; ++s) {
        AElem a = f.A.random_element(rng, 2);
        const Scalar h = f.A.haar(a);
        CHECK(f.A.equal(haar_right_leg(f.A, a), f.A.one().scaled(h)));
        CHECK(f.A.equal(haar_left_leg(f.A, a), f.A.one().scaled(h)));
        const Scalar p = f.A.haar(f.A.product(f.A.star(a), a));
        for (double q0 : {0.3, 0.5, 0.8}) CHECK(p.specialize(q0) >= -1e-9);
    }
}

TEST_CASE("Peter-Weyl rank") {
    Fixture f;
    auto r1 = peter_weyl_rank(f.A, 1);
    CHECK(r1.expected == 5);
    CHECK(r1.rank == 5);
    auto r3 = peter_weyl_rank(f.A, 3);
    CHECK(r3.expected == 30);
    CHECK(r3.rank == 30);
    Fixture a2("A", 2);
    auto r = peter_weyl_rank(a2.A, 1);
    CHECK(r.expected == 19);
    CHECK(r.rank == 19);
}

TEST_CASE("coset space and quotient blocks for the sl2 pair") {
    Fixture f;
    SatakeDiagram sd(f.datum, {}, {0});
    CoidealPresentation pres = coideal_generators(f.uq, sd, 4);
    std::vector<std::size_t> b_sizes, c_sizes;
    for (long n = 0; n <= 4; ++n) {
        auto hb = homspace_B(f.A, {n}, pres);
        b_sizes.push_back(hb.size());
        for (const auto& b : hb) CHECK(check_homspace_member(f.A, pres, b, 3));
        CBlock cb = quotient_block(f.A, {n}, pres);
        c_sizes.push_back(cb.dim());
        CHECK(check_dagger(cb));
    }
    CHECK(b_sizes == std::vector<std::size_t>{1, 0, 3, 0, 5});
    CHECK(c_sizes == std::vector<std::size_t>{1, 2, 3, 4, 5});
    auto hb0 = homspace_B(f.A, {0}, pres);
    CHECK(f.A.equal(hb0[0], f.A.one()));

    auto hb = homspace_B(f.A, {2}, pres);
    CHECK(check_homspace_member(f.A, pres, f.A.product(hb[0], hb[2]), 2));
    CHECK(check_homspace_member(f.A, pres, f.A.star(hb[1]), 2));
    CHECK_FALSE(check_homspace_member(f.A, pres, f.A.matrix_coeff({2}, 0, 0), 2));

    // π_C(1_A) spans the trivial block
    CBlock triv = quotient_block(f.A, {0}, pres);
    CHECK(project_C(triv, {Scalar(1)}, {Scalar(1)}) == Vec{Scalar(1)});
}

TEST_CASE("restricted dual blocks") {
    Fixture f;
    SatakeDiagram sd(f.datum, {}, {0});
    CoidealPresentation pres = coideal_generators(f.uq, sd, 4);
    RestrictedDual rd = restricted_dual(f.A, pres, {{0}, {1}, {2}});
    std::vector<std::size_t> per_rep(3);
    for (const auto& b : rd.blocks) {
        CHECK(b.h_dim == 1);
        CHECK(b.multiplicity == 1);
        ++per_rep[b.rep_index];
    }
    CHECK(per_rep == std::vector<std::size_t>{1, 2, 3});
    CHECK(rd.residual < 1e-9);

    // the full coideal of the compact form: one block End(V) per irrep
    SatakeDiagram compact(f.datum, {0}, {0});
    CoidealPresentation full = coideal_generators(f.uq, compact, 4);
    RestrictedDual rf = restricted_dual(f.A, full, {{1}, {2}});
    REQUIRE(rf.blocks.size() == 2);
    CHECK(rf.blocks[0].h_dim == 2);
    CHECK(rf.blocks[1].h_dim == 3);
}
