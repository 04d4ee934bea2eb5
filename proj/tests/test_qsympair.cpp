#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qdouble/errors.hpp"
#include "qdouble/qsympair.hpp"

using namespace qdouble;

namespace {

struct Pair {
    std::shared_ptr<const RootDatum> datum;
    std::shared_ptr<const Uq> uq;
    SatakeDiagram diagram;
};

Pair make_pair(const std::string& t, int n, std::set<int> X, std::vector<int> tau) {
    auto d = std::make_shared<const RootDatum>(RootDatum::build(t, n, "P"));
    auto u = std::make_shared<const Uq>(d);
    return {d, u, SatakeDiagram(d, std::move(X), std::move(tau))};
}

Scalar q() { return Scalar::q_power(1); }

const CoidealGen& gen(const CoidealPresentation& p, const std::string& label) {
    for (const auto& g : p.generators)
        if (g.label == label) return g;
    throw std::out_of_range(label);
}

// Σ left ⊗ evaluate(right) rebuilt from a certificate
TensorElem reassemble(const CoidealPresentation& p, const MembershipCertificate& c) {
    TensorElem t(2);
    for (const auto& [left, comb] : c.legs) t += TensorElem::pure({AlgElem(left, Scalar(1)), evaluate(p, comb)});
    return t;
}

}  // namespace

TEST_CASE("sl2 generator") {
    Pair s = make_pair("A", 1, {}, {0});
    const Uq& u = *s.uq;
    CoidealPresentation p = coideal_generators(s.uq, s.diagram, 4);
    REQUIRE(p.generators.size() == 1);
    const AlgElem& B = p.generators[0].elem;
    CHECK(B == u.E(0) - u.multiply(u.F(0), u.K_alpha(0)));
    CHECK(B == u.E(0) - u.star(u.E(0)));
    CHECK(u.star(B) == B.scaled(-1));
    CHECK(u.to_string(B) == "E − F·K_α");
    TensorElem expect = TensorElem::pure({B, u.one()}) + TensorElem::pure({u.K_alpha(0), B});
    CHECK(u.coproduct(B) == expect);
    CHECK_THROWS_AS(coideal_generators(s.uq, s.diagram, 1), LiftError);
}

TEST_CASE("sl2 certificates") {
    Pair s = make_pair("A", 1, {}, {0});
    const Uq& u = *s.uq;
    CoidealPresentation p = coideal_generators(s.uq, s.diagram, 4);
    auto co = check_left_coideal(p, 4);
    REQUIRE(co.size() == 1);
    CHECK(co[0].status == CheckStatus::Pass);
    CHECK(reassemble(p, co[0]) == u.coproduct(p.generators[0].elem));
    // right legs are 1 or B
    for (const auto& [left, comb] : co[0].legs) {
        REQUIRE(comb.terms.size() == 1);
        CHECK(is_zero(comb.terms[0].second.k));
        CHECK(comb.terms[0].second.letters.size() <= 1);
    }
    CHECK(to_string(p, co[0]) == "K_α ⊗ (B) + E ⊗ (1) + F·K_α ⊗ (−1)");

    auto st = check_star_closed(p, 4);
    REQUIRE(st.size() == 1);
    CHECK(st[0].status == CheckStatus::Pass);
    CHECK(to_string(p, st[0]) == "−B");
}

TEST_CASE("diagonal diagram") {
    Pair s = make_pair("D", 2, {}, {1, 0});
    const Uq& u = *s.uq;
    CoidealPresentation p = coideal_generators(s.uq, s.diagram, 4);
    REQUIRE(p.generators.size() == 3);
    // K_ω ⊗ K_ω^{-1}
    CHECK(p.torus_basis() == std::vector<IWeight>{IWeight{1, -1}});
    // E ⊗ 1 − q K_α ⊗ F and 1 ⊗ E − q F ⊗ K_α
    CHECK(gen(p, "B1").elem == u.E(0) - u.multiply(u.K_alpha(0), u.F(1)).scaled(q()));
    CHECK(gen(p, "B2").elem == u.E(1) - u.multiply(u.F(0), u.K_alpha(1)).scaled(q()));
    for (const auto& c : check_left_coideal(p, 4)) CHECK(c.status == CheckStatus::Pass);
    for (const auto& c : check_star_closed(p, 4)) CHECK(c.status == CheckStatus::Pass);
}

TEST_CASE("A3 with X={2} and tau=(1 3)") {
    Pair s = make_pair("A", 3, {1}, {2, 1, 0});
    const Uq& u = *s.uq;
    CoidealPresentation p = coideal_generators(s.uq, s.diagram, 4);
    std::vector<std::string> labels;
    for (const auto& g : p.generators) labels.push_back(g.label);
    CHECK(labels == std::vector<std::string>{"E2", "F2", "K[1,-1,0]", "K[0,1,-1]", "B1", "B3"});
    // regression fixtures
    const Scalar c52 = Scalar::q_power(mpq_class(5, 2)), c32 = Scalar::q_power(mpq_class(3, 2));
    AlgElem b1 = u.E(0) - u.multiply(u.multiply(u.F(1), u.F(2)), u.K_alpha(0)).scaled(c52) +
                 u.multiply(u.multiply(u.F(2), u.F(1)), u.K_alpha(0)).scaled(c32);
    CHECK(gen(p, "B1").elem == b1);
    AlgElem b3 = u.E(2) - u.multiply(u.multiply(u.F(0), u.F(1)), u.K_alpha(2)).scaled(c32) +
                 u.multiply(u.multiply(u.F(1), u.F(0)), u.K_alpha(2)).scaled(c52);
    CHECK(gen(p, "B3").elem == b3);

    auto co = check_left_coideal(p, 4);
    auto st = check_star_closed(p, 4);
    for (std::size_t i = 0; i < co.size(); ++i) {
        INFO(co[i].generator);
        CHECK(co[i].status == CheckStatus::Pass);
        CHECK(reassemble(p, co[i]) == u.coproduct(p.generators[i].elem));
        CHECK(st[i].status == CheckStatus::Pass);
        CHECK(evaluate(p, st[i].legs[0].second) == u.star(p.generators[i].elem));
    }
    CHECK(to_string(p, st[4]) == "(q^(1/2))·K[3,-2,-1]·E2·B3 − (q^(3/2))·K[3,-2,-1]·B3·E2");
}

TEST_CASE("membership outside the coideal is undecided") {
    Pair s = make_pair("A", 1, {}, {0});
    const Uq& u = *s.uq;
    CoidealPresentation p = coideal_generators(s.uq, s.diagram, 4);
    CHECK_FALSE(express_in_coideal(p, u.E(0), 3).has_value());
    CHECK_FALSE(express_in_coideal(p, u.K_alpha(0), 3).has_value());
    auto b2 = express_in_coideal(p, u.multiply(p.generators[0].elem, p.generators[0].elem), 2);
    REQUIRE(b2.has_value());
    CHECK(to_string(p, *b2) == "B·B");
    // degree bound too small for B²
    CHECK_FALSE(express_in_coideal(p, u.multiply(p.generators[0].elem, p.generators[0].elem), 1).has_value());
}

TEST_CASE("spherical vectors for the sl2 pair") {
    Pair s = make_pair("A", 1, {}, {0});
    CoidealPresentation p = coideal_generators(s.uq, s.diagram, 4);
    for (long n = 0; n <= 6; ++n) {
        Rep v = build_irrep(s.datum, {n});
        auto inv = invariant_vectors(v, p);
        INFO(n);
        CHECK(inv.size() == (n % 2 == 0 ? 1u : 0u));
        for (const auto& xi : inv) CHECK(evaluate(p.generators[0].elem, v) * xi == Vec(v.dim()));
    }
}

TEST_CASE("spherical dimensions do not depend on z") {
    Pair s = make_pair("A", 2, {}, {1, 0});
    CoidealPresentation p = coideal_generators(s.uq, s.diagram, 4);
    SatakeDiagram flipped = s.diagram;
    std::vector<int> z = flipped.z_vector();
    for (auto& zi : z) zi = -zi;
    flipped.set_z(z);
    CoidealPresentation p2 = coideal_generators(s.uq, flipped, 4);
    CHECK_FALSE(p.generators.back().elem == p2.generators.back().elem);
    for (const auto& lam : s.datum->dominant_weights_up_to(2)) {
        Rep v = build_irrep(s.datum, lam);
        CHECK(invariant_vectors(v, p).size() == invariant_vectors(v, p2).size());
    }
}

TEST_CASE("image subalgebra") {
    Pair s = make_pair("A", 1, {}, {0});
    CoidealPresentation p = coideal_generators(s.uq, s.diagram, 4);
    CHECK(image_subalgebra(build_irrep(s.datum, {0}), p).size() == 1);
    Rep v = build_irrep(s.datum, {1});
    auto img = image_subalgebra(v, p);
    // B² = −q on the spin-½ rep, so the image is span{1, B}
    CHECK(img.size() == 2);
    Matrix b = evaluate(p.generators[0].elem, v);
    CHECK(b * b == Matrix::identity(2).scaled(-q()));

    Pair c = make_pair("A", 2, {0, 1}, {0, 1});
    CoidealPresentation full = coideal_generators(c.uq, c.diagram, 4);
    CHECK(image_subalgebra(build_irrep(c.datum, {1, 0}), full).size() == 9);
    CHECK(image_subalgebra(build_irrep(c.datum, {1, 1}), full).size() == 64);
}
