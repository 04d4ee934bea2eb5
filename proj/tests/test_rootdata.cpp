#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qdouble/rootdata.hpp"

using namespace qdouble;

namespace {

std::shared_ptr<const RootDatum> datum(const std::string& t, int n, const std::string& lat = "P") {
    return std::make_shared<const RootDatum>(RootDatum::build(t, n, lat));
}

}  // namespace

TEST_CASE("build_root_datum examples") {
    auto a1 = RootDatum::build("A", 1, "P");
    CHECK(a1.form(a1.alpha(0), a1.alpha(0)) == 2);
    CHECK(a1.rho() == IWeight{1});
    CHECK(a1.root_order() == 2);

    auto a2 = RootDatum::build("A", 2, "Q");
    CHECK(a2.cartan_matrix() == std::vector<std::vector<long>>{{2, -1}, {-1, 2}});

    auto g2 = RootDatum::build("G2", 2, "Q");
    CHECK(g2.d(0) == 1);
    CHECK(g2.d(1) == 3);
    CHECK(g2.positive_roots().size() == 6);

    CHECK_THROWS_AS(RootDatum::build("E", 6), std::invalid_argument);
    CHECK_THROWS_AS(RootDatum::build("A", 2, "custom", {{1, 0}, {0, 3}}), std::invalid_argument);
}

TEST_CASE("structural invariants of every supported datum") {
    for (auto [t, n] : std::vector<std::pair<std::string, int>>{
             {"A", 1}, {"A", 2}, {"A", 3}, {"A", 4}, {"B", 2}, {"B", 3}, {"C", 2}, {"C", 3}, {"D", 2}, {"D", 3}, {"D", 4}, {"G2", 2}}) {
        auto rd = RootDatum::build(t, n, "P");
        for (int r = 0; r < n; ++r) {
            CHECK(rd.form(rd.alpha(r), rd.alpha(r)) == 2 * rd.d(r));
            for (int s = 0; s < n; ++s) CHECK(rd.d(r) * rd.cartan(r, s) == rd.d(s) * rd.cartan(s, r));
        }
        // short roots have (α,α) = 2
        long minlen = 1000;
        for (int r = 0; r < n; ++r) minlen = std::min(minlen, rd.d(r));
        CHECK(minlen == 1);
    }
}

TEST_CASE("weyl_act and longest_word") {
    auto a1 = RootDatum::build("A", 1);
    CHECK(a1.weyl_act({0}, a1.alpha(0)) == -a1.alpha(0));
    auto a2 = RootDatum::build("A", 2);
    CHECK(a2.longest_word({}).empty());
    Word w = a2.longest_word({0, 1});
    CHECK(w == Word{0, 1, 0});
    CHECK(word_to_string(w) == "s1 s2 s1");
    CHECK_THROWS_AS(a2.reflect(2, a2.alpha(0)), std::out_of_range);
    for (auto [t, n] : std::vector<std::pair<std::string, int>>{{"A", 3}, {"B", 3}, {"C", 3}, {"G2", 2}, {"D", 4}}) {
        auto rd = RootDatum::build(t, n);
        std::set<int> all;
        for (int i = 0; i < n; ++i) all.insert(i);
        for (const auto& X : std::vector<std::set<int>>{all, {0}, {1, 2 % n}, {0, n - 1}}) {
            Word wx = rd.longest_word(X);
            auto roots = rd.positive_roots_in(X);
            CHECK(wx.size() == roots.size());
            std::set<IWeight> pos(roots.begin(), roots.end());
            for (const auto& b : roots) CHECK(pos.count(-rd.weyl_act(wx, b)) == 1);
            Word alt = rd.longest_word(X, true);
            CHECK(alt.size() == wx.size());
            for (int i = 0; i < n; ++i) CHECK(rd.weyl_act(alt, rd.fundamental(i)) == rd.weyl_act(wx, rd.fundamental(i)));
        }
    }
}

TEST_CASE("validate_satake examples") {
    auto a1 = datum("A", 1);
    CHECK(validate_satake(*a1, {}, {0}).pass());
    auto a3 = datum("A", 3);
    CHECK(validate_satake(*a3, {1}, {2, 1, 0}).pass());
    auto b2 = datum("B", 2);
    auto rep = validate_satake(*b2, {}, {1, 0});
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.checks[1].pass);
    // A2 with X = {1}: tau = id violates (ii) since -w_X(alpha_1) = alpha_1 holds but (iii) fails for node 2
    auto a2 = datum("A", 2);
    CHECK_FALSE(validate_satake(*a2, {0}, {0, 1}).pass());
    // not an involution
    CHECK_FALSE(validate_satake(*a3, {}, {1, 2, 0}).pass());
}

TEST_CASE("choose_z examples") {
    SatakeDiagram sl2(datum("A", 1), {}, {0});
    CHECK(sl2.z(0) == 1);
    SatakeDiagram su13(datum("A", 3), {1}, {2, 1, 0});
    CHECK(su13.alpha_delta(0) == mpq_class(-1, 2));
    CHECK(su13.z(0) == 1);
    CHECK(su13.z(2) == -1);
    SatakeDiagram diag(datum("D", 2), {}, {1, 0});
    CHECK(diag.valid());
    CHECK(diag.z(0) == 1);
    CHECK(diag.z(1) == 1);
}

TEST_CASE("theta, alpha_plus, fixed sublattice") {
    SatakeDiagram sl2(datum("A", 1), {}, {0});
    CHECK(sl2.theta(sl2.base().alpha(0)) == -sl2.base().alpha(0));
    for (const auto& x : sl2.alpha_plus(0)) CHECK(x == 0);
    CHECK(sl2.theta_fixed_sublattice().empty());

    SatakeDiagram su13(datum("A", 3), {1}, {2, 1, 0});
    const auto& rd = su13.base();
    CHECK(su13.theta(rd.alpha(0)) == -(rd.alpha(1) + rd.alpha(2)));
    auto ap = su13.alpha_plus(0);
    CHECK(rd.form_rational(ap, ap) == mpq_class(3, 2));
    auto fixed = su13.theta_fixed_sublattice();
    for (const auto& w : fixed) CHECK(su13.theta(w) == w);
    CHECK(fixed.size() == 2);  // alpha_2 and alpha_1 - alpha_3

    SatakeDiagram diag(datum("D", 2), {}, {1, 0});
    auto fd = diag.theta_fixed_sublattice();
    REQUIRE(fd.size() == 1);
    CHECK((fd[0] == IWeight{1, -1} || fd[0] == IWeight{-1, 1}));
}

TEST_CASE("theta is an orthogonal involution") {
    std::vector<SatakeDiagram> ds;
    ds.emplace_back(datum("A", 3), std::set<int>{1}, std::vector<int>{2, 1, 0});
    ds.emplace_back(datum("A", 3), std::set<int>{0, 2}, std::vector<int>{0, 1, 2});
    ds.emplace_back(datum("B", 2), std::set<int>{1}, std::vector<int>{0, 1});
    ds.emplace_back(datum("C", 3), std::set<int>{0, 2}, std::vector<int>{0, 1, 2});
    ds.emplace_back(datum("G2", 2), std::set<int>{}, std::vector<int>{0, 1});
    for (const auto& d : ds) {
        CHECK(d.valid());
        const auto& rd = d.base();
        for (int i = 0; i < rd.rank(); ++i) {
            CHECK(d.theta(d.theta(rd.alpha(i))) == rd.alpha(i));
            for (int j = 0; j < rd.rank(); ++j)
                CHECK(rd.form(d.theta(rd.fundamental(i)), d.theta(rd.fundamental(j))) ==
                      rd.form(rd.fundamental(i), rd.fundamental(j)));
        }
    }
}

TEST_CASE("weyl_dim and dominant weights") {
    auto a1 = RootDatum::build("A", 1);
    for (long n = 0; n < 6; ++n) CHECK(a1.weyl_dim({n}) == n + 1);
    auto a2 = RootDatum::build("A", 2);
    CHECK(a2.weyl_dim({1, 1}) == 8);
    CHECK_THROWS_AS(a2.weyl_dim({-1, 0}), std::invalid_argument);
    auto a1q = RootDatum::build("A", 1, "Q");
    CHECK(a1q.dominant_weights_up_to(2) == std::vector<IWeight>{{0}, {2}});
    auto g2 = RootDatum::build("G2", 2);
    CHECK(g2.weyl_dim({1, 0}) == 7);
    CHECK(g2.weyl_dim({0, 1}) == 14);
}

TEST_CASE("kostant partition function") {
    auto a2 = RootDatum::build("A", 2);
    CHECK(a2.kostant_partition({1, 1}) == 2);
    CHECK(a2.kostant_partition({2, 2}) == 3);
    auto b2 = RootDatum::build("B", 2);
    CHECK(b2.kostant_partition({1, 2}) == 3);  // {a1+2a2}, {a1+a2, a2}, {a1, a2, a2}
}

TEST_CASE("lattices") {
    auto a1 = RootDatum::build("A", 1, "Q");
    CHECK(a1.in_lattice({2}));
    CHECK_FALSE(a1.in_lattice({1}));
    auto a3 = RootDatum::build("A", 3, "custom", {{0, 1, 0}, {2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
    CHECK_THROWS_AS(RootDatum::build("A", 3, "custom", {{0, 1, 0}, {2, -1, 0}, {0, -1, 2}}), std::invalid_argument);
    CHECK(a3.in_lattice({0, 1, 0}));
    CHECK_FALSE(a3.in_lattice({1, 0, 0}));
    CHECK(a3.in_root_lattice(a3.alpha(1)));
}
