#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qdouble/cli.hpp"

using namespace qdouble;
using namespace qdouble::cli;

namespace {

std::string fixture(const std::string& name) { return std::string(QDOUBLE_FIXTURES) + "/" + name; }

const nlohmann::json* find_check(const nlohmann::json& report, const std::string& name) {
    for (const auto& c : report["checks"])
        if (c["name"] == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("spec parsing defaults") {
    const JobSpec j = parse_spec_text("type = A\nrank = 1\n");
    CHECK(j.height == 2);
    CHECK(j.degree == 4);
    CHECK(j.maxdeg == 8);
    CHECK(j.q0 == std::vector<double>{0.3, 0.5, 0.8});
    CHECK(j.precision == 1e-10);
    CHECK(j.X.empty());
    CHECK(j.tau == std::vector<int>{0});
    CHECK(j.lattice == "P");
    CHECK(j.suites == all_suites());
}

TEST_CASE("spec parsing values") {
    const JobSpec j = parse_spec_text(
        "# su(2,2)\n"
        "type = A\n"
        "rank = 3   # trailing comment\n"
        "X = [2]\n"
        "tau = [(1,3)]\n"
        "lattice = \"P\"\n"
        "height = 1\n"
        "q0 = [0.25, 0.75]\n"
        "precision = 1e-8\n");
    CHECK(j.X == std::set<int>{1});
    CHECK(j.tau == std::vector<int>{2, 1, 0});
    CHECK(j.height == 1);
    CHECK(j.q0 == std::vector<double>{0.25, 0.75});
    CHECK(j.precision == 1e-8);

    const JobSpec rows = parse_spec_text("type = A\nrank = 2\nlattice = [[1,1],[0,3]]\n");
    CHECK(rows.lattice == "custom");
    CHECK(rows.lattice_rows == std::vector<IWeight>{{1, 1}, {0, 3}});
}

TEST_CASE("spec parsing errors") {
    auto error_of = [](const std::string& text) -> std::string {
        try {
            parse_spec_text(text, "f.spec");
        } catch (const SpecError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(error_of("type = A\nrank = 2\ntau = [(1,3)]\n") == "f.spec:3:8: tau index out of range");
    CHECK(error_of("type = A\nrank = 2\ncolour = red\n") == "f.spec:3:1: unknown key 'colour'");
    CHECK(error_of("type = E\nrank = 6\n") == "f.spec:1:8: unsupported type 'E'");
    CHECK(error_of("type = A\nrank = 3\nX = [1, 4]\n") == "f.spec:3:9: X index out of range");
    CHECK(error_of("type = A\nrank = 3\ntau = [(1,3),(3,2)]\n") == "f.spec:3:14: tau pairs overlap");
    CHECK(error_of("type = A\nrank = 2\nX = [1,\n") == "f.spec:3:8: expected an integer");
    CHECK(error_of("type = A\nrank = 2\nrank = 3\n") == "f.spec:3:1: duplicate key 'rank'");
    CHECK(error_of("rank = 2\n") == "f.spec:2:1: missing key 'type'");
    CHECK(error_of("type = A\nrank = 2\nheight = 0\n") == "f.spec:3:10: height must be positive");
    CHECK(error_of("type = G2\nrank = 3\n") == "f.spec:2:1: G2 has rank 2");

    CHECK(parse_suites("dual, satake,dual") == std::vector<std::string>{"satake", "dual"});
    CHECK_THROWS_AS(parse_suites("satake,nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(parse_spec(fixture("missing.spec")), std::runtime_error);
}

TEST_CASE("lattice P accepted on a tau-stable lattice") {
    JobSpec j = parse_spec_text("type = A\nrank = 2\ntau = [(1,2)]\nlattice = \"P\"\n");
    j.suites = {"satake"};
    const RunResult r = run(j);
    CHECK(r.exit_code == 0);
    CHECK(find_check(r.report, "satake: tau(F) = F")->at("status") == "pass");
}

TEST_CASE("sl2 report") {
    const RunResult r = run(parse_spec(fixture("a1_split.spec")));
    CHECK(r.exit_code == 0);
    const auto* b = find_check(r.report, "sl2-B-generator");
    REQUIRE(b);
    CHECK(b->at("status") == "pass");
    CHECK(b->at("value") == "E − F·K_α");
    CHECK(r.report["derived"]["theta"] == nlohmann::json{{-1}});
    CHECK(r.report["derived"]["L"] == 2);
    CHECK(r.report["tables"]["spherical_dims"] == nlohmann::json{{"(0)", 1}, {"(1)", 0}, {"(2)", 1}});
    for (const auto& c : r.report["checks"]) {
        INFO(c.dump());
        CHECK(c["status"] == "pass");
    }
}

TEST_CASE("bound too small is undecided") {
    JobSpec j = parse_spec(fixture("a1_split.spec"));
    j.degree = 1;
    const RunResult r = run(j);
    CHECK(r.exit_code == 2);
    bool fail = false;
    for (const auto& c : r.report["checks"]) fail = fail || c["status"] == "fail";
    CHECK_FALSE(fail);
}

TEST_CASE("perturbed Serre coefficient fails with the critical pair") {
    const RunResult r = run(parse_spec(fixture("failing/a2_serre_perturbed.spec")));
    CHECK(r.exit_code == 1);
    const auto* c = find_check(r.report, "serre-completion");
    REQUIRE(c);
    CHECK(c->at("status") == "fail");
    CHECK(c->at("witness").get<std::string>().find("critical pair (2.2.1, 2.1.1)") != std::string::npos);
}

TEST_CASE("invalid diagram skips the dependent suites") {
    JobSpec j = parse_spec_text("type = B\nrank = 2\nX = [1]\n");
    const RunResult r = run(j);
    CHECK(r.exit_code == 1);
    CHECK(r.report["skipped"].size() == all_suites().size() - 1);
}

TEST_CASE("reports are deterministic") {
    JobSpec j = parse_spec(fixture("d2_diagonal.spec"));
    j.suites = parse_suites("satake,coideal,star,spherical,dual");
    const std::string a = run(j).report.dump(2), b = run(j).report.dump(2);
    CHECK(a == b);
}

TEST_CASE("catalog") {
    const std::string text = list_catalog();
    CHECK(text.find("A1 X=∅ τ=id : sl(2,R) / so(2) ⊆ su(2)") != std::string::npos);
    CHECK(text.find("u ⊆ u ⊕ u") != std::string::npos);
    CHECK(text.find("A3 X=∅ τ=(1 3) : su(2,2)") != std::string::npos);
    REQUIRE_FALSE(catalog().empty());
    for (const auto& e : catalog()) {
        INFO(e.file);
        const JobSpec j = parse_spec(fixture(e.file));
        CHECK(j.type == e.type);
        CHECK(j.rank == e.rank);
        CHECK(j.X == e.X);
        CHECK(j.tau == e.tau);
        auto datum = RootDatum::build(j.type, j.rank, j.lattice);
        CHECK(validate_satake(datum, j.X, j.tau).pass());
    }
}
