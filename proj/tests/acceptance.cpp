// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select criteria by number.
#include "qdouble/cli.hpp"
#include "qdouble/doublecoid.hpp"
#include "qdouble/errors.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

using namespace qdouble;
using nlohmann::json;

namespace {

using DatumPtr = std::shared_ptr<const RootDatum>;

DatumPtr datum(const std::string& t, int n) { return std::make_shared<const RootDatum>(RootDatum::build(t, n, "P")); }

std::string fixture(const std::string& name) { return std::string(QDOUBLE_FIXTURES) + "/" + name; }

/// Outcome of one criterion: pass flag plus a short note.
struct Outcome {
    bool pass = true;
    std::string note;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) note = what;
        pass = pass && ok;
    }
};

/// Objects for one catalog fixture, built once and shared between criteria.
struct Fixture {
    std::string file;
    cli::JobSpec job;
    DatumPtr datum;
    std::shared_ptr<const Uq> uq;
    std::shared_ptr<const CqgAlgebra> A;
    std::optional<CoidealPresentation> pres;
};

std::vector<Fixture>& fixtures() {
    static std::vector<Fixture> fs;
    if (fs.empty())
        for (const auto& e : cli::catalog()) {
            Fixture f;
            f.file = e.file;
            f.job = cli::parse_spec(fixture(e.file));
            f.datum = std::make_shared<const RootDatum>(
                RootDatum::build(f.job.type, f.job.rank, f.job.lattice, f.job.lattice_rows));
            f.uq = std::make_shared<const Uq>(f.datum, f.job.maxdeg);
            f.A = std::make_shared<const CqgAlgebra>(f.uq);
            fs.push_back(std::move(f));
        }
    return fs;
}

const CoidealPresentation& presentation(Fixture& f) {
    if (!f.pres) f.pres = coideal_generators(f.uq, SatakeDiagram(f.datum, f.job.X, f.job.tau), f.job.degree);
    return *f.pres;
}

/// Weights used for the module truncations: height ≤ h, dim V(λ) ≤ 8.
std::vector<IWeight> small_weights(const RootDatum& d, long h) {
    std::vector<IWeight> out;
    for (const auto& l : d.dominant_weights_up_to(h))
        if (d.weyl_dim(l) <= 8) out.push_back(l);
    return out;
}

Outcome presentation_fidelity() {
    Outcome o;
    std::size_t reps = 0;
    for (auto [t, n] : std::vector<std::pair<std::string, int>>{{"A", 1}, {"A", 2}, {"B", 2}, {"A", 3}}) {
        auto d = datum(t, n);
        Uq u(d);
        const auto rels = u.relations();
        for (const auto& lam : d->dominant_weights_up_to(3)) {
            const Rep rep = build_irrep(d, lam);
            ++reps;
            for (const auto& r : rels) o.require(evaluate(r.expr, rep).is_zero(), t + std::to_string(n) + " " + r.name);
        }
    }
    o.note = o.pass ? std::to_string(reps) + " irreps" : o.note;
    return o;
}

Outcome hopf_suite() {
    Outcome o;
    for (auto [t, n] : std::vector<std::pair<std::string, int>>{{"A", 1}, {"A", 2}, {"B", 2}, {"G", 2}, {"A", 3}, {"B", 3}, {"C", 3}}) {
        Uq u(datum(t, n), t == "C" ? 10 : 8);
        for (const auto& c : hopf_axiom_check(u, 4, 50)) o.require(c.pass, t + std::to_string(n) + " " + c.name + ": " + c.detail);
    }
    return o;
}

Outcome braid_suite() {
    Outcome o;
    std::size_t reps = 0;
    // (type, rank, separating-set degree)
    for (auto [t, n, deg] : std::vector<std::tuple<std::string, int, int>>{
             {"A", 1, 2}, {"A", 2, 2}, {"B", 2, 2}, {"A", 3, 2}, {"G", 2, 1}, {"B", 3, 1}, {"C", 3, 1}}) {
        auto d = datum(t, n);
        const SeparatingSet set = build_separating_set(d, deg, 1);
        for (const auto& w : set.reps) {
            ++reps;
            for (int r = 0; r < n; ++r) {
                const Matrix T = braid_T(w, r), Ti = braid_T_inverse(w, r);
                o.require(T * Ti == Matrix::identity(w.dim()), "T not invertible");
                for (const auto& b : d->lattice_basis()) o.require(T * w.K(b) * Ti == w.K(d->reflect(r, b)), "T K T^-1");
            }
        }
    }
    Matrix spin(2, 2);
    spin(0, 1) = Scalar(1);
    spin(1, 0) = -Scalar::q_power(1);
    o.require(braid_T(build_irrep(datum("A", 1), {1}), 0) == spin, "A1 spin-1/2 matrix");
    o.note = o.pass ? std::to_string(reps) + " reps" : o.note;
    return o;
}

Outcome sl2_formula() {
    Outcome o;
    auto d = datum("A", 1);
    auto u = std::make_shared<const Uq>(d);
    const CoidealPresentation p = coideal_generators(u, SatakeDiagram(d, {}, {0}), 4);
    o.require(p.generators.size() == 1, "one generator");
    if (!o.pass) return o;
    const AlgElem& B = p.generators[0].elem;
    o.require(B == u->E(0) - u->multiply(u->F(0), u->K_alpha(0)), "B = E - F K");
    o.require(u->to_string(B) == "E − F·K_α", "printed form");
    o.require(u->star(B) == B.scaled(-1), "B* = -B");
    o.require(u->coproduct(B) == TensorElem::pure({B, u->one()}) + TensorElem::pure({u->K_alpha(0), B}), "coproduct");
    const auto cert = check_left_coideal(p, 4);
    o.require(cert.size() == 1 && cert[0].status == CheckStatus::Pass, "coideal certificate");
    if (!o.pass) return o;
    TensorElem sum(2);
    for (const auto& [left, comb] : cert[0].legs) {
        for (const auto& [c, w] : comb.terms) o.require(is_zero(w.k) && w.letters.size() <= 1, "right leg outside {1, B}");
        sum += TensorElem::pure({AlgElem(left, Scalar(1)), evaluate(p, comb)});
    }
    o.require(sum == u->coproduct(B), "certificate reassembles Δ(B)");
    return o;
}

Outcome coideal_certificates() {
    Outcome o;
    std::size_t gens = 0;
    for (auto& f : fixtures()) {
        const CoidealPresentation& p = presentation(f);
        for (const auto& c : check_left_coideal(p, 4)) {
            ++gens;
            o.require(c.status == CheckStatus::Pass, f.file + " coideal " + c.generator);
        }
        for (const auto& c : check_star_closed(p, 4)) o.require(c.status == CheckStatus::Pass, f.file + " star " + c.generator);
    }
    o.note = o.pass ? std::to_string(fixtures().size()) + " fixtures, " + std::to_string(gens) + " generators" : o.note;
    return o;
}

Outcome diagonal_reduction() {
    Outcome o;
    auto d = datum("D", 2);
    auto u = std::make_shared<const Uq>(d);
    const CoidealPresentation p = coideal_generators(u, SatakeDiagram(d, {}, {1, 0}), 4);
    const Scalar q = Scalar::q_power(1);
    o.require(p.torus_basis() == std::vector<IWeight>{IWeight{1, -1}}, "K_ω ⊗ K_ω^-1");
    std::map<std::string, AlgElem> by_label;
    for (const auto& g : p.generators) by_label[g.label] = g.elem;
    o.require(by_label.count("B1") && by_label["B1"] == u->E(0) - u->multiply(u->K_alpha(0), u->F(1)).scaled(q),
              "E ⊗ 1 − q K_α ⊗ F");
    o.require(by_label.count("B2") && by_label["B2"] == u->E(1) - u->multiply(u->F(0), u->K_alpha(1)).scaled(q),
              "1 ⊗ E − q F ⊗ K_α");
    const DiagonalReport r = diagonal_double_check(4);
    o.require(r.pass(), r.failures.empty() ? "diagonal double" : r.failures.front());
    if (o.pass) o.note = std::to_string(r.pairs) + " commutation pairs";
    return o;
}

Outcome cqg_suite() {
    Outcome o;
    auto u = std::make_shared<const Uq>(datum("A", 1));
    CqgAlgebra A(u);
    const auto pw = peter_weyl_rank(A, 3);
    o.require(pw.rank == 30 && pw.expected == 30, "Peter-Weyl rank " + std::to_string(pw.rank));
    o.require(A.haar(A.one()) == Scalar(1), "Φ(1) = 1");
    std::mt19937 rng(7);
    for (int s = 0; s < 20; ++s) {
        const AElem a = A.random_element(rng, 2);
        const Scalar h = A.haar(a);
        AElem left, right;
        for (const auto& [x, y] : A.coproduct(a).terms) {
            left += AElem(y).scaled(A.haar(AElem(x)));
            right += AElem(x).scaled(A.haar(AElem(y)));
        }
        o.require(A.equal(left, A.one().scaled(h)) && A.equal(right, A.one().scaled(h)), "invariance, sample " + std::to_string(s));
        const Scalar p = A.haar(A.product(A.star(a), a));
        for (double q0 : {0.3, 0.5, 0.8}) o.require(p.specialize(q0) >= -1e-9, "Φ(a*a) < 0, sample " + std::to_string(s));
    }
    return o;
}

Outcome dk_suite() {
    Outcome o;
    std::size_t pairs = 0, mutations = 0;
    for (auto& f : fixtures()) {
        const auto ws = small_weights(*f.datum, std::min<long>(f.job.height, 2));
        const DKModule m = build_dk_module(f.A, presentation(f), ws, ws);
        const DKReport r = verify_dk_compat(m);
        pairs += r.checked;
        o.require(r.pass, f.file + ": " + (r.failures.empty() ? "" : r.failures.front()));
        for (std::size_t g = 0; g < m.b_generators.size(); ++g) {
            const auto [terms, entries] = delta_B_shape(m, g);
            for (std::size_t t = 0; t < terms; ++t)
                for (std::size_t e = 0; e < entries; ++e) {
                    DKModule mm = m;
                    perturb_delta_B(mm, g, t, e);
                    ++mutations;
                    o.require(!verify_dk_compat(mm, true, g).pass, f.file + ": mutation of " + m.b_names[g] + " accepted");
                }
        }
    }
    if (o.pass) o.note = std::to_string(pairs) + " pairs, " + std::to_string(mutations) + " mutations rejected";
    return o;
}

Outcome double_suite() {
    Outcome o;
    auto d = datum("A", 1);
    auto u = std::make_shared<const Uq>(d);
    auto A = std::make_shared<const CqgAlgebra>(u);
    const CoidealPresentation p = coideal_generators(u, SatakeDiagram(d, {}, {0}), 4);
    const int bound = 8;

    std::vector<AElem> bs;
    for (const auto& lam : d->dominant_weights_up_to(2))
        for (const auto& b : homspace_B(*A, lam, p)) bs.push_back(b);
    std::vector<DblElem> gens;
    for (const auto& b : bs) gens.push_back(DblElem::from_B(b, *u));
    for (std::size_t g : p.letters()) gens.push_back(DblElem::from_I(p.generators[g].elem, *A));

    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        const DblElem& x = gens[rng() % gens.size()];
        const DblElem& y = gens[rng() % gens.size()];
        const DblElem& z = gens[rng() % gens.size()];
        o.require(dbl_equal(*A, dbl_multiply(*A, dbl_multiply(*A, x, y, bound), z, bound),
                            dbl_multiply(*A, x, dbl_multiply(*A, y, z, bound), bound)),
                  "associativity, triple " + std::to_string(t));
    }
    for (const auto& x : gens)
        for (const auto& y : gens) {
            const DblElem prod = dbl_multiply(*A, x, y, bound);
            o.require(dbl_equal(*A, dbl_star(*A, dbl_star(*A, prod, bound), bound), prod), "star not involutive");
            o.require(certify_normal_form(*A, p, prod, 4).ok(), "normal form certificate");
        }
    const auto ws = d->dominant_weights_up_to(1);
    const CorrespondenceReport cr = double_rep_correspondence(build_dk_module(A, p, ws, ws));
    o.require(cr.pass(), cr.failures.empty() ? "correspondence" : cr.failures.front());
    if (o.pass) o.note = std::to_string(gens.size()) + " generators, " + std::to_string(cr.checked) + " relations on h=1";
    return o;
}

Outcome spherical_table() {
    Outcome o;
    auto d = datum("A", 1);
    auto u = std::make_shared<const Uq>(d);
    const CoidealPresentation p = coideal_generators(u, SatakeDiagram(d, {}, {0}), 4);
    for (long n = 0; n <= 6; ++n) {
        const Rep v = build_irrep(d, {n});
        // oracle: kernel of E − F·K_α assembled from the raw matrices
        const std::size_t oracle = nullspace(v.E[0] - v.F[0] * v.K(d->alpha(0))).size();
        const std::size_t got = invariant_vectors(v, p).size();
        o.require(oracle == (n % 2 == 0 ? 1u : 0u), "oracle at n=" + std::to_string(n));
        o.require(got == oracle, "dim at n=" + std::to_string(n) + " is " + std::to_string(got));
    }
    return o;
}

/// Checks an instance against the subset of JSON Schema used by the published report schema.
bool conforms(const json& x, const json& s, const std::string& path, std::string& err) {
    auto fail = [&](const std::string& m) {
        err = path + ": " + m;
        return false;
    };
    if (s.contains("type")) {
        const std::string t = s["type"];
        const bool ok = t == "object"    ? x.is_object()
                        : t == "array"   ? x.is_array()
                        : t == "string"  ? x.is_string()
                        : t == "integer" ? x.is_number_integer()
                        : t == "number"  ? x.is_number()
                                         : false;
        if (!ok) return fail("expected " + t);
    }
    if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), x) == s["enum"].end()) return fail("not in enum");
    if (s.contains("minimum") && x.is_number() && x.get<double>() < s["minimum"].get<double>()) return fail("below minimum");
    if (x.is_array()) {
        if (s.contains("minItems") && x.size() < s["minItems"].get<std::size_t>()) return fail("too few items");
        if (s.contains("maxItems") && x.size() > s["maxItems"].get<std::size_t>()) return fail("too many items");
        if (s.contains("items"))
            for (std::size_t i = 0; i < x.size(); ++i)
                if (!conforms(x[i], s["items"], path + "/" + std::to_string(i), err)) return false;
    }
    if (x.is_object()) {
        if (s.contains("required"))
            for (const auto& k : s["required"])
                if (!x.contains(k.get<std::string>())) return fail("missing " + k.get<std::string>());
        for (const auto& [k, v] : x.items()) {
            if (s.contains("properties") && s["properties"].contains(k)) {
                if (!conforms(v, s["properties"][k], path + "/" + k, err)) return false;
            } else if (s.contains("additionalProperties") && s["additionalProperties"].is_object()) {
                if (!conforms(v, s["additionalProperties"], path + "/" + k, err)) return false;
            }
        }
    }
    return true;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_round_trip() {
    Outcome o;
    const json schema = json::parse(slurp(QDOUBLE_SCHEMA));
    const std::string tmp = "acceptance_report";
    for (const auto& e : cli::catalog()) {
        std::string first;
        for (int pass = 0; pass < 2; ++pass) {
            const std::string out = tmp + std::to_string(pass) + ".json";
            const std::string cmd = std::string("\"") + QDOUBLE_TOOL + "\" verify \"" + fixture(e.file) + "\" --out " + out;
            const int status = std::system(cmd.c_str());
            o.require(status == 0, e.file + " exit status " + std::to_string(status));
            const std::string text = slurp(out);
            std::remove(out.c_str());
            if (pass == 0) {
                first = text;
                std::string err;
                try {
                    json report = json::parse(text);
                    o.require(conforms(report, schema, "", err), e.file + " schema " + err);
                    report["checks"][0]["status"] = "ok";
                    o.require(!conforms(report, schema, "", err), "validator accepted a bad status");
                } catch (const json::parse_error& ex) {
                    o.require(false, e.file + " unparsable report");
                }
            } else {
                o.require(text == first, e.file + " not deterministic");
            }
        }
    }
    if (o.pass) o.note = std::to_string(cli::catalog().size()) + " fixtures, run twice";
    return o;
}

struct Criterion {
    int id;
    std::string title;
    double limit_s;  // 0: no runtime bound
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "presentation fidelity", 60, presentation_fidelity},
        {2, "Hopf suite", 120, hopf_suite},
        {3, "braid suite", 0, braid_suite},
        {4, "sl2 coideal generator formula", 1, sl2_formula},
        {5, "coideal and star certificates on the catalog", 600, coideal_certificates},
        {6, "diagonal reduction", 120, diagonal_reduction},
        {7, "CQG suite", 120, cqg_suite},
        {8, "Doi-Koppinen suite on the catalog", 120, dk_suite},
        {9, "double suite", 300, double_suite},
        {10, "spherical table", 10, spherical_table},
        {11, "CLI round-trip", 900, cli_round_trip},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    bool all_pass = true;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs >= c.limit_s) o.require(false, "over the time limit");
        all_pass = all_pass && o.pass;
        char timing[64];
        if (c.limit_s > 0) std::snprintf(timing, sizeof timing, "%.1fs / %.0fs", secs, c.limit_s);
        else std::snprintf(timing, sizeof timing, "%.1fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << " [" << timing << "]"
                  << (o.note.empty() ? "" : " " + o.note) << std::endl;
    }
    return all_pass ? 0 : 1;
}
