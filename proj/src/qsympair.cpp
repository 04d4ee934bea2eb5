#include "qdouble/qsympair.hpp"

#include "qdouble/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace qdouble {

std::vector<std::size_t> CoidealPresentation::letters() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].kind != CoidealGen::K) out.push_back(i);
    return out;
}

std::vector<IWeight> CoidealPresentation::torus_basis() const {
    std::vector<IWeight> out;
    for (const auto& g : generators)
        if (g.kind == CoidealGen::K) out.push_back(g.weight);
    return out;
}

Scalar CoidealPresentation::counit(std::size_t g) const {
    return generators[g].kind == CoidealGen::K ? Scalar(1) : Scalar(0);
}

namespace {

long root_height(const RootDatum& D, const IWeight& w) {
    long h = 0;
    for (const auto& c : D.to_simple(w)) h += c.get_num().get_si() / c.get_den().get_si();
    return h;
}

std::string coef_prefix(const Scalar& c, bool first, bool& empty_body_ok) {
    const bool neg = c.is_negative_monomial();
    const Scalar mag = neg ? -c : c;
    std::string s = first ? (neg ? "−" : "") : (neg ? " − " : " + ");
    empty_body_ok = mag.is_one();
    if (!mag.is_one()) s += "(" + mag.to_string() + ")";
    return s;
}

}  // namespace

CoidealPresentation coideal_generators(std::shared_ptr<const Uq> uq, const SatakeDiagram& diagram, int d) {
    const Uq& u = *uq;
    const RootDatum& D = u.datum();
    CoidealPresentation pres{uq, diagram, {}, d};
    for (int x : diagram.X()) {
        pres.generators.push_back({CoidealGen::E, x, {}, u.E(x), "E" + std::to_string(x + 1), 1});
        pres.generators.push_back({CoidealGen::F, x, {}, u.F(x), "F" + std::to_string(x + 1), 1});
    }
    for (const auto& w : diagram.theta_fixed_sublattice()) {
        CoidealGen g{CoidealGen::K, 0, w, u.K(w), u.to_string(Mono{{}, w, {}}), 0};
        pres.generators.push_back(std::move(g));
    }
    std::map<int, SeparatingSet> sets;
    for (int r = 0; r < D.rank(); ++r) {
        if (diagram.in_X(r)) continue;
        const int s = diagram.tau(r);
        const long need = root_height(D, D.weyl_act(diagram.wX(), D.alpha(s)));
        // B_r = E_r + c·Y_r·K_{α_r} has degree need + 1
        if (need + 1 > d)
            throw LiftError("coideal_generators: B" + std::to_string(r + 1) + " needs degree " + std::to_string(need + 1) +
                            " > " + std::to_string(d));
        AlgElem y;
        if (diagram.wX().empty()) {
            y = u.F(s);
        } else {
            auto it = sets.find(static_cast<int>(need));
            if (it == sets.end()) it = sets.emplace(static_cast<int>(need), build_separating_set(uq->datum_ptr(), static_cast<int>(need))).first;
            y = ad_Twx(u, diagram, u.F(s), static_cast<int>(need), it->second);
        }
        y = y.scaled(Scalar(-diagram.z(s)));
        const auto ap = diagram.alpha_plus(r);
        const Scalar c = Scalar::q_power(D.form_rational(ap, ap));
        AlgElem b = u.E(r) + u.multiply(y, u.K_alpha(r)).scaled(c);
        const int deg = b.degree();
        pres.generators.push_back({CoidealGen::B, r, {}, std::move(b), "B" + std::to_string(r + 1), deg});
    }
    if (D.rank() == 1)
        for (auto& g : pres.generators)
            if (g.kind != CoidealGen::K) g.label.pop_back();
    return pres;
}

std::string to_string(const CoidealPresentation& pres, const IWord& w) {
    std::vector<std::string> parts;
    if (!is_zero(w.k)) parts.push_back(pres.uq->to_string(Mono{{}, w.k, {}}));
    for (std::size_t l : w.letters) parts.push_back(pres.generators[l].label);
    if (parts.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "·" : "") + parts[i];
    return s;
}

std::string to_string(const CoidealPresentation& pres, const ICombination& c) {
    if (c.terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [coef, w] : c.terms) {
        bool unit = false;
        s += coef_prefix(coef, first, unit);
        std::string body = to_string(pres, w);
        if (!unit && body == "1") body.clear();
        else if (!unit) body = "·" + body;
        s += body;
        first = false;
    }
    return s;
}

AlgElem evaluate(const CoidealPresentation& pres, const IWord& w) {
    const Uq& u = *pres.uq;
    AlgElem x = u.K(w.k);
    for (std::size_t l : w.letters) x = u.multiply(x, pres.generators[l].elem);
    return x;
}

AlgElem evaluate(const CoidealPresentation& pres, const ICombination& c) {
    AlgElem x;
    for (const auto& [coef, w] : c.terms) x += evaluate(pres, w).scaled(coef);
    return x;
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Undecided: return "undecided";
    }
    return "undecided";
}

namespace {

// Membership in the span of I-words, with the word normal forms cached across queries.
class Expresser {
public:
    explicit Expresser(const CoidealPresentation& pres) : pres_(pres) {}

    std::optional<ICombination> express(const AlgElem& x, int d) {
        if (x.is_zero()) return ICombination{};
        const std::vector<IWeight> omegas = torus_candidates(x);
        for (int dd = 0; dd <= d; ++dd) {
            std::vector<IWord> cands;
            for (const auto& w : words_up_to(dd))
                for (const auto& om : omegas) cands.push_back({om, w});
            if (auto sol = solve(cands, x)) return sol;
        }
        return std::nullopt;
    }

private:
    const CoidealPresentation& pres_;
    std::map<std::vector<std::size_t>, AlgElem> word_cache_;
    std::map<std::pair<IWeight, std::vector<std::size_t>>, AlgElem> cache_;

    bool fixed(const IWeight& w) const {
        return pres_.diagram.theta(w) == w && pres_.uq->datum().in_lattice(w);
    }

    // K-weights of x shifted by up to two of the K-weights the generators can produce
    std::vector<IWeight> torus_candidates(const AlgElem& x) const {
        const RootDatum& D = pres_.uq->datum();
        std::set<IWeight> shifts{IWeight(static_cast<std::size_t>(D.rank()), 0)};
        std::vector<IWeight> base{IWeight(static_cast<std::size_t>(D.rank()), 0)};
        for (int r = 0; r < D.rank(); ++r) {
            base.push_back(D.alpha(r));
            if (pres_.diagram.in_X(r)) base.push_back(-D.alpha(r));
        }
        for (const auto& a : base)
            for (const auto& b : base) shifts.insert(a + b);
        std::set<IWeight> out{IWeight(static_cast<std::size_t>(D.rank()), 0)};
        for (const auto& [m, c] : x.terms())
            for (const auto& s : shifts) {
                IWeight w = m.k - s;
                if (fixed(w)) out.insert(w);
            }
        return {out.begin(), out.end()};
    }

    std::vector<std::vector<std::size_t>> words_up_to(int d) const {
        std::vector<std::vector<std::size_t>> out;
        const auto letters = pres_.letters();
        std::vector<std::size_t> w;
        std::function<void(int)> rec = [&](int left) {
            out.push_back(w);
            if (left == 0) return;
            for (std::size_t l : letters) {
                w.push_back(l);
                rec(left - 1);
                w.pop_back();
            }
        };
        rec(d);
        return out;
    }

    const AlgElem& word_elem(const std::vector<std::size_t>& w) {
        auto it = word_cache_.find(w);
        if (it != word_cache_.end()) return it->second;
        AlgElem x;
        if (w.empty()) {
            x = pres_.uq->one();
        } else {
            std::vector<std::size_t> head(w.begin(), w.end() - 1);
            x = pres_.uq->multiply(word_elem(head), pres_.generators[w.back()].elem);
        }
        return word_cache_.emplace(w, std::move(x)).first->second;
    }

    const AlgElem& elem(const IWord& w) {
        auto key = std::make_pair(w.k, w.letters);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        AlgElem x = pres_.uq->multiply(pres_.uq->K(w.k), word_elem(w.letters));
        return cache_.emplace(key, std::move(x)).first->second;
    }

    std::optional<ICombination> solve(const std::vector<IWord>& cands, const AlgElem& target) {
        std::vector<const AlgElem*> cols;
        std::map<Mono, std::size_t> index;
        for (const auto& c : cands) cols.push_back(&elem(c));
        for (const auto* c : cols)
            for (const auto& [m, v] : c->terms()) index.emplace(m, 0);
        for (const auto& [m, v] : target.terms())
            if (!index.count(m)) return std::nullopt;  // outside every candidate's support
        std::size_t i = 0;
        for (auto& [m, k] : index) k = i++;
        const std::size_t R = index.size(), N = cols.size();
        const ModP t = default_modp_point();
        std::vector<std::vector<ModP>> rows(R, std::vector<ModP>(N + 1));
        try {
            for (std::size_t c = 0; c < N; ++c)
                for (const auto& [m, v] : cols[c]->terms()) rows[index.at(m)][c] = v.specialize_mod(t);
            for (const auto& [m, v] : target.terms()) rows[index.at(m)][N] = v.specialize_mod(t);
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
        ModpEchelon ech = modp_echelon(rows);
        if (std::find(ech.pivot_cols.begin(), ech.pivot_cols.end(), N) != ech.pivot_cols.end()) return std::nullopt;
        const std::size_t P = ech.pivot_cols.size();
        std::vector<Mono> row_mono(R);
        for (const auto& [m, k] : index) row_mono[k] = m;
        Matrix A(P, P);
        Vec b(P);
        for (std::size_t a = 0; a < P; ++a) {
            const Mono& m = row_mono[ech.pivot_rows[a]];
            for (std::size_t c = 0; c < P; ++c) {
                auto it = cols[ech.pivot_cols[c]]->terms().find(m);
                if (it != cols[ech.pivot_cols[c]]->terms().end()) A(a, c) = it->second;
            }
            auto it = target.terms().find(m);
            if (it != target.terms().end()) b[a] = it->second;
        }
        auto x = qdouble::solve(A, b);
        if (!x) return std::nullopt;
        ICombination comb;
        AlgElem check;
        for (std::size_t c = 0; c < P; ++c) {
            if ((*x)[c].is_zero()) continue;
            comb.terms.emplace_back((*x)[c], cands[ech.pivot_cols[c]]);
            check += cols[ech.pivot_cols[c]]->scaled((*x)[c]);
        }
        if (!(check == target)) return std::nullopt;
        return comb;
    }
};

}  // namespace

std::optional<ICombination> express_in_coideal(const CoidealPresentation& pres, const AlgElem& x, int d) {
    Expresser ex(pres);
    return ex.express(x, d);
}

std::vector<MembershipCertificate> check_left_coideal(const CoidealPresentation& pres, int d) {
    const Uq& u = *pres.uq;
    Expresser ex(pres);
    std::vector<MembershipCertificate> out;
    for (const auto& g : pres.generators) {
        MembershipCertificate cert;
        cert.generator = g.label;
        std::map<Mono, AlgElem> legs;
        try {
            const TensorElem dg = u.coproduct(g.elem);
            for (const auto& [ms, c] : dg.terms()) legs[ms[0]].add(ms[1], c);
            cert.status = CheckStatus::Pass;
            for (const auto& [left, right] : legs) {
                auto comb = ex.express(right, d);
                if (!comb) {
                    cert.status = CheckStatus::Undecided;
                    cert.detail = "right leg at " + u.to_string(left) + " ⊗ (" + u.to_string(right) +
                                  ") not in the span of coideal words of degree <= " + std::to_string(d);
                    cert.legs.clear();
                    break;
                }
                cert.legs.emplace_back(left, std::move(*comb));
            }
        } catch (const UndecidedError& e) {
            cert.status = CheckStatus::Undecided;
            cert.detail = e.what();
            cert.legs.clear();
        }
        out.push_back(std::move(cert));
    }
    return out;
}

std::vector<MembershipCertificate> check_star_closed(const CoidealPresentation& pres, int d) {
    const Uq& u = *pres.uq;
    Expresser ex(pres);
    std::vector<MembershipCertificate> out;
    for (const auto& g : pres.generators) {
        MembershipCertificate cert;
        cert.generator = g.label;
        try {
            AlgElem s = u.star(g.elem);
            auto comb = ex.express(s, d);
            if (comb) {
                cert.status = CheckStatus::Pass;
                cert.legs.emplace_back(Mono{}, std::move(*comb));
            } else {
                cert.status = CheckStatus::Undecided;
                cert.detail = g.label + "* = " + u.to_string(s) + " not in the span of coideal words of degree <= " +
                              std::to_string(d);
            }
        } catch (const UndecidedError& e) {
            cert.status = CheckStatus::Undecided;
            cert.detail = e.what();
        }
        out.push_back(std::move(cert));
    }
    return out;
}

std::string to_string(const CoidealPresentation& pres, const MembershipCertificate& c) {
    std::string s;
    for (std::size_t i = 0; i < c.legs.size(); ++i) {
        const auto& [left, comb] = c.legs[i];
        if (i) s += " + ";
        if (left == Mono{}) {
            if (c.legs.size() == 1) {
                s += to_string(pres, comb);
                continue;
            }
            s += "1 ⊗ (" + to_string(pres, comb) + ")";
        } else {
            s += pres.uq->to_string(left) + " ⊗ (" + to_string(pres, comb) + ")";
        }
    }
    return s;
}

std::vector<Vec> invariant_vectors(const Rep& rep, const CoidealPresentation& pres) {
    const std::size_t n = rep.dim();
    Matrix stacked(n * pres.generators.size(), n);
    for (std::size_t g = 0; g < pres.generators.size(); ++g) {
        Matrix m = evaluate(pres.generators[g].elem, rep) - Matrix::identity(n).scaled(pres.counit(g));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) stacked(g * n + i, j) = m(i, j);
    }
    return nullspace(stacked);
}

std::vector<Matrix> image_subalgebra(const Rep& rep, const CoidealPresentation& pres) {
    const std::size_t n = rep.dim();
    auto flat = [n](const Matrix& m) {
        Vec v(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v[i * n + j] = m(i, j);
        return v;
    };
    std::vector<Matrix> gens;
    for (const auto& g : pres.generators) gens.push_back(evaluate(g.elem, rep));
    SpanBuilder span(n * n);
    std::vector<Matrix> basis;
    auto push = [&](const Matrix& m) {
        if (span.add(flat(m))) basis.push_back(m);
    };
    push(Matrix::identity(n));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& g : gens) push(basis[i] * g);
    return basis;
}

}  // namespace qdouble
