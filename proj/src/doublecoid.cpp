#include "qdouble/doublecoid.hpp"

#include "cqg_detail.hpp"
#include "qdouble/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qdouble {

using namespace detail;

DblElem& DblElem::operator+=(const DblElem& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
}

DblElem DblElem::scaled(const Scalar& c) const {
    DblElem out;
    if (c.is_zero()) return out;
    for (const auto& [b, u] : terms) out.terms.emplace_back(b, u.scaled(c));
    return out;
}

namespace {

Vec flatten(const Matrix& m) {
    Vec v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

/// Span of words in the generators acting on a direct sum; gens[g][b] is generator g on block b.
struct Closure {
    std::vector<std::vector<Matrix>> blocks;
    std::vector<std::vector<std::size_t>> words;
};

Closure closure(const std::vector<std::vector<Matrix>>& gens, const std::vector<std::size_t>& dims) {
    std::size_t total = 0;
    for (auto n : dims) total += n * n;
    SpanBuilder span(total);
    Closure out;
    auto push = [&](std::vector<Matrix> m, std::vector<std::size_t> w) {
        Vec flat;
        for (const auto& b : m) {
            Vec f = flatten(b);
            flat.insert(flat.end(), f.begin(), f.end());
        }
        if (span.add(flat)) {
            out.blocks.push_back(std::move(m));
            out.words.push_back(std::move(w));
        }
    };
    std::vector<Matrix> id;
    for (auto n : dims) id.push_back(Matrix::identity(n));
    push(std::move(id), {});
    for (std::size_t i = 0; i < out.blocks.size(); ++i)
        for (std::size_t g = 0; g < gens.size(); ++g) {
            std::vector<Matrix> m;
            for (std::size_t b = 0; b < dims.size(); ++b) m.push_back(out.blocks[i][b] * gens[g][b]);
            auto w = out.words[i];
            w.push_back(g);
            push(std::move(m), std::move(w));
        }
    return out;
}

/// Product of generator matrices along a word, exactly.
Matrix word_matrix(const std::vector<Matrix>& gens, const std::vector<std::size_t>& w, std::size_t n) {
    Matrix m = Matrix::identity(n);
    for (std::size_t g : w) m = m * gens[g];
    return m;
}

std::vector<std::string> u_generator_names(const Uq& u) {
    std::vector<std::string> out;
    for (int r = 0; r < u.rank(); ++r) {
        out.push_back("E" + std::to_string(r + 1));
        out.push_back("F" + std::to_string(r + 1));
    }
    for (const auto& w : u.datum().lattice_basis()) {
        std::string s = "K[";
        for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
        out.push_back(s + "]");
    }
    return out;
}

std::vector<Matrix> u_generator_matrices(const Uq& u, const Rep& r) {
    std::vector<Matrix> out;
    for (int i = 0; i < u.rank(); ++i) {
        out.push_back(r.E[i]);
        out.push_back(r.F[i]);
    }
    for (const auto& w : u.datum().lattice_basis()) out.push_back(r.K(w));
    return out;
}

std::string word_name(const std::vector<std::string>& names, const std::vector<std::size_t>& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "·" : "") + names[w[i]];
    return s;
}

/// Nonzero entries of N = η(Gξ)ᵀ flattened; U(ξ,η)(x) = Σ π(x)_{ji} N_{ij}.
std::vector<std::pair<std::size_t, Scalar>> sparse_coeff(const CqgAlgebra& A, const ACoeff& c) {
    std::vector<std::pair<std::size_t, Scalar>> out;
    const std::size_t n = c.eta.size();
    const Matrix& g = A.rep(c.label)->gram;
    Vec xg(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (c.xi[k].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!g(k, j).is_zero()) xg[j] += c.xi[k] * g(k, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (c.eta[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!xg[j].is_zero()) out.emplace_back(i * n + j, c.eta[i] * xg[j]);
    }
    return out;
}

/// Pairing vector of a matrix X against the layout of sparse_coeff.
Vec pairing_vector(const Matrix& x) { return flatten(x.transpose()); }

/// Right translation b ◁ x = U(ξ, π(x)η).
AElem act_right(const CqgAlgebra& A, const AElem& a, const AlgElem& x) {
    AElem out;
    std::map<RepLabel, Matrix> cache;
    for (const auto& t : a.terms) {
        auto it = cache.find(t.label);
        if (it == cache.end()) it = cache.emplace(t.label, evaluate(x, *A.rep(t.label))).first;
        Vec eta = it->second * t.eta;
        if (!is_zero(eta)) out.terms.push_back(ACoeff{t.label, t.xi, std::move(eta)});
    }
    return out;
}

/// Δ(u) grouped by the left monomial.
std::map<Mono, AlgElem> coproduct_by_left(const Uq& u, const AlgElem& x) {
    std::map<Mono, AlgElem> out;
    const TensorElem dx = u.coproduct(x);
    for (const auto& [m, c] : dx.terms()) out[m[0]].add(m[1], c);
    return out;
}

/// B-legs collected per U-leg monomial.
std::map<Mono, AElem> collect(const DblElem& x) {
    std::map<Mono, AElem> out;
    for (const auto& [b, u] : x.terms)
        for (const auto& [m, c] : u.terms()) out[m] += b.scaled(c);
    return out;
}

}  // namespace

DblElem dbl_multiply(const CqgAlgebra& A, const DblElem& x, const DblElem& y, int d) {
    const Uq& u = A.uq();
    DblElem out;
    for (const auto& [b, ux] : x.terms) {
        const auto groups = coproduct_by_left(u, ux);
        for (const auto& [b2, uy] : y.terms)
            for (const auto& [m1, right] : groups) {
                AElem moved = act_right(A, b2, AlgElem(m1, Scalar(1)));
                if (moved.terms.empty()) continue;
                AlgElem leg = u.multiply(right, uy);
                if (leg.is_zero()) continue;
                if (leg.degree() > d)
                    throw UndecidedError("dbl_multiply: U-leg of degree " + std::to_string(leg.degree()) +
                                         " exceeds the bound " + std::to_string(d));
                out.terms.emplace_back(A.product(b, moved), std::move(leg));
            }
    }
    return out;
}

DblElem dbl_star(const CqgAlgebra& A, const DblElem& x, int d) {
    const Uq& u = A.uq();
    DblElem out;
    for (const auto& [b, ux] : x.terms)
        out += dbl_multiply(A, DblElem::from_I(u.star(ux), A), DblElem::from_B(A.star(b), u), d);
    return out;
}

bool dbl_equal(const CqgAlgebra& A, const DblElem& x, const DblElem& y) {
    auto cx = collect(x);
    for (auto& [m, b] : collect(y)) cx[m] += b.scaled(Scalar(-1));
    for (const auto& [m, b] : cx)
        if (!A.is_zero(b)) return false;
    return true;
}

NormalFormCertificate certify_normal_form(const CqgAlgebra& A, const CoidealPresentation& pres, const DblElem& x, int d,
                                          int d_b) {
    NormalFormCertificate cert;
    std::vector<AlgElem> seen;
    for (const auto& [b, ux] : x.terms) {
        if (cert.b_legs && !check_homspace_member(A, pres, b, d_b)) {
            cert.b_legs = false;
            cert.detail += "B-leg outside the coset space; ";
        }
        if (std::find(seen.begin(), seen.end(), ux) != seen.end()) continue;
        seen.push_back(ux);
        auto comb = express_in_coideal(pres, ux, d);
        if (!comb) {
            cert.i_legs = false;
            cert.detail += "no coideal word expression for " + A.uq().to_string(ux) + "; ";
            continue;
        }
        cert.i_certificates.emplace_back(ux, std::move(*comb));
    }
    return cert;
}

bool ac_equal(const CqgAlgebra& A, const CoidealPresentation& pres, const ACTensor& x, const ACTensor& y,
              std::string* witness) {
    // structural pass: Σ N_l ⊗ N_r per label pair, sparse
    using Key = std::pair<RepLabel, RepLabel>;
    using Sparse = std::map<std::pair<std::size_t, std::size_t>, Scalar>;
    std::map<Key, Sparse> acc;
    auto add = [&](const ACTensor& t, const Scalar& s) {
        for (const auto& [l, r] : t.terms) {
            const auto nl = sparse_coeff(A, l), nr = sparse_coeff(A, r);
            if (nl.empty() || nr.empty()) continue;
            Sparse& target = acc[{l.label, r.label}];
            for (const auto& [i, x] : nl) {
                const Scalar c = x * s;
                for (const auto& [j, y] : nr) target[{i, j}] += c * y;
            }
        }
    };
    add(x, Scalar(1));
    add(y, Scalar(-1));
    for (auto it = acc.begin(); it != acc.end();) {
        Sparse& sp = it->second;
        for (auto e = sp.begin(); e != sp.end();) e = e->second.is_zero() ? sp.erase(e) : std::next(e);
        it = sp.empty() ? acc.erase(it) : std::next(it);
    }
    if (acc.empty()) return true;

    // functional test: U-words on the left legs, coideal words on the right legs
    std::vector<RepLabel> lefts, rights;
    for (const auto& [k, m] : acc) {
        if (std::find(lefts.begin(), lefts.end(), k.first) == lefts.end()) lefts.push_back(k.first);
        if (std::find(rights.begin(), rights.end(), k.second) == rights.end()) rights.push_back(k.second);
    }
    const Uq& u = A.uq();
    std::vector<std::size_t> ldims, rdims;
    std::vector<std::vector<Matrix>> lgens, rgens;
    for (const auto& l : lefts) {
        auto r = A.rep(l);
        ldims.push_back(r->dim());
        auto g = u_generator_matrices(u, *r);
        lgens.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) lgens[i].push_back(std::move(g[i]));
    }
    rgens.resize(pres.generators.size());
    for (const auto& l : rights) {
        auto r = A.rep(l);
        rdims.push_back(r->dim());
        for (std::size_t i = 0; i < pres.generators.size(); ++i) rgens[i].push_back(evaluate(pres.generators[i].elem, *r));
    }
    std::vector<std::string> inames;
    for (const auto& g : pres.generators) inames.push_back(g.label);
    const auto unames = u_generator_names(u);
    auto exact_entry = [&](const std::vector<std::size_t>& wl, const std::vector<std::size_t>& wr) {
        Scalar v;
        for (const auto& [k, sp] : acc) {
            const std::size_t bl = std::find(lefts.begin(), lefts.end(), k.first) - lefts.begin();
            const std::size_t br = std::find(rights.begin(), rights.end(), k.second) - rights.begin();
            std::vector<Matrix> lg, rg;
            for (const auto& g : lgens) lg.push_back(g[bl]);
            for (const auto& g : rgens) rg.push_back(g[br]);
            const Vec x = pairing_vector(word_matrix(lg, wl, ldims[bl]));
            const Vec y = pairing_vector(word_matrix(rg, wr, rdims[br]));
            for (const auto& [ij, c] : sp) v += c * x[ij.first] * y[ij.second];
        }
        return v;
    };
    auto report = [&](const std::vector<std::size_t>& wl, const std::vector<std::size_t>& wr, const Scalar& v) {
        if (witness)
            *witness = "pairings differ on " + word_name(unames, wl) + " ⊗ " + word_name(inames, wr) + " by " + v.to_string();
        return false;
    };

    // a nonzero pairing at q = t is nonzero as a rational function
    try {
        const ModP t = default_modp_point();
        const PClosure lc = closure_modp(lgens, ldims, t), rc = closure_modp(rgens, rdims, t);
        std::vector<PVec> D(lc.blocks.size(), PVec(rc.blocks.size()));
        for (const auto& [k, sp] : acc) {
            const std::size_t bl = std::find(lefts.begin(), lefts.end(), k.first) - lefts.begin();
            const std::size_t br = std::find(rights.begin(), rights.end(), k.second) - rights.begin();
            const std::size_t nl = ldims[bl], nr = rdims[br];
            for (const auto& [ij, c] : sp) {
                const ModP cm = c.specialize_mod(t);
                // pairing_vector is the transpose, flattened
                const std::size_t li = (ij.first % nl) * nl + ij.first / nl, ri = (ij.second % nr) * nr + ij.second / nr;
                for (std::size_t a = 0; a < lc.blocks.size(); ++a) {
                    const ModP xa = lc.blocks[a][bl][li];
                    if (xa.is_zero()) continue;
                    const ModP ca = cm * xa;
                    for (std::size_t b = 0; b < rc.blocks.size(); ++b) D[a][b] += ca * rc.blocks[b][br][ri];
                }
            }
        }
        for (std::size_t a = 0; a < D.size(); ++a)
            for (std::size_t b = 0; b < D[a].size(); ++b)
                if (!D[a][b].is_zero()) return report(lc.words[a], rc.words[b], exact_entry(lc.words[a], rc.words[b]));
    } catch (const std::domain_error&) {
    }

    const Closure lc = closure(lgens, ldims), rc = closure(rgens, rdims);
    Matrix D(lc.blocks.size(), rc.blocks.size());
    for (const auto& [k, sp] : acc) {
        const std::size_t bl = std::find(lefts.begin(), lefts.end(), k.first) - lefts.begin();
        const std::size_t br = std::find(rights.begin(), rights.end(), k.second) - rights.begin();
        std::vector<Vec> xs, ys;
        for (const auto& blk : lc.blocks) xs.push_back(pairing_vector(blk[bl]));
        for (const auto& blk : rc.blocks) ys.push_back(pairing_vector(blk[br]));
        for (const auto& [ij, c] : sp)
            for (std::size_t a = 0; a < xs.size(); ++a) {
                if (xs[a][ij.first].is_zero()) continue;
                const Scalar ca = c * xs[a][ij.first];
                for (std::size_t b = 0; b < ys.size(); ++b)
                    if (!ys[b][ij.second].is_zero()) D(a, b) += ca * ys[b][ij.second];
            }
    }
    for (std::size_t a = 0; a < D.rows(); ++a)
        for (std::size_t b = 0; b < D.cols(); ++b)
            if (!D(a, b).is_zero()) return report(lc.words[a], rc.words[b], D(a, b));
    return true;
}

namespace {

std::string weight_str(const IWeight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

/// Rank of v ↦ b·(v ◁ y) over the generators b and a basis y of π_μ(I), for one carrier block μ.
std::size_t block_operator_rank(const CqgAlgebra& A, const CoidealPresentation& pres, const std::vector<AElem>& bs,
                                const IWeight& mu, std::size_t& expected) {
    const RepLabel lm{{mu, false}};
    auto rm = A.rep(lm);
    const std::size_t n = rm->dim();
    const std::vector<Matrix> ys = image_subalgebra(*rm, pres);
    expected += bs.size() * ys.size();

    std::vector<RepLabel> labels;
    for (const auto& b : bs) {
        RepLabel l = b.terms.at(0).label;
        l.push_back(lm[0]);
        if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
    std::vector<std::size_t> dims;
    std::vector<std::vector<Matrix>> gens;
    std::vector<PVec> grams;
    const ModP t = default_modp_point();
    for (const auto& l : labels) {
        auto r = A.rep(l);
        dims.push_back(r->dim());
        grams.push_back(specialize_flat(r->gram, t));
        auto g = u_generator_matrices(A.uq(), *r);
        gens.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) gens[i].push_back(std::move(g[i]));
    }
    // U(ξ,η) pairs with a word X to Σ_ij η_i (ξᵀG)_j X_ji
    auto pair_all = [&](const PClosure& cl, const ACoeff& c, std::vector<ModP>& vals) {
        const std::size_t li = std::find(labels.begin(), labels.end(), c.label) - labels.begin();
        const std::size_t N = dims[li];
        const PVec xi = specialize_vec(c.xi, t), eta = specialize_vec(c.eta, t);
        PVec xg(N);
        for (std::size_t k = 0; k < N; ++k) {
            if (xi[k].is_zero()) continue;
            for (std::size_t j = 0; j < N; ++j) xg[j] += xi[k] * grams[li][k * N + j];
        }
        for (std::size_t a = 0; a < cl.blocks.size(); ++a) {
            const PVec& X = cl.blocks[a][li];
            ModP s(0);
            for (std::size_t i = 0; i < N; ++i) {
                if (eta[i].is_zero()) continue;
                ModP r(0);
                for (std::size_t j = 0; j < N; ++j) r += xg[j] * X[j * N + i];
                s += eta[i] * r;
            }
            vals[a] += s;
        }
    };

    // any subset of test words bounds the rank from below; grow it until the rank is full
    const Matrix& gi = A.gram_inverse(lm);
    const std::size_t need = bs.size() * ys.size();
    std::size_t limit = need / (n * n) + 4;
    for (;;) {
        const PClosure cl = closure_modp(gens, dims, t, limit);
        std::vector<std::vector<ModP>> rows;
        for (const auto& b : bs)
            for (const auto& y : ys) {
                std::vector<ModP> row;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        const ACoeff v{lm, gi.column(i), y * unit_vec(n, j)};
                        std::vector<ModP> vals(cl.blocks.size());
                        for (const auto& term : b.terms) pair_all(cl, A.product(term, v), vals);
                        row.insert(row.end(), vals.begin(), vals.end());
                    }
                rows.push_back(std::move(row));
            }
        const std::size_t r = rows.empty() ? 0 : modp_rank(std::move(rows));
        if (r == need || cl.blocks.size() < limit) return r;
        limit *= 2;
    }
}

}  // namespace

DKModule build_dk_module(std::shared_ptr<const CqgAlgebra> Ap, const CoidealPresentation& pres, long h, long b_height) {
    const RootDatum& D = Ap->datum();
    DKModule m =
        build_dk_module(Ap, pres, D.dominant_weights_up_to(h), D.dominant_weights_up_to(b_height < 0 ? h : b_height));
    m.height = h;
    m.b_height = b_height < 0 ? h : b_height;
    return m;
}

DKModule build_dk_module(std::shared_ptr<const CqgAlgebra> Ap, const CoidealPresentation& pres,
                         const std::vector<IWeight>& lams, const std::vector<IWeight>& b_weights) {
    const CqgAlgebra& A = *Ap;
    long h = 0, hb = 0;
    for (const auto& l : lams) h = std::max(h, RootDatum::height(l));
    for (const auto& l : b_weights) hb = std::max(hb, RootDatum::height(l));
    DKModule m(Ap, pres, h);
    m.b_height = hb;
    for (const auto& lam : lams) {
        const std::size_t n = A.rep({{lam, false}})->dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                m.carrier.push_back(A.unit_coeff(lam, i, j));
                m.carrier_names.push_back("u" + weight_str(lam) + "[" + std::to_string(i) + "," + std::to_string(j) + "]");
            }
    }
    for (const auto& lam : b_weights) {
        auto bs = homspace_B(A, lam, pres);
        for (std::size_t k = 0; k < bs.size(); ++k) {
            m.b_names.push_back("b" + weight_str(lam) + "[" + std::to_string(k) + "]");
            m.delta_B.push_back(A.coproduct(bs[k]));
            m.b_generators.push_back(std::move(bs[k]));
        }
    }
    const std::size_t n = m.carrier.size();
    m.gram = Matrix(n, n);
    std::vector<AElem> stars;
    for (const auto& a : m.carrier) stars.push_back(A.star(a));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.gram(i, j) = A.haar(A.product(stars[i], m.carrier[j]));
    for (const auto& lam : lams)
        m.faithful_rank += block_operator_rank(A, pres, m.b_generators, lam, m.faithful_expected);
    return m;
}

void perturb_delta_B(DKModule& m, std::size_t gen, std::size_t term, std::size_t entry, const Scalar& delta) {
    m.delta_B.at(gen).terms.at(term).second.eta.at(entry) += delta;
}

std::pair<std::size_t, std::size_t> delta_B_shape(const DKModule& m, std::size_t gen) {
    const auto& t = m.delta_B.at(gen).terms;
    return {t.size(), t.empty() ? 0 : t[0].second.eta.size()};
}

DKReport verify_dk_compat(const DKModule& m, bool stop_at_first, std::optional<std::size_t> only_gen) {
    const CqgAlgebra& A = *m.A;
    DKReport rep;
    std::vector<ATensor> dv;
    for (const auto& v : m.carrier) dv.push_back(A.coproduct(v));
    for (std::size_t g = 0; g < m.b_generators.size(); ++g) {
        if (only_gen && *only_gen != g) continue;
        for (std::size_t v = 0; v < m.carrier.size(); ++v) {
            ++rep.checked;
            ACTensor lhs, rhs;
            lhs.terms = A.coproduct(A.product(m.b_generators[g], m.carrier[v])).terms;
            for (const auto& [b0, b1] : m.delta_B[g].terms)
                for (const auto& [v0, v1] : dv[v].terms) rhs.terms.emplace_back(A.product(b0, v0), A.product(b1, v1));
            std::string w;
            if (!ac_equal(A, m.pres, lhs, rhs, &w)) {
                rep.pass = false;
                rep.failures.push_back(m.b_names[g] + " on " + m.carrier_names[v] + ": " + w);
                if (stop_at_first) return rep;
            }
        }
    }
    return rep;
}

CorrespondenceReport double_rep_correspondence(const DKModule& m, double q0, double precision) {
    const CqgAlgebra& A = *m.A;
    const Uq& u = A.uq();
    CorrespondenceReport rep;
    int d = 0;
    for (const auto& g : m.pres.generators) d = std::max(d, g.degree);
    d = 2 * d + 2;
    auto fail = [&](bool& flag, std::string what) {
        flag = false;
        rep.failures.push_back(std::move(what));
    };

    for (std::size_t v = 0; v < m.carrier.size(); ++v) {
        ++rep.checked;
        const AElem& a = m.carrier[v];
        if (!A.equal(A.product(A.one(), a), a) || !A.equal(act_right(A, a, u.one()), a))
            fail(rep.identity, "identity on " + m.carrier_names[v]);
    }

    for (std::size_t x = 0; x < m.pres.generators.size(); ++x) {
        const auto& gx = m.pres.generators[x];
        for (std::size_t g = 0; g < m.b_generators.size(); ++g) {
            const AElem& b = m.b_generators[g];
            const DblElem prod = dbl_multiply(A, DblElem::from_I(gx.elem, A), DblElem::from_B(b, u), d);
            for (std::size_t v = 0; v < m.carrier.size(); ++v) {
                ++rep.checked;
                const AElem lhs = act_right(A, A.product(b, m.carrier[v]), gx.elem);
                AElem rhs;
                for (const auto& [bi, ui] : prod.terms) rhs += A.product(bi, act_right(A, m.carrier[v], ui));
                if (!A.equal(lhs, rhs)) fail(rep.interchange, gx.label + " past " + m.b_names[g] + " on " + m.carrier_names[v]);
            }
        }
    }

    std::vector<AElem> stars;
    for (const auto& a : m.carrier) stars.push_back(A.star(a));
    for (std::size_t g = 0; g < m.b_generators.size(); ++g) {
        const AElem& b = m.b_generators[g];
        const AElem bs = A.star(b);
        for (std::size_t v = 0; v < m.carrier.size(); ++v)
            for (std::size_t w = 0; w < m.carrier.size(); ++w) {
                ++rep.checked;
                const Scalar lhs = A.haar(A.product(A.star(A.product(b, m.carrier[v])), m.carrier[w]));
                const Scalar rhs = A.haar(A.product(stars[v], A.product(bs, m.carrier[w])));
                if (lhs != rhs) fail(rep.star_b, m.b_names[g] + " between " + m.carrier_names[v] + ", " + m.carrier_names[w]);
            }
    }
    for (const auto& gx : m.pres.generators) {
        const AlgElem xs = u.star(gx.elem);
        for (std::size_t v = 0; v < m.carrier.size(); ++v) {
            const AElem vx = A.star(act_right(A, m.carrier[v], gx.elem));
            for (std::size_t w = 0; w < m.carrier.size(); ++w) {
                ++rep.checked;
                const Scalar lhs = A.haar(A.product(vx, m.carrier[w]));
                const Scalar rhs = A.haar(A.product(stars[v], act_right(A, m.carrier[w], xs)));
                if (lhs != rhs) fail(rep.star_i, gx.label + " between " + m.carrier_names[v] + ", " + m.carrier_names[w]);
            }
        }
    }

    try {
        const RestrictedDual rd = restricted_dual(A, m.pres, A.datum().dominant_weights_up_to(m.height), q0, precision);
        rep.idempotent_residual = rd.residual;
        if (rd.residual > std::sqrt(precision)) fail(rep.nondegenerate, "idempotent residual above tolerance");
    } catch (const std::runtime_error& e) {
        fail(rep.nondegenerate, e.what());
    }
    return rep;
}

namespace {

/// Coordinates of m in the block basis.
Vec block_coords(const CBlock& c, const Matrix& m) {
    std::vector<Vec> cols;
    for (const auto& b : c.basis) cols.push_back(flatten(b));
    const Vec fm = flatten(m);
    auto x = solve(Matrix::from_columns(cols, fm.size()), fm);
    if (!x) throw std::logic_error("BlockComodule: element outside π(I)");
    return *x;
}

}  // namespace

BlockComodule row_comodule(const CBlock& c) {
    BlockComodule m{true, &c, c.rep->dim(), {}};
    m.act = c.basis;
    return m;
}

BlockComodule column_comodule(const CBlock& c) {
    BlockComodule m{false, &c, c.rep->dim(), {}};
    const Rep& r = *c.rep;
    const Matrix gi = inverse(r.gram);
    for (const auto& b : c.basis) m.act.push_back(gi * b.transpose() * r.gram);
    return m;
}

BlockComodule regular_right(const CBlock& c) {
    const std::size_t n = c.dim();
    BlockComodule m{true, &c, n, {}};
    for (std::size_t k = 0; k < n; ++k) {
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec x = block_coords(c, c.basis[i] * c.basis[k]);
            for (std::size_t j = 0; j < n; ++j) a(i, j) = x[j];
        }
        m.act.push_back(std::move(a));
    }
    return m;
}

BlockComodule regular_left(const CBlock& c) {
    const std::size_t n = c.dim();
    BlockComodule m{false, &c, n, {}};
    for (std::size_t k = 0; k < n; ++k) {
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec x = block_coords(c, c.basis[k] * c.basis[i]);
            for (std::size_t j = 0; j < n; ++j) a(i, j) = x[j];
        }
        m.act.push_back(std::move(a));
    }
    return m;
}

BlockComodule trivial_right(const CBlock& c, const CoidealPresentation& pres) {
    const Rep& r = *c.rep;
    const auto inv = invariant_vectors(r, pres);
    if (inv.empty()) throw std::invalid_argument("trivial_right: V(λ) has no invariant vector");
    const Vec& xi = inv[0];
    const Vec xg = row_times(xi, r.gram);
    const Scalar norm = dot(xg, xi);
    BlockComodule m{true, &c, 1, {}};
    for (const auto& b : c.basis) {
        Matrix a(1, 1);
        a(0, 0) = dot(xg, b * xi) / norm;
        m.act.push_back(std::move(a));
    }
    return m;
}

std::vector<Vec> cotensor(const BlockComodule& M, const BlockComodule& N) {
    if (!M.right || N.right) throw std::invalid_argument("cotensor: needs a right and a left comodule");
    if (!M.block || !N.block || M.block->lambda != N.block->lambda || M.act.size() != N.act.size())
        throw std::invalid_argument("cotensor: comodules over different coalgebras");
    const std::size_t dm = M.dim, dn = N.dim, n = dm * dn;
    const Matrix im = Matrix::identity(dm), in = Matrix::identity(dn);
    Matrix stacked(n * M.act.size(), n);
    for (std::size_t k = 0; k < M.act.size(); ++k) {
        const Matrix d = kron(M.act[k], in) - kron(im, N.act[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) stacked(k * n + i, j) = d(i, j);
    }
    return nullspace(stacked);
}

namespace {

/// x ∈ U_q(sl_2) placed on one tensor copy of U_q(sl_2 ⊕ sl_2).
AlgElem embed_copy(const Uq& u2, const AlgElem& x, int copy) {
    AlgElem out;
    for (const auto& [m, c] : x.terms()) {
        IWeight w(2, 0);
        if (!m.k.empty()) w[copy] = m.k[0];
        AlgElem t = u2.one();
        for (std::size_t i = 0; i < m.f.size(); ++i) t = u2.multiply(t, u2.F(copy));
        t = u2.multiply(t, u2.K(w));
        for (std::size_t i = 0; i < m.e.size(); ++i) t = u2.multiply(t, u2.E(copy));
        out += t.scaled(c);
    }
    return out;
}

/// κ(K) = K⁻¹, κ(E) = −qF, κ(F) = −q⁻¹E: an involutive algebra automorphism.
AlgElem kappa(const Uq& u, const AlgElem& x) {
    const Scalar q = Scalar::q_power(1);
    const AlgElem ke = u.F(0).scaled(-q), kf = u.E(0).scaled(-q.inverse());
    AlgElem out;
    for (const auto& [m, c] : x.terms()) {
        AlgElem t = u.one();
        for (std::size_t i = 0; i < m.f.size(); ++i) t = u.multiply(t, kf);
        t = u.multiply(t, u.K(-m.k));
        for (std::size_t i = 0; i < m.e.size(); ++i) t = u.multiply(t, ke);
        out += t.scaled(c);
    }
    return out;
}

/// ι = (id⊗κ)Δ.
AlgElem iota(const Uq& u1, const Uq& u2, const AlgElem& x) {
    AlgElem out;
    const TensorElem dx = u1.coproduct(x);
    for (const auto& [m, c] : dx.terms())
        out += u2.multiply(embed_copy(u2, AlgElem(m[0], c), 0), embed_copy(u2, kappa(u1, AlgElem(m[1], Scalar(1))), 1));
    return out;
}

AlgElem antipode_inverse(const Uq& u, const AlgElem& x) { return u.star(u.antipode(u.star(x))); }

}  // namespace

DiagonalReport diagonal_double_check(int d) {
    DiagonalReport rep;
    auto d1 = std::make_shared<const RootDatum>(RootDatum::build("A", 1, "P"));
    auto u1 = std::make_shared<const Uq>(d1);
    auto d2 = std::make_shared<const RootDatum>(RootDatum::build("D", 2, "P"));
    auto u2 = std::make_shared<const Uq>(d2);
    const CqgAlgebra H(u1), A(u2);
    const CoidealPresentation pres = coideal_generators(u2, SatakeDiagram(d2, {}, {1, 0}), d);

    const std::vector<std::pair<std::string, AlgElem>> xs{
        {"E", u1->E(0)}, {"F", u1->F(0)}, {"K_ω", u1->K({1})}, {"K_ω⁻¹", u1->K({-1})}};
    for (const auto& [name, x] : xs)
        if (!express_in_coideal(pres, iota(*u1, *u2, x), d)) {
            rep.embedding_ok = false;
            rep.failures.push_back("ι(" + name + ") not expressed in the coideal generators");
        }

    // coset-space basis from V(a)⊗V(b), a, b ≤ 1
    std::vector<AElem> bbasis;
    for (const IWeight& lam : {IWeight{0, 0}, IWeight{1, 0}, IWeight{0, 1}, IWeight{1, 1}})
        for (auto& b : homspace_B(A, lam, pres)) bbasis.push_back(std::move(b));

    // pairing tests y⊗z with y, z ∈ {F^a K_{mω} E^c : a, c ≤ 1, |m| ≤ 1}
    std::vector<AlgElem> half;
    for (int a = 0; a <= 1; ++a)
        for (long mk = -1; mk <= 1; ++mk)
            for (int c = 0; c <= 1; ++c) {
                AlgElem t = a ? u1->F(0) : u1->one();
                t = u1->multiply(t, u1->K({mk}));
                if (c) t = u1->multiply(t, u1->E(0));
                half.push_back(std::move(t));
            }
    std::vector<AlgElem> tests, twisted;
    for (const auto& y : half)
        for (const auto& z : half) {
            tests.push_back(u2->multiply(embed_copy(*u2, y, 0), embed_copy(*u2, z, 1)));
            twisted.push_back(u1->multiply(antipode_inverse(*u1, kappa(*u1, z)), y));
        }
    Matrix sys(tests.size(), bbasis.size());
    for (std::size_t t = 0; t < tests.size(); ++t)
        for (std::size_t j = 0; j < bbasis.size(); ++j) sys(t, j) = A.pairing(bbasis[j], tests[t]);

    // Ψ(u^λ_{ij}) for λ ≤ 1
    std::map<std::tuple<long, std::size_t, std::size_t>, AElem> psi;
    for (long lam = 0; lam <= 1; ++lam) {
        const std::size_t n = H.rep({{{lam}, false}})->dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const AElem h = H.unit_coeff({lam}, i, j);
                Vec rhs;
                for (const auto& w : twisted) rhs.push_back(H.pairing(h, w));
                auto sol = solve(sys, rhs);
                AElem b;
                if (!sol) {
                    rep.b_image_ok = false;
                    rep.failures.push_back("Ψ(u" + std::to_string(lam) + "[" + std::to_string(i) + "," +
                                           std::to_string(j) + "]) outside the coset space");
                } else {
                    for (std::size_t k = 0; k < bbasis.size(); ++k)
                        if (!(*sol)[k].is_zero()) b += bbasis[k].scaled((*sol)[k]);
                }
                psi[{lam, i, j}] = std::move(b);
            }
    }
    if (!rep.b_image_ok) return rep;

    // x h = τ(S⁻¹(h_(1)), x_(3)) h_(2) x_(2) τ(h_(3), x_(1)), both sides pushed through ι and Ψ
    for (const auto& [name, x] : xs) {
        const TensorElem d2x = u1->coproduct_on_leg(u1->coproduct(x), 0);
        for (const auto& [key, b] : psi) {
            const auto [lam, i, j] = key;
            auto r = H.rep({{{lam}, false}});
            const std::size_t n = r->dim();
            ++rep.pairs;
            const DblElem lhs = dbl_multiply(A, DblElem::from_I(iota(*u1, *u2, x), A), DblElem::from_B(b, *u2), 2 * d);
            DblElem rhs;
            for (const auto& [ms, c] : d2x.terms()) {
                const Matrix p3 = evaluate(antipode_inverse(*u1, AlgElem(ms[2], Scalar(1))), *r);
                const Matrix p1 = evaluate(AlgElem(ms[0], Scalar(1)), *r);
                const AlgElem mid = iota(*u1, *u2, AlgElem(ms[1], Scalar(1)));
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        const Scalar coef = c * p3(i, k) * p1(l, j);
                        if (coef.is_zero()) continue;
                        rhs.terms.emplace_back(psi.at({lam, k, l}), mid.scaled(coef));
                    }
            }
            if (!dbl_equal(A, lhs, rhs)) {
                rep.commutation_ok = false;
                rep.failures.push_back(name + " past Ψ(u" + std::to_string(lam) + "[" + std::to_string(i) + "," +
                                       std::to_string(j) + "])");
            }
        }
    }
    return rep;
}

}  // namespace qdouble
