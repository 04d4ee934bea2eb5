#include "qdouble/repnlab.hpp"

#include "qdouble/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qdouble {

namespace {

std::string weight_str(const IWeight& w) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ")";
    return os.str();
}

Scalar q_pair(const RootDatum& d, const IWeight& a, const IWeight& b) { return Scalar::q_power(d.form(a, b)); }

struct Space {
    std::size_t dim = 0;
    std::size_t depth = 0;
    Matrix gram;
};

}  // namespace

Matrix Rep::K(const IWeight& w) const {
    Vec d(dim());
    for (std::size_t i = 0; i < dim(); ++i) d[i] = q_pair(*datum, weights[i], w);
    return Matrix::diagonal(d);
}

Rep build_irrep(std::shared_ptr<const RootDatum> datum, const IWeight& lambda, std::size_t max_dim) {
    const RootDatum& D = *datum;
    const int n = D.rank();
    if (static_cast<int>(lambda.size()) != n) throw std::invalid_argument("build_irrep: weight has wrong length");
    if (!D.is_dominant(lambda)) throw std::invalid_argument("build_irrep: weight " + weight_str(lambda) + " is not dominant");
    if (!D.in_lattice(lambda)) throw std::invalid_argument("build_irrep: weight " + weight_str(lambda) + " is not in the lattice");
    const long expected = D.weyl_dim(lambda);
    if (static_cast<std::size_t>(expected) > max_dim)
        throw std::length_error("build_irrep: dimension " + std::to_string(expected) + " exceeds cap " + std::to_string(max_dim));

    std::map<IWeight, Space> spaces;
    // local maps: E[r] at μ is W_μ → W_{μ+α_r}; F[s] at μ is W_{μ+α_s} → W_μ
    std::map<std::pair<int, IWeight>, Matrix> eloc, floc;
    std::vector<std::vector<IWeight>> layers;

    Space top;
    top.dim = 1;
    top.gram = Matrix::identity(1);
    spaces[lambda] = top;
    layers.push_back({lambda});

    auto has = [&](const IWeight& w) { return spaces.count(w) > 0; };

    for (std::size_t depth = 1;; ++depth) {
        std::set<IWeight, std::greater<>> next;
        for (const auto& mu : layers.back())
            for (int s = 0; s < n; ++s) next.insert(mu - D.alpha(s));
        std::vector<IWeight> layer;
        for (const IWeight& mu : next) {
            // candidates F_s w_j with w_j a basis vector of W_{μ+α_s}
            std::vector<std::pair<int, std::size_t>> cands;
            for (int s = 0; s < n; ++s) {
                IWeight up = mu + D.alpha(s);
                if (!has(up)) continue;
                for (std::size_t j = 0; j < spaces[up].dim; ++j) cands.emplace_back(s, j);
            }
            // image of a candidate under (E_r)_r, as a concatenated vector
            std::vector<int> targets;
            std::vector<std::size_t> offsets;
            std::size_t total = 0;
            for (int r = 0; r < n; ++r) {
                IWeight up = mu + D.alpha(r);
                if (!has(up)) continue;
                targets.push_back(r);
                offsets.push_back(total);
                total += spaces[up].dim;
            }
            std::vector<Vec> images;
            for (const auto& [s, j] : cands) {
                Vec img(total);
                const IWeight nu = mu + D.alpha(s);
                for (std::size_t t = 0; t < targets.size(); ++t) {
                    const int r = targets[t];
                    const IWeight mr = mu + D.alpha(r);
                    const IWeight top_w = nu + D.alpha(r);
                    // F_s E_r w_j
                    auto ei = eloc.find({r, nu});
                    if (ei != eloc.end() && has(top_w)) {
                        Vec er = ei->second.column(j);
                        const Matrix& fs = floc.at({s, mr});
                        Vec part = fs * er;
                        for (std::size_t k = 0; k < part.size(); ++k) img[offsets[t] + k] += part[k];
                    }
                    if (r == s) {
                        const long nr = nu[static_cast<std::size_t>(r)];
                        img[offsets[t] + j] += qint(nr, D.d(r));
                    }
                }
                images.push_back(std::move(img));
            }
            std::vector<std::size_t> chosen = independent_subset(images);
            if (chosen.empty()) continue;
            const std::size_t m = chosen.size();

            std::vector<Vec> chosen_cols;
            for (std::size_t c : chosen) chosen_cols.push_back(images[c]);
            Matrix A = Matrix::from_columns(chosen_cols, total);
            Matrix B = Matrix::from_columns(images, total);
            auto X = solve(A, B);
            if (!X) throw std::logic_error("build_irrep: candidate not in span of chosen basis");

            // F_s: W_{μ+α_s} → W_μ, from the coordinates of each candidate
            for (int s = 0; s < n; ++s) {
                IWeight up = mu + D.alpha(s);
                if (!has(up)) continue;
                Matrix fs(m, spaces[up].dim);
                for (std::size_t c = 0; c < cands.size(); ++c)
                    if (cands[c].first == s)
                        for (std::size_t i = 0; i < m; ++i) fs(i, cands[c].second) = (*X)(i, c);
                floc[{s, mu}] = std::move(fs);
            }
            // E_r: W_μ → W_{μ+α_r}, read off the images of the chosen candidates
            for (std::size_t t = 0; t < targets.size(); ++t) {
                const int r = targets[t];
                const std::size_t md = spaces[mu + D.alpha(r)].dim;
                Matrix er(md, m);
                for (std::size_t b = 0; b < m; ++b)
                    for (std::size_t k = 0; k < md; ++k) er(k, b) = images[chosen[b]][offsets[t] + k];
                eloc[{r, mu}] = std::move(er);
            }
            // ⟨F_s w, v⟩ = q^{-(μ+α_s, α_s)} ⟨w, E_s v⟩
            Matrix g(m, m);
            for (std::size_t a = 0; a < m; ++a) {
                const auto [s, j] = cands[chosen[a]];
                const IWeight nu = mu + D.alpha(s);
                const Matrix& gnu = spaces[nu].gram;
                const Matrix& es = eloc.at({s, mu});
                const Scalar f = q_pair(D, nu, D.alpha(s)).inverse();
                for (std::size_t b = 0; b < m; ++b) {
                    Scalar acc;
                    for (std::size_t k = 0; k < gnu.cols(); ++k)
                        if (!es(k, b).is_zero()) acc += gnu(j, k) * es(k, b);
                    g(a, b) = f * acc;
                }
            }
            Space sp;
            sp.dim = m;
            sp.depth = depth;
            sp.gram = std::move(g);
            spaces[mu] = std::move(sp);
            layer.push_back(mu);
        }
        if (layer.empty()) break;
        layers.push_back(std::move(layer));
    }

    Rep rep;
    rep.datum = datum;
    rep.lambda = lambda;
    std::map<IWeight, std::size_t> offset;
    for (const auto& layer : layers)
        for (const auto& mu : layer) {
            offset[mu] = rep.weights.size();
            for (std::size_t i = 0; i < spaces[mu].dim; ++i) rep.weights.push_back(mu);
        }
    const std::size_t N = rep.weights.size();
    if (static_cast<long>(N) != expected)
        throw std::logic_error("build_irrep: dimension " + std::to_string(N) + " differs from Weyl dimension " +
                               std::to_string(expected));
    rep.E.assign(static_cast<std::size_t>(n), Matrix(N, N));
    rep.F.assign(static_cast<std::size_t>(n), Matrix(N, N));
    for (const auto& [key, m] : eloc) {
        const auto& [r, mu] = key;
        const std::size_t c0 = offset.at(mu), r0 = offset.at(mu + D.alpha(r));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) rep.E[static_cast<std::size_t>(r)](r0 + i, c0 + j) = m(i, j);
    }
    for (const auto& [key, m] : floc) {
        const auto& [s, mu] = key;
        const std::size_t r0 = offset.at(mu), c0 = offset.at(mu + D.alpha(s));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) rep.F[static_cast<std::size_t>(s)](r0 + i, c0 + j) = m(i, j);
    }
    rep.gram = Matrix(N, N);
    for (const auto& [mu, sp] : spaces) {
        const std::size_t o = offset.at(mu);
        for (std::size_t i = 0; i < sp.dim; ++i)
            for (std::size_t j = 0; j < sp.dim; ++j) rep.gram(o + i, o + j) = sp.gram(i, j);
    }
    rep.t_matrix = rep.K(-(2 * D.rho()));
    return rep;
}

bool check_star_rep(const Rep& rep) { return check_star_rep(rep, rep.gram); }

bool check_star_rep(const Rep& rep, const Matrix& G) {
    const RootDatum& D = *rep.datum;
    auto adjoint_ok = [&](const Matrix& x, const Matrix& xstar) { return G * xstar == x.transpose() * G; };
    const Matrix& T = rep.t_matrix;
    const Matrix Tinv = rep.K(2 * D.rho());
    for (int r = 0; r < D.rank(); ++r) {
        const auto ur = static_cast<std::size_t>(r);
        const Matrix Ka = rep.K(D.alpha(r)), Kma = rep.K(-D.alpha(r));
        const Matrix Es = rep.F[ur] * Ka, Fs = Kma * rep.E[ur];
        if (!adjoint_ok(rep.E[ur], Es) || !adjoint_ok(rep.F[ur], Fs)) return false;
        // S²(E) = K_{-α}EK_α and S²(F) = K_{-α}FK_α
        if (Kma * rep.E[ur] * Ka != T * rep.E[ur] * Tinv) return false;
        if (Kma * rep.F[ur] * Ka != T * rep.F[ur] * Tinv) return false;
    }
    for (const auto& b : D.lattice_basis()) {
        Matrix k = rep.K(b);
        if (!adjoint_ok(k, k)) return false;
    }
    return true;
}

namespace {

using SparseVec = std::map<std::size_t, Scalar>;

// Column-sparse view of a matrix for repeated matrix-vector products.
class SparseCols {
public:
    explicit SparseCols(const Matrix& m) : cols_(m.cols()) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (std::size_t i = 0; i < m.rows(); ++i)
                if (!m(i, j).is_zero()) cols_[j].emplace_back(i, m(i, j));
    }
    SparseVec operator*(const SparseVec& v) const {
        SparseVec out;
        for (const auto& [k, y] : v)
            for (const auto& [i, x] : cols_[k]) {
                Scalar& slot = out[i];
                slot += x * y;
                if (slot.is_zero()) out.erase(i);
            }
        return out;
    }

private:
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols_;
};

}  // namespace

Matrix braid_T(const Rep& rep, int r) {
    const RootDatum& D = *rep.datum;
    const auto ur = static_cast<std::size_t>(r);
    const long d = D.d(r);
    const std::size_t N = rep.dim();
    const SparseCols E(rep.E[ur]);
    const SparseCols F(rep.F[ur]);
    std::vector<Scalar> fact{Scalar(1)};
    auto qf = [&](long k) -> Scalar {
        while (static_cast<long>(fact.size()) <= k) fact.push_back(fact.back() * qint(static_cast<long>(fact.size()), d));
        return fact[static_cast<std::size_t>(k)];
    };
    Matrix T(N, N);
    for (std::size_t i = 0; i < N; ++i) {
        const long n = rep.weights[i][ur];
        SparseVec col;
        SparseVec ec{{i, Scalar(1)}};
        for (long c = 0; !ec.empty(); ++c, ec = E * ec) {
            for (long a = std::max(0L, -(n + c));; ++a) {
                const long b = n + a + c;
                SparseVec v = ec;
                for (long k = 0; k < b && !v.empty(); ++k) v = F * v;
                if (v.empty()) break;
                for (long k = 0; k < a && !v.empty(); ++k) v = E * v;
                if (v.empty()) continue;
                Scalar coef = Scalar::q_power(mpq_class(d * (b - a * c))) / (qf(a) * qf(b) * qf(c));
                if (b % 2) coef = -coef;
                for (const auto& [k, x] : v) {
                    Scalar& slot = col[k];
                    slot += coef * x;
                    if (slot.is_zero()) col.erase(k);
                }
            }
        }
        for (const auto& [k, x] : col) T(k, i) = x;
    }
    return T;
}

namespace {

// Inverse of a matrix that maps weight spaces bijectively onto weight spaces.
Matrix blockwise_inverse(const Rep& rep, const Matrix& T) {
    const std::size_t N = rep.dim();
    std::map<IWeight, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < N; ++i) blocks[rep.weights[i]].push_back(i);
    Matrix inv(N, N);
    for (const auto& [mu, cols] : blocks) {
        std::set<std::size_t> rows;
        for (std::size_t c : cols)
            for (std::size_t i = 0; i < N; ++i)
                if (!T(i, c).is_zero()) rows.insert(i);
        if (rows.size() != cols.size()) throw std::domain_error("braid operator does not map weight spaces bijectively");
        std::vector<std::size_t> rv(rows.begin(), rows.end());
        Matrix b(rv.size(), cols.size());
        for (std::size_t i = 0; i < rv.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = T(rv[i], cols[j]);
        Matrix bi = inverse(b);
        for (std::size_t i = 0; i < cols.size(); ++i)
            for (std::size_t j = 0; j < rv.size(); ++j) inv(cols[i], rv[j]) = bi(i, j);
    }
    return inv;
}

}  // namespace

Matrix braid_T_inverse(const Rep& rep, int r) { return blockwise_inverse(rep, braid_T(rep, r)); }

Matrix braid_T_word(const Rep& rep, const Word& w) {
    Matrix m = Matrix::identity(rep.dim());
    for (int r : w) m = m * braid_T(rep, r);
    return m;
}

Matrix evaluate(const Mono& m, const Rep& rep) {
    Matrix out = rep.K(m.k);
    for (auto it = m.f.rbegin(); it != m.f.rend(); ++it) out = rep.F[static_cast<std::size_t>(*it)] * out;
    for (int e : m.e) out = out * rep.E[static_cast<std::size_t>(e)];
    return out;
}

Matrix evaluate(const AlgElem& x, const Rep& rep) {
    Matrix out(rep.dim(), rep.dim());
    for (const auto& [m, c] : x.terms()) out += evaluate(m, rep).scaled(c);
    return out;
}

Matrix evaluate(const FreeElem& x, const Rep& rep) {
    Matrix out(rep.dim(), rep.dim());
    for (const auto& [c, word] : x.terms) {
        Matrix p = Matrix::identity(rep.dim()).scaled(c);
        for (const auto& g : word) {
            switch (g.kind) {
                case Gen::E: p = p * rep.E[static_cast<std::size_t>(g.index)]; break;
                case Gen::F: p = p * rep.F[static_cast<std::size_t>(g.index)]; break;
                case Gen::K: p = p * rep.K(g.weight); break;
            }
        }
        out += p;
    }
    return out;
}

SeparatingSet build_separating_set(std::shared_ptr<const RootDatum> datum, int degree, int margin, std::size_t max_dim) {
    SeparatingSet set;
    set.degree = degree;
    set.margin = margin;
    for (const auto& lam : datum->dominant_weights_up_to(degree + margin)) {
        if (static_cast<std::size_t>(datum->weyl_dim(lam)) > max_dim) continue;
        set.reps.push_back(build_irrep(datum, lam, max_dim));
    }
    return set;
}

bool equality_oracle(const AlgElem& x, const AlgElem& y, int d, const SeparatingSet& set) {
    if (d > set.degree)
        throw std::invalid_argument("equality_oracle: degree " + std::to_string(d) + " exceeds separating set degree " +
                                    std::to_string(set.degree));
    const AlgElem diff = x - y;
    for (const auto& rep : set.reps)
        if (!evaluate(diff, rep).is_zero()) return false;
    return true;
}

std::vector<IWeight> default_k_candidates(const RootDatum& datum) {
    std::vector<IWeight> out{IWeight(static_cast<std::size_t>(datum.rank()), 0)};
    for (int r = 0; r < datum.rank(); ++r) {
        out.push_back(datum.alpha(r));
        out.push_back(-datum.alpha(r));
    }
    return out;
}

std::vector<Mono> candidate_monomials(const Uq& u, const IWeight& weight, int d, const std::vector<IWeight>& k_candidates) {
    const RootDatum& D = u.datum();
    const int n = D.rank();
    std::vector<long> beta;
    for (const auto& c : D.to_simple(weight)) {
        if (c.get_den() != 1) return {};
        beta.push_back(c.get_num().get_si());
    }
    std::vector<Mono> out;
    std::vector<long> f(static_cast<std::size_t>(n), 0);
    std::function<void(int, long)> rec = [&](int i, long left) {
        if (i == n) {
            std::vector<long> e(static_cast<std::size_t>(n));
            long fe = 0;
            for (int j = 0; j < n; ++j) {
                e[j] = beta[j] + f[j];
                if (e[j] < 0) return;
                fe += e[j] + f[j];
            }
            if (fe > d) return;
            auto fw = u.rewriting().irreducible_words(f);
            auto ew = u.rewriting().irreducible_words(e);
            for (const auto& k : k_candidates) {
                const bool nontrivial = !is_zero(k);
                if (fe + (nontrivial ? 1 : 0) > d) continue;
                for (const auto& a : fw)
                    for (const auto& b : ew) out.push_back(Mono{a, k, b});
            }
            return;
        }
        for (long k = 0; k <= left; ++k) {
            f[static_cast<std::size_t>(i)] = k;
            rec(i + 1, left - k);
        }
        f[static_cast<std::size_t>(i)] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AlgElem lift_to_algebra(const Uq& u, const std::vector<Rep>& reps, const std::vector<Matrix>& targets, int d,
                        const std::vector<IWeight>& k_candidates, const std::vector<IWeight>& weights) {
    if (reps.size() != targets.size()) throw std::invalid_argument("lift_to_algebra: one target per rep required");
    const std::vector<IWeight> kc = k_candidates.empty() ? default_k_candidates(u.datum()) : k_candidates;

    // weights occurring in the targets
    std::set<IWeight> betas(weights.begin(), weights.end());
    for (std::size_t k = 0; k < reps.size(); ++k)
        for (std::size_t i = 0; i < targets[k].rows(); ++i)
            for (std::size_t j = 0; j < targets[k].cols(); ++j)
                if (!targets[k](i, j).is_zero()) betas.insert(reps[k].weights[i] - reps[k].weights[j]);
    if (betas.empty()) return AlgElem();

    std::vector<Mono> cands;
    for (const auto& b : betas) {
        auto c = candidate_monomials(u, b, d, kc);
        cands.insert(cands.end(), c.begin(), c.end());
    }
    const std::size_t N = cands.size();
    if (N == 0) throw LiftError("lift_to_algebra: no candidate monomials of degree <= " + std::to_string(d));

    // rows: matrix entries whose weight difference occurs; selected greedily mod p
    const ModP t = default_modp_point();
    std::vector<Vec> rows;
    std::vector<Scalar> rhs;
    std::vector<std::vector<ModP>> echelon;  // reduced rows, with pivots
    std::vector<std::size_t> pivots;
    for (std::size_t k = 0; k < reps.size() && pivots.size() < N; ++k) {
        const Rep& rep = reps[k];
        std::vector<Matrix> evals;
        for (const auto& m : cands) evals.push_back(evaluate(m, rep));
        for (std::size_t i = 0; i < rep.dim() && pivots.size() < N; ++i)
            for (std::size_t j = 0; j < rep.dim() && pivots.size() < N; ++j) {
                if (!betas.count(rep.weights[i] - rep.weights[j])) continue;
                Vec row(N);
                std::vector<ModP> mrow(N);
                for (std::size_t c = 0; c < N; ++c) {
                    row[c] = evals[c](i, j);
                    mrow[c] = row[c].specialize_mod(t);
                }
                for (std::size_t p = 0; p < pivots.size(); ++p) {
                    ModP f = mrow[pivots[p]];
                    if (f.is_zero()) continue;
                    for (std::size_t c = 0; c < N; ++c) mrow[c] -= f * echelon[p][c];
                }
                std::size_t piv = N;
                for (std::size_t c = 0; c < N; ++c)
                    if (!mrow[c].is_zero()) {
                        piv = c;
                        break;
                    }
                if (piv == N) continue;
                ModP inv = mrow[piv].inverse();
                for (auto& x : mrow) x *= inv;
                for (std::size_t p = 0; p < pivots.size(); ++p) {
                    ModP f = echelon[p][piv];
                    if (f.is_zero()) continue;
                    for (std::size_t c = 0; c < N; ++c) echelon[p][c] -= f * mrow[c];
                }
                echelon.push_back(std::move(mrow));
                pivots.push_back(piv);
                rows.push_back(std::move(row));
                rhs.push_back(targets[k](i, j));
            }
    }
    if (pivots.size() < N)
        throw LiftError("lift_to_algebra: candidates not separated (rank " + std::to_string(pivots.size()) + " of " +
                            std::to_string(N) + " at degree " + std::to_string(d) + ")",
                        true);

    Matrix A(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t c = 0; c < N; ++c) A(i, c) = rows[i][c];
    auto sol = solve(A, rhs);
    if (!sol) throw LiftError("lift_to_algebra: singular selected system");
    AlgElem x;
    for (std::size_t c = 0; c < N; ++c) x.add(cands[c], (*sol)[c]);
    for (std::size_t k = 0; k < reps.size(); ++k) {
        Matrix res = evaluate(x, reps[k]) - targets[k];
        if (!res.is_zero())
            throw LiftError("lift_to_algebra: no solution at degree " + std::to_string(d) + " (residual on rep " +
                            weight_str(reps[k].lambda) + ", " + std::to_string(N) + " candidates)");
    }
    return x;
}

AlgElem ad_T_word(const Uq& u, const Word& w, const AlgElem& x, int d, const SeparatingSet& set) {
    if (w.empty() || x.is_zero()) return x;
    std::vector<IWeight> weights;
    for (const auto& [m, c] : x.terms()) weights.push_back(u.datum().weyl_act(w, u.weight(m)));
    // smallest reps first; lift as soon as they separate, then check T·x = y·T on the rest
    std::vector<std::size_t> order(set.reps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return set.reps[a].dim() < set.reps[b].dim(); });
    std::vector<Rep> used;
    std::vector<Matrix> targets;
    std::optional<AlgElem> y;
    std::size_t next = 0;
    for (; next < order.size() && !y; ++next) {
        const Rep& rep = set.reps[order[next]];
        Matrix T = braid_T_word(rep, w);
        used.push_back(rep);
        targets.push_back(T * evaluate(x, rep) * blockwise_inverse(rep, T));
        try {
            y = lift_to_algebra(u, used, targets, d, {}, weights);
        } catch (const LiftError& e) {
            if (!e.underdetermined()) throw;
            if (next + 1 == order.size()) throw;
        }
    }
    for (; next < order.size(); ++next) {
        const Rep& rep = set.reps[order[next]];
        Matrix T = braid_T_word(rep, w);
        if (T * evaluate(x, rep) != evaluate(*y, rep) * T)
            throw LiftError("ad_T_word: no solution at degree " + std::to_string(d) + " (residual on rep " +
                            weight_str(rep.lambda) + ")");
    }
    return *y;
}

AlgElem ad_Twx(const Uq& u, const SatakeDiagram& diagram, const AlgElem& x, int d, const SeparatingSet& set) {
    AlgElem y = ad_T_word(u, diagram.wX(), x, d, set);
    if (diagram.wX_alt() != diagram.wX()) {
        AlgElem z = ad_T_word(u, diagram.wX_alt(), x, d, set);
        if (!(y == z)) throw std::logic_error("ad_Twx: reduced words of w_X give different results");
    }
    return y;
}

}  // namespace qdouble
