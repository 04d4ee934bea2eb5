#include "qdouble/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qdouble {

IWeight operator+(IWeight a, const IWeight& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

IWeight operator-(IWeight a, const IWeight& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

IWeight operator-(IWeight a) {
    for (auto& x : a) x = -x;
    return a;
}

IWeight operator*(long c, IWeight a) {
    for (auto& x : a) x *= c;
    return a;
}

bool is_zero(const IWeight& w) {
    return std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
}

namespace {

using QMat = std::vector<std::vector<mpq_class>>;

QMat rational_inverse(const QMat& m) {
    const std::size_t n = m.size();
    QMat a = m, inv(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("rational_inverse: singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        mpq_class f = 1 / a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= f;
            inv[c][j] *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            mpq_class g = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= g * a[c][j];
                inv[i][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

std::vector<std::vector<long>> cartan_for(const std::string& type, int n, std::vector<long>& d) {
    std::vector<std::vector<long>> a(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    d.assign(static_cast<std::size_t>(n), 1);
    if (type == "A") {
        if (n < 1 || n > 4) throw std::invalid_argument("unsupported rank for type A (1..4)");
        for (int i = 0; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
    } else if (type == "B" || type == "C") {
        if (n < 2 || n > 3) throw std::invalid_argument("unsupported rank for type " + type + " (2..3)");
        for (int i = 0; i + 2 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
        if (type == "B") {
            a[n - 2][n - 1] = -1;
            a[n - 1][n - 2] = -2;
            for (int i = 0; i + 1 < n; ++i) d[i] = 2;
        } else {
            a[n - 2][n - 1] = -2;
            a[n - 1][n - 2] = -1;
            d[n - 1] = 2;
        }
    } else if (type == "D") {
        if (n < 2 || n > 4) throw std::invalid_argument("unsupported rank for type D (2..4)");
        for (int i = 0; i + 3 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
        if (n >= 3) {
            a[n - 3][n - 2] = a[n - 2][n - 3] = -1;
            a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
        }
    } else if (type == "G2" || type == "G") {
        if (n != 2) throw std::invalid_argument("type G2 has rank 2");
        a[0][1] = -3;
        a[1][0] = -1;
        d = {1, 3};
    } else {
        throw std::invalid_argument("unsupported Cartan type '" + type + "'");
    }
    return a;
}

}  // namespace

RootDatum RootDatum::build(const std::string& type_in, int rank, const std::string& lattice,
                           const std::vector<IWeight>& generators) {
    RootDatum rd;
    rd.type_ = type_in == "G" ? "G2" : type_in;
    rd.rank_ = rank;
    rd.cartan_ = cartan_for(rd.type_, rank, rd.d_);
    const auto n = static_cast<std::size_t>(rank);

    QMat am(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) am[i][j] = rd.cartan_[i][j];
    rd.cartan_inv_ = rational_inverse(am);
    rd.gram_.assign(n, std::vector<mpq_class>(n));
    long L = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rd.gram_[i][j] = rd.d_[i] * rd.cartan_inv_[i][j];
            rd.gram_[i][j].canonicalize();
            L = std::lcm(L, rd.gram_[i][j].get_den().get_si());
        }
    rd.root_order_ = L;

    for (std::size_t s = 0; s < n; ++s) {
        IWeight a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = rd.cartan_[i][s];
        rd.alpha_.push_back(a);
    }

    // positive roots by closure under simple reflections, in simple coordinates
    std::set<std::vector<long>> seen;
    std::deque<std::vector<long>> queue;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<long> e(n, 0);
        e[s] = 1;
        seen.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        auto b = queue.front();
        queue.pop_front();
        for (std::size_t r = 0; r < n; ++r) {
            long pr = 0;  // (β, α_r^∨)
            for (std::size_t s = 0; s < n; ++s) pr += b[s] * rd.cartan_[r][s];
            auto c = b;
            c[r] -= pr;
            bool positive = std::all_of(c.begin(), c.end(), [](long x) { return x >= 0; });
            bool nonzero = std::any_of(c.begin(), c.end(), [](long x) { return x != 0; });
            if (positive && nonzero && seen.insert(c).second) queue.push_back(c);
        }
    }
    rd.pos_roots_simple_.assign(seen.begin(), seen.end());
    std::stable_sort(rd.pos_roots_simple_.begin(), rd.pos_roots_simple_.end(), [](const auto& x, const auto& y) {
        return std::accumulate(x.begin(), x.end(), 0L) < std::accumulate(y.begin(), y.end(), 0L);
    });
    for (const auto& c : rd.pos_roots_simple_) rd.pos_roots_.push_back(rd.from_simple(c));

    // lattice
    std::vector<IWeight> gens;
    if (lattice == "P") {
        for (int i = 0; i < rank; ++i) gens.push_back(rd.fundamental(i));
        rd.lattice_name_ = "P";
    } else if (lattice == "Q") {
        gens = rd.alpha_;
        rd.lattice_name_ = "Q";
    } else {
        gens = generators;
        rd.lattice_name_ = "custom";
        for (const auto& g : gens)
            if (g.size() != n) throw std::invalid_argument("lattice generator has wrong length");
        // Q ⊆ F is required; F ⊆ P holds since coordinates are integral
        auto basis_f = integer_row_basis(gens);
        if (basis_f.size() != n) throw std::invalid_argument("lattice generators do not have full rank");
        QMat bf(n, std::vector<mpq_class>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) bf[i][j] = basis_f[i][j];
        auto invf = rational_inverse(bf);
        for (const auto& a : rd.alpha_) {
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class c = 0;
                for (std::size_t i = 0; i < n; ++i) c += a[i] * invf[i][j];
                if (c.get_den() != 1) throw std::invalid_argument("lattice does not contain the root lattice Q");
            }
        }
    }
    rd.lattice_gens_ = gens;
    rd.lattice_basis_ = integer_row_basis(gens);
    if (rd.lattice_basis_.size() != n) throw std::invalid_argument("lattice generators do not have full rank");
    QMat b(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i][j] = rd.lattice_basis_[i][j];
    rd.lattice_basis_inv_ = rational_inverse(b);
    return rd;
}

mpq_class RootDatum::form(const IWeight& a, const IWeight& b) const {
    mpq_class s = 0;
    for (int i = 0; i < rank_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < rank_; ++j)
            if (b[j] != 0) s += a[i] * gram_[i][j] * b[j];
    }
    return s;
}

mpq_class RootDatum::form_rational(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const {
    mpq_class s = 0;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) s += a[i] * gram_[i][j] * b[j];
    return s;
}

IWeight RootDatum::fundamental(int r) const {
    IWeight w(static_cast<std::size_t>(rank_), 0);
    w[r] = 1;
    return w;
}

IWeight RootDatum::from_simple(const std::vector<long>& c) const {
    IWeight w(static_cast<std::size_t>(rank_), 0);
    for (int s = 0; s < rank_; ++s)
        if (c[s] != 0) w = w + c[s] * alpha_[s];
    return w;
}

std::vector<mpq_class> RootDatum::to_simple(const IWeight& w) const {
    std::vector<mpq_class> c(static_cast<std::size_t>(rank_), 0);
    for (int s = 0; s < rank_; ++s)
        for (int i = 0; i < rank_; ++i) c[s] += cartan_inv_[s][i] * w[i];
    return c;
}

IWeight RootDatum::reflect(int r, const IWeight& w) const {
    if (r < 0 || r >= rank_) throw std::out_of_range("reflection index out of range");
    if (w[r] == 0) return w;
    return w - w[r] * alpha_[r];
}

IWeight RootDatum::weyl_act(const Word& word, const IWeight& w) const {
    IWeight x = w;
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = reflect(*it, x);
    return x;
}

bool RootDatum::in_root_lattice(const IWeight& w) const {
    for (const auto& c : to_simple(w))
        if (c.get_den() != 1) return false;
    return true;
}

bool RootDatum::in_lattice(const IWeight& w) const {
    for (int j = 0; j < rank_; ++j) {
        mpq_class c = 0;
        for (int i = 0; i < rank_; ++i) c += w[i] * lattice_basis_inv_[i][j];
        if (c.get_den() != 1) return false;
    }
    return true;
}

bool RootDatum::is_dominant(const IWeight& w) const {
    return std::all_of(w.begin(), w.end(), [](long x) { return x >= 0; });
}

long RootDatum::height(const IWeight& w) { return std::accumulate(w.begin(), w.end(), 0L); }

long RootDatum::weyl_dim(const IWeight& lambda) const {
    if (!is_dominant(lambda)) throw std::invalid_argument("weyl_dim: weight is not dominant");
    mpq_class p = 1;
    IWeight lr = lambda + rho();
    for (const auto& a : pos_roots_) p *= form(lr, a) / form(rho(), a);
    p.canonicalize();
    return p.get_num().get_si();
}

std::vector<IWeight> RootDatum::dominant_weights_up_to(long h) const {
    std::vector<IWeight> out;
    IWeight w(static_cast<std::size_t>(rank_), 0);
    // enumerate compositions with sum ≤ h
    std::vector<IWeight> all;
    std::function<void(int, long)> rec = [&](int i, long left) {
        if (i == rank_) {
            all.push_back(w);
            return;
        }
        for (long k = 0; k <= left; ++k) {
            w[i] = k;
            rec(i + 1, left - k);
        }
        w[i] = 0;
    };
    rec(0, h);
    for (const auto& x : all)
        if (in_lattice(x)) out.push_back(x);
    std::stable_sort(out.begin(), out.end(), [](const IWeight& a, const IWeight& b) {
        long ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    return out;
}

Word RootDatum::longest_word(const std::set<int>& X, bool prefer_high) const {
    for (int r : X)
        if (r < 0 || r >= rank_) throw std::out_of_range("longest_word: index out of range");
    IWeight mu(static_cast<std::size_t>(rank_), 0);
    for (int r : X) mu[r] = 1;
    Word applied;
    while (true) {
        int pick = -1;
        for (int r : X)
            if (mu[r] > 0) {
                pick = r;
                if (!prefer_high) break;
            }
        if (pick < 0) break;
        mu = reflect(pick, mu);
        applied.push_back(pick);
    }
    return Word(applied.rbegin(), applied.rend());
}

std::vector<IWeight> RootDatum::positive_roots_in(const std::set<int>& X) const {
    std::vector<IWeight> out;
    for (std::size_t k = 0; k < pos_roots_simple_.size(); ++k) {
        bool inside = true;
        for (int s = 0; s < rank_; ++s)
            if (pos_roots_simple_[k][s] != 0 && !X.count(s)) inside = false;
        if (inside) out.push_back(pos_roots_[k]);
    }
    return out;
}

long RootDatum::kostant_partition(const std::vector<long>& c) const { return kostant_from(c, 0); }

long RootDatum::kostant_from(const std::vector<long>& c, std::size_t first) const {
    if (std::all_of(c.begin(), c.end(), [](long x) { return x == 0; })) return 1;
    if (first == pos_roots_simple_.size()) return 0;
    std::vector<long> key = c;
    key.push_back(static_cast<long>(first));
    auto it = kostant_cache_.find(key);
    if (it != kostant_cache_.end()) return it->second;
    long total = 0;
    std::vector<long> rest = c;
    const auto& b = pos_roots_simple_[first];
    while (true) {
        total += kostant_from(rest, first + 1);
        bool ok = true;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            rest[i] -= b[i];
            if (rest[i] < 0) ok = false;
        }
        if (!ok) break;
    }
    kostant_cache_[key] = total;
    return total;
}

std::vector<IWeight> integer_row_basis(std::vector<IWeight> rows) {
    if (rows.empty()) return {};
    const std::size_t n = rows[0].size();
    std::vector<IWeight> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        // Euclid on column c among rows r..
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || std::labs(rows[i][c]) < std::labs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                long f = rows[i][c] / rows[r][c];
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) {
                if (rows[r][c] < 0) rows[r] = -rows[r];
                ++r;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < r; ++i) out.push_back(rows[i]);
    return out;
}

std::vector<IWeight> integer_left_kernel(const std::vector<IWeight>& m) {
    // unimodular row reduction of [M | I]
    const std::size_t k = m.size();
    if (k == 0) return {};
    const std::size_t n = m[0].size();
    std::vector<IWeight> aug(k, IWeight(n + k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < k; ++c) {
        while (true) {
            std::size_t best = k;
            for (std::size_t i = r; i < k; ++i)
                if (aug[i][c] != 0 && (best == k || std::labs(aug[i][c]) < std::labs(aug[best][c]))) best = i;
            if (best == k) break;
            std::swap(aug[r], aug[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < k; ++i) {
                if (aug[i][c] == 0) continue;
                long f = aug[i][c] / aug[r][c];
                for (std::size_t j = 0; j < n + k; ++j) aug[i][j] -= f * aug[r][j];
                if (aug[i][c] != 0) done = false;
            }
            if (done) {
                ++r;
                break;
            }
        }
    }
    std::vector<IWeight> ker;
    for (std::size_t i = r; i < k; ++i) ker.emplace_back(aug[i].begin() + static_cast<long>(n), aug[i].end());
    return integer_row_basis(ker);
}

bool AxiomReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

AxiomReport validate_satake(const RootDatum& base, const std::set<int>& X, const std::vector<int>& tau) {
    AxiomReport rep;
    const int n = base.rank();
    bool perm_ok = static_cast<int>(tau.size()) == n;
    if (perm_ok) {
        std::vector<int> s = tau;
        std::sort(s.begin(), s.end());
        for (int i = 0; i < n; ++i)
            if (s[i] != i) perm_ok = false;
        for (int i = 0; i < n && perm_ok; ++i)
            if (tau[tau[i]] != i) perm_ok = false;
    }
    rep.checks.push_back({"tau involutive permutation", perm_ok, perm_ok ? "" : "tau is not an involutive permutation"});
    if (!perm_ok) return rep;

    // (i) τ preserves the form on simple roots
    AxiomCheck c1{"(i) tau preserves the bilinear form", true, ""};
    for (int r = 0; r < n && c1.pass; ++r)
        for (int s = 0; s < n; ++s)
            if (base.form(base.alpha(tau[r]), base.alpha(tau[s])) != base.form(base.alpha(r), base.alpha(s))) {
                c1.pass = false;
                c1.detail = "(alpha_" + std::to_string(r + 1) + ", alpha_" + std::to_string(s + 1) + ") not preserved";
                break;
            }
    rep.checks.push_back(c1);

    // (ii) τ(X) = X and τ|_X = −w_X|_X
    AxiomCheck c2{"(ii) tau(X) = X and tau = -w_X on X", true, ""};
    Word w = base.longest_word(X);
    for (int r : X) {
        if (!X.count(tau[r])) {
            c2.pass = false;
            c2.detail = "tau(" + std::to_string(r + 1) + ") not in X";
            break;
        }
        if (-base.weyl_act(w, base.alpha(r)) != base.alpha(tau[r])) {
            c2.pass = false;
            c2.detail = "-w_X(alpha_" + std::to_string(r + 1) + ") != alpha_tau";
            break;
        }
    }
    rep.checks.push_back(c2);

    // (iii) integrality of (α, δ_X^∨) for τ-fixed α ∉ X
    AxiomCheck c3{"(iii) (alpha, delta_X) integral on tau-fixed nodes outside X", true, ""};
    auto roots_x = base.positive_roots_in(X);
    for (int r = 0; r < n; ++r) {
        if (X.count(r) || tau[r] != r) continue;
        mpq_class s = 0;
        for (const auto& b : roots_x) s += 2 * base.form(base.alpha(r), b) / base.form(b, b);
        s /= 2;
        s.canonicalize();
        if (s.get_den() != 1) {
            c3.pass = false;
            c3.detail = "(alpha_" + std::to_string(r + 1) + ", delta_X) = " + s.get_str();
            break;
        }
    }
    rep.checks.push_back(c3);

    // F must be τ-stable
    AxiomCheck c4{"tau(F) = F", true, ""};
    for (const auto& b : base.lattice_basis()) {
        IWeight t(b.size());
        for (int i = 0; i < n; ++i) t[tau[i]] = b[i];
        if (!base.in_lattice(t)) {
            c4.pass = false;
            c4.detail = "lattice is not tau-stable";
            break;
        }
    }
    rep.checks.push_back(c4);
    return rep;
}

SatakeDiagram::SatakeDiagram(std::shared_ptr<const RootDatum> base, std::set<int> X, std::vector<int> tau)
    : base_(std::move(base)), X_(std::move(X)), tau_(std::move(tau)) {
    for (int r : X_)
        if (r < 0 || r >= base_->rank()) throw std::out_of_range("X index out of range");
    if (static_cast<int>(tau_.size()) != base_->rank()) throw std::invalid_argument("tau has wrong length");
    for (int t : tau_)
        if (t < 0 || t >= base_->rank()) throw std::out_of_range("tau index out of range");
    wX_ = base_->longest_word(X_);
    wX_alt_ = base_->longest_word(X_, true);
    report_ = validate_satake(*base_, X_, tau_);
    z_ = choose_z(*this);
}

IWeight SatakeDiagram::tau_act(const IWeight& w) const {
    IWeight t(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) t[tau_[i]] = w[i];
    return t;
}

IWeight SatakeDiagram::theta(const IWeight& w) const { return -base_->weyl_act(wX_, tau_act(w)); }

std::vector<IWeight> SatakeDiagram::theta_matrix() const {
    std::vector<IWeight> m;
    for (int i = 0; i < base_->rank(); ++i) m.push_back(theta(base_->fundamental(i)));
    return m;
}

std::vector<mpq_class> SatakeDiagram::alpha_plus(int r) const {
    IWeight s = base_->alpha(r) + theta(base_->alpha(r));
    std::vector<mpq_class> out;
    for (long x : s) out.emplace_back(x, 2);
    for (auto& x : out) x.canonicalize();
    return out;
}

mpq_class SatakeDiagram::alpha_delta(int r) const {
    mpq_class s = 0;
    for (const auto& b : base_->positive_roots_in(X_)) s += 2 * base_->form(base_->alpha(r), b) / base_->form(b, b);
    s /= 2;
    s.canonicalize();
    return s;
}

std::vector<IWeight> SatakeDiagram::theta_fixed_sublattice() const {
    std::vector<IWeight> m;
    for (const auto& b : base_->lattice_basis()) m.push_back(theta(b) - b);
    std::vector<IWeight> out;
    for (const auto& c : integer_left_kernel(m)) {
        IWeight w(static_cast<std::size_t>(base_->rank()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) w = w + c[i] * base_->lattice_basis()[i];
        out.push_back(w);
    }
    return integer_row_basis(out);
}

std::vector<int> choose_z(const SatakeDiagram& d) {
    std::vector<int> z(static_cast<std::size_t>(d.base().rank()), 1);
    for (int r = 0; r < d.base().rank(); ++r) {
        if (d.alpha_delta(r).get_den() == 1) continue;
        z[r] = r < d.tau(r) ? 1 : (r > d.tau(r) ? -1 : 1);
    }
    return z;
}

std::string word_to_string(const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << "s" << (w[i] + 1);
    return os.str();
}

}  // namespace qdouble
