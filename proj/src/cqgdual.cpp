#include "qdouble/cqgdual.hpp"

#include "cqg_detail.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qdouble {

std::string to_string(const RepLabel& l) {
    if (l.empty()) return "V(0)";
    std::ostringstream os;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (i) os << "⊗";
        os << "V(";
        for (std::size_t j = 0; j < l[i].lambda.size(); ++j) os << (j ? "," : "") << l[i].lambda[j];
        os << ")" << (l[i].dual ? "^c" : "");
    }
    return os.str();
}

AElem& AElem::operator+=(const AElem& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
}

AElem AElem::scaled(const Scalar& c) const {
    AElem out;
    if (c.is_zero()) return out;
    out.terms = terms;
    for (auto& t : out.terms) t.eta = vscale(std::move(t.eta), c);
    return out;
}

namespace detail {

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = Scalar(1);
    return v;
}

Matrix outer(const Vec& a, const Vec& b) {
    Matrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) m(i, j) = a[i] * b[j];
    }
    return m;
}

Vec row_times(const Vec& x, const Matrix& m) {
    Vec out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out[j] += x[i] * m(i, j);
    }
    return out;
}

Scalar trace_product(const Matrix& a, const Matrix& b) {
    Scalar s;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !b(j, i).is_zero()) s += a(i, j) * b(j, i);
    return s;
}

PVec specialize_flat(const Matrix& m, ModP t) {
    PVec out(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out[i * m.cols() + j] = m(i, j).specialize_mod(t);
    return out;
}

PVec specialize_vec(const Vec& v, ModP t) {
    PVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out[i] = v[i].specialize_mod(t);
    return out;
}

PVec pmul(const PVec& a, const PVec& b, std::size_t n) {
    PVec c(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const ModP aik = a[i * n + k];
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
        }
    return c;
}

bool PSpan::add(PVec v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const ModP c = v[pivots_[r]];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * rows_[r][j];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    const ModP inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
        const ModP c = row[p];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) row[j] -= c * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

PClosure closure_modp(const std::vector<std::vector<Matrix>>& gens, const std::vector<std::size_t>& dims, ModP t,
                      std::size_t limit) {
    std::vector<std::vector<PVec>> pg(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (const auto& m : gens[g]) pg[g].push_back(specialize_flat(m, t));
    PSpan span;
    PClosure out;
    auto push = [&](std::vector<PVec> m, std::vector<std::size_t> w) {
        PVec flat;
        for (const auto& b : m) flat.insert(flat.end(), b.begin(), b.end());
        if (span.add(std::move(flat))) {
            out.blocks.push_back(std::move(m));
            out.words.push_back(std::move(w));
        }
    };
    std::vector<PVec> id;
    for (auto n : dims) {
        PVec e(n * n);
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = ModP(1);
        id.push_back(std::move(e));
    }
    push(std::move(id), {});
    for (std::size_t i = 0; i < out.blocks.size() && out.blocks.size() < limit; ++i)
        for (std::size_t g = 0; g < pg.size() && out.blocks.size() < limit; ++g) {
            std::vector<PVec> m;
            for (std::size_t b = 0; b < dims.size(); ++b) m.push_back(pmul(out.blocks[i][b], pg[g][b], dims[b]));
            auto w = out.words[i];
            w.push_back(g);
            push(std::move(m), std::move(w));
        }
    return out;
}

}  // namespace detail

using namespace detail;

namespace {

Matrix blockwise_gram_inverse(const Rep& r) {
    const std::size_t n = r.dim();
    Matrix out(n, n);
    std::map<IWeight, std::vector<std::size_t>> by_weight;
    for (std::size_t i = 0; i < n; ++i) by_weight[r.weights[i]].push_back(i);
    for (const auto& [w, idx] : by_weight) {
        Matrix b(idx.size(), idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = r.gram(idx[i], idx[j]);
        Matrix bi = inverse(b);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) out(idx[i], idx[j]) = bi(i, j);
    }
    return out;
}

std::vector<Matrix> generator_matrices(const Uq& u, const Rep& r) {
    std::vector<Matrix> out;
    for (int i = 0; i < u.rank(); ++i) {
        out.push_back(r.E[i]);
        out.push_back(r.F[i]);
    }
    for (const auto& w : u.datum().lattice_basis()) out.push_back(r.K(w));
    return out;
}

Vec flatten(const std::vector<Matrix>& blocks) {
    Vec v;
    for (const auto& m : blocks)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

/// Basis of the image of U in ⊕ End(V_i): closure of the identity under generators.
std::vector<std::vector<Matrix>> image_closure(const Uq& u, const std::vector<const Rep*>& reps) {
    std::vector<std::vector<Matrix>> gens;
    std::size_t total = 0;
    for (const Rep* r : reps) {
        gens.push_back(generator_matrices(u, *r));
        total += r->dim() * r->dim();
    }
    const std::size_t ngen = gens.empty() ? 0 : gens[0].size();
    SpanBuilder span(total);
    std::vector<std::vector<Matrix>> basis;
    auto push = [&](std::vector<Matrix> m) {
        if (span.add(flatten(m))) basis.push_back(std::move(m));
    };
    std::vector<Matrix> id;
    for (const Rep* r : reps) id.push_back(Matrix::identity(r->dim()));
    push(id);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t g = 0; g < ngen; ++g) {
            std::vector<Matrix> m;
            for (std::size_t b = 0; b < reps.size(); ++b) m.push_back(basis[i][b] * gens[b][g]);
            push(std::move(m));
        }
    return basis;
}

Rep dual_of(const Rep& base) {
    const RootDatum& D = *base.datum;
    Rep r;
    r.datum = base.datum;
    r.gram = base.gram;
    for (const auto& w : base.weights) r.weights.push_back(-w);
    const Matrix gi = blockwise_gram_inverse(base);
    for (int i = 0; i < D.rank(); ++i) {
        Matrix se = (base.K(-D.alpha(i)) * base.E[i]).scaled(Scalar(-1));
        Matrix sf = (base.F[i] * base.K(D.alpha(i))).scaled(Scalar(-1));
        r.E.push_back(gi * se.transpose() * base.gram);
        r.F.push_back(gi * sf.transpose() * base.gram);
    }
    r.t_matrix = r.K(-2 * D.rho());
    return r;
}

Rep tensor_of(const Rep& a, const Rep& b) {
    const RootDatum& D = *a.datum;
    Rep r;
    r.datum = a.datum;
    for (const auto& wa : a.weights)
        for (const auto& wb : b.weights) r.weights.push_back(wa + wb);
    const Matrix ia = Matrix::identity(a.dim()), ib = Matrix::identity(b.dim());
    for (int i = 0; i < D.rank(); ++i) {
        r.E.push_back(kron(a.E[i], ib) + kron(a.K(D.alpha(i)), b.E[i]));
        r.F.push_back(kron(a.F[i], b.K(-D.alpha(i))) + kron(ia, b.F[i]));
    }
    r.gram = kron(a.gram, b.gram);
    r.t_matrix = r.K(-2 * D.rho());
    return r;
}

std::vector<std::size_t> factor_dims(const CqgAlgebra& A, const RepLabel& l) {
    std::vector<std::size_t> out;
    for (const auto& f : l) out.push_back(A.rep({f})->dim());
    return out;
}

/// Reorders a vector in V_1⊗⋯⊗V_n into V_n⊗⋯⊗V_1.
Vec reverse_factors(const Vec& v, const std::vector<std::size_t>& dims) {
    if (dims.size() < 2) return v;
    Vec out(v.size());
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        std::size_t rem = flat;
        for (std::size_t f = dims.size(); f-- > 0;) {
            idx[f] = rem % dims[f];
            rem /= dims[f];
        }
        std::size_t target = 0;
        for (std::size_t f = dims.size(); f-- > 0;) target = target * dims[f] + idx[f];
        out[target] = v[flat];
    }
    return out;
}

}  // namespace

CqgAlgebra::CqgAlgebra(std::shared_ptr<const Uq> uq, std::size_t max_dim) : uq_(std::move(uq)), max_dim_(max_dim) {}

std::shared_ptr<const Rep> CqgAlgebra::rep(const RepLabel& l) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = reps_.find(l);
        if (it != reps_.end()) return it->second;
    }
    std::shared_ptr<const Rep> r;
    if (l.empty()) {
        r = std::make_shared<const Rep>(build_irrep(uq_->datum_ptr(), IWeight(datum().rank(), 0), max_dim_));
    } else if (l.size() == 1) {
        Rep base = build_irrep(uq_->datum_ptr(), l[0].lambda, max_dim_);
        r = std::make_shared<const Rep>(l[0].dual ? dual_of(base) : std::move(base));
    } else {
        RepLabel head(l.begin(), l.end() - 1);
        auto a = rep(head);
        auto b = rep({l.back()});
        if (a->dim() * b->dim() > max_dim_)
            throw std::length_error("CqgAlgebra: " + to_string(l) + " exceeds the dimension cap");
        r = std::make_shared<const Rep>(tensor_of(*a, *b));
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return reps_.emplace(l, r).first->second;
}

const Matrix& CqgAlgebra::gram_inverse(const RepLabel& l) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = gram_inv_.find(l);
        if (it != gram_inv_.end()) return it->second;
    }
    Matrix gi;
    if (l.size() <= 1) {
        gi = blockwise_gram_inverse(*rep(l));
    } else {
        RepLabel head(l.begin(), l.end() - 1);
        gi = kron(gram_inverse(head), gram_inverse({l.back()}));
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return gram_inv_.emplace(l, std::move(gi)).first->second;
}

const Matrix& CqgAlgebra::invariant_projection(const RepLabel& l) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = projections_.find(l);
        if (it != projections_.end()) return it->second;
    }
    auto r = rep(l);
    const std::size_t n = r->dim();
    std::vector<Matrix> gens = generator_matrices(*uq_, *r);
    const std::size_t nE = 2 * static_cast<std::size_t>(uq_->rank());
    std::vector<Matrix> diffs;
    for (std::size_t g = 0; g < gens.size(); ++g)
        diffs.push_back(g < nE ? gens[g] : gens[g] - Matrix::identity(n));

    Matrix stacked(n * diffs.size(), n);
    for (std::size_t g = 0; g < diffs.size(); ++g)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) stacked(g * n + i, j) = diffs[g](i, j);
    std::vector<Vec> inv = nullspace(stacked);

    // U⁺·V: submodule generated by the images of the differences
    SpanBuilder span(n);
    for (const auto& d : diffs)
        for (std::size_t j = 0; j < n; ++j) span.add(d.column(j));
    for (std::size_t i = 0; i < span.vectors().size(); ++i) {
        const Vec v = span.vectors()[i];
        for (const auto& g : gens) span.add(g * v);
    }
    if (inv.size() + span.size() != n)
        throw std::logic_error("invariant_projection: " + to_string(l) + " is not completely reducible");
    std::vector<Vec> cols = inv;
    for (const auto& v : span.vectors()) cols.push_back(v);
    Matrix B = Matrix::from_columns(cols, n);
    Vec diag(n);
    for (std::size_t i = 0; i < inv.size(); ++i) diag[i] = Scalar(1);
    Matrix P = B * Matrix::diagonal(diag) * inverse(B);
    std::lock_guard<std::mutex> lock(mutex_);
    return projections_.emplace(l, std::move(P)).first->second;
}

AElem CqgAlgebra::one() const { return AElem(ACoeff{{}, {Scalar(1)}, {Scalar(1)}}); }

AElem CqgAlgebra::matrix_coeff(const IWeight& lambda, std::size_t i, std::size_t j) const {
    RepLabel l{{lambda, false}};
    const std::size_t n = rep(l)->dim();
    return AElem(ACoeff{l, unit_vec(n, i), unit_vec(n, j)});
}

AElem CqgAlgebra::unit_coeff(const IWeight& lambda, std::size_t i, std::size_t j) const {
    RepLabel l{{lambda, false}};
    const std::size_t n = rep(l)->dim();
    return AElem(ACoeff{l, gram_inverse(l).column(i), unit_vec(n, j)});
}

Scalar CqgAlgebra::pairing(const ACoeff& a, const AlgElem& x) const {
    auto r = rep(a.label);
    return dot(row_times(a.xi, r->gram), evaluate(x, *r) * a.eta);
}

Scalar CqgAlgebra::pairing(const AElem& a, const AlgElem& x) const {
    Scalar s;
    for (const auto& t : a.terms) s += pairing(t, x);
    return s;
}

Scalar CqgAlgebra::pairing(const ATensor& t, const TensorElem& x) const {
    Scalar s;
    for (const auto& [m, c] : x.terms()) {
        AlgElem x0(m[0], Scalar(1)), x1(m[1], Scalar(1));
        for (const auto& [a, b] : t.terms) s += c * pairing(a, x0) * pairing(b, x1);
    }
    return s;
}

ACoeff CqgAlgebra::product(const ACoeff& a, const ACoeff& b) const {
    ACoeff out;
    out.label = a.label;
    out.label.insert(out.label.end(), b.label.begin(), b.label.end());
    out.xi = kron(a.xi, b.xi);
    out.eta = kron(a.eta, b.eta);
    return out;
}

AElem CqgAlgebra::product(const AElem& a, const AElem& b) const {
    AElem out;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms) out.terms.push_back(product(x, y));
    return out;
}

ATensor CqgAlgebra::coproduct(const AElem& a) const {
    ATensor out;
    for (const auto& t : a.terms) {
        const Matrix& gi = gram_inverse(t.label);
        const std::size_t n = t.xi.size();
        for (std::size_t k = 0; k < n; ++k)
            out.terms.emplace_back(ACoeff{t.label, t.xi, unit_vec(n, k)}, ACoeff{t.label, gi.column(k), t.eta});
    }
    return out;
}

ACoeff CqgAlgebra::star(const ACoeff& a) const {
    // (U_1⋯U_n)* = U_n*⋯U_1*, and a single factor only toggles its contragredient flag
    const auto dims = factor_dims(*this, a.label);
    ACoeff out;
    for (auto it = a.label.rbegin(); it != a.label.rend(); ++it) out.label.push_back({it->lambda, !it->dual});
    out.xi = reverse_factors(a.xi, dims);
    out.eta = reverse_factors(a.eta, dims);
    return out;
}

AElem CqgAlgebra::star(const AElem& a) const {
    AElem out;
    for (const auto& t : a.terms) out.terms.push_back(star(t));
    return out;
}

const Matrix& CqgAlgebra::haar_form(const RepLabel& l) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = haar_forms_.find(l);
        if (it != haar_forms_.end()) return it->second;
    }
    Matrix gp = rep(l)->gram * invariant_projection(l);
    std::lock_guard<std::mutex> lock(mutex_);
    return haar_forms_.emplace(l, std::move(gp)).first->second;
}

Scalar CqgAlgebra::haar(const AElem& a) const {
    Scalar s;
    for (const auto& t : a.terms) {
        const Matrix& m = haar_form(t.label);
        for (std::size_t k = 0; k < t.eta.size(); ++k) {
            if (t.eta[k].is_zero()) continue;
            Scalar col;
            for (std::size_t i = 0; i < t.xi.size(); ++i)
                if (!t.xi[i].is_zero() && !m(i, k).is_zero()) col += t.xi[i] * m(i, k);
            s += col * t.eta[k];
        }
    }
    return s;
}

bool CqgAlgebra::is_zero(const AElem& a) const {
    // functional x ↦ Σ tr(π(x) N) with N = Σ η ξᵀ G per label
    std::map<RepLabel, Matrix> by_label;
    for (const auto& t : a.terms) {
        auto r = rep(t.label);
        Matrix n = outer(t.eta, row_times(t.xi, r->gram));
        auto it = by_label.find(t.label);
        if (it == by_label.end()) by_label.emplace(t.label, std::move(n));
        else it->second += n;
    }
    for (auto it = by_label.begin(); it != by_label.end();)
        it = it->second.is_zero() ? by_label.erase(it) : std::next(it);
    if (by_label.empty()) return true;
    // an irreducible label pairs faithfully
    if (by_label.size() == 1 && by_label.begin()->first.size() <= 1) return false;

    std::vector<const Rep*> reps;
    std::vector<std::shared_ptr<const Rep>> keep;
    for (const auto& [l, n] : by_label) {
        keep.push_back(rep(l));
        reps.push_back(keep.back().get());
    }
    for (const auto& blocks : image_closure(*uq_, reps)) {
        Scalar s;
        std::size_t b = 0;
        for (const auto& [l, n] : by_label) s += trace_product(blocks[b++], n);
        if (!s.is_zero()) return false;
    }
    return true;
}

AElem CqgAlgebra::random_element(std::mt19937& rng, long h, int terms) const {
    const auto lams = datum().dominant_weights_up_to(h);
    AElem out;
    for (int t = 0; t < terms; ++t) {
        const IWeight& lam = lams[rng() % lams.size()];
        const std::size_t n = rep({{lam, false}})->dim();
        long c = static_cast<long>(rng() % 7) - 3;
        if (c == 0) c = 1;
        out += unit_coeff(lam, rng() % n, rng() % n).scaled(Scalar(c));
    }
    return out;
}

PeterWeylReport peter_weyl_rank(const CqgAlgebra& A, long h) {
    return peter_weyl_rank(A, A.datum().dominant_weights_up_to(h));
}

PeterWeylReport peter_weyl_rank(const CqgAlgebra& A, const std::vector<IWeight>& lambdas) {
    PeterWeylReport rep;
    std::vector<std::shared_ptr<const Rep>> keep;
    std::vector<const Rep*> reps;
    for (const auto& lam : lambdas) {
        keep.push_back(A.rep({{lam, false}}));
        reps.push_back(keep.back().get());
        rep.expected += keep.back()->dim() * keep.back()->dim();
    }
    // The rank never exceeds the row count, so full rank at a specialization settles it.
    {
        const ModP t = default_modp_point();
        std::vector<std::vector<Matrix>> gens;
        std::vector<std::size_t> dims;
        std::vector<PVec> grams;
        for (const Rep* r : reps) {
            dims.push_back(r->dim());
            grams.push_back(specialize_flat(r->gram, t));
        }
        for (const Rep* r : reps) {
            auto g = generator_matrices(A.uq(), *r);
            gens.resize(g.size());
            for (std::size_t k = 0; k < g.size(); ++k) gens[k].push_back(std::move(g[k]));
        }
        const PClosure cl = closure_modp(gens, dims, t);
        std::vector<PVec> rows;
        for (const auto& blocks : cl.blocks) {
            PVec row;
            for (std::size_t b = 0; b < dims.size(); ++b) {
                const PVec gm = pmul(grams[b], blocks[b], dims[b]);
                row.insert(row.end(), gm.begin(), gm.end());
            }
            rows.push_back(std::move(row));
        }
        rep.words = cl.words.size();
        rep.rank = modp_rank(std::move(rows));
        if (rep.rank == rep.expected) return rep;
    }
    auto words = image_closure(A.uq(), reps);
    rep.words = words.size();
    // rows: U(e_i, e_j) of each V(λ); entry ⟨e_i, π(w)e_j⟩ = (G π(w))_{ij}
    Matrix pm(rep.expected, words.size());
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::size_t row = 0;
        for (std::size_t b = 0; b < reps.size(); ++b) {
            Matrix gm = reps[b]->gram * words[w][b];
            for (std::size_t i = 0; i < gm.rows(); ++i)
                for (std::size_t j = 0; j < gm.cols(); ++j) pm(row++, w) = gm(i, j);
        }
    }
    rep.rank = rank_modp(pm, default_modp_point());
    if (rep.rank < std::min(pm.rows(), pm.cols())) rep.rank = rank(pm);
    return rep;
}

CBlock quotient_block(const CqgAlgebra& A, const IWeight& lambda, const CoidealPresentation& pres) {
    CBlock b;
    b.lambda = lambda;
    b.rep = A.rep({{lambda, false}});
    b.basis = image_subalgebra(*b.rep, pres);
    return b;
}

Vec project_C(const CBlock& block, const Vec& xi, const Vec& eta) {
    const Vec xg = row_times(xi, block.rep->gram);
    Vec out;
    for (const auto& m : block.basis) out.push_back(dot(xg, m * eta));
    return out;
}

namespace {

Vec flat1(const Matrix& m) { return flatten({m}); }

/// Coordinates of m in the block basis.
Vec coords(const CBlock& block, const Matrix& m) {
    std::vector<Vec> cols;
    for (const auto& b : block.basis) cols.push_back(flat1(b));
    const Vec fm = flat1(m);
    auto c = solve(Matrix::from_columns(cols, fm.size()), fm);
    if (!c) throw std::logic_error("CBlock: element outside π(I)");
    return *c;
}

Matrix adjoint(const CBlock& block, const Matrix& m) {
    const Rep& r = *block.rep;
    return blockwise_gram_inverse(r) * m.transpose() * r.gram;
}

}  // namespace

Vec dagger(const CBlock& block, const Vec& f) {
    Vec out(block.dim());
    for (std::size_t k = 0; k < block.dim(); ++k) out[k] = dot(coords(block, adjoint(block, block.basis[k])), f);
    return out;
}

bool check_dagger(const CBlock& block) {
    const std::size_t n = block.dim();
    std::vector<Vec> adj;
    for (const auto& m : block.basis) adj.push_back(coords(block, adjoint(block, m)));
    std::vector<std::vector<Vec>> prod(n, std::vector<Vec>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) prod[a][b] = coords(block, block.basis[a] * block.basis[b]);
    for (std::size_t c = 0; c < n; ++c) {
        Vec fc = unit_vec(n, c);
        Vec fd = dagger(block, fc);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Scalar lhs = dot(prod[a][b], fd);
                Scalar rhs;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t l = 0; l < n; ++l)
                        if (!adj[b][i].is_zero() && !adj[a][l].is_zero()) rhs += adj[b][i] * adj[a][l] * prod[i][l][c];
                if (lhs != rhs) return false;
            }
    }
    return true;
}

std::vector<AElem> homspace_B(const CqgAlgebra& A, const IWeight& lambda, const CoidealPresentation& pres) {
    RepLabel l{{lambda, false}};
    auto r = A.rep(l);
    std::vector<AElem> out;
    for (const auto& xi : invariant_vectors(*r, pres))
        for (std::size_t j = 0; j < r->dim(); ++j) out.emplace_back(ACoeff{l, xi, unit_vec(r->dim(), j)});
    return out;
}

bool check_homspace_member(const CqgAlgebra& A, const CoidealPresentation& pres, const AElem& b, int d) {
    const Uq& u = A.uq();
    std::vector<IWord> words{IWord{IWeight(u.rank(), 0), {}}};
    for (const auto& w : pres.torus_basis()) words.push_back(IWord{w, {}});
    const auto letters = pres.letters();
    std::vector<std::vector<std::size_t>> layer{{}};
    for (int len = 1; len <= d; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& w : layer)
            for (std::size_t l : letters) {
                auto x = w;
                x.push_back(l);
                words.push_back(IWord{IWeight(u.rank(), 0), x});
                next.push_back(std::move(x));
            }
        layer = std::move(next);
    }
    const ATensor db = A.coproduct(b);
    for (const auto& w : words) {
        const AlgElem y = evaluate(pres, w);
        AElem lhs = b.scaled(-u.counit(y));
        std::map<RepLabel, Matrix> images;
        for (const auto& [left, right] : db.terms) {
            auto it = images.find(left.label);
            if (it == images.end()) it = images.emplace(left.label, evaluate(y, *A.rep(left.label))).first;
            auto r = A.rep(left.label);
            const Scalar c = dot(row_times(left.xi, r->gram), it->second * left.eta);
            if (!c.is_zero()) lhs += AElem(right).scaled(c);
        }
        if (!A.is_zero(lhs)) return false;
    }
    return true;
}

namespace {

using CM = Eigen::MatrixXcd;

CM to_complex(const Matrix& m, double q0) {
    const auto d = specialize(m, q0);
    CM out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = d[i][j];
    return out;
}

CMatrix to_nested(const CM& m) {
    CMatrix out(m.rows(), std::vector<std::complex<double>>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

std::size_t numeric_rank(const std::vector<CM>& ms, double tol) {
    if (ms.empty()) return 0;
    const Eigen::Index len = ms[0].size();
    CM stack(len, static_cast<Eigen::Index>(ms.size()));
    for (std::size_t k = 0; k < ms.size(); ++k) stack.col(k) = Eigen::Map<const Eigen::VectorXcd>(ms[k].data(), len);
    Eigen::JacobiSVD<CM> svd(stack);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

}  // namespace

RestrictedDual restricted_dual(const CqgAlgebra& A, const CoidealPresentation& pres, const std::vector<IWeight>& lambdas,
                               double q0, double precision) {
    RestrictedDual out;
    out.q0 = q0;
    out.precision = precision;
    out.lambdas = lambdas;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        auto r = A.rep({{lambdas[li], false}});
        const std::size_t n = r->dim();
        const std::vector<Matrix> basis = image_subalgebra(*r, pres);
        std::vector<Matrix> gens;
        for (const auto& g : pres.generators) gens.push_back(evaluate(g.elem, *r));

        // center of π(I), exactly
        Matrix sys(n * n * gens.size(), basis.size());
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (std::size_t k = 0; k < basis.size(); ++k) {
                Matrix c = basis[k] * gens[g] - gens[g] * basis[k];
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) sys(g * n * n + i * n + j, k) = c(i, j);
            }
        CM z = CM::Zero(n, n);
        for (const auto& c : nullspace(sys)) {
            Matrix zc(n, n);
            for (std::size_t k = 0; k < basis.size(); ++k) zc += basis[k].scaled(c[k]);
            z += unif(rng) * to_complex(zc, q0);
        }

        Eigen::ComplexEigenSolver<CM> es(z);
        const Eigen::VectorXcd ev = es.eigenvalues();
        const CM V = es.eigenvectors();
        const CM Vinv = V.inverse();
        const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
        std::vector<std::vector<Eigen::Index>> clusters;
        std::vector<std::complex<double>> centers;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            std::size_t c = 0;
            while (c < centers.size() && std::abs(centers[c] - ev(i)) > 1e-6 * scale) ++c;
            if (c == centers.size()) {
                centers.push_back(ev(i));
                clusters.emplace_back();
            }
            clusters[c].push_back(i);
        }

        std::vector<CM> cbasis, cgens;
        for (const auto& m : basis) cbasis.push_back(to_complex(m, q0));
        for (const auto& m : gens) cgens.push_back(to_complex(m, q0));
        CM sum = CM::Zero(n, n);
        std::vector<CM> idem;
        for (const auto& cl : clusters) {
            CM sel = CM::Zero(n, n);
            for (auto i : cl) sel(i, i) = 1.0;
            CM e = V * sel * Vinv;
            idem.push_back(e);
            sum += e;
            std::vector<CM> part;
            for (const auto& m : cbasis) part.push_back(e * m);
            const std::size_t dim = numeric_rank(part, precision);
            const auto h = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(dim))));
            const auto rk = static_cast<std::size_t>(std::lround(e.trace().real()));
            if (h == 0 || h * h != dim || rk % h != 0)
                throw std::runtime_error("restricted_dual: block of dimension " + std::to_string(dim) +
                                         " is not a full matrix algebra at the given precision");
            out.blocks.push_back({li, h, rk / h, to_nested(e)});
        }
        double res = (sum - CM::Identity(n, n)).norm();
        for (std::size_t i = 0; i < idem.size(); ++i) {
            for (std::size_t j = 0; j < idem.size(); ++j)
                res = std::max(res, (idem[i] * idem[j] - (i == j ? idem[i] : CM::Zero(n, n))).norm());
            for (const auto& g : cgens) res = std::max(res, (idem[i] * g - g * idem[i]).norm());
        }
        for (const auto& g : cgens) {
            CM blockdiag = CM::Zero(n, n);
            for (const auto& e : idem) blockdiag += e * g * e;
            res = std::max(res, (g - blockdiag).norm());
        }
        out.residual = std::max(out.residual, res);
        if (res > std::sqrt(precision))
            throw std::runtime_error("restricted_dual: decomposition residual " + std::to_string(res) + " above tolerance");
    }
    return out;
}

}  // namespace qdouble
