#include "qdouble/linalg.hpp"

#include <Eigen/Dense>

#include <sstream>
#include <stdexcept>

namespace qdouble {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::diagonal(const Vec& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t nrows) {
    Matrix m(nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
    return m;
}

Vec Matrix::column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Matrix::row(std::size_t i) const { return Vec(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)); }

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix m = *this;
    if (c.is_one()) return m;
    for (auto& x : m.data_)
        if (!x.is_zero()) x *= c;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix c(a.rows_, b.cols_);
    std::vector<std::vector<std::size_t>> nz(b.rows_);
    for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j)
            if (!b(k, j).is_zero()) nz[k].push_back(j);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j : nz[k]) c(i, j) += x * b(k, j);
        }
    return c;
}

Vec operator*(const Matrix& a, const Vec& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("Matrix: shape mismatch in action");
    Vec y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k)
            if (!x[k].is_zero() && !a(i, k).is_zero()) y[i] += a(i, k) * x[k];
    return y;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ", ";
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
        os << "]";
    }
    os << "]";
    return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a(i, j);
            if (x.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero()) c(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
    return c;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

Scalar dot(const Vec& a, const Vec& b) {
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

Vec vadd(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!b[i].is_zero()) a[i] += b[i];
    return a;
}

Vec vscale(Vec a, const Scalar& c) {
    for (auto& x : a)
        if (!x.is_zero()) x *= c;
    return a;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec kron(const Vec& a, const Vec& b) {
    Vec c(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) c[i * b.size() + j] = a[i] * b[j];
    }
    return c;
}

namespace {

std::size_t complexity(const Scalar& s) {
    return s.numerator().terms().size() + 4 * s.denominator().terms().size() + static_cast<std::size_t>(s.root_order());
}

}  // namespace

Rref rref(Matrix a) {
    Rref out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t best = a.rows();
        std::size_t best_cost = 0;
        for (std::size_t i = r; i < a.rows(); ++i) {
            if (a(i, c).is_zero()) continue;
            std::size_t cost = complexity(a(i, c));
            if (best == a.rows() || cost < best_cost) {
                best = i;
                best_cost = cost;
            }
        }
        if (best == a.rows()) continue;
        if (best != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(best, j));
        Scalar inv = a(r, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j)
            if (!a(r, j).is_zero()) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Scalar f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.r = std::move(a);
    return out;
}

std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

ModP default_modp_point() { return ModP(0x1234567ULL + 987654321ULL * 31ULL); }

std::size_t rank_modp(const Matrix& a, ModP t) {
    std::vector<std::vector<ModP>> rows(a.rows(), std::vector<ModP>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) rows[i][j] = a(i, j).specialize_mod(t);
    return modp_rank(std::move(rows));
}

std::vector<Vec> nullspace(const Matrix& a) {
    Rref e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(a.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            if (!e.r(i, f).is_zero()) v[e.pivots[i]] = -e.r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    Matrix aug(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
    }
    Rref e = rref(std::move(aug));
    Matrix x(a.cols(), b.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.r(i, a.cols() + j);
    }
    return x;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    Matrix bm(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) bm(i, 0) = b[i];
    auto x = solve(a, bm);
    if (!x) return std::nullopt;
    return x->column(0);
}

Matrix inverse(const Matrix& a) {
    if (!a.is_square()) throw std::domain_error("inverse: not square");
    auto x = solve(a, Matrix::identity(a.rows()));
    if (!x || rank(a) != a.rows()) throw std::domain_error("inverse: singular matrix");
    return *x;
}

std::vector<std::size_t> independent_subset(const std::vector<Vec>& vs) {
    std::vector<std::size_t> idx;
    if (vs.empty()) return idx;
    SpanBuilder sb(vs[0].size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (sb.add(vs[i])) idx.push_back(i);
    return idx;
}

std::vector<Vec> span_basis(const std::vector<Vec>& vs) {
    std::vector<Vec> out;
    for (auto i : independent_subset(vs)) out.push_back(vs[i]);
    return out;
}

Vec SpanBuilder::reduce(Vec v) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Scalar f = v[pivots_[k]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!basis_[k][j].is_zero()) v[j] -= f * basis_[k][j];
    }
    return v;
}

bool SpanBuilder::add(const Vec& v) {
    if (v.size() != dim_) throw std::invalid_argument("SpanBuilder: dimension mismatch");
    Vec r = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && r[p].is_zero()) ++p;
    if (p == dim_) return false;
    Scalar inv = r[p].inverse();
    for (auto& x : r)
        if (!x.is_zero()) x *= inv;
    // keep rows fully reduced against the new pivot
    for (auto& row : basis_) {
        const Scalar f = row[p];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!r[j].is_zero()) row[j] -= f * r[j];
    }
    basis_.push_back(std::move(r));
    pivots_.push_back(p);
    original_.push_back(v);
    return true;
}

bool SpanBuilder::contains(const Vec& v) const { return is_zero(reduce(v)); }

std::vector<double> specialize(const Vec& v, double q0) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].specialize(q0);
    return out;
}

std::vector<std::vector<double>> specialize(const Matrix& m, double q0) {
    std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).specialize(q0);
    return out;
}

double min_eigenvalue_symmetric(const std::vector<std::vector<double>>& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    if (n == 0) return 0.0;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = 0.5 * (m[i][j] + m[j][i]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace qdouble
