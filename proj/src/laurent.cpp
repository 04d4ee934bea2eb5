#include "qdouble/laurent.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qdouble {

namespace {

using Dense = std::vector<mpq_class>;  // coefficient of v^i at index i

void trim(Dense& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Dense to_dense(const LaurentPoly& p) {
    Dense d;
    if (p.is_zero()) return d;
    long lo = p.min_exponent();
    d.assign(static_cast<std::size_t>(p.max_exponent() - lo + 1), mpq_class(0));
    for (const auto& [e, c] : p.terms()) d[static_cast<std::size_t>(e - lo)] = c;
    return d;
}

LaurentPoly from_dense(const Dense& d) {
    LaurentPoly r;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) r += LaurentPoly::monomial(static_cast<long>(i), d[i]);
    return r;
}

// a mod b, b nonzero, in place
void dense_rem(Dense& a, const Dense& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const mpq_class& lb = b.back();
    while (!a.empty() && a.size() - 1 >= db) {
        mpq_class f = a.back() / lb;
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
}

void make_monic(Dense& a) {
    if (a.empty()) return;
    mpq_class l = a.back();
    for (auto& c : a) c /= l;
}

}  // namespace

LaurentPoly::LaurentPoly(const mpq_class& c) {
    if (c != 0) {
        terms_.emplace_back(0, c);
        terms_.back().second.canonicalize();
    }
}

LaurentPoly LaurentPoly::monomial(long exponent, const mpq_class& c) {
    LaurentPoly p;
    if (c != 0) {
        p.terms_.emplace_back(exponent, c);
        p.terms_.back().second.canonicalize();
    }
    return p;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

void LaurentPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second == 0; }),
              out.end());
    terms_ = std::move(out);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
        if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
            out.push_back(std::move(*i++));
        } else if (i == terms_.end() || j->first < i->first) {
            out.push_back(*j++);
        } else {
            mpq_class s = i->second + j->second;
            if (s != 0) out.emplace_back(i->first, std::move(s));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
        const auto& mono = a.terms_.size() == 1 ? a : b;
        const auto& other = a.terms_.size() == 1 ? b : a;
        r.terms_.reserve(other.terms_.size());
        for (const auto& [e, c] : other.terms_)
            r.terms_.emplace_back(e + mono.terms_[0].first, c * mono.terms_[0].second);
        return r;
    }
    long lo = a.min_exponent() + b.min_exponent();
    long hi = a.max_exponent() + b.max_exponent();
    std::vector<mpq_class> acc(static_cast<std::size_t>(hi - lo + 1), mpq_class(0));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) acc[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (acc[i] != 0) r.terms_.emplace_back(lo + static_cast<long>(i), std::move(acc[i]));
    return r;
}

LaurentPoly LaurentPoly::scaled(const mpq_class& c) const {
    if (c == 0) return {};
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

LaurentPoly LaurentPoly::shifted(long k) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.first += k;
    return r;
}

LaurentPoly LaurentPoly::stretched(long k) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.first *= k;
    return r;
}

LaurentPoly LaurentPoly::compressed(long k) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) {
        if (t.first % k != 0) throw std::domain_error("LaurentPoly::compressed: exponent not divisible");
        t.first /= k;
    }
    return r;
}

LaurentPoly LaurentPoly::reflected() const {
    LaurentPoly r;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
    return r;
}

long LaurentPoly::exponent_gcd() const {
    long g = 0;
    for (const auto& t : terms_) g = std::gcd(g, t.first < 0 ? -t.first : t.first);
    return g;
}

LaurentPoly LaurentPoly::divexact(const LaurentPoly& d) const {
    if (d.is_zero()) throw std::domain_error("LaurentPoly::divexact: division by zero");
    if (is_zero()) return {};
    if (d.is_monomial()) {
        LaurentPoly r = *this;
        for (auto& t : r.terms_) {
            t.first -= d.terms_[0].first;
            t.second /= d.terms_[0].second;
        }
        return r;
    }
    long shift = min_exponent() - d.min_exponent();
    Dense a = to_dense(*this);
    Dense b = to_dense(d);
    if (a.size() < b.size()) throw std::domain_error("LaurentPoly::divexact: not divisible");
    Dense q(a.size() - b.size() + 1, mpq_class(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        mpq_class f = a[k + b.size() - 1] / b.back();
        q[k] = f;
        if (f != 0)
            for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= f * b[i];
    }
    for (const auto& c : a)
        if (c != 0) throw std::domain_error("LaurentPoly::divexact: not divisible");
    return from_dense(q).shifted(shift);
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            return x.second < y.second;
        });
}

LaurentPoly LaurentPoly::poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() && b.is_zero()) return LaurentPoly(1);
    Dense x = to_dense(a);
    Dense y = to_dense(b);
    if (x.empty()) std::swap(x, y);
    if (y.empty()) {
        make_monic(x);
        return from_dense(x);
    }
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        dense_rem(x, y);
        make_monic(x);
        std::swap(x, y);
    }
    make_monic(x);
    return from_dense(x);
}

std::string LaurentPoly::to_string(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        mpq_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = mag == 1;
        if (e == 0) {
            os << mag.get_str();
            continue;
        }
        if (!unit) os << mag.get_str() << "*";
        os << var;
        if (e != 1) os << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
    }
    return os.str();
}

}  // namespace qdouble
