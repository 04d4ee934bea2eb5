#include "qdouble/modp.hpp"

#include <stdexcept>

namespace qdouble {

ModP ModP::from_mpz(const mpz_class& z) {
    mpz_class r = z % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return ModP(r.get_ui());
}

ModP ModP::from_mpq(const mpq_class& q) {
    ModP d = from_mpz(q.get_den());
    if (d.is_zero()) throw std::domain_error("ModP: denominator vanishes mod p");
    return from_mpz(q.get_num()) * d.inverse();
}

ModP ModP::pow(std::uint64_t e) const {
    ModP base = *this, r(1);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

ModP ModP::pow_signed(long long e) const {
    if (e >= 0) return pow(static_cast<std::uint64_t>(e));
    return inverse().pow(static_cast<std::uint64_t>(-e));
}

ModP ModP::inverse() const {
    if (v == 0) throw std::domain_error("ModP: inverse of zero");
    return pow(p - 2);
}

ModpEchelon modp_echelon(std::vector<std::vector<ModP>> rows) {
    ModpEchelon out;
    if (rows.empty()) return out;
    const std::size_t ncols = rows[0].size();
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) order[i] = i;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        std::swap(order[r], order[piv]);
        ModP inv = rows[r][c].inverse();
        for (std::size_t k = c; k < ncols; ++k) rows[r][k] *= inv;
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            ModP f = rows[i][c];
            for (std::size_t k = c; k < ncols; ++k) rows[i][k] -= f * rows[r][k];
        }
        out.pivot_cols.push_back(c);
        out.pivot_rows.push_back(order[r]);
        ++r;
    }
    return out;
}

std::size_t modp_rank(std::vector<std::vector<ModP>> rows) { return modp_echelon(std::move(rows)).pivot_cols.size(); }

}  // namespace qdouble
