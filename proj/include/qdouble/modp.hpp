#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace qdouble {

/// Arithmetic in F_p for the Mersenne prime p = 2^61 - 1. Used only to pick
/// pivots and bound ranks; every conclusion drawn from it is either a rank
/// lower bound or is re-checked exactly.
struct ModP {
    static constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
    std::uint64_t v = 0;

    ModP() = default;
    constexpr explicit ModP(std::uint64_t x) : v(x % p) {}
    static ModP from_int(long long x) {
        long long r = x % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return ModP(static_cast<std::uint64_t>(r));
    }
    static ModP from_mpz(const mpz_class& z);
    /// Throws std::domain_error when the denominator vanishes mod p.
    static ModP from_mpq(const mpq_class& q);

    friend ModP operator+(ModP a, ModP b) {
        std::uint64_t s = a.v + b.v;
        if (s >= p) s -= p;
        return ModP(s);
    }
    friend ModP operator-(ModP a, ModP b) { return ModP(a.v >= b.v ? a.v - b.v : a.v + p - b.v); }
    friend ModP operator*(ModP a, ModP b) {
        unsigned __int128 m = static_cast<unsigned __int128>(a.v) * b.v;
        std::uint64_t lo = static_cast<std::uint64_t>(m & p);
        std::uint64_t hi = static_cast<std::uint64_t>(m >> 61);
        std::uint64_t s = lo + hi;
        if (s >= p) s -= p;
        return ModP(s);
    }
    ModP operator-() const { return ModP(v == 0 ? 0 : p - v); }
    ModP& operator+=(ModP o) { return *this = *this + o; }
    ModP& operator-=(ModP o) { return *this = *this - o; }
    ModP& operator*=(ModP o) { return *this = *this * o; }
    ModP pow(std::uint64_t e) const;
    ModP pow_signed(long long e) const;
    ModP inverse() const;
    bool is_zero() const { return v == 0; }
    friend bool operator==(ModP a, ModP b) { return a.v == b.v; }
    friend bool operator!=(ModP a, ModP b) { return a.v != b.v; }
};

/// Rank of a matrix over F_p (rows given as vectors); destroys input.
std::size_t modp_rank(std::vector<std::vector<ModP>> rows);

/// Row echelon over F_p. Returns indices of the pivot columns, and the
/// original indices of the rows that produced them (in pivot order).
struct ModpEchelon {
    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> pivot_rows;
};
ModpEchelon modp_echelon(std::vector<std::vector<ModP>> rows);

}  // namespace qdouble
