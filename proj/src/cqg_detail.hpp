#pragma once

#include "qdouble/linalg.hpp"

#include <cstdint>
#include <vector>

namespace qdouble::detail {

Vec unit_vec(std::size_t n, std::size_t i);
Matrix outer(const Vec& a, const Vec& b);
Vec row_times(const Vec& x, const Matrix& m);
Scalar trace_product(const Matrix& a, const Matrix& b);

using PVec = std::vector<ModP>;

/// Row-major specialization at q = t.
PVec specialize_flat(const Matrix& m, ModP t);
PVec specialize_vec(const Vec& v, ModP t);
/// n×n times n×n, row-major.
PVec pmul(const PVec& a, const PVec& b, std::size_t n);

/// Incremental echelon basis over F_p.
class PSpan {
public:
    bool add(PVec v);
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<PVec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Closure of the unit under right multiplication by the generators at q = t:
/// blocks[k][b] is word k on block b.
struct PClosure {
    std::vector<std::vector<PVec>> blocks;
    std::vector<std::vector<std::size_t>> words;
};
/// gens[g][b] is generator g on block b. Stops after `limit` words.
PClosure closure_modp(const std::vector<std::vector<Matrix>>& gens, const std::vector<std::size_t>& dims, ModP t,
                      std::size_t limit = SIZE_MAX);

}  // namespace qdouble::detail
