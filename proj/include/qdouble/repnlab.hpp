#pragma once

#include "qdouble/linalg.hpp"
#include "qdouble/quantalg.hpp"
#include "qdouble/rootdata.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qdouble {

/// Finite-dimensional irreducible type-1 representation with highest weight λ.
///
/// Basis vectors are weight vectors, ordered by depth (height of λ − wt)
/// and then by weight. The contravariant form is kept as a Gram matrix.
struct Rep {
    std::shared_ptr<const RootDatum> datum;
    IWeight lambda;
    std::vector<IWeight> weights;
    std::vector<Matrix> E, F;
    Matrix gram;
    /// Action of K_{-2ρ}.
    Matrix t_matrix;

    std::size_t dim() const { return weights.size(); }
    Matrix K(const IWeight& w) const;
};

/// Builds V(λ) weight space by weight space; throws std::invalid_argument when
/// λ is not dominant or not in the lattice, std::length_error above max_dim.
Rep build_irrep(std::shared_ptr<const RootDatum> datum, const IWeight& lambda, std::size_t max_dim = 400);

/// G·M(x*) = M(x)ᵀ·G on all generators, and M(S²x) = T M(x) T⁻¹.
bool check_star_rep(const Rep& rep);
bool check_star_rep(const Rep& rep, const Matrix& gram);

/// Lusztig braid operator T_r on the representation.
Matrix braid_T(const Rep& rep, int r);
Matrix braid_T_inverse(const Rep& rep, int r);
/// T_{r_1}⋯T_{r_n} for a word.
Matrix braid_T_word(const Rep& rep, const Word& w);

Matrix evaluate(const AlgElem& x, const Rep& rep);
Matrix evaluate(const Mono& m, const Rep& rep);
Matrix evaluate(const FreeElem& x, const Rep& rep);

/// Representations of all dominant λ ∈ F of height ≤ degree + margin.
struct SeparatingSet {
    int degree = 0;
    int margin = 1;
    std::vector<Rep> reps;
};

SeparatingSet build_separating_set(std::shared_ptr<const RootDatum> datum, int degree, int margin = 1,
                                   std::size_t max_dim = 400);

/// x = y iff they act identically on every rep of the set; throws
/// std::invalid_argument when d exceeds the set's degree.
bool equality_oracle(const AlgElem& x, const AlgElem& y, int d, const SeparatingSet& set);

/// The normal monomials F_f K_ω E_e of a given weight with |f| + |e| + (ω ≠ 0) ≤ d
/// and ω drawn from k_candidates.
std::vector<Mono> candidate_monomials(const Uq& u, const IWeight& weight, int d, const std::vector<IWeight>& k_candidates);
/// 0 and ±α_r for every r.
std::vector<IWeight> default_k_candidates(const RootDatum& datum);

/// Finds the unique element of degree ≤ d with the given images on the reps.
/// Candidate weights are read off the targets, plus any listed in `weights`.
/// Throws LiftError when no solution exists or the candidates are not separated.
AlgElem lift_to_algebra(const Uq& u, const std::vector<Rep>& reps, const std::vector<Matrix>& targets, int d,
                        const std::vector<IWeight>& k_candidates = {}, const std::vector<IWeight>& weights = {});

/// Ad(T_{w_X})(x) as an algebra element. Computed along wX() and re-checked along wX_alt().
AlgElem ad_Twx(const Uq& u, const SatakeDiagram& diagram, const AlgElem& x, int d, const SeparatingSet& set);
/// Ad(T_w)(x) for an explicit word.
AlgElem ad_T_word(const Uq& u, const Word& w, const AlgElem& x, int d, const SeparatingSet& set);

}  // namespace qdouble
