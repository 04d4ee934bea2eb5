#pragma once

#include "qdouble/qsympair.hpp"
#include "qdouble/repnlab.hpp"

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

namespace qdouble {

/// V(λ), or its contragredient x ↦ G⁻¹π(S x)ᵀG with the same form G.
struct RepFactor {
    IWeight lambda;
    bool dual = false;
    friend bool operator<(const RepFactor& a, const RepFactor& b) {
        return a.lambda != b.lambda ? a.lambda < b.lambda : a.dual < b.dual;
    }
    friend bool operator==(const RepFactor& a, const RepFactor& b) { return a.lambda == b.lambda && a.dual == b.dual; }
};
/// Ordered tensor product of factors; the empty label is the trivial rep.
using RepLabel = std::vector<RepFactor>;
std::string to_string(const RepLabel& l);

/// U_π(ξ,η): x ↦ ⟨ξ, π(x)η⟩ with ⟨u,w⟩ = uᵀGw. Scalars are folded into η.
struct ACoeff {
    RepLabel label;
    Vec xi, eta;
};

class AElem {
public:
    AElem() = default;
    explicit AElem(ACoeff c) { terms.push_back(std::move(c)); }
    std::vector<ACoeff> terms;

    AElem& operator+=(const AElem& o);
    friend AElem operator+(AElem a, const AElem& b) { return a += b; }
    friend AElem operator-(AElem a, const AElem& b) { return a += b.scaled(Scalar(-1)); }
    AElem scaled(const Scalar& c) const;
};

/// Σ a_i ⊗ b_i with simple legs.
struct ATensor {
    std::vector<std::pair<ACoeff, ACoeff>> terms;
};

/// The matrix-coefficient Hopf *-algebra O_q(U_F), realized inside Lin(U, Q(v)).
class CqgAlgebra {
public:
    explicit CqgAlgebra(std::shared_ptr<const Uq> uq, std::size_t max_dim = 400);

    const Uq& uq() const { return *uq_; }
    std::shared_ptr<const Uq> uq_ptr() const { return uq_; }
    const RootDatum& datum() const { return uq_->datum(); }

    /// Cached representation for a label; throws std::length_error above max_dim.
    std::shared_ptr<const Rep> rep(const RepLabel& l) const;
    const Matrix& gram_inverse(const RepLabel& l) const;
    /// Projection onto the invariants along U⁺·V.
    const Matrix& invariant_projection(const RepLabel& l) const;

    AElem one() const;
    /// U(e_i, e_j) in V(λ).
    AElem matrix_coeff(const IWeight& lambda, std::size_t i, std::size_t j) const;
    /// U(G⁻¹e_i, e_j): pairs with x to π(x)_{ij}.
    AElem unit_coeff(const IWeight& lambda, std::size_t i, std::size_t j) const;

    Scalar pairing(const ACoeff& a, const AlgElem& x) const;
    Scalar pairing(const AElem& a, const AlgElem& x) const;
    /// Pairing of A ⊗ A with U ⊗ U.
    Scalar pairing(const ATensor& t, const TensorElem& x) const;

    AElem product(const AElem& a, const AElem& b) const;
    ACoeff product(const ACoeff& a, const ACoeff& b) const;
    /// Σ_k U(ξ,e_k) ⊗ U(G⁻¹e_k, η).
    ATensor coproduct(const AElem& a) const;
    AElem star(const AElem& a) const;
    ACoeff star(const ACoeff& a) const;
    Scalar haar(const AElem& a) const;

    /// Exact: grouped by label first, then pairing against a spanning set of the image of U.
    bool is_zero(const AElem& a) const;
    bool equal(const AElem& a, const AElem& b) const { return is_zero(a - b); }

    /// Random combination of unit coefficients of irreps with height ≤ h.
    AElem random_element(std::mt19937& rng, long h, int terms = 3) const;

private:
    std::shared_ptr<const Uq> uq_;
    std::size_t max_dim_;
    mutable std::mutex mutex_;
    mutable std::map<RepLabel, std::shared_ptr<const Rep>> reps_;
    mutable std::map<RepLabel, Matrix> gram_inv_;
    mutable std::map<RepLabel, Matrix> projections_;
    mutable std::map<RepLabel, Matrix> haar_forms_;

    /// G·P for the invariant projection P.
    const Matrix& haar_form(const RepLabel& l) const;
};

/// Dimension of the span of matrix coefficients of all V(λ), height λ ≤ h: the rank of
/// their pairing matrix against a basis of words spanning the image of U.
struct PeterWeylReport {
    std::size_t rank = 0;
    std::size_t expected = 0;  // Σ (dim V_λ)²
    std::size_t words = 0;
};
PeterWeylReport peter_weyl_rank(const CqgAlgebra& A, long h);
PeterWeylReport peter_weyl_rank(const CqgAlgebra& A, const std::vector<IWeight>& lambdas);

/// C_λ = π_λ(I)*. A coefficient maps to its values on the basis of π_λ(I).
struct CBlock {
    IWeight lambda;
    std::shared_ptr<const Rep> rep;
    std::vector<Matrix> basis;
    std::size_t dim() const { return basis.size(); }
};
CBlock quotient_block(const CqgAlgebra& A, const IWeight& lambda, const CoidealPresentation& pres);
/// π_C(U(ξ,η)) in block coordinates.
Vec project_C(const CBlock& block, const Vec& xi, const Vec& eta);
/// f ↦ f†, f†(M) = f(M†) with M† the Gram adjoint.
Vec dagger(const CBlock& block, const Vec& f);
/// Δ(f†) = (†⊗†)Δ^op(f) on every dual basis element.
bool check_dagger(const CBlock& block);

/// The coefficients U(ξ, e_j) with ξ invariant under π(I): the part of B = ᶜA inside V(λ)'s coefficients.
std::vector<AElem> homspace_B(const CqgAlgebra& A, const IWeight& lambda, const CoidealPresentation& pres);
/// τ(b_(1), y) b_(2) = ε(y) b for every coideal word y of length ≤ d.
bool check_homspace_member(const CqgAlgebra& A, const CoidealPresentation& pres, const AElem& b, int d);

using CMatrix = std::vector<std::vector<std::complex<double>>>;

/// One matrix block End(H) of the restricted dual inside End(V_λ).
struct DualBlock {
    std::size_t rep_index = 0;
    std::size_t h_dim = 0;
    std::size_t multiplicity = 0;
    /// Minimal central idempotent of π(I) at q0.
    CMatrix idempotent;
};
struct RestrictedDual {
    double q0 = 0.5;
    double precision = 1e-10;
    std::vector<IWeight> lambdas;
    std::vector<DualBlock> blocks;
    /// max over blocks of ‖e_i e_j − δ_ij e_i‖, ‖Σ e_i − 1‖, ‖[e_i, π(g)]‖ and ‖π(g) − Σ e_i π(g) e_i‖.
    double residual = 0;
};
/// Wedderburn split of π_λ(I) for each λ at q0; throws std::runtime_error when the block
/// dimensions are not consistent at the given precision.
RestrictedDual restricted_dual(const CqgAlgebra& A, const CoidealPresentation& pres, const std::vector<IWeight>& lambdas,
                               double q0 = 0.5, double precision = 1e-10);

}  // namespace qdouble
