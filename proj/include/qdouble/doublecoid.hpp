#pragma once

#include "qdouble/cqgdual.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qdouble {

/// Σ b_i ⊗ u_i in B ⊗ I ≅ D(B,I): B-leg left, U-leg an element of U that should lie in I.
struct DblElem {
    std::vector<std::pair<AElem, AlgElem>> terms;

    static DblElem from_B(AElem b, const Uq& u) {
        DblElem d;
        d.terms.emplace_back(std::move(b), u.one());
        return d;
    }
    static DblElem from_I(AlgElem x, const CqgAlgebra& A) {
        DblElem d;
        d.terms.emplace_back(A.one(), std::move(x));
        return d;
    }
    DblElem& operator+=(const DblElem& o);
    DblElem scaled(const Scalar& c) const;
};

/// (b,u)(b',u') = Σ b·(b' ◁ u_(1)) ⊗ u_(2)u', with b' ◁ x = τ(b'_(1), x) b'_(0).
/// Throws UndecidedError when a U-leg exceeds degree d.
DblElem dbl_multiply(const CqgAlgebra& A, const DblElem& x, const DblElem& y, int d);
/// (bu)* = u* b*, brought back to B ⊗ I form.
DblElem dbl_star(const CqgAlgebra& A, const DblElem& x, int d);
/// Legwise equality after collecting the U-legs on the normal monomial basis.
bool dbl_equal(const CqgAlgebra& A, const DblElem& x, const DblElem& y);

struct NormalFormCertificate {
    bool b_legs = true;
    bool i_legs = true;
    /// One combination per distinct U-leg, in the order of first appearance.
    std::vector<std::pair<AlgElem, ICombination>> i_certificates;
    std::string detail;
    bool ok() const { return b_legs && i_legs; }
};
/// B-legs pass the coset-space test at word length ≤ d_b; U-legs are expressed in coideal words of length ≤ d.
NormalFormCertificate certify_normal_form(const CqgAlgebra& A, const CoidealPresentation& pres, const DblElem& x, int d,
                                          int d_b = 2);

/// A ⊗ C: left legs in A, right legs read through π_C as functionals on I.
struct ACTensor {
    std::vector<std::pair<ACoeff, ACoeff>> terms;
};

/// The canonical Doi–Koppinen module on A truncated at height h: B acts by left
/// multiplication, δ = (id⊗π_C)Δ_A.
struct DKModule {
    DKModule(std::shared_ptr<const CqgAlgebra> a, CoidealPresentation p, long h)
        : A(std::move(a)), pres(std::move(p)), height(h), b_height(h) {}
    std::shared_ptr<const CqgAlgebra> A;
    CoidealPresentation pres;
    long height = 0;
    /// Height bound for the B generators; defaults to `height`.
    long b_height = 0;
    std::vector<AElem> carrier;
    std::vector<std::string> carrier_names;
    std::vector<AElem> b_generators;
    std::vector<std::string> b_names;
    /// δ_B(b) = Σ_k U(ξ,e_k) ⊗ U(G⁻¹e_k, η); the η entries of the right legs are the structure constants.
    std::vector<ATensor> delta_B;
    /// Φ(a_i* a_j).
    Matrix gram;
    /// Rank of {v ↦ b·(v ◁ y)} over b in the generators and y in a basis of π(I) per carrier block,
    /// taken at a mod-p specialization of q (a lower bound for the generic rank).
    std::size_t faithful_rank = 0;
    std::size_t faithful_expected = 0;
};
/// b_height < 0 means b_height = h.
DKModule build_dk_module(std::shared_ptr<const CqgAlgebra> A, const CoidealPresentation& pres, long h, long b_height = -1);
/// Carrier spanned by the coefficients of the listed irreps; B generators from the second list.
DKModule build_dk_module(std::shared_ptr<const CqgAlgebra> A, const CoidealPresentation& pres,
                         const std::vector<IWeight>& carrier_weights, const std::vector<IWeight>& b_weights);
/// Adds `delta` to one structure constant of δ_B.
void perturb_delta_B(DKModule& m, std::size_t gen, std::size_t term, std::size_t entry, const Scalar& delta = Scalar(1));
/// Number of structure constants of δ_B(b_gen) as (terms, entries per term).
std::pair<std::size_t, std::size_t> delta_B_shape(const DKModule& m, std::size_t gen);

struct DKReport {
    bool pass = true;
    std::size_t checked = 0;
    std::vector<std::string> failures;
};
/// δ(bv) = (π⊗id)(δ_B(b))δ(v) for every generator b and carrier vector v. Exact.
/// `only_gen` restricts the check to one generator.
DKReport verify_dk_compat(const DKModule& m, bool stop_at_first = false, std::optional<std::size_t> only_gen = {});
/// Exact equality in A ⊗ C. On failure `witness` names a pair (x, y) with differing pairings.
bool ac_equal(const CqgAlgebra& A, const CoidealPresentation& pres, const ACTensor& x, const ACTensor& y,
              std::string* witness = nullptr);

struct CorrespondenceReport {
    bool identity = true;
    bool interchange = true;
    bool star_b = true;
    bool star_i = true;
    bool nondegenerate = true;
    double idempotent_residual = 0;
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool pass() const { return identity && interchange && star_b && star_i && nondegenerate; }
};
/// π_D(b x̂) = π(b)π̂(x) on the carrier, π̂(x)v = v ◁ x. Checks the interchange relation as operators,
/// *-compatibility for the Gram form, and that the 𝒨 idempotents sum to the identity.
CorrespondenceReport double_rep_correspondence(const DKModule& m, double q0 = 0.5, double precision = 1e-10);

/// Finite-dimensional comodule over a block coalgebra C = π(I)*, stored as the π(I)-action it
/// induces: act[k] is the action of the k-th basis element of π(I).
struct BlockComodule {
    bool right = true;
    const CBlock* block = nullptr;
    std::size_t dim = 0;
    std::vector<Matrix> act;
};
/// Coefficients U(ξ, ·) with δ = (id⊗π_C)Δ: V with π(I) acting on the left.
BlockComodule row_comodule(const CBlock& c);
/// Coefficients U(·, η) with δ = (π_C⊗id)Δ: V with the adjoint action.
BlockComodule column_comodule(const CBlock& c);
BlockComodule regular_right(const CBlock& c);
BlockComodule regular_left(const CBlock& c);
/// One-dimensional comodule for the counit character of π(I); throws std::invalid_argument when
/// V has no invariant vector.
BlockComodule trivial_right(const CBlock& c, const CoidealPresentation& pres);
/// Basis of M □_C N = ker(δ_M⊗id − id⊗δ_N). Throws std::invalid_argument when the blocks differ.
std::vector<Vec> cotensor(const BlockComodule& M, const BlockComodule& N);

/// The diagonal pair on A1⊕A1 against the Drinfeld double of O_q(SU_2) and U_q(sl_2),
/// for x ∈ {E, F, K_ω^{±1}} and h running over unit coefficients of height ≤ 1.
struct DiagonalReport {
    bool embedding_ok = true;   // ι(U) lands in the coideal generators' span
    bool b_image_ok = true;     // h ↦ Ψ(h) solves inside the coset space
    bool commutation_ok = true;
    std::size_t pairs = 0;
    std::vector<std::string> failures;
    bool pass() const { return embedding_ok && b_image_ok && commutation_ok; }
};
DiagonalReport diagonal_double_check(int d = 4);

}  // namespace qdouble
