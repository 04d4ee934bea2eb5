#pragma once

#include "qdouble/quantalg.hpp"
#include "qdouble/repnlab.hpp"
#include "qdouble/rootdata.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qdouble {

struct CoidealGen {
    enum Kind { E, F, K, B } kind;
    int index = 0;   // E, F, B
    IWeight weight;  // K
    AlgElem elem;
    std::string label;
    /// Degree of the generator as an algebra element.
    int degree = 0;
};

/// Generators of U_q(k): E_r, F_r (r ∈ X), K_ω (Θω = ω, ω ∈ F), B_r (r ∉ X).
struct CoidealPresentation {
    std::shared_ptr<const Uq> uq;
    SatakeDiagram diagram;
    std::vector<CoidealGen> generators;
    int degree = 0;

    /// Non-K generators, in order.
    std::vector<std::size_t> letters() const;
    /// Basis of the Θ-fixed part of F used for K generators.
    std::vector<IWeight> torus_basis() const;
    /// Counit on generators: 1 on K's, 0 otherwise.
    Scalar counit(std::size_t g) const;
};

/// Builds the presentation; ad_Twx lifts run at the degree each B_r needs.
/// Throws LiftError when some B_r has degree above `d`.
CoidealPresentation coideal_generators(std::shared_ptr<const Uq> uq, const SatakeDiagram& diagram, int d);

/// K_k · g_{l_1} ⋯ g_{l_n} in the generator alphabet of a presentation.
struct IWord {
    IWeight k;
    std::vector<std::size_t> letters;
};
struct ICombination {
    std::vector<std::pair<Scalar, IWord>> terms;
};

std::string to_string(const CoidealPresentation& pres, const IWord& w);
std::string to_string(const CoidealPresentation& pres, const ICombination& c);
AlgElem evaluate(const CoidealPresentation& pres, const IWord& w);
AlgElem evaluate(const CoidealPresentation& pres, const ICombination& c);

enum class CheckStatus { Pass, Fail, Undecided };
std::string to_string(CheckStatus s);

/// Expresses x in the span of I-words K_ω·g_1⋯g_n with n ≤ d; nullopt when none found.
std::optional<ICombination> express_in_coideal(const CoidealPresentation& pres, const AlgElem& x, int d);

struct MembershipCertificate {
    std::string generator;
    CheckStatus status = CheckStatus::Undecided;
    /// Left-coideal: Δ(g) = Σ left ⊗ right, right legs in I. Star: single entry with empty left.
    std::vector<std::pair<Mono, ICombination>> legs;
    std::string detail;
};

std::vector<MembershipCertificate> check_left_coideal(const CoidealPresentation& pres, int d);
std::vector<MembershipCertificate> check_star_closed(const CoidealPresentation& pres, int d);
std::string to_string(const CoidealPresentation& pres, const MembershipCertificate& c);

/// Basis of {ξ : gξ = ε(g)ξ for all generators}.
std::vector<Vec> invariant_vectors(const Rep& rep, const CoidealPresentation& pres);
/// Basis of the unital algebra generated by the generator matrices.
std::vector<Matrix> image_subalgebra(const Rep& rep, const CoidealPresentation& pres);

}  // namespace qdouble
