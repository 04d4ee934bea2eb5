#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace qdouble {

/// Integral weight in the fundamental-weight basis.
using IWeight = std::vector<long>;
/// Word in simple reflections (0-based indices); as a group element
/// the word [r1,...,rn] means s_{r1}...s_{rn}.
using Word = std::vector<int>;

IWeight operator+(IWeight a, const IWeight& b);
IWeight operator-(IWeight a, const IWeight& b);
IWeight operator-(IWeight a);
IWeight operator*(long c, IWeight a);
bool is_zero(const IWeight& w);

class RootDatum {
public:
    /// type in {A,B,C,D,G2}; lattice "Q", "P", or explicit generator rows
    /// (fundamental-weight coordinates).
    static RootDatum build(const std::string& type, int rank, const std::string& lattice = "P",
                           const std::vector<IWeight>& generators = {});

    const std::string& type() const { return type_; }
    int rank() const { return rank_; }
    long cartan(int r, int s) const { return cartan_[r][s]; }
    const std::vector<std::vector<long>>& cartan_matrix() const { return cartan_; }
    long d(int r) const { return d_[r]; }
    const std::string& lattice_name() const { return lattice_name_; }

    /// (λ, μ) for weights in fundamental coordinates.
    mpq_class form(const IWeight& a, const IWeight& b) const;
    mpq_class form_rational(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const;
    const std::vector<std::vector<mpq_class>>& fundamental_gram() const { return gram_; }

    /// α_r in fundamental coordinates (column r of the Cartan matrix).
    const IWeight& alpha(int r) const { return alpha_[r]; }
    IWeight rho() const { return IWeight(static_cast<std::size_t>(rank_), 1); }
    IWeight fundamental(int r) const;
    /// α from simple-root coordinates.
    IWeight from_simple(const std::vector<long>& c) const;
    /// Simple-root coordinates (rational in general).
    std::vector<mpq_class> to_simple(const IWeight& w) const;

    const std::vector<IWeight>& positive_roots() const { return pos_roots_; }
    const std::vector<std::vector<long>>& positive_roots_simple() const { return pos_roots_simple_; }

    IWeight reflect(int r, const IWeight& w) const;
    IWeight weyl_act(const Word& word, const IWeight& w) const;

    bool in_root_lattice(const IWeight& w) const;
    bool in_lattice(const IWeight& w) const;
    /// Basis of F (rows, fundamental coordinates).
    const std::vector<IWeight>& lattice_basis() const { return lattice_basis_; }
    const std::vector<IWeight>& lattice_generators() const { return lattice_gens_; }

    /// Least L > 0 with L·(ω_i,ω_j) ∈ Z.
    long root_order() const { return root_order_; }

    bool is_dominant(const IWeight& w) const;
    static long height(const IWeight& w);
    /// Weyl dimension formula; throws std::invalid_argument on non-dominant input.
    long weyl_dim(const IWeight& lambda) const;
    /// Dominant λ ∈ F with height ≤ h, by height then lexicographically.
    std::vector<IWeight> dominant_weights_up_to(long h) const;

    /// Longest element of W_X as a reduced word (X a subset of 0..rank-1).
    Word longest_word(const std::set<int>& X, bool prefer_high = false) const;
    std::vector<IWeight> positive_roots_in(const std::set<int>& X) const;

    /// Number of ways to write the simple-coordinate vector c as a sum of positive roots.
    long kostant_partition(const std::vector<long>& c) const;

private:
    std::string type_;
    int rank_ = 0;
    std::vector<std::vector<long>> cartan_;
    std::vector<long> d_;
    std::vector<std::vector<mpq_class>> gram_;
    std::vector<std::vector<mpq_class>> cartan_inv_;
    std::vector<IWeight> alpha_;
    std::vector<IWeight> pos_roots_;
    std::vector<std::vector<long>> pos_roots_simple_;
    std::string lattice_name_;
    std::vector<IWeight> lattice_gens_;
    std::vector<IWeight> lattice_basis_;
    std::vector<std::vector<mpq_class>> lattice_basis_inv_;
    long root_order_ = 1;
    mutable std::map<std::vector<long>, long> kostant_cache_;

    long kostant_from(const std::vector<long>& c, std::size_t first) const;
};

/// Integer kernel of the map x ↦ x·M (rows of M are images of basis vectors).
std::vector<IWeight> integer_left_kernel(const std::vector<IWeight>& m);
/// Hermite-style basis of the Z-span of the given rows (nonzero rows only).
std::vector<IWeight> integer_row_basis(std::vector<IWeight> rows);

struct AxiomCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool pass() const;
};

class SatakeDiagram {
public:
    /// Builds and validates; use report() for the axiom outcome.
    SatakeDiagram(std::shared_ptr<const RootDatum> base, std::set<int> X, std::vector<int> tau);

    const RootDatum& base() const { return *base_; }
    std::shared_ptr<const RootDatum> base_ptr() const { return base_; }
    const std::set<int>& X() const { return X_; }
    bool in_X(int r) const { return X_.count(r) > 0; }
    int tau(int r) const { return tau_[r]; }
    const std::vector<int>& tau_vector() const { return tau_; }
    const Word& wX() const { return wX_; }
    /// A second reduced word of w_X (equal to wX() when only one exists).
    const Word& wX_alt() const { return wX_alt_; }
    int z(int r) const { return z_[r]; }
    const std::vector<int>& z_vector() const { return z_; }
    void set_z(std::vector<int> z) { z_ = std::move(z); }

    const AxiomReport& report() const { return report_; }
    bool valid() const { return report_.pass(); }

    IWeight tau_act(const IWeight& w) const;
    IWeight theta(const IWeight& w) const;
    /// Matrix of Θ: row i is Θ(ω_i).
    std::vector<IWeight> theta_matrix() const;
    /// α_r⁺ = ½(α_r + Θα_r), rational fundamental coordinates.
    std::vector<mpq_class> alpha_plus(int r) const;
    /// (α_r, δ_X^∨).
    mpq_class alpha_delta(int r) const;
    /// Basis of {ω ∈ F : Θω = ω}.
    std::vector<IWeight> theta_fixed_sublattice() const;

private:
    std::shared_ptr<const RootDatum> base_;
    std::set<int> X_;
    std::vector<int> tau_;
    Word wX_, wX_alt_;
    std::vector<int> z_;
    AxiomReport report_;
};

AxiomReport validate_satake(const RootDatum& base, const std::set<int>& X, const std::vector<int>& tau);
/// z_r = 1 when (α_r, δ_X^∨) ∈ Z, otherwise +1 for r < τ(r) and −1 for r > τ(r).
std::vector<int> choose_z(const SatakeDiagram& d);

std::string word_to_string(const Word& w);  // 1-based, "s1 s2 s1"

}  // namespace qdouble
