#pragma once

#include "qdouble/rewrite.hpp"
#include "qdouble/rootdata.hpp"
#include "qdouble/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

namespace qdouble {

/// Normal monomial F_{f_1}...F_{f_k} K_ω E_{e_1}...E_{e_m}.
struct Mono {
    LWord f;
    IWeight k;
    LWord e;
    friend bool operator<(const Mono& a, const Mono& b) {
        if (a.f != b.f) return deglex_less(a.f, b.f);
        if (a.e != b.e) return deglex_less(a.e, b.e);
        return a.k < b.k;
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.f == b.f && a.k == b.k && a.e == b.e; }
    /// |F| + |E| + (K ≠ 1).
    int degree() const;
};

/// Element of U_q(g) in normal form: a linear combination of normal monomials.
class AlgElem {
public:
    AlgElem() = default;
    AlgElem(const Mono& m, const Scalar& c);

    const std::map<Mono, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    void add(const Mono& m, const Scalar& c);

    AlgElem& operator+=(const AlgElem& o);
    AlgElem& operator-=(const AlgElem& o);
    friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
    friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
    AlgElem operator-() const;
    AlgElem scaled(const Scalar& c) const;
    friend AlgElem operator*(const Scalar& c, const AlgElem& a) { return a.scaled(c); }
    friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const AlgElem& a, const AlgElem& b) { return !(a == b); }

private:
    std::map<Mono, Scalar> terms_;
};

/// Element of the n-fold tensor power of U_q(g), legwise normal.
class TensorElem {
public:
    explicit TensorElem(std::size_t arity = 2) : arity_(arity) {}
    std::size_t arity() const { return arity_; }
    const std::map<std::vector<Mono>, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const std::vector<Mono>& m, const Scalar& c);
    TensorElem& operator+=(const TensorElem& o);
    TensorElem& operator-=(const TensorElem& o);
    friend TensorElem operator-(TensorElem a, const TensorElem& b) { return a -= b; }
    friend TensorElem operator+(TensorElem a, const TensorElem& b) { return a += b; }
    TensorElem scaled(const Scalar& c) const;
    friend bool operator==(const TensorElem& a, const TensorElem& b) { return a.terms_ == b.terms_; }

    static TensorElem pure(const std::vector<AlgElem>& legs);

private:
    std::size_t arity_;
    std::map<std::vector<Mono>, Scalar> terms_;
};

/// A generator symbol of the free presentation.
struct Gen {
    enum Kind { E, F, K } kind;
    int index = 0;  // E/F
    IWeight weight;  // K
};

/// Element of the free algebra on the generators (used for defining relations).
struct FreeElem {
    std::vector<std::pair<Scalar, std::vector<Gen>>> terms;
};

struct Relation {
    std::string name;
    FreeElem expr;  // the relation is expr = 0
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// U_q(g) for a root datum: generators E_r, F_r, K_ω (ω ∈ F) with the
/// relations of the quantized enveloping algebra; Hopf *-structure.
class Uq {
public:
    Uq(std::shared_ptr<const RootDatum> datum, int maxdeg = 8, long serre_perturbation = 0);

    const RootDatum& datum() const { return *datum_; }
    std::shared_ptr<const RootDatum> datum_ptr() const { return datum_; }
    const RewriteSystem& rewriting() const { return rewrite_; }
    int rank() const { return datum_->rank(); }

    AlgElem one() const;
    AlgElem E(int r) const;
    AlgElem F(int r) const;
    AlgElem K(const IWeight& w) const;
    AlgElem K_alpha(int r, long power = 1) const;
    AlgElem scalar(const Scalar& c) const;
    AlgElem gen(const Gen& g) const;

    /// q^{(a,b)}.
    Scalar q_form(const IWeight& a, const IWeight& b) const;
    /// q_r = q^{d_r}.
    Scalar q_r(int r) const;

    AlgElem multiply(const AlgElem& a, const AlgElem& b) const;
    AlgElem power(const AlgElem& a, int n) const;
    /// Normal form of a free-algebra expression.
    AlgElem evaluate_free(const FreeElem& x) const;
    /// Normal form of a raw monomial whose F/E words need not be irreducible.
    AlgElem normalize(const Mono& raw, const Scalar& c = Scalar(1)) const;

    /// Weight of a monomial: wt(E_r) = α_r, wt(F_r) = −α_r.
    IWeight weight(const Mono& m) const;

    TensorElem coproduct(const AlgElem& x) const;
    Scalar counit(const AlgElem& x) const;
    AlgElem antipode(const AlgElem& x) const;
    AlgElem star(const AlgElem& x) const;
    AlgElem unitary_antipode(const AlgElem& x) const;

    /// Multiplication of n-fold tensors, legwise.
    TensorElem multiply(const TensorElem& a, const TensorElem& b) const;
    /// Apply a linear map to one leg (leg index), producing arity+extra legs.
    TensorElem coproduct_on_leg(const TensorElem& t, std::size_t leg) const;
    TensorElem counit_on_leg(const TensorElem& t, std::size_t leg) const;
    AlgElem multiply_legs(const TensorElem& t) const;  // arity-2 only
    TensorElem apply_legwise(const TensorElem& t, AlgElem (Uq::*f)(const AlgElem&) const) const;
    TensorElem flip(const TensorElem& t) const;  // arity-2 only

    /// The defining relations (K-relations on a lattice basis).
    std::vector<Relation> relations() const;
    /// Random element: sum of up to `terms` products of ≤ maxlen generators.
    AlgElem random_element(std::mt19937& rng, int maxlen, int terms = 3) const;

    std::string to_string(const AlgElem& x) const;
    std::string to_string(const Mono& m) const;

private:
    std::shared_ptr<const RootDatum> datum_;
    RewriteSystem rewrite_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<Mono, Mono>, AlgElem> mul_cache_;
    mutable std::map<Mono, TensorElem> coproduct_cache_;

    AlgElem mul_mono(const Mono& a, const Mono& b) const;
    AlgElem left_E(int r, const AlgElem& x) const;
    AlgElem left_F(int r, const AlgElem& x) const;
    AlgElem left_K(const IWeight& w, const AlgElem& x) const;
    IWeight word_weight(const LWord& w) const;  // Σ α over letters
    AlgElem anti_extend(const AlgElem& x, AlgElem (Uq::*on_gen)(const Gen&) const) const;
    AlgElem antipode_gen(const Gen& g) const;
    AlgElem star_gen(const Gen& g) const;
    AlgElem unitary_antipode_gen(const Gen& g) const;
};

/// Runs the Hopf axiom suite: generators plus `samples` random elements of degree ≤ maxdeg.
std::vector<CheckResult> hopf_axiom_check(const Uq& u, int maxdeg, int samples, unsigned seed = 1);

}  // namespace qdouble
