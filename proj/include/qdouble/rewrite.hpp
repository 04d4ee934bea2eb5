#pragma once

#include "qdouble/rootdata.hpp"
#include "qdouble/scalar.hpp"

#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace qdouble {

/// Word in the letters 0..rank-1 (one block of generators, E or F).
using LWord = std::vector<int>;
/// Linear combination of words.
using WordPoly = std::map<LWord, Scalar>;

/// Degree-lexicographic order, larger letter index is bigger.
bool deglex_less(const LWord& a, const LWord& b);

struct Rule {
    LWord lhs;
    WordPoly rhs;  // lhs → rhs, every word of rhs is smaller than lhs
    std::string origin;
};

struct CompletionStatus {
    int maxdeg = 0;
    /// All critical pairs of degree ≤ maxdeg resolve.
    bool resolved_to_maxdeg = false;
    /// Every critical pair of the final rule set resolves (normal forms certified at all degrees).
    bool complete = false;
    /// Irreducible-word counts agree with the PBW dimensions (Kostant partition function) up to maxdeg.
    bool pbw_counts_match = false;
    std::string witness;
    /// Per-degree flag: counts match in every multidegree of that total degree.
    std::map<int, bool> per_degree;
};

/// Noncommutative rewriting system for the quantum Serre relations on one
/// block of generators (the E- and F-blocks satisfy relations of the same shape).
class RewriteSystem {
public:
    /// perturbation ≠ 0 adds that integer to one coefficient of the first
    /// Serre relation (used to exercise the failure path).
    RewriteSystem(const RootDatum& datum, int maxdeg, long perturbation = 0);

    /// The defining Serre relations as word polynomials (leading term first is not guaranteed).
    const std::vector<WordPoly>& serre_relations() const { return relations_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const CompletionStatus& status() const { return status_; }

    /// Normal form of a word; throws UndecidedError when |w| exceeds the
    /// certified degree of an incomplete system.
    const WordPoly& normal_form(const LWord& w) const;
    WordPoly normal_form(const WordPoly& p) const;
    bool is_irreducible(const LWord& w) const;

    /// Irreducible words with a given multidegree (simple-root coordinates).
    std::vector<LWord> irreducible_words(const std::vector<long>& multidegree) const;

private:
    const RootDatum* datum_;
    int rank_;
    int maxdeg_;
    std::vector<WordPoly> relations_;
    std::vector<Rule> rules_;
    CompletionStatus status_;
    mutable std::mutex cache_mutex_;
    mutable std::map<LWord, WordPoly> cache_;

    WordPoly reduce(WordPoly p) const;
    void complete();
    void check_counts();
    static bool find_match(const LWord& w, const LWord& lhs, std::size_t& pos);
};

}  // namespace qdouble
