#pragma once

#include <stdexcept>
#include <string>

namespace qdouble {

/// A decision procedure ran out of its configured bound. Distinct from a
/// failed check: the answer is unknown, not negative.
class UndecidedError : public std::runtime_error {
public:
    explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix family has no (or no unique) preimage in the candidate monomial span.
class LiftError : public std::runtime_error {
public:
    explicit LiftError(const std::string& what, bool underdetermined = false)
        : std::runtime_error(what), underdetermined_(underdetermined) {}
    /// The candidates were not separated (as opposed to: no solution exists).
    bool underdetermined() const { return underdetermined_; }

private:
    bool underdetermined_;
};

}  // namespace qdouble
