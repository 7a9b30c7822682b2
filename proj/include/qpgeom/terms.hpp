#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qpgeom/numeric.hpp"

namespace qpgeom {

enum class TermClass { non_degenerate, horizontally_degenerate, vertically_degenerate };

const char* to_string(TermClass c);

/// Point (rho, sigma) of a geometric measure rho^i sigma^j.
struct Coordinate {
    Numeric rho;
    Numeric sigma;
};

/// alpha * rho^i * sigma^j, with 0^0 = 1.
struct GeometricTerm {
    Numeric rho;
    Numeric sigma;
    Numeric alpha;

    /// sigma = 0 is horizontally degenerate (this includes the origin point),
    /// rho = 0 vertically degenerate.
    TermClass term_class() const;
    bool is_degenerate() const { return term_class() != TermClass::non_degenerate; }
    Coordinate coordinate() const { return {rho, sigma}; }
    /// alpha * rho^i * sigma^j for i, j >= 0.
    Numeric evaluate(int i, int j) const;
};

/// Equality of coordinate values: exact when both are exact, otherwise
/// within the relative tolerance `eps_group`.
bool same_coordinate(const Numeric& a, const Numeric& b, const Tolerances& tol);
bool same_point(const Coordinate& a, const Coordinate& b, const Tolerances& tol);

/// Canonical finite set of geometric terms.
///
/// No two terms share both coordinates and no coefficient is zero. Terms are
/// ordered lexicographically by (rho, sigma), descending.
class TermSet {
public:
    TermSet() = default;

    std::span<const GeometricTerm> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const GeometricTerm& operator[](std::size_t k) const { return terms_[k]; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    /// Induced measure m(i, j).
    Numeric measure(int i, int j) const;

    /// Terms of one class (Gamma_I, Gamma_H, Gamma_V).
    std::vector<GeometricTerm> of_class(TermClass c) const;
    TermSet non_degenerate() const;

    bool all_exact() const;

    friend TermSet canonicalize(std::span<const GeometricTerm> raw, const Tolerances& tol);

private:
    std::vector<GeometricTerm> terms_;
};

/// Merges duplicate coordinates by summing coefficients, drops zero
/// coefficients and sorts descending. Throws std::invalid_argument on a
/// negative coordinate.
TermSet canonicalize(std::span<const GeometricTerm> raw, const Tolerances& tol = {});

/// Union of two sets, merged canonically.
TermSet merge(const TermSet& a, const TermSet& b, const Tolerances& tol = {});

}  // namespace qpgeom
