#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qpgeom/termset.hpp"

namespace qpgeom {

class SeedOffCurve : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class OffCurveTerm : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotPairwiseCoupled : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A vertical step keeps sigma and replaces rho by its other root of
/// rho_partners(sigma), so consecutive points share a vertical block. A
/// horizontal step keeps rho and replaces sigma.
enum class StepDirection { vertical, horizontal };

enum class StopReason { partner_outside_unit, revisit, double_root, max_length, closed_on_boundary, no_partner };

const char* to_string(StepDirection d);
const char* to_string(StopReason r);

struct TraceOptions {
    int max_len = 16;
    StepDirection first = StepDirection::vertical;
    /// Stop once the last point closes the chain on the boundary curves:
    /// a lone seed must lie on both H and V; otherwise the last point must
    /// lie on V before a vertical step or on H before a horizontal one.
    bool close_on_boundary = true;
};

struct Chain {
    std::vector<Coordinate> points;  ///< in tracing order
    StopReason stop = StopReason::max_length;
    std::string stop_detail;

    /// Points as a canonical set with unit coefficients.
    TermSet coordinates() const;
};

/// Alternates vertical and horizontal steps from `seed`. Throws SeedOffCurve.
Chain trace_chain(const WalkSpec& w, const Coordinate& seed, const TraceOptions& opts = {}, const Tolerances& tol = {});

enum class SolveStatus { solved, infeasible, ambiguous_nullspace };

const char* to_string(SolveStatus s);

struct CoefficientSolution {
    SolveStatus status = SolveStatus::infeasible;
    TermSet terms;  ///< coefficients scaled so the first canonical term has alpha = 1
    int nullspace_dim = 0;
};

/// Solves B_h = 0 and B_v = 0 over every block for the coefficient vector.
/// A solution ray with a zero component is infeasible: the set it describes
/// has fewer terms. Throws OffCurveTerm or NotPairwiseCoupled.
CoefficientSolution solve_coefficients(const WalkSpec& w, const TermSet& coords, const Tolerances& tol = {});

struct BoundarySolution {
    bool feasible = false;
    WalkSpec walk;                     ///< interior copied, boundary solved
    std::vector<std::string> violated;  ///< an irreducible infeasible subset
};

/// Boundary probabilities h, v making every block functional vanish, with
/// unit row sums, non-negativity and h(1) + v(1) + p(1,1) <= 1. Returns the
/// lexicographically smallest feasible (h(-1), h(0), h(1), v(-1), v(0), v(1)).
/// Throws OffCurveTerm.
BoundarySolution solve_boundary(const WalkSpec& interior, const TermSet& g, const Tolerances& tol = {});

enum class BoundaryChoice { lexmin, centroid };

struct ConstructOptions {
    TraceOptions trace{16, StepDirection::vertical, false};
    BoundaryChoice boundary = BoundaryChoice::lexmin;
};

struct Construction {
    bool ok = false;
    std::string failure;  ///< empty when ok
    Chain chain;
    WalkSpec walk;
    TermSet terms;
    int nullspace_dim = 0;
};

/// Builds a full walk and measure from an interior kernel: traces a chain of
/// `trace.max_len` points, picks boundary probabilities that put the two end
/// points on H and V, then solves the coefficients.
Construction construct_measure(const WalkSpec& interior, const Coordinate& seed, const ConstructOptions& opts = {},
                               const Tolerances& tol = {});

}  // namespace qpgeom
