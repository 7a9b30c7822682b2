#pragma once

#include <string>
#include <vector>

#include "qpgeom/termset.hpp"

namespace qpgeom {

/// `inconclusive` marks a check whose sufficient test neither proved nor
/// refuted the condition.
enum class Verdict { pass, fail, not_applicable, inconclusive };
enum class Overall { consistent, refuted, undetermined };

const char* to_string(Verdict v);
const char* to_string(Overall o);

struct Check {
    std::string name;
    Verdict verdict = Verdict::not_applicable;
    std::string details;
};

struct ConditionReport {
    std::vector<Check> checks;
    Overall overall = Overall::undetermined;
    std::string refuted_by;  ///< first failing check, empty otherwise

    const Check* find(const std::string& name) const;
};

/// Runs, in order: on_curve, no_degenerate, canonical_unique,
/// pairwise_coupled, not_two_terms, has_negative_coefficient,
/// boundary_balance, positivity. Every check is reported.
///
/// Positivity tests m > 0 on [0,W]^2, then bounds the tail outside the
/// window by assigning each negative term to a dominating positive term.
/// A window failure refutes; an unproven tail is inconclusive.
ConditionReport check_necessary(const WalkSpec& w, const TermSet& g, int window = 6, const Tolerances& tol = {});

struct InvariantCheck {
    bool is_invariant_on_window = false;
    Numeric max_residual;
    bool residual_route = false;    ///< every residual_sweep entry is zero
    bool functional_route = false;  ///< terms on C and every block functional zero
    bool routes_agree = false;
};

InvariantCheck check_invariant(const WalkSpec& w, const TermSet& g, int window = 6, const Tolerances& tol = {});

/// Outcome of the tail domination bound, exposed for testing.
struct TailBound {
    bool proven = false;
    std::string details;
};

TailBound positivity_tail_bound(const TermSet& g, int window);

}  // namespace qpgeom
