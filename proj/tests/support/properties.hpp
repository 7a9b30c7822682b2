#pragma once

#include <cstdint>
#include <string>

namespace qpgeom::testing {

struct SuiteResult {
    long instances = 0;
    long violations = 0;
    std::string first_violation;

    void violate(const std::string& what) {
        if (violations++ == 0) first_violation = what;
    }
    bool passed(long required) const { return violations == 0 && instances >= required; }
};

/// Single terms off C leave a non-zero interior residual everywhere; roots
/// of sigma_partners leave none. One instance per kernel.
SuiteResult curve_membership_suite(std::uint64_t seed, int kernels);

/// Constructed exact instances, with perturbed copies: the residual sweep
/// and the block functionals agree on invariance. Counts constructions.
SuiteResult route_agreement_suite(std::uint64_t seed, int instances);

/// Two-term coupled sets on C admit neither coefficients nor boundaries.
/// One instance per kernel.
SuiteResult two_term_suite(std::uint64_t seed, int kernels);

/// maximal_partition against exhaustive set-partition search, every subset
/// of size 1..6 of a 3 x 3 coordinate grid, all three kinds.
SuiteResult partition_suite();

/// Two terms with positive coefficients sharing rho (sigma): b_h (b_v) of
/// the pair lies strictly between the single-term values.
SuiteResult block_monotonicity_suite(std::uint64_t seed, int instances);

/// The sign rule for pairs of inequalities in (1 - rho) and (1 - 1/rho).
SuiteResult sign_rule_suite(std::uint64_t seed, int instances);

/// Every invariant measure with at least two terms in the corpus has a
/// negative coefficient. The corpus is the bundled examples plus
/// `constructions` random constructions.
SuiteResult negative_coefficient_suite(std::uint64_t seed, int constructions);

}  // namespace qpgeom::testing
