#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qpgeom/curve.hpp"
#include "qpgeom/terms.hpp"
#include "qpgeom/walk.hpp"

namespace qpgeom {

class MixedRho : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MixedSigma : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EmptySet : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ZeroCoefficientSum : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class PartitionKind { horizontal, vertical, uncoupled };

const char* to_string(PartitionKind k);

struct PartitionBlock {
    std::vector<std::size_t> indices;      ///< ascending, into the TermSet
    std::optional<Numeric> shared;         ///< common rho (horizontal) or sigma (vertical)
};

/// Blocks are ordered by their smallest index.
struct PartitionResult {
    PartitionKind kind = PartitionKind::uncoupled;
    std::vector<PartitionBlock> blocks;
};

/// Finest partition such that no two blocks share a rho (horizontal), a
/// sigma (vertical) or either (uncoupled).
PartitionResult maximal_partition(const TermSet& g, PartitionKind kind, const Tolerances& tol = {});

/// Throws EmptySet on an empty set.
bool is_pairwise_coupled(const TermSet& g, const Tolerances& tol = {});

/// Terms of `g` selected by a block.
std::vector<GeometricTerm> block_terms(const TermSet& g, const PartitionBlock& block);

/// Sum over the block of alpha * H_eval(rho, sigma). Degenerate terms are
/// skipped. Throws MixedRho if the block's rho values differ.
Numeric B_h(const WalkSpec& w, std::span<const GeometricTerm> block, const Tolerances& tol = {});
/// Mirror of B_h with V_eval; throws MixedSigma.
Numeric B_v(const WalkSpec& w, std::span<const GeometricTerm> block, const Tolerances& tol = {});

/// B_h / sum(alpha) + (1 - 1/rho) h(1) + (1 - rho) h(-1).
/// Throws ZeroCoefficientSum when the coefficients cancel.
Numeric b_h(const WalkSpec& w, std::span<const GeometricTerm> block, const Tolerances& tol = {});
/// B_v / sum(alpha) + (1 - 1/sigma) v(1) + (1 - sigma) v(-1).
Numeric b_v(const WalkSpec& w, std::span<const GeometricTerm> block, const Tolerances& tol = {});

}  // namespace qpgeom
