#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "qpgeom/construct.hpp"

namespace qpgeom {

using Rng = std::mt19937_64;

/// k/d with 2 <= d <= max_den and 0 < k < d.
Numeric random_fraction(Rng& rng, int max_den);

/// Interior kernel with entries in multiples of 1/units, every direction
/// reachable. Boundary left at zero.
WalkSpec random_interior(Rng& rng, int units = 24);

/// Random boundary probabilities on `interior`, redrawn until validate_walk
/// accepts the walk. Empty if no draw succeeds.
std::optional<WalkSpec> random_boundary(const WalkSpec& interior, Rng& rng, int attempts = 200);

/// A valid walk whose curve C meets (0,1)^2.
WalkSpec random_valid_walk(Rng& rng);

/// A point of C with the given exact rho drawn at random; empty when no
/// drawn rho has a partner inside (0,1).
std::optional<Coordinate> random_curve_point(const WalkSpec& w, Rng& rng, const Tolerances& tol = {}, int attempts = 50);

/// Exact interior kernel built so that `seed` lies on its curve.
struct PlantedKernel {
    WalkSpec interior;
    Coordinate seed;
};

PlantedKernel planted_kernel(Rng& rng, int max_den = 6);

}  // namespace qpgeom
