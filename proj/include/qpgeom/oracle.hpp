#pragma once

#include <stdexcept>
#include <vector>

#include "qpgeom/terms.hpp"
#include "qpgeom/walk.hpp"

namespace qpgeom {

/// `gth` is Grassmann-Taksar-Heyman elimination on the banded generator:
/// subtraction-free, so small entries keep full relative accuracy.
enum class SolveMethod { direct_solve, power_iteration, gth };

const char* to_string(SolveMethod m);

class NotConverged : public std::runtime_error {
public:
    NotConverged(int iterations, double residual);
    int iterations() const { return iterations_; }

private:
    int iterations_;
};

/// Stationary distribution of the walk on [0,N]^2, moves that would leave
/// the box replaced by holding in place.
struct StationaryEstimate {
    int N = 0;
    std::vector<double> pi;  ///< index i * (N + 1) + j
    SolveMethod method = SolveMethod::direct_solve;
    double residual_norm = 0.0;  ///< max |pi P - pi|
    int iterations = 0;

    double at(int i, int j) const { return pi[static_cast<std::size_t>(i * (N + 1) + j)]; }
};

/// Direct solve replaces the balance row of (N, N) with the normalization.
/// Power iteration stops once the residual is at most `threshold` and throws
/// NotConverged after `max_iterations`.
StationaryEstimate truncated_stationary(const WalkSpec& w, int N, SolveMethod method = SolveMethod::direct_solve,
                                        double threshold = 1e-14, int max_iterations = 2'000'000);

struct Comparison {
    double max_rel_error = 0.0;
    int worst_i = 0;
    int worst_j = 0;
};

/// Normalizes the measure of `g` over [0,N]^2 and reports the largest
/// relative deviation from pi on [0,W]^2, skipping states with pi < 1e-12.
Comparison compare(const StationaryEstimate& est, const TermSet& g, int window);

/// The measure of `g` on [0,N]^2 in double precision, same layout as pi.
std::vector<double> measure_grid(const TermSet& g, int N);

}  // namespace qpgeom
