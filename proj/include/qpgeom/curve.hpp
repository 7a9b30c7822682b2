#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qpgeom/numeric.hpp"
#include "qpgeom/walk.hpp"

namespace qpgeom {

class NonPositiveCoordinate : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateToConstant : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ZeroDenominator : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct CurvePoint {
    Numeric rho;
    Numeric sigma;
    bool on_curve = false;
    Regime regime = Regime::exact;
};

/// leading * x^2 + linear * x + constant = 0.
///
/// Every real root is kept, including those outside (0,1); `inside()`
/// filters. A negative discriminant within eps_disc of zero is a tangency
/// and yields one double root.
struct QuadraticRoots {
    Numeric leading;
    Numeric linear;
    Numeric constant;
    std::vector<Numeric> roots;  ///< descending by value
    bool degenerate_linear = false;
    bool double_root = false;

    std::vector<Numeric> inside() const;
    bool has_zero_root() const;
    /// The root paired with `x`, by Vieta. Empty for linear equations.
    std::optional<Numeric> partner(const Numeric& x) const;
};

/// Sum of p(s,t) rho^(1-s) sigma^(1-t) minus rho*sigma. Throws
/// NonPositiveCoordinate unless rho > 0 and sigma > 0.
Numeric Q_eval(const WalkSpec& w, const Numeric& rho, const Numeric& sigma);

/// (rho, sigma) in [0,1)^2 with Q zero in the regime of its inputs.
bool in_C(const WalkSpec& w, const Numeric& rho, const Numeric& sigma);

/// Quadratic in sigma from Q(rho, sigma) = 0, scaled by rho so the
/// coefficients are polynomial in rho.
QuadraticRoots sigma_partners(const WalkSpec& w, const Numeric& rho, const Tolerances& tol = {});
/// Quadratic in rho from Q(rho, sigma) = 0, scaled by sigma.
QuadraticRoots rho_partners(const WalkSpec& w, const Numeric& sigma, const Tolerances& tol = {});

/// Roots of a x^2 + b x + c. Irrational roots become approximate with tol.eps.
QuadraticRoots solve_quadratic(Numeric a, Numeric b, Numeric c, const Tolerances& tol = {});

/// (1 - sum_s x^-s p(s,0)) / sum_s x^-s p(s,-1).
Numeric f_eval(const WalkSpec& w, const Numeric& x);

/// Horizontal boundary bracket sum_s rho^-s (h(s) + sigma p(s,-1)) - 1.
/// Its zero set is the curve H.
Numeric H_eval(const WalkSpec& w, const Numeric& rho, const Numeric& sigma);
/// Vertical bracket sum_t sigma^-t (v(t) + rho p(-1,t)) - 1; zero set V.
Numeric V_eval(const WalkSpec& w, const Numeric& rho, const Numeric& sigma);

struct DegenerateFeasibility {
    bool horizontal_allowed = false;
    bool vertical_allowed = false;
};

DegenerateFeasibility degenerate_feasibility(const WalkSpec& w);

struct CurveSample {
    char curve = 'Q';  ///< 'Q', 'H' or 'V'
    double rho = 0.0;
    double sigma = 0.0;
};

/// n sweeps over (0,1): sigma-roots of Q for each rho, sigma on H for each
/// rho, rho on V for each sigma. Only points inside (0,1)^2 are emitted.
std::vector<CurveSample> curve_sample(const WalkSpec& w, int n, const Tolerances& tol = {});

}  // namespace qpgeom
