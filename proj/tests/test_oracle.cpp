#include <doctest.h>

#include <numeric>

#include "qpgeom/construct.hpp"
#include "qpgeom/curve.hpp"
#include "qpgeom/oracle.hpp"
#include "support/examples.hpp"

using namespace qpgeom;
using testing::q;

TEST_CASE("example 1 oracle agrees with the exact measure") {
    const auto est = truncated_stationary(testing::example1_walk(), 40);
    CHECK(est.residual_norm < 1e-13);
    CHECK(std::accumulate(est.pi.begin(), est.pi.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(*std::min_element(est.pi.begin(), est.pi.end()) >= 0.0);
    CHECK(compare(est, testing::example1_terms(), 6).max_rel_error <= 1e-10);
}

TEST_CASE("holding truncation bias on the example 1 window corner") {
    // The far corner (10,10) carries mass ~3e-10, so the cut at N = 40 is
    // still visible there; it fades by N = 60.
    const auto g = testing::example1_terms();
    const auto at40 = truncated_stationary(testing::example1_walk(), 40, SolveMethod::gth);
    const auto c40 = compare(at40, g, 10);
    CHECK(c40.max_rel_error > 1e-8);
    CHECK(c40.max_rel_error < 1e-7);
    CHECK(c40.worst_i == 10);
    CHECK(c40.worst_j == 10);
    CHECK(compare(truncated_stationary(testing::example1_walk(), 60, SolveMethod::gth), g, 10).max_rel_error <= 1e-12);
}

TEST_CASE("gth agrees with the sparse direct solve") {
    const auto lu = truncated_stationary(testing::example2_walk(), 30);
    const auto g = truncated_stationary(testing::example2_walk(), 30, SolveMethod::gth);
    CHECK(g.residual_norm < 1e-15);
    for (std::size_t k = 0; k < lu.pi.size(); ++k) CHECK(g.pi[k] == doctest::Approx(lu.pi[k]).epsilon(1e-6));
}

TEST_CASE("perturbed coefficients are detected") {
    const auto est = truncated_stationary(testing::example1_walk(), 40);
    const TermSet base = testing::example1_terms();
    std::vector<GeometricTerm> raw(base.begin(), base.end());
    raw[1].alpha *= q("11/10");
    CHECK(compare(est, canonicalize(raw), 10).max_rel_error > 1e-3);
}

TEST_CASE("identical inputs compare to zero") {
    StationaryEstimate est;
    est.N = 3;
    std::vector<GeometricTerm> raw{{q("1/2"), q("1/3"), q("1")}};
    const TermSet g = canonicalize(raw);
    est.pi = measure_grid(g, 3);
    const double total = std::accumulate(est.pi.begin(), est.pi.end(), 0.0);
    for (auto& p : est.pi) p /= total;
    CHECK(compare(est, g, 3).max_rel_error == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("power iteration matches the direct solve") {
    const auto direct = truncated_stationary(testing::example1_walk(), 12);
    const auto power = truncated_stationary(testing::example1_walk(), 12, SolveMethod::power_iteration);
    CHECK(power.residual_norm <= 1e-14);
    for (std::size_t k = 0; k < direct.pi.size(); ++k) CHECK(power.pi[k] == doctest::Approx(direct.pi[k]).epsilon(1e-9));
}

TEST_CASE("power iteration reports non-convergence") {
    CHECK_THROWS_AS(truncated_stationary(testing::example1_walk(), 12, SolveMethod::power_iteration, 1e-14, 3), NotConverged);
}

TEST_CASE("smallest truncation") {
    const auto est = truncated_stationary(testing::example1_walk(), 1);
    CHECK(est.pi.size() == 4);
    CHECK(std::accumulate(est.pi.begin(), est.pi.end(), 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(truncated_stationary(testing::example1_walk(), 0), std::invalid_argument);
}

TEST_CASE("product-form walk from a constructed boundary") {
    WalkSpec interior;
    interior.p(1, 0) = interior.p(0, 1) = q("1/5");
    interior.p(-1, -1) = q("3/5");
    const Numeric rho = q("1/2");
    const Numeric sigma = sigma_partners(interior, rho).inside().front();
    std::vector<GeometricTerm> raw{{rho, sigma, q("1")}};
    const TermSet g = canonicalize(raw);
    const auto boundary = solve_boundary(interior, g);
    REQUIRE(boundary.feasible);
    const auto est = truncated_stationary(boundary.walk, 60);
    CHECK(compare(est, g, 10).max_rel_error <= 1e-8);
}

TEST_CASE("truncation error shrinks as N doubles") {
    const auto g = testing::example1_terms();
    const double e10 = compare(truncated_stationary(testing::example1_walk(), 10), g, 5).max_rel_error;
    const double e20 = compare(truncated_stationary(testing::example1_walk(), 20), g, 5).max_rel_error;
    CHECK(e10 >= e20);
}
