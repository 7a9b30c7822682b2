#include "support/properties.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qpgeom/conditions.hpp"
#include "qpgeom/construct.hpp"
#include "qpgeom/curve.hpp"
#include "qpgeom/random.hpp"
#include "support/examples.hpp"

namespace qpgeom::testing {

namespace {

std::string at(const WalkSpec& w, const Coordinate& c) {
    std::string k;
    for (const auto& p : w.interior) k += p.str() + " ";
    return "kernel [" + k + "] point (" + c.rho.str() + ", " + c.sigma.str() + ")";
}

TermSet single(const Coordinate& c) {
    const GeometricTerm t{c.rho, c.sigma, Numeric(1)};
    return canonicalize(std::span(&t, 1));
}

// The other root of the quadratic through `c`, stepping vertically (new
// rho) or horizontally (new sigma); empty unless it is a distinct point in
// (0,1)^2.
std::optional<Coordinate> step(const WalkSpec& w, const Coordinate& c, StepDirection d, const Tolerances& tol) {
    const bool vertical = d == StepDirection::vertical;
    const auto roots = vertical ? rho_partners(w, c.sigma, tol) : sigma_partners(w, c.rho, tol);
    const auto x = roots.partner(vertical ? c.rho : c.sigma);
    if (!x || x->sign() <= 0 || *x >= Numeric(1)) return std::nullopt;
    const Coordinate next = vertical ? Coordinate{*x, c.sigma} : Coordinate{c.rho, *x};
    if (same_point(next, c, tol)) return std::nullopt;
    return next;
}

// Exact constructed instances from planted kernels.
template <class Visit>
void constructions(std::uint64_t seed, int wanted, Visit visit) {
    Rng rng(seed);
    int made = 0;
    for (int tries = 0; made < wanted && tries < 200 * wanted; ++tries) {
        const auto planted = planted_kernel(rng);
        ConstructOptions opts;
        opts.trace.max_len = std::uniform_int_distribution<int>(1, 5)(rng);
        opts.trace.first = rng() % 2 ? StepDirection::vertical : StepDirection::horizontal;
        opts.boundary = rng() % 2 ? BoundaryChoice::lexmin : BoundaryChoice::centroid;
        Construction c;
        try {
            c = construct_measure(planted.interior, planted.seed, opts);
        } catch (const std::exception&) {
            continue;
        }
        if (!c.ok || !c.walk.all_exact() || !c.terms.all_exact()) continue;
        ++made;
        visit(c);
    }
}

}  // namespace

SuiteResult curve_membership_suite(std::uint64_t seed, int kernels) {
    SuiteResult r;
    Rng rng(seed);
    const Tolerances tol;
    for (int tries = 0; r.instances < kernels && tries < 10 * kernels; ++tries) {
        const WalkSpec w = random_valid_walk(rng);
        Coordinate off{random_fraction(rng, 40), random_fraction(rng, 40)};
        while (Q_eval(w, off.rho, off.sigma).is_zero()) off = {random_fraction(rng, 40), random_fraction(rng, 40)};
        const auto on = random_curve_point(w, rng, tol);
        if (!on) continue;
        ++r.instances;
        const TermSet g_off = single(off), g_on = single(*on);
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j) {
                if (interior_residual(w, g_off, i, j).is_zero()) r.violate("zero residual off C at " + at(w, off));
                if (!interior_residual(w, g_on, i, j).is_zero()) r.violate("non-zero residual on C at " + at(w, *on));
            }
    }
    return r;
}

SuiteResult route_agreement_suite(std::uint64_t seed, int instances) {
    SuiteResult r;
    auto agree = [&](const WalkSpec& w, const TermSet& g, bool expected, const char* label) {
        const auto c = check_invariant(w, g);
        if (!c.routes_agree) r.violate(std::string("routes disagree on ") + label + " " + at(w, g[0].coordinate()));
        if (c.is_invariant_on_window != expected) r.violate(std::string("unexpected verdict on ") + label);
    };
    constructions(seed, instances, [&](const Construction& c) {
        ++r.instances;
        agree(c.walk, c.terms, true, "construction");

        std::vector<GeometricTerm> raw(c.terms.begin(), c.terms.end());
        raw.back().alpha *= Numeric::ratio(3, 2);
        if (raw.size() >= 2) agree(c.walk, canonicalize(raw), false, "scaled coefficient");

        WalkSpec shifted = c.walk;
        const Numeric delta = Numeric::ratio(1, 97);
        if (shifted.h(0) >= delta) {
            shifted.h(0) -= delta;
            shifted.h(-1) += delta;
            agree(shifted, c.terms, false, "shifted boundary");
        }
    });
    return r;
}

SuiteResult two_term_suite(std::uint64_t seed, int kernels) {
    SuiteResult r;
    Rng rng(seed);
    const Tolerances tol;
    for (int tries = 0; r.instances < kernels && tries < 100 * kernels; ++tries) {
        const auto planted = planted_kernel(rng);
        const auto full = random_boundary(planted.interior, rng, 20);
        if (!full) continue;
        bool tested = false;
        for (auto d : {StepDirection::vertical, StepDirection::horizontal}) {
            const auto other = step(planted.interior, planted.seed, d, tol);
            if (!other) continue;
            tested = true;
            std::vector<GeometricTerm> raw{{planted.seed.rho, planted.seed.sigma, Numeric(1)},
                                           {other->rho, other->sigma, Numeric(1)}};
            const TermSet coords = canonicalize(raw);
            if (solve_coefficients(*full, coords, tol).status == SolveStatus::solved)
                r.violate("coefficients solved for " + at(*full, planted.seed));
            for (int k = 0; k < 4; ++k) {
                raw[1].alpha = random_fraction(rng, 12) * Numeric(k % 2 ? -3 : 3);
                if (solve_boundary(planted.interior, canonicalize(raw), tol).feasible)
                    r.violate("boundary found for " + at(planted.interior, planted.seed) + " alpha " + raw[1].alpha.str());
            }
        }
        if (tested) ++r.instances;
    }
    return r;
}

SuiteResult partition_suite() {
    SuiteResult r;
    std::vector<Coordinate> grid;
    for (const char* a : {"1/2", "1/3", "1/5"})
        for (const char* b : {"1/2", "1/3", "1/5"}) grid.push_back({q(a), q(b)});

    for (unsigned mask = 1; mask < (1u << grid.size()); ++mask) {
        const int n = __builtin_popcount(mask);
        if (n > 6) continue;
        std::vector<GeometricTerm> raw;
        for (std::size_t k = 0; k < grid.size(); ++k)
            if (mask & (1u << k)) raw.push_back({grid[k].rho, grid[k].sigma, Numeric(static_cast<long>(k) + 1)});
        const TermSet g = canonicalize(raw);

        for (auto kind : {PartitionKind::horizontal, PartitionKind::vertical, PartitionKind::uncoupled}) {
            ++r.instances;
            auto linked = [&](std::size_t a, std::size_t b) {
                const bool rho = g[a].rho == g[b].rho, sigma = g[a].sigma == g[b].sigma;
                return kind == PartitionKind::horizontal ? rho : kind == PartitionKind::vertical ? sigma : rho || sigma;
            };
            // Enumerate set partitions as restricted growth strings; keep
            // those where no two blocks are linked, with the most blocks.
            std::vector<int> label(static_cast<std::size_t>(n), 0);
            std::set<std::set<std::set<std::size_t>>> best;
            int best_blocks = 0;
            std::function<void(int, int)> grow = [&](int k, int blocks) {
                if (k == n) {
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            if (label[a] != label[b] && linked(a, b)) return;
                    std::set<std::set<std::size_t>> part;
                    for (int blk = 0; blk < blocks; ++blk) {
                        std::set<std::size_t> members;
                        for (int a = 0; a < n; ++a)
                            if (label[a] == blk) members.insert(static_cast<std::size_t>(a));
                        part.insert(members);
                    }
                    if (blocks > best_blocks) best.clear(), best_blocks = blocks;
                    if (blocks == best_blocks) best.insert(part);
                    return;
                }
                for (int v = 0; v <= blocks; ++v) {
                    label[static_cast<std::size_t>(k)] = v;
                    grow(k + 1, std::max(blocks, v + 1));
                }
            };
            grow(0, 0);

            std::set<std::set<std::size_t>> got;
            for (const auto& b : maximal_partition(g, kind).blocks) got.insert({b.indices.begin(), b.indices.end()});
            if (best.size() != 1) r.violate("maximal partition not unique for mask " + std::to_string(mask));
            else if (got != *best.begin())
                r.violate(std::string("mismatch for mask ") + std::to_string(mask) + " kind " + to_string(kind));
        }
    }
    return r;
}

SuiteResult block_monotonicity_suite(std::uint64_t seed, int instances) {
    SuiteResult r;
    Rng rng(seed);
    const Tolerances tol;
    while (r.instances < instances) {
        const auto planted = planted_kernel(rng);
        for (auto d : {StepDirection::horizontal, StepDirection::vertical}) {
            if (r.instances >= instances) break;
            const auto other = step(planted.interior, planted.seed, d, tol);
            if (!other) continue;
            ++r.instances;
            const GeometricTerm a{planted.seed.rho, planted.seed.sigma, random_fraction(rng, 20)};
            const GeometricTerm b{other->rho, other->sigma, random_fraction(rng, 20)};
            const std::array<GeometricTerm, 2> pair{a, b};
            const bool shared_rho = d == StepDirection::horizontal;
            auto f = [&](std::span<const GeometricTerm> block) {
                return shared_rho ? b_h(planted.interior, block, tol) : b_v(planted.interior, block, tol);
            };
            const Numeric both = f(pair), lo_hi_a = f(std::span(&a, 1)), lo_hi_b = f(std::span(&b, 1));
            const Numeric lo = lo_hi_a < lo_hi_b ? lo_hi_a : lo_hi_b, hi = lo_hi_a < lo_hi_b ? lo_hi_b : lo_hi_a;
            if (!(lo < both && both < hi)) r.violate("pair value outside the single-term range at " + at(planted.interior, planted.seed));
        }
    }
    return r;
}

SuiteResult sign_rule_suite(std::uint64_t seed, int instances) {
    SuiteResult r;
    Rng rng(seed);
    const Numeric one(1);
    std::uniform_int_distribution<int> num(-60, 60);
    while (r.instances < instances) {
        Numeric rho = random_fraction(rng, 50), rho2 = random_fraction(rng, 50);
        if (rho == rho2) continue;
        if (rho > rho2) std::swap(rho, rho2);
        const Numeric t1 = Numeric::ratio(num(rng), 7), t2 = Numeric::ratio(num(rng), 7);
        const bool first = (t1 * (one - rho) + t2 * (one - rho2)).sign() >= 0;
        const bool second = (t1 * (one - one / rho) + t2 * (one - one / rho2)).sign() >= 0;
        if (!first || !second) continue;
        ++r.instances;
        if (t1.sign() > 0 || t2.sign() < 0)
            r.violate("t = (" + t1.str() + ", " + t2.str() + ") at rho = " + rho.str() + ", " + rho2.str());
    }
    return r;
}

SuiteResult negative_coefficient_suite(std::uint64_t seed, int count) {
    SuiteResult r;
    auto visit = [&](const WalkSpec& w, const TermSet& g, const Tolerances& tol, const std::string& label) {
        if (g.size() < 2 || !check_invariant(w, g, 6, tol).is_invariant_on_window) return;
        ++r.instances;
        Numeric lowest = g[0].alpha;
        for (const auto& t : g)
            if (t.alpha < lowest) lowest = t.alpha;
        if (lowest.sign() >= 0) r.violate("all coefficients non-negative in " + label);
    };
    Tolerances loose;
    loose.eps = 1e-3;
    visit(example1_walk(), example1_terms(), {}, "example 1");
    visit(example2_walk(), example2_terms(), loose, "example 2");
    visit(example3_walk(), example3_terms(), loose, "example 3");
    constructions(seed, count, [&](const Construction& c) { visit(c.walk, c.terms, {}, "construction"); });
    return r;
}

}  // namespace qpgeom::testing
