#include "qpgeom/random.hpp"

#include "qpgeom/curve.hpp"

namespace qpgeom {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool all_directions(const WalkSpec& w) {
    const bool left = !w.p(-1, -1).is_zero() || !w.p(-1, 0).is_zero() || !w.p(-1, 1).is_zero();
    const bool right = !w.p(1, -1).is_zero() || !w.p(1, 0).is_zero() || !w.p(1, 1).is_zero();
    const bool down = !w.p(-1, -1).is_zero() || !w.p(0, -1).is_zero() || !w.p(1, -1).is_zero();
    const bool up = !w.p(-1, 1).is_zero() || !w.p(0, 1).is_zero() || !w.p(1, 1).is_zero();
    return left && right && down && up;
}

// Splits `units` into three non-negative parts, returned as fractions.
std::array<Numeric, 3> split3(Rng& rng, int units) {
    const int a = uniform(rng, 0, units);
    const int b = uniform(rng, 0, units - a);
    return {Numeric::ratio(a, units), Numeric::ratio(b, units), Numeric::ratio(units - a - b, units)};
}

}  // namespace

Numeric random_fraction(Rng& rng, int max_den) {
    const int d = uniform(rng, 2, max_den);
    return Numeric::ratio(uniform(rng, 1, d - 1), d);
}

WalkSpec random_interior(Rng& rng, int units) {
    for (;;) {
        std::array<int, 9> parts{};
        for (int k = 0; k < units; ++k) ++parts[static_cast<std::size_t>(uniform(rng, 0, 8))];
        WalkSpec w;
        for (std::size_t k = 0; k < 9; ++k) w.interior[k] = Numeric::ratio(parts[k], units);
        if (all_directions(w)) return w;
    }
}

std::optional<WalkSpec> random_boundary(const WalkSpec& interior, Rng& rng, int attempts) {
    const Numeric one(1);
    for (int k = 0; k < attempts; ++k) {
        WalkSpec w = interior;
        // Axis rows must sum to one together with the interior mass leaving the axis.
        const Numeric h_room = one - w.up_mass(), v_room = one - w.right_mass();
        const auto hs = split3(rng, 10), vs = split3(rng, 10);
        for (int s = -1; s <= 1; ++s) {
            w.h(s) = hs[static_cast<std::size_t>(s + 1)] * h_room;
            w.v(s) = vs[static_cast<std::size_t>(s + 1)] * v_room;
        }
        if (w.h(1) + w.v(1) + w.p(1, 1) > one) continue;
        try {
            if (validate_walk(w).valid()) return w;
        } catch (const std::exception&) {
        }
    }
    return std::nullopt;
}

WalkSpec random_valid_walk(Rng& rng) {
    for (;;) {
        const WalkSpec interior = random_interior(rng);
        Rng probe(rng());
        if (!random_curve_point(interior, probe)) continue;
        if (auto w = random_boundary(interior, rng, 20)) return *w;
    }
}

std::optional<Coordinate> random_curve_point(const WalkSpec& w, Rng& rng, const Tolerances& tol, int attempts) {
    for (int k = 0; k < attempts; ++k) {
        const Numeric rho = random_fraction(rng, 40);
        const auto roots = sigma_partners(w, rho, tol).inside();
        std::vector<Numeric> positive;
        for (const auto& r : roots)
            if (r.sign() > 0) positive.push_back(r);
        if (positive.empty()) continue;
        return Coordinate{rho, positive[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(positive.size()) - 1))]};
    }
    return std::nullopt;
}

PlantedKernel planted_kernel(Rng& rng, int max_den) {
    // Q(rho, sigma) = 0 reads sum p(s,t) (rho^-s sigma^-t - 1) = 0: draw
    // weights, then scale the positive side until the two sides cancel.
    for (;;) {
        const Numeric rho = random_fraction(rng, max_den), sigma = random_fraction(rng, max_den);
        WalkSpec w;
        Numeric pos, neg;
        for (int s = -1; s <= 1; ++s)
            for (int t = -1; t <= 1; ++t) {
                if (s == 0 && t == 0) continue;
                const int weight = uniform(rng, 0, 1) ? uniform(rng, 1, 6) : 0;
                w.p(s, t) = Numeric(weight);
                const Numeric d = rho.pow(-s) * sigma.pow(-t) - Numeric(1);
                (d.sign() > 0 ? pos : neg) += w.p(s, t) * d;
            }
        if (pos.is_zero() || neg.is_zero()) continue;
        const Numeric lambda = -neg / pos;
        Numeric total;
        for (int s = -1; s <= 1; ++s)
            for (int t = -1; t <= 1; ++t) {
                if (s == 0 && t == 0) continue;
                if ((rho.pow(-s) * sigma.pow(-t) - Numeric(1)).sign() > 0) w.p(s, t) *= lambda;
                total += w.p(s, t);
            }
        const Numeric scale = Numeric(1) / (total * Numeric(uniform(rng, 1, 3)));
        for (int s = -1; s <= 1; ++s)
            for (int t = -1; t <= 1; ++t)
                if (s != 0 || t != 0) w.p(s, t) *= scale;
        w.p(0, 0) = Numeric(1) - total * scale;
        if (!all_directions(w)) continue;
        return {w, {rho, sigma}};
    }
}

}  // namespace qpgeom
