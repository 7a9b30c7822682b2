#include "qpgeom/curve.hpp"

#include <algorithm>
#include <cmath>

namespace qpgeom {

namespace {

bool in_open_unit(const Numeric& x) { return x.sign() > 0 && x < Numeric(1) && !(x == Numeric(1)); }

void sort_descending(std::vector<Numeric>& v) {
    std::sort(v.begin(), v.end(), [](const Numeric& a, const Numeric& b) { return value_order(a, b) > 0; });
}

}  // namespace

std::vector<Numeric> QuadraticRoots::inside() const {
    std::vector<Numeric> out;
    for (const auto& r : roots)
        if (in_open_unit(r)) out.push_back(r);
    return out;
}

bool QuadraticRoots::has_zero_root() const {
    return std::any_of(roots.begin(), roots.end(), [](const Numeric& r) { return r.is_zero(); });
}

std::optional<Numeric> QuadraticRoots::partner(const Numeric& x) const {
    if (degenerate_linear || leading.is_zero()) return std::nullopt;
    if (x.is_zero()) return -linear / leading - x;
    return constant / (leading * x);
}

QuadraticRoots solve_quadratic(Numeric a, Numeric b, Numeric c, const Tolerances& tol) {
    QuadraticRoots q{a, b, c, {}, false, false};
    if (a.is_zero()) {
        if (b.is_zero()) {
            if (c.is_zero()) throw DegenerateToConstant("quadratic collapses to 0 = 0");
            return q;
        }
        q.degenerate_linear = true;
        q.roots.push_back(-c / b);
        return q;
    }
    const Numeric disc = b * b - Numeric(4) * a * c;
    if (disc.is_exact() && a.is_exact() && b.is_exact()) {
        const mpq_class& d = disc.rational();
        if (d < 0) return q;
        if (d == 0) {
            q.double_root = true;
            q.roots.push_back(-b / (Numeric(2) * a));
            return q;
        }
        if (mpq_class root; exact_sqrt(d, root)) {
            q.roots.push_back((-b + Numeric(root)) / (Numeric(2) * a));
            q.roots.push_back((-b - Numeric(root)) / (Numeric(2) * a));
            sort_descending(q.roots);
            return q;
        }
    }
    const double eps = std::max({tol.eps, a.eps(), b.eps(), c.eps()});
    const double da = a.to_double(), db = b.to_double(), dc = c.to_double();
    const double d = db * db - 4.0 * da * dc;
    if (d < -tol.eps_disc) return q;
    if (d <= 0.0) {
        q.double_root = true;
        q.roots.push_back(Numeric::approximate(-db / (2.0 * da), eps));
        return q;
    }
    // Cancellation-free pair: q = -(b + sign(b) sqrt(d)) / 2, roots q/a and c/q.
    const double s = std::sqrt(d);
    const double qq = -0.5 * (db + (db >= 0.0 ? s : -s));
    q.roots.push_back(Numeric::approximate(qq / da, eps));
    q.roots.push_back(Numeric::approximate(qq != 0.0 ? dc / qq : 0.0, eps));
    sort_descending(q.roots);
    return q;
}

Numeric Q_eval(const WalkSpec& w, const Numeric& rho, const Numeric& sigma) {
    if (rho.sign() <= 0 || sigma.sign() <= 0)
        throw NonPositiveCoordinate("Q_eval needs rho > 0 and sigma > 0, got (" + rho.str() + ", " + sigma.str() + ")");
    Numeric q = -(rho * sigma);
    for (int s = -1; s <= 1; ++s)
        for (int t = -1; t <= 1; ++t)
            if (!w.p(s, t).is_zero()) q += w.p(s, t) * rho.pow(1 - s) * sigma.pow(1 - t);
    return q;
}

bool in_C(const WalkSpec& w, const Numeric& rho, const Numeric& sigma) {
    if (rho.sign() < 0 || sigma.sign() < 0) return false;
    if (!(rho < Numeric(1)) || rho == Numeric(1) || !(sigma < Numeric(1)) || sigma == Numeric(1)) return false;
    // The polynomial form is defined on the axes as well.
    Numeric q = -(rho * sigma);
    for (int s = -1; s <= 1; ++s)
        for (int t = -1; t <= 1; ++t)
            if (!w.p(s, t).is_zero()) q += w.p(s, t) * rho.pow(1 - s) * sigma.pow(1 - t);
    return q.is_zero();
}

QuadraticRoots sigma_partners(const WalkSpec& w, const Numeric& rho, const Tolerances& tol) {
    Numeric a, b, c;
    for (int s = -1; s <= 1; ++s) {
        const Numeric weight = rho.pow(1 - s);
        a += weight * w.p(s, -1);
        b += weight * w.p(s, 0);
        c += weight * w.p(s, 1);
    }
    b -= rho;
    return solve_quadratic(a, b, c, tol);
}

QuadraticRoots rho_partners(const WalkSpec& w, const Numeric& sigma, const Tolerances& tol) {
    Numeric a, b, c;
    for (int t = -1; t <= 1; ++t) {
        const Numeric weight = sigma.pow(1 - t);
        a += weight * w.p(-1, t);
        b += weight * w.p(0, t);
        c += weight * w.p(1, t);
    }
    b -= sigma;
    return solve_quadratic(a, b, c, tol);
}

Numeric f_eval(const WalkSpec& w, const Numeric& x) {
    if (x.is_zero()) throw ZeroDenominator("f is undefined at x = 0");
    Numeric num(1), den;
    for (int s = -1; s <= 1; ++s) {
        num -= x.pow(-s) * w.p(s, 0);
        den += x.pow(-s) * w.p(s, -1);
    }
    if (den.is_zero()) throw ZeroDenominator("f denominator vanishes at x = " + x.str());
    return num / den;
}

Numeric H_eval(const WalkSpec& w, const Numeric& rho, const Numeric& sigma) {
    if (rho.sign() <= 0) throw NonPositiveCoordinate("H_eval needs rho > 0, got " + rho.str());
    Numeric r(-1);
    for (int s = -1; s <= 1; ++s) r += rho.pow(-s) * (w.h(s) + sigma * w.p(s, -1));
    return r;
}

Numeric V_eval(const WalkSpec& w, const Numeric& rho, const Numeric& sigma) {
    if (sigma.sign() <= 0) throw NonPositiveCoordinate("V_eval needs sigma > 0, got " + sigma.str());
    Numeric r(-1);
    for (int t = -1; t <= 1; ++t) r += sigma.pow(-t) * (w.v(t) + rho * w.p(-1, t));
    return r;
}

DegenerateFeasibility degenerate_feasibility(const WalkSpec& w) {
    return {w.up_mass().is_zero(), w.right_mass().is_zero()};
}

std::vector<CurveSample> curve_sample(const WalkSpec& w, int n, const Tolerances& tol) {
    std::vector<CurveSample> out;
    auto unit = [](double x) { return x > 0.0 && x < 1.0; };
    for (int k = 1; k <= n; ++k) {
        const Numeric x = Numeric::ratio(k, n + 1);
        try {
            for (const auto& r : sigma_partners(w, x, tol).inside()) out.push_back({'Q', x.to_double(), r.to_double()});
        } catch (const DegenerateToConstant&) {
        }
        // H is linear in sigma for fixed rho, V linear in rho for fixed sigma.
        Numeric hs, hp, vt, vp;
        for (int s = -1; s <= 1; ++s) {
            hs += x.pow(-s) * w.h(s);
            hp += x.pow(-s) * w.p(s, -1);
            vt += x.pow(-s) * w.v(s);
            vp += x.pow(-s) * w.p(-1, s);
        }
        if (!hp.is_zero()) {
            const double sigma = ((Numeric(1) - hs) / hp).to_double();
            if (unit(sigma)) out.push_back({'H', x.to_double(), sigma});
        }
        if (!vp.is_zero()) {
            const double rho = ((Numeric(1) - vt) / vp).to_double();
            if (unit(rho)) out.push_back({'V', rho, x.to_double()});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CurveSample& a, const CurveSample& b) { return a.curve < b.curve; });
    return out;
}

}  // namespace qpgeom
