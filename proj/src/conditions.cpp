#include "qpgeom/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qpgeom/curve.hpp"

namespace qpgeom {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::not_applicable: return "not_applicable";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(Overall o) {
    switch (o) {
        case Overall::consistent: return "consistent";
        case Overall::refuted: return "refuted";
        case Overall::undetermined: return "undetermined";
    }
    return "?";
}

const Check* ConditionReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

std::string point(const GeometricTerm& t) { return "(" + t.rho.str() + ", " + t.sigma.str() + ")"; }

struct BlockValue {
    PartitionKind kind;
    Numeric shared;
    Numeric value;
};

std::vector<BlockValue> block_functionals(const WalkSpec& w, const TermSet& g, const Tolerances& tol) {
    std::vector<BlockValue> out;
    for (auto kind : {PartitionKind::horizontal, PartitionKind::vertical})
        for (const auto& block : maximal_partition(g, kind, tol).blocks) {
            const auto terms = block_terms(g, block);
            const Numeric v = kind == PartitionKind::horizontal ? B_h(w, terms, tol) : B_v(w, terms, tol);
            out.push_back({kind, *block.shared, v});
        }
    return out;
}

// Largest r^i s^j over one region outside the window, or +inf when unbounded.
// Regions: 0 = {i > W, j <= W}, 1 = {i <= W, j > W}, 2 = {i > W, j > W}.
double region_sup(double r, double s, int window, int region) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double far = window + 1.0, near = window;
    switch (region) {
        case 0: return r > 1.0 ? inf : std::pow(r, far) * std::max(1.0, std::pow(s, near));
        case 1: return s > 1.0 ? inf : std::max(1.0, std::pow(r, near)) * std::pow(s, far);
        default: return (r > 1.0 || s > 1.0) ? inf : std::pow(r, far) * std::pow(s, far);
    }
}

// Each negative term is charged to one positive term; a positive term
// dominates its charges when the summed ratio bounds stay below one.
bool assignable(const std::vector<std::vector<double>>& cost, std::size_t positives) {
    const std::size_t negatives = cost.size();
    std::vector<double> load(positives, 0.0);
    double combos = 1.0;
    for (std::size_t k = 0; k < negatives; ++k) combos *= static_cast<double>(positives);
    if (combos <= 20000.0) {
        std::function<bool(std::size_t)> place = [&](std::size_t k) {
            if (k == negatives) return true;
            for (std::size_t d = 0; d < positives; ++d) {
                if (load[d] + cost[k][d] >= 1.0) continue;
                load[d] += cost[k][d];
                if (place(k + 1)) return true;
                load[d] -= cost[k][d];
            }
            return false;
        };
        return place(0);
    }
    std::vector<std::size_t> order(negatives);
    for (std::size_t k = 0; k < negatives; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return *std::min_element(cost[a].begin(), cost[a].end()) > *std::min_element(cost[b].begin(), cost[b].end());
    });
    for (std::size_t k : order) {
        std::size_t best = positives;
        for (std::size_t d = 0; d < positives; ++d)
            if (load[d] + cost[k][d] < 1.0 && (best == positives || load[d] + cost[k][d] < load[best] + cost[k][best])) best = d;
        if (best == positives) return false;
        load[best] += cost[k][best];
    }
    return true;
}

}  // namespace

TailBound positivity_tail_bound(const TermSet& g, int window) {
    std::vector<GeometricTerm> pos, neg;
    for (const auto& t : g) {
        if (t.alpha.sign() > 0 && !t.is_degenerate()) pos.push_back(t);
        if (t.alpha.sign() < 0) neg.push_back(t);
    }
    if (neg.empty()) return {true, "no negative coefficients"};
    for (const auto& t : neg)
        if (t.is_degenerate()) return {false, "negative degenerate term " + point(t)};
    if (pos.empty()) return {false, "no positive term to dominate the tail"};

    static const char* names[] = {"i > W", "j > W", "i, j > W"};
    for (int region = 0; region < 3; ++region) {
        std::vector<std::vector<double>> cost(neg.size(), std::vector<double>(pos.size()));
        for (std::size_t k = 0; k < neg.size(); ++k)
            for (std::size_t d = 0; d < pos.size(); ++d) {
                const double r = neg[k].rho.to_double() / pos[d].rho.to_double();
                const double s = neg[k].sigma.to_double() / pos[d].sigma.to_double();
                const double ratio = std::fabs(neg[k].alpha.to_double()) / pos[d].alpha.to_double();
                cost[k][d] = ratio * region_sup(r, s, window, region);
            }
        if (!assignable(cost, pos.size()))
            return {false, std::string("no dominating assignment in region ") + names[region]};
    }
    return {true, "negative terms dominated outside the window"};
}

ConditionReport check_necessary(const WalkSpec& w, const TermSet& g, int window, const Tolerances& tol) {
    ConditionReport report;
    const auto non_degenerate = g.of_class(TermClass::non_degenerate);
    const bool has_degenerate = non_degenerate.size() != g.size();

    {
        Check c{"on_curve", Verdict::not_applicable, ""};
        if (!non_degenerate.empty()) {
            std::string off;
            for (const auto& t : non_degenerate)
                if (!in_C(w, t.rho, t.sigma)) off += (off.empty() ? "" : ", ") + point(t);
            c.verdict = off.empty() ? Verdict::pass : Verdict::fail;
            c.details = off.empty() ? "all non-degenerate terms lie on C" : "off C: " + off;
        }
        report.checks.push_back(c);
    }
    {
        const auto feas = degenerate_feasibility(w);
        std::ostringstream d;
        d << g.of_class(TermClass::horizontally_degenerate).size() << " horizontally and "
          << g.of_class(TermClass::vertically_degenerate).size() << " vertically degenerate; kernel allows horizontal="
          << (feas.horizontal_allowed ? "yes" : "no") << " vertical=" << (feas.vertical_allowed ? "yes" : "no");
        report.checks.push_back({"no_degenerate", has_degenerate ? Verdict::fail : Verdict::pass, d.str()});
    }
    {
        bool canonical = true;
        for (std::size_t a = 0; a < g.size(); ++a) {
            if (g[a].alpha.is_zero()) canonical = false;
            for (std::size_t b = a + 1; b < g.size(); ++b)
                if (same_point(g[a].coordinate(), g[b].coordinate(), tol)) canonical = false;
        }
        report.checks.push_back({"canonical_unique", canonical ? Verdict::pass : Verdict::fail,
                                 canonical ? "distinct coordinates, non-zero coefficients" : "duplicate coordinates or zero coefficient"});
    }
    {
        Check c{"pairwise_coupled", Verdict::not_applicable, "empty set"};
        if (!g.empty()) {
            const auto blocks = maximal_partition(g, PartitionKind::uncoupled, tol).blocks.size();
            c.verdict = blocks == 1 ? Verdict::pass : Verdict::fail;
            c.details = std::to_string(blocks) + " uncoupled block(s)";
        }
        report.checks.push_back(c);
    }
    {
        Check c{"not_two_terms", Verdict::not_applicable, "degenerate terms present"};
        if (!has_degenerate) {
            c.verdict = g.size() == 2 ? Verdict::fail : Verdict::pass;
            c.details = std::to_string(g.size()) + " term(s)";
        }
        report.checks.push_back(c);
    }
    {
        Check c{"has_negative_coefficient", Verdict::not_applicable, "fewer than two terms"};
        if (g.size() >= 2) {
            Numeric lowest = g[0].alpha;
            for (const auto& t : g)
                if (t.alpha < lowest) lowest = t.alpha;
            c.verdict = lowest.sign() < 0 ? Verdict::pass : Verdict::fail;
            c.details = "min alpha " + lowest.str();
        }
        report.checks.push_back(c);
    }
    {
        Check c{"boundary_balance", Verdict::pass, ""};
        std::string bad;
        int blocks = 0;
        for (const auto& b : block_functionals(w, g, tol)) {
            ++blocks;
            if (!b.value.is_zero())
                bad += std::string(bad.empty() ? "" : "; ") + (b.kind == PartitionKind::horizontal ? "B_h(rho=" : "B_v(sigma=") +
                       b.shared.str() + ") = " + b.value.str();
        }
        if (!bad.empty()) {
            c.verdict = Verdict::fail;
            c.details = bad;
        } else {
            c.details = std::to_string(blocks) + " block functional(s) vanish";
        }
        if (g.empty()) c = {"boundary_balance", Verdict::not_applicable, "empty set"};
        report.checks.push_back(c);
    }
    {
        Check c{"positivity", Verdict::not_applicable, "empty set"};
        if (!g.empty()) {
            std::string bad;
            for (int i = 0; i <= window && bad.empty(); ++i)
                for (int j = 0; j <= window && bad.empty(); ++j)
                    if (!(g.measure(i, j).to_double() > 0.0) && !(g.measure(i, j) > Numeric(0)))
                        bad = "m(" + std::to_string(i) + ", " + std::to_string(j) + ") = " + g.measure(i, j).str();
            if (!bad.empty()) {
                c.verdict = Verdict::fail;
                c.details = bad;
            } else {
                const auto tail = positivity_tail_bound(g, window);
                c.verdict = tail.proven ? Verdict::pass : Verdict::inconclusive;
                c.details = "window positive; " + tail.details;
            }
        }
        report.checks.push_back(c);
    }

    report.overall = Overall::consistent;
    for (const auto& c : report.checks) {
        if (c.verdict == Verdict::fail) {
            report.overall = Overall::refuted;
            report.refuted_by = c.name;
            break;
        }
        if (c.verdict == Verdict::inconclusive) report.overall = Overall::undetermined;
    }
    return report;
}

InvariantCheck check_invariant(const WalkSpec& w, const TermSet& g, int window, const Tolerances& tol) {
    InvariantCheck out;
    out.residual_route = true;
    for (const auto& r : residual_sweep(w, g, window)) {
        out.max_residual = max_abs(out.max_residual, r.residual);
        if (!r.residual.is_zero()) out.residual_route = false;
    }

    out.functional_route = g.of_class(TermClass::non_degenerate).size() == g.size();
    for (const auto& t : g)
        if (out.functional_route && !in_C(w, t.rho, t.sigma)) out.functional_route = false;
    if (out.functional_route)
        for (const auto& b : block_functionals(w, g, tol))
            if (!b.value.is_zero()) out.functional_route = false;

    out.routes_agree = out.residual_route == out.functional_route;
    out.is_invariant_on_window = !g.empty() && out.residual_route && out.functional_route;
    return out;
}

}  // namespace qpgeom
