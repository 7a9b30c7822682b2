#include "qpgeom/walk.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace qpgeom {

Numeric WalkSpec::up_mass() const { return p(-1, 1) + p(0, 1) + p(1, 1); }
Numeric WalkSpec::right_mass() const { return p(1, -1) + p(1, 0) + p(1, 1); }

bool WalkSpec::all_exact() const {
    auto exact = [](const Numeric& x) { return x.is_exact(); };
    return std::all_of(interior.begin(), interior.end(), exact) &&
           std::all_of(horizontal.begin(), horizontal.end(), exact) &&
           std::all_of(vertical.begin(), vertical.end(), exact);
}

WalkSpec WalkSpec::interior_only() const {
    WalkSpec w;
    w.interior = interior;
    return w;
}

const char* to_string(Region r) {
    switch (r) {
        case Region::interior: return "interior";
        case Region::horizontal: return "horizontal";
        case Region::vertical: return "vertical";
        case Region::origin: return "origin";
    }
    return "?";
}

Region region_of(int i, int j) {
    if (i > 0 && j > 0) return Region::interior;
    if (i > 0) return Region::horizontal;
    if (j > 0) return Region::vertical;
    return Region::origin;
}

NegativeProbability::NegativeProbability(std::string key, Numeric value)
    : std::runtime_error("negative probability " + key + " = " + value.str()), key_(std::move(key)), value_(std::move(value)) {}

RowSumViolation::RowSumViolation(Region region, Numeric deficit)
    : std::runtime_error(std::string("row sum violation in ") + to_string(region) + " region, deficit " + deficit.str()),
      region_(region),
      deficit_(std::move(deficit)) {}

std::vector<Move> moves_from(const WalkSpec& w, int i, int j) {
    std::vector<Move> out;
    auto add = [&](int ds, int dt, const Numeric& prob) {
        if (prob.sign() != 0) out.push_back({ds, dt, prob});
    };
    switch (region_of(i, j)) {
        case Region::interior:
            for (int s = -1; s <= 1; ++s)
                for (int t = -1; t <= 1; ++t) add(s, t, w.p(s, t));
            break;
        case Region::horizontal:
            for (int s = -1; s <= 1; ++s) add(s, 0, w.h(s));
            for (int s = -1; s <= 1; ++s) add(s, 1, w.p(s, 1));
            break;
        case Region::vertical:
            for (int t = -1; t <= 1; ++t) add(0, t, w.v(t));
            for (int t = -1; t <= 1; ++t) add(1, t, w.p(1, t));
            break;
        case Region::origin:
            add(1, 0, w.h(1));
            add(0, 1, w.v(1));
            add(1, 1, w.p(1, 1));
            add(0, 0, Numeric(1) - w.h(1) - w.v(1) - w.p(1, 1));
            break;
    }
    return out;
}

namespace {

constexpr int kTruncationMargin = 3;

std::string key_name(char prefix, int a) { return std::string(1, prefix) + "_" + std::to_string(a); }

void require_unit(Region region, const Numeric& sum) {
    Numeric deficit = Numeric(1) - sum;
    if (!deficit.is_zero()) throw RowSumViolation(region, deficit);
}

// Directed graph of the walk restricted to [0,n)^2; moves leaving the box are dropped.
std::vector<std::vector<int>> truncated_graph(const WalkSpec& w, int n) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& mv : moves_from(w, i, j)) {
                const int a = i + mv.ds, b = j + mv.dt;
                if (a < 0 || b < 0 || a >= n || b >= n) continue;
                adj[static_cast<std::size_t>(i * n + j)].push_back(a * n + b);
            }
    return adj;
}

std::vector<int> bfs_levels(const std::vector<std::vector<int>>& adj, int start) {
    std::vector<int> level(adj.size(), -1);
    std::queue<int> q;
    level[static_cast<std::size_t>(start)] = 0;
    q.push(start);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj[static_cast<std::size_t>(u)])
            if (level[static_cast<std::size_t>(v)] < 0) {
                level[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(u)] + 1;
                q.push(v);
            }
    }
    return level;
}

}  // namespace

ValidationVerdict validate_walk(const WalkSpec& w, int truncation_size) {
    if (truncation_size < 2) throw std::invalid_argument("truncation_size must be at least 2");
    for (int s = -1; s <= 1; ++s)
        for (int t = -1; t <= 1; ++t)
            if (w.p(s, t).sign() < 0)
                throw NegativeProbability("p_" + std::to_string(s) + "_" + std::to_string(t), w.p(s, t));
    for (int k = -1; k <= 1; ++k) {
        if (w.h(k).sign() < 0) throw NegativeProbability(key_name('h', k), w.h(k));
        if (w.v(k).sign() < 0) throw NegativeProbability(key_name('v', k), w.v(k));
    }

    ValidationVerdict verdict;
    verdict.truncation_size = truncation_size;
    Numeric interior_sum;
    for (const auto& x : w.interior) interior_sum += x;
    verdict.row_sums[0] = interior_sum;
    verdict.row_sums[1] = w.h(-1) + w.h(0) + w.h(1) + w.up_mass();
    verdict.row_sums[2] = w.v(-1) + w.v(0) + w.v(1) + w.right_mass();
    require_unit(Region::interior, verdict.row_sums[0]);
    require_unit(Region::horizontal, verdict.row_sums[1]);
    require_unit(Region::vertical, verdict.row_sums[2]);
    if (Numeric origin_stay = Numeric(1) - w.h(1) - w.v(1) - w.p(1, 1); origin_stay.sign() < 0)
        throw RowSumViolation(Region::origin, origin_stay);
    verdict.stochastic = true;

    // Paths between window states may leave the window: i + j can only grow
    // along some axes, so a literal n x n cut can split a single class.
    const int n = truncation_size;
    const int outer = kTruncationMargin * n;
    const auto adj = truncated_graph(w, outer);
    std::vector<std::vector<int>> rev(adj.size());
    for (std::size_t u = 0; u < adj.size(); ++u)
        for (int v : adj[u]) rev[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));

    const auto fwd = bfs_levels(adj, 0);
    const auto bwd = bfs_levels(rev, 0);
    verdict.irreducible = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto k = static_cast<std::size_t>(i * outer + j);
            if (fwd[k] < 0 || bwd[k] < 0) verdict.irreducible = false;
        }

    if (verdict.irreducible) {
        // Period of the class: gcd over its edges of level(u) + 1 - level(v).
        int g = 0;
        for (std::size_t u = 0; u < adj.size(); ++u) {
            if (fwd[u] < 0 || bwd[u] < 0) continue;
            for (int v : adj[u]) {
                const auto vv = static_cast<std::size_t>(v);
                if (fwd[vv] < 0 || bwd[vv] < 0) continue;
                g = std::gcd(g, std::abs(fwd[u] + 1 - fwd[vv]));
            }
        }
        verdict.period = g;
        verdict.aperiodic = g == 1;
    }
    return verdict;
}

Numeric interior_residual(const WalkSpec& w, const TermSet& m, int i, int j) {
    if (i <= 0 || j <= 0)
        throw StateOnBoundary("interior residual requested at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    Numeric r = m.measure(i, j);
    for (int s = -1; s <= 1; ++s)
        for (int t = -1; t <= 1; ++t)
            if (!w.p(s, t).is_zero()) r -= m.measure(i - s, j - t) * w.p(s, t);
    return r;
}

Numeric horizontal_residual(const WalkSpec& w, const TermSet& m, int i) {
    if (i <= 0) throw StateOnBoundary("horizontal residual requested at i = " + std::to_string(i));
    Numeric r = m.measure(i, 0);
    for (int s = -1; s <= 1; ++s) {
        if (!w.p(s, -1).is_zero()) r -= m.measure(i - s, 1) * w.p(s, -1);
        if (!w.h(s).is_zero()) r -= m.measure(i - s, 0) * w.h(s);
    }
    return r;
}

Numeric vertical_residual(const WalkSpec& w, const TermSet& m, int j) {
    if (j <= 0) throw StateOnBoundary("vertical residual requested at j = " + std::to_string(j));
    Numeric r = m.measure(0, j);
    for (int t = -1; t <= 1; ++t) {
        if (!w.p(-1, t).is_zero()) r -= m.measure(1, j - t) * w.p(-1, t);
        if (!w.v(t).is_zero()) r -= m.measure(0, j - t) * w.v(t);
    }
    return r;
}

std::vector<BalanceResidual> residual_sweep(const WalkSpec& w, const TermSet& m, int window) {
    std::vector<BalanceResidual> out;
    out.reserve(static_cast<std::size_t>(window * window + 2 * window));
    for (int i = 1; i <= window; ++i)
        for (int j = 1; j <= window; ++j) out.push_back({i, j, interior_residual(w, m, i, j)});
    for (int i = 1; i <= window; ++i) out.push_back({i, 0, horizontal_residual(w, m, i)});
    for (int j = 1; j <= window; ++j) out.push_back({0, j, vertical_residual(w, m, j)});
    return out;
}

}  // namespace qpgeom
