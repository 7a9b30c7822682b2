#include "qpgeom/termset.hpp"

#include <numeric>

namespace qpgeom {

const char* to_string(PartitionKind k) {
    switch (k) {
        case PartitionKind::horizontal: return "horizontal";
        case PartitionKind::vertical: return "vertical";
        case PartitionKind::uncoupled: return "uncoupled";
    }
    return "?";
}

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<GeometricTerm> non_degenerate_only(std::span<const GeometricTerm> block) {
    std::vector<GeometricTerm> out;
    for (const auto& t : block)
        if (!t.is_degenerate()) out.push_back(t);
    return out;
}

Numeric alpha_sum(std::span<const GeometricTerm> block) {
    Numeric s;
    for (const auto& t : block) s += t.alpha;
    return s;
}

}  // namespace

PartitionResult maximal_partition(const TermSet& g, PartitionKind kind, const Tolerances& tol) {
    const std::size_t n = g.size();
    DisjointSets sets(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const bool share_rho = same_coordinate(g[a].rho, g[b].rho, tol);
            const bool share_sigma = same_coordinate(g[a].sigma, g[b].sigma, tol);
            const bool join = kind == PartitionKind::horizontal ? share_rho
                              : kind == PartitionKind::vertical ? share_sigma
                                                                : share_rho || share_sigma;
            if (join) sets.unite(a, b);
        }

    PartitionResult result{kind, {}};
    std::vector<std::size_t> block_of(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t root = sets.find(k);
        if (block_of[root] == n) {
            block_of[root] = result.blocks.size();
            result.blocks.emplace_back();
        }
        result.blocks[block_of[root]].indices.push_back(k);
    }
    for (auto& block : result.blocks) {
        const auto& first = g[block.indices.front()];
        if (kind == PartitionKind::horizontal) block.shared = first.rho;
        if (kind == PartitionKind::vertical) block.shared = first.sigma;
    }
    return result;
}

bool is_pairwise_coupled(const TermSet& g, const Tolerances& tol) {
    if (g.empty()) throw EmptySet("pairwise coupling is undefined for an empty set");
    return maximal_partition(g, PartitionKind::uncoupled, tol).blocks.size() == 1;
}

std::vector<GeometricTerm> block_terms(const TermSet& g, const PartitionBlock& block) {
    std::vector<GeometricTerm> out;
    out.reserve(block.indices.size());
    for (std::size_t k : block.indices) out.push_back(g[k]);
    return out;
}

Numeric B_h(const WalkSpec& w, std::span<const GeometricTerm> block, const Tolerances& tol) {
    const auto terms = non_degenerate_only(block);
    Numeric total;
    for (const auto& t : terms) {
        if (!same_coordinate(t.rho, terms.front().rho, tol))
            throw MixedRho("B_h block mixes rho " + terms.front().rho.str() + " and " + t.rho.str());
        total += t.alpha * H_eval(w, t.rho, t.sigma);
    }
    return total;
}

Numeric B_v(const WalkSpec& w, std::span<const GeometricTerm> block, const Tolerances& tol) {
    const auto terms = non_degenerate_only(block);
    Numeric total;
    for (const auto& t : terms) {
        if (!same_coordinate(t.sigma, terms.front().sigma, tol))
            throw MixedSigma("B_v block mixes sigma " + terms.front().sigma.str() + " and " + t.sigma.str());
        total += t.alpha * V_eval(w, t.rho, t.sigma);
    }
    return total;
}

Numeric b_h(const WalkSpec& w, std::span<const GeometricTerm> block, const Tolerances& tol) {
    const auto terms = non_degenerate_only(block);
    const Numeric total = alpha_sum(terms);
    if (terms.empty() || total.is_zero()) throw ZeroCoefficientSum("b_h needs a non-zero coefficient sum");
    const Numeric& rho = terms.front().rho;
    return B_h(w, terms, tol) / total + (Numeric(1) - Numeric(1) / rho) * w.h(1) + (Numeric(1) - rho) * w.h(-1);
}

Numeric b_v(const WalkSpec& w, std::span<const GeometricTerm> block, const Tolerances& tol) {
    const auto terms = non_degenerate_only(block);
    const Numeric total = alpha_sum(terms);
    if (terms.empty() || total.is_zero()) throw ZeroCoefficientSum("b_v needs a non-zero coefficient sum");
    const Numeric& sigma = terms.front().sigma;
    return B_v(w, terms, tol) / total + (Numeric(1) - Numeric(1) / sigma) * w.v(1) + (Numeric(1) - sigma) * w.v(-1);
}

}  // namespace qpgeom
