#include "qpgeom/construct.hpp"

#include <algorithm>

#include "qpgeom/curve.hpp"
#include "qpgeom/linalg.hpp"

namespace qpgeom {

const char* to_string(StepDirection d) { return d == StepDirection::vertical ? "vertical" : "horizontal"; }

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::partner_outside_unit: return "partner_outside_unit";
        case StopReason::revisit: return "revisit";
        case StopReason::double_root: return "double_root";
        case StopReason::max_length: return "max_length";
        case StopReason::closed_on_boundary: return "closed_on_boundary";
        case StopReason::no_partner: return "no_partner";
    }
    return "?";
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::solved: return "solved";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::ambiguous_nullspace: return "ambiguous_nullspace";
    }
    return "?";
}

TermSet Chain::coordinates() const {
    std::vector<GeometricTerm> raw;
    for (const auto& p : points) raw.push_back({p.rho, p.sigma, Numeric(1)});
    return canonicalize(raw);
}

namespace {

std::string point(const Coordinate& c) { return "(" + c.rho.str() + ", " + c.sigma.str() + ")"; }

StepDirection flip(StepDirection d) {
    return d == StepDirection::vertical ? StepDirection::horizontal : StepDirection::vertical;
}

bool closes(const WalkSpec& w, const std::vector<Coordinate>& pts, StepDirection next) {
    const auto& last = pts.back();
    const bool on_h = H_eval(w, last.rho, last.sigma).is_zero();
    const bool on_v = V_eval(w, last.rho, last.sigma).is_zero();
    if (pts.size() == 1) return on_h && on_v;
    return next == StepDirection::vertical ? on_v : on_h;
}

void require_on_curve(const WalkSpec& w, const TermSet& g) {
    for (const auto& t : g)
        if (!t.is_degenerate() && !in_C(w, t.rho, t.sigma)) throw OffCurveTerm("term (" + t.rho.str() + ", " + t.sigma.str() + ") is not on C");
}

// Unknown order: h(-1), h(0), h(1), v(-1), v(0), v(1), origin slack.
constexpr int kUnknowns = 7;

struct BoundaryRow {
    std::string name;
    Vector coeffs;
    Numeric rhs;
};

BoundaryRow horizontal_row(const WalkSpec& w, const std::vector<GeometricTerm>& block) {
    BoundaryRow row{"B_h(rho=" + block.front().rho.str() + ") = 0", Vector(kUnknowns, Numeric(0)), Numeric(0)};
    const Numeric& rho = block.front().rho;
    for (const auto& t : block) {
        Numeric moved;
        for (int s = -1; s <= 1; ++s) {
            row.coeffs[static_cast<std::size_t>(s + 1)] += t.alpha * rho.pow(-s);
            moved += rho.pow(-s) * t.sigma * w.p(s, -1);
        }
        row.rhs += t.alpha * (Numeric(1) - moved);
    }
    return row;
}

BoundaryRow vertical_row(const WalkSpec& w, const std::vector<GeometricTerm>& block) {
    BoundaryRow row{"B_v(sigma=" + block.front().sigma.str() + ") = 0", Vector(kUnknowns, Numeric(0)), Numeric(0)};
    const Numeric& sigma = block.front().sigma;
    for (const auto& t : block) {
        Numeric moved;
        for (int u = -1; u <= 1; ++u) {
            row.coeffs[static_cast<std::size_t>(u + 4)] += t.alpha * sigma.pow(-u);
            moved += t.rho * sigma.pow(-u) * w.p(-1, u);
        }
        row.rhs += t.alpha * (Numeric(1) - moved);
    }
    return row;
}

std::vector<BoundaryRow> structural_rows(const WalkSpec& w) {
    std::vector<BoundaryRow> rows;
    BoundaryRow h{"h row sum = 1", Vector(kUnknowns, Numeric(0)), Numeric(1) - w.up_mass()};
    BoundaryRow v{"v row sum = 1", Vector(kUnknowns, Numeric(0)), Numeric(1) - w.right_mass()};
    for (int k = 0; k < 3; ++k) {
        h.coeffs[static_cast<std::size_t>(k)] = Numeric(1);
        v.coeffs[static_cast<std::size_t>(k + 3)] = Numeric(1);
    }
    BoundaryRow origin{"h_1 + v_1 + p_1_1 <= 1", Vector(kUnknowns, Numeric(0)), Numeric(1) - w.p(1, 1)};
    origin.coeffs[2] = origin.coeffs[5] = origin.coeffs[6] = Numeric(1);
    rows.push_back(std::move(h));
    rows.push_back(std::move(v));
    rows.push_back(std::move(origin));
    return rows;
}

const char* const kUnknownNames[kUnknowns] = {"h_-1 >= 0", "h_0 >= 0", "h_1 >= 0", "v_-1 >= 0", "v_0 >= 0", "v_1 >= 0", "origin slack >= 0"};

bool rows_feasible(const std::vector<BoundaryRow>& rows, const std::vector<bool>& row_on, const std::vector<bool>& nonneg,
                   const Tolerances& tol) {
    Matrix a;
    Vector b;
    for (std::size_t k = 0; k < rows.size(); ++k)
        if (row_on[k]) {
            a.push_back(rows[k].coeffs);
            b.push_back(rows[k].rhs);
        }
    return feasible(a, b, kUnknowns, nonneg, tol);
}

// Deletion filter: drop each constraint whose removal keeps the system infeasible.
std::vector<std::string> infeasible_subset(const std::vector<BoundaryRow>& rows, const Tolerances& tol) {
    std::vector<bool> row_on(rows.size(), true);
    std::vector<bool> nonneg(kUnknowns, true);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        row_on[k] = false;
        if (rows_feasible(rows, row_on, nonneg, tol)) row_on[k] = true;
    }
    for (std::size_t k = 0; k + 1 < kUnknowns; ++k) {
        nonneg[k] = false;
        if (rows_feasible(rows, row_on, nonneg, tol)) nonneg[k] = true;
    }
    std::vector<std::string> out;
    for (std::size_t k = 0; k < rows.size(); ++k)
        if (row_on[k]) out.push_back(rows[k].name);
    for (std::size_t k = 0; k + 1 < kUnknowns; ++k)
        if (nonneg[k]) out.emplace_back(kUnknownNames[k]);
    return out;
}

BoundarySolution solve_rows(const WalkSpec& interior, std::vector<BoundaryRow> rows, BoundaryChoice choice, const Tolerances& tol) {
    for (auto& r : structural_rows(interior)) rows.push_back(std::move(r));
    Polyhedron p;
    p.columns = kUnknowns;
    for (const auto& r : rows) {
        p.a.push_back(r.coeffs);
        p.b.push_back(r.rhs);
    }
    BoundarySolution out;
    out.walk = interior.interior_only();
    const auto vs = vertices(p, tol);
    if (vs.empty()) {
        out.violated = infeasible_subset(rows, tol);
        return out;
    }
    Vector x = vs.front();
    if (choice == BoundaryChoice::centroid) {
        x.assign(kUnknowns, Numeric(0));
        for (const auto& v : vs)
            for (std::size_t k = 0; k < x.size(); ++k) x[k] += v[k];
        for (auto& c : x) c /= Numeric(static_cast<long>(vs.size()));
    }
    out.feasible = true;
    for (int s = -1; s <= 1; ++s) {
        out.walk.h(s) = x[static_cast<std::size_t>(s + 1)];
        out.walk.v(s) = x[static_cast<std::size_t>(s + 4)];
    }
    return out;
}

std::vector<BoundaryRow> block_rows(const WalkSpec& w, const TermSet& g, bool singletons_only, const Tolerances& tol) {
    const TermSet nd = g.non_degenerate();
    std::vector<BoundaryRow> rows;
    for (const auto& block : maximal_partition(nd, PartitionKind::horizontal, tol).blocks)
        if (!singletons_only || block.indices.size() == 1) rows.push_back(horizontal_row(w, block_terms(nd, block)));
    for (const auto& block : maximal_partition(nd, PartitionKind::vertical, tol).blocks)
        if (!singletons_only || block.indices.size() == 1) rows.push_back(vertical_row(w, block_terms(nd, block)));
    return rows;
}

}  // namespace

Chain trace_chain(const WalkSpec& w, const Coordinate& seed, const TraceOptions& opts, const Tolerances& tol) {
    if (!in_C(w, seed.rho, seed.sigma)) throw SeedOffCurve("seed " + point(seed) + " is not on C");
    Chain chain;
    chain.points.push_back(seed);
    StepDirection dir = opts.first;
    while (true) {
        if (opts.close_on_boundary && closes(w, chain.points, dir)) {
            chain.stop = StopReason::closed_on_boundary;
            chain.stop_detail = point(chain.points.back()) + " lies on " + (chain.points.size() == 1 ? "H and V" : dir == StepDirection::vertical ? "V" : "H");
            return chain;
        }
        if (static_cast<int>(chain.points.size()) >= opts.max_len) {
            chain.stop = StopReason::max_length;
            chain.stop_detail = "reached " + std::to_string(opts.max_len) + " points";
            return chain;
        }
        const Coordinate& cur = chain.points.back();
        const bool vertical = dir == StepDirection::vertical;
        const Numeric& moving = vertical ? cur.rho : cur.sigma;
        QuadraticRoots roots;
        try {
            roots = vertical ? rho_partners(w, cur.sigma, tol) : sigma_partners(w, cur.rho, tol);
        } catch (const DegenerateToConstant&) {
            chain.stop = StopReason::no_partner;
            chain.stop_detail = "partner quadratic vanishes identically";
            return chain;
        }
        const auto partner = roots.partner(moving);
        if (!partner) {
            chain.stop = StopReason::no_partner;
            chain.stop_detail = "partner equation is linear";
            return chain;
        }
        if (roots.double_root || same_coordinate(*partner, moving, tol)) {
            chain.stop = StopReason::double_root;
            chain.stop_detail = "tangency at " + point(cur);
            return chain;
        }
        if (!(partner->sign() > 0) || !(*partner < Numeric(1)) || *partner == Numeric(1)) {
            chain.stop = StopReason::partner_outside_unit;
            chain.stop_detail = std::string(vertical ? "rho" : "sigma") + " partner " + partner->str() + " of " + point(cur);
            return chain;
        }
        Coordinate next = vertical ? Coordinate{*partner, cur.sigma} : Coordinate{cur.rho, *partner};
        for (const auto& p : chain.points)
            if (same_point(p, next, tol)) {
                chain.stop = StopReason::revisit;
                chain.stop_detail = "returns to " + point(next);
                return chain;
            }
        chain.points.push_back(std::move(next));
        dir = flip(dir);
    }
}

CoefficientSolution solve_coefficients(const WalkSpec& w, const TermSet& coords, const Tolerances& tol) {
    if (coords.empty() || !is_pairwise_coupled(coords, tol)) throw NotPairwiseCoupled("coordinate set is not pairwise-coupled");
    require_on_curve(w, coords);

    const int n = static_cast<int>(coords.size());
    Matrix a;
    for (auto kind : {PartitionKind::horizontal, PartitionKind::vertical})
        for (const auto& block : maximal_partition(coords, kind, tol).blocks) {
            Vector row(static_cast<std::size_t>(n), Numeric(0));
            for (std::size_t k : block.indices) {
                const auto& t = coords[k];
                if (t.is_degenerate()) continue;
                row[k] = kind == PartitionKind::horizontal ? H_eval(w, t.rho, t.sigma) : V_eval(w, t.rho, t.sigma);
            }
            a.push_back(std::move(row));
        }

    CoefficientSolution out;
    const Nullspace ns = nullspace(a, n, tol);
    out.nullspace_dim = static_cast<int>(ns.basis.size());
    if (out.nullspace_dim == 0) return out;
    if (out.nullspace_dim > 1) {
        out.status = SolveStatus::ambiguous_nullspace;
        return out;
    }
    const Vector& x = ns.basis.front();
    if (std::any_of(x.begin(), x.end(), [](const Numeric& c) { return c.is_zero(); })) return out;
    std::vector<GeometricTerm> raw;
    for (int k = 0; k < n; ++k) raw.push_back({coords[static_cast<std::size_t>(k)].rho, coords[static_cast<std::size_t>(k)].sigma, x[static_cast<std::size_t>(k)] / x[0]});
    out.terms = canonicalize(raw, tol);
    out.status = SolveStatus::solved;
    return out;
}

BoundarySolution solve_boundary(const WalkSpec& interior, const TermSet& g, const Tolerances& tol) {
    require_on_curve(interior, g);
    return solve_rows(interior, block_rows(interior, g, false, tol), BoundaryChoice::lexmin, tol);
}

Construction construct_measure(const WalkSpec& interior, const Coordinate& seed, const ConstructOptions& opts, const Tolerances& tol) {
    Construction out;
    TraceOptions trace = opts.trace;
    trace.close_on_boundary = false;
    out.chain = trace_chain(interior, seed, trace, tol);
    const TermSet coords = out.chain.coordinates();

    const auto boundary = solve_rows(interior, block_rows(interior, coords, true, tol), opts.boundary, tol);
    if (!boundary.feasible) {
        out.failure = "no boundary probabilities place the chain ends on H and V";
        out.walk = boundary.walk;
        return out;
    }
    out.walk = boundary.walk;
    const auto solved = solve_coefficients(out.walk, coords, tol);
    out.nullspace_dim = solved.nullspace_dim;
    if (solved.status != SolveStatus::solved) {
        out.failure = std::string("coefficients ") + to_string(solved.status);
        return out;
    }
    out.terms = solved.terms;
    out.ok = true;
    return out;
}

}  // namespace qpgeom
