#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpgeom/numeric.hpp"

namespace qpgeom {

using Vector = std::vector<Numeric>;
using Matrix = std::vector<Vector>;  ///< row-major, rectangular

bool all_exact(const Matrix& a);

struct Nullspace {
    int rank = 0;
    std::vector<Vector> basis;  ///< one vector per free column
    Regime regime = Regime::exact;
};

/// Exact reduced row echelon form over the rationals when every entry is
/// exact; otherwise full-pivot LU with relative pivot threshold
/// max(rank_tol, largest entry eps).
Nullspace nullspace(const Matrix& a, int columns, const Tolerances& tol = {});

/// Unique solution of a x = b, or empty when a is rank deficient in
/// `columns` or the system is inconsistent.
std::optional<Vector> solve_unique(const Matrix& a, const Vector& b, int columns, const Tolerances& tol = {});

/// Equality-constrained non-negative region { x >= 0 : a x = b }.
struct Polyhedron {
    Matrix a;
    Vector b;
    int columns = 0;
};

/// All basic feasible points, sorted lexicographically ascending, duplicates
/// removed. Non-negativity is checked in-regime.
std::vector<Vector> vertices(const Polyhedron& p, const Tolerances& tol = {});

/// Lexicographically smallest feasible point. For a non-empty polytope this
/// is a vertex.
std::optional<Vector> lexmin_vertex(const Polyhedron& p, const Tolerances& tol = {});

/// Feasibility of { a x = b } with x_k >= 0 only where nonneg[k].
bool feasible(const Matrix& a, const Vector& b, int columns, const std::vector<bool>& nonneg, const Tolerances& tol = {});

}  // namespace qpgeom
