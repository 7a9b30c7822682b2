#include "qpgeom/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qpgeom {

bool all_exact(const Matrix& a) {
    return std::all_of(a.begin(), a.end(), [](const Vector& row) {
        return std::all_of(row.begin(), row.end(), [](const Numeric& x) { return x.is_exact(); });
    });
}

namespace {

struct ZeroTest {
    bool exact = true;
    double threshold = 0.0;

    bool operator()(const Numeric& x) const {
        if (exact || x.is_exact()) return x.sign() == 0;
        return std::fabs(x.to_double()) <= threshold;
    }
};

double max_entry(const Matrix& a, int columns) {
    double m = 0.0;
    for (const auto& row : a)
        for (int c = 0; c < columns; ++c) m = std::max(m, std::fabs(row[static_cast<std::size_t>(c)].to_double()));
    return m;
}

double max_eps(const Matrix& a) {
    double e = 0.0;
    for (const auto& row : a)
        for (const auto& x : row) e = std::max(e, x.eps());
    return e;
}

ZeroTest zero_test(const Matrix& a, int columns, const Tolerances& tol) {
    ZeroTest z;
    z.exact = all_exact(a);
    if (!z.exact) z.threshold = std::max(tol.rank_tol, max_eps(a)) * std::max(max_entry(a, columns), 1e-300);
    return z;
}

/// Reduced row echelon form over the first `columns` columns; trailing
/// columns (a right-hand side) are carried along. Returns pivot columns.
std::vector<int> reduce(Matrix& m, int columns, const ZeroTest& is_zero) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < columns && r < m.size(); ++c) {
        const auto cc = static_cast<std::size_t>(c);
        std::size_t best = m.size();
        double best_mag = -1.0;
        for (std::size_t k = r; k < m.size(); ++k) {
            if (is_zero(m[k][cc])) continue;
            if (is_zero.exact) {
                best = k;
                break;
            }
            const double mag = std::fabs(m[k][cc].to_double());
            if (mag > best_mag) {
                best_mag = mag;
                best = k;
            }
        }
        if (best == m.size()) {
            for (std::size_t k = r; k < m.size(); ++k) m[k][cc] = Numeric(0);
            continue;
        }
        std::swap(m[r], m[best]);
        const Numeric pivot = m[r][cc];
        for (auto& x : m[r]) x /= pivot;
        m[r][cc] = Numeric(1);
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (k == r || (m[k][cc].is_exact() && m[k][cc].sign() == 0)) continue;
            const Numeric factor = m[k][cc];
            for (std::size_t j = 0; j < m[k].size(); ++j) m[k][j] -= factor * m[r][j];
            m[k][cc] = Numeric(0);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Matrix augmented(const Matrix& a, const Vector& b) {
    Matrix m = a;
    for (std::size_t k = 0; k < m.size(); ++k) m[k].push_back(b[k]);
    return m;
}

bool consistent(const Matrix& reduced, std::size_t rank, int columns, const ZeroTest& is_zero) {
    for (std::size_t k = rank; k < reduced.size(); ++k)
        if (!is_zero(reduced[k][static_cast<std::size_t>(columns)])) return false;
    return true;
}

bool lex_less(const Vector& a, const Vector& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == b[k]) continue;
        return value_order(a[k], b[k]) < 0;
    }
    return false;
}

bool same_vector(const Vector& a, const Vector& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!(a[k] == b[k])) return false;
    return true;
}

template <class F>
void for_each_combination(int n, int r, F&& visit) {
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) idx[static_cast<std::size_t>(k)] = k;
    while (true) {
        visit(idx);
        int k = r - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - r + k) --k;
        if (k < 0) return;
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

Nullspace nullspace(const Matrix& a, int columns, const Tolerances& tol) {
    Nullspace ns;
    ns.regime = all_exact(a) ? Regime::exact : Regime::approximate;
    Matrix m = a;
    const auto pivots = reduce(m, columns, zero_test(a, columns, tol));
    ns.rank = static_cast<int>(pivots.size());
    std::vector<bool> is_pivot(static_cast<std::size_t>(columns), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    for (int f = 0; f < columns; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vector x(static_cast<std::size_t>(columns), Numeric(0));
        x[static_cast<std::size_t>(f)] = Numeric(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) x[static_cast<std::size_t>(pivots[r])] = -m[r][static_cast<std::size_t>(f)];
        ns.basis.push_back(std::move(x));
    }
    return ns;
}

std::optional<Vector> solve_unique(const Matrix& a, const Vector& b, int columns, const Tolerances& tol) {
    Matrix m = augmented(a, b);
    const ZeroTest z = zero_test(augmented(a, b), columns, tol);
    const auto pivots = reduce(m, columns, z);
    if (static_cast<int>(pivots.size()) != columns) return std::nullopt;
    if (!consistent(m, pivots.size(), columns, z)) return std::nullopt;
    Vector x(static_cast<std::size_t>(columns));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[static_cast<std::size_t>(pivots[r])] = m[r][static_cast<std::size_t>(columns)];
    return x;
}

std::vector<Vector> vertices(const Polyhedron& p, const Tolerances& tol) {
    std::vector<Vector> out;
    Matrix m = augmented(p.a, p.b);
    const ZeroTest z = zero_test(m, p.columns, tol);
    const auto pivots = reduce(m, p.columns, z);
    if (!consistent(m, pivots.size(), p.columns, z)) return out;
    const int r = static_cast<int>(pivots.size());
    m.resize(pivots.size());

    auto nonneg = [&](Numeric& x) {
        if (x.is_exact()) return x.sign() >= 0;
        if (z(x) || x.sign() == 0) {
            x = Numeric::approximate(0.0, x.eps());
            return true;
        }
        return x.to_double() > 0.0;
    };

    if (r == 0) {
        out.emplace_back(static_cast<std::size_t>(p.columns), Numeric(0));
        return out;
    }
    for_each_combination(p.columns, r, [&](const std::vector<int>& cols) {
        Matrix sub(m.size());
        Vector rhs(m.size());
        for (std::size_t k = 0; k < m.size(); ++k) {
            for (int c : cols) sub[k].push_back(m[k][static_cast<std::size_t>(c)]);
            rhs[k] = m[k][static_cast<std::size_t>(p.columns)];
        }
        auto xs = solve_unique(sub, rhs, r, tol);
        if (!xs) return;
        Vector x(static_cast<std::size_t>(p.columns), Numeric(0));
        for (std::size_t k = 0; k < cols.size(); ++k) {
            Numeric v = (*xs)[k];
            if (!nonneg(v)) return;
            x[static_cast<std::size_t>(cols[k])] = v;
        }
        out.push_back(std::move(x));
    });
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end(), same_vector), out.end());
    return out;
}

std::optional<Vector> lexmin_vertex(const Polyhedron& p, const Tolerances& tol) {
    auto vs = vertices(p, tol);
    if (vs.empty()) return std::nullopt;
    return vs.front();
}

bool feasible(const Matrix& a, const Vector& b, int columns, const std::vector<bool>& nonneg, const Tolerances& tol) {
    // A free variable x is written x+ - x-, both non-negative.
    Polyhedron p;
    p.b = b;
    int extra = 0;
    for (int c = 0; c < columns; ++c)
        if (!nonneg[static_cast<std::size_t>(c)]) ++extra;
    p.columns = columns + extra;
    for (const auto& row : a) {
        Vector r = row;
        for (int c = 0; c < columns; ++c)
            if (!nonneg[static_cast<std::size_t>(c)]) r.push_back(-row[static_cast<std::size_t>(c)]);
        p.a.push_back(std::move(r));
    }
    return !vertices(p, tol).empty();
}

}  // namespace qpgeom
