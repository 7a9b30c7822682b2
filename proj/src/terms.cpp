#include "qpgeom/terms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpgeom {

const char* to_string(TermClass c) {
    switch (c) {
        case TermClass::non_degenerate: return "non_degenerate";
        case TermClass::horizontally_degenerate: return "horizontally_degenerate";
        case TermClass::vertically_degenerate: return "vertically_degenerate";
    }
    return "?";
}

TermClass GeometricTerm::term_class() const {
    if (sigma.is_zero()) return TermClass::horizontally_degenerate;
    if (rho.is_zero()) return TermClass::vertically_degenerate;
    return TermClass::non_degenerate;
}

Numeric GeometricTerm::evaluate(int i, int j) const {
    // Numeric::pow(0) is 1 for every base, which gives the 0^0 = 1 convention.
    return alpha * rho.pow(i) * sigma.pow(j);
}

bool same_coordinate(const Numeric& a, const Numeric& b, const Tolerances& tol) {
    if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
    const double x = a.to_double();
    const double y = b.to_double();
    return std::fabs(x - y) <= tol.eps_group * std::max(std::fabs(x), std::fabs(y));
}

bool same_point(const Coordinate& a, const Coordinate& b, const Tolerances& tol) {
    return same_coordinate(a.rho, b.rho, tol) && same_coordinate(a.sigma, b.sigma, tol);
}

Numeric TermSet::measure(int i, int j) const {
    Numeric m;
    for (const auto& t : terms_) m += t.evaluate(i, j);
    return m;
}

std::vector<GeometricTerm> TermSet::of_class(TermClass c) const {
    std::vector<GeometricTerm> out;
    for (const auto& t : terms_)
        if (t.term_class() == c) out.push_back(t);
    return out;
}

TermSet TermSet::non_degenerate() const {
    TermSet s;
    s.terms_ = of_class(TermClass::non_degenerate);
    return s;
}

bool TermSet::all_exact() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const GeometricTerm& t) {
        return t.rho.is_exact() && t.sigma.is_exact() && t.alpha.is_exact();
    });
}

TermSet canonicalize(std::span<const GeometricTerm> raw, const Tolerances& tol) {
    std::vector<GeometricTerm> merged;
    for (const auto& t : raw) {
        if (t.rho.sign() < 0 || t.sigma.sign() < 0)
            throw std::invalid_argument("negative coordinate (" + t.rho.str() + ", " + t.sigma.str() + ")");
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const GeometricTerm& m) { return same_point(m.coordinate(), t.coordinate(), tol); });
        if (it == merged.end())
            merged.push_back(t);
        else
            it->alpha += t.alpha;
    }
    std::erase_if(merged, [](const GeometricTerm& t) { return t.alpha.is_zero(); });
    std::stable_sort(merged.begin(), merged.end(), [](const GeometricTerm& a, const GeometricTerm& b) {
        if (auto c = value_order(a.rho, b.rho); c != 0) return c > 0;
        return value_order(a.sigma, b.sigma) > 0;
    });
    TermSet s;
    s.terms_ = std::move(merged);
    return s;
}

TermSet merge(const TermSet& a, const TermSet& b, const Tolerances& tol) {
    std::vector<GeometricTerm> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    return canonicalize(all, tol);
}

}  // namespace qpgeom
