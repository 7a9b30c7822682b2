#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpgeom/numeric.hpp"
#include "qpgeom/terms.hpp"

namespace qpgeom {

/// Transition kernel of a homogeneous nearest-neighbour walk on the quarter
/// plane. Interior states use p(s, t); the horizontal axis uses h(s) for
/// moves along the axis and p(s, 1) for moves off it; the vertical axis uses
/// v(t) and p(1, t). The origin moves by h(1), v(1) and p(1, 1).
struct WalkSpec {
    std::array<Numeric, 9> interior{};
    std::array<Numeric, 3> horizontal{};
    std::array<Numeric, 3> vertical{};

    const Numeric& p(int s, int t) const { return interior[static_cast<std::size_t>((s + 1) * 3 + (t + 1))]; }
    Numeric& p(int s, int t) { return interior[static_cast<std::size_t>((s + 1) * 3 + (t + 1))]; }
    const Numeric& h(int s) const { return horizontal[static_cast<std::size_t>(s + 1)]; }
    Numeric& h(int s) { return horizontal[static_cast<std::size_t>(s + 1)]; }
    const Numeric& v(int t) const { return vertical[static_cast<std::size_t>(t + 1)]; }
    Numeric& v(int t) { return vertical[static_cast<std::size_t>(t + 1)]; }

    /// Mass leaving the horizontal axis upwards: p(-1,1) + p(0,1) + p(1,1).
    Numeric up_mass() const;
    /// Mass leaving the vertical axis rightwards: p(1,-1) + p(1,0) + p(1,1).
    Numeric right_mass() const;

    bool all_exact() const;
    /// Copy with every boundary probability set to zero.
    WalkSpec interior_only() const;
};

enum class Region { interior, horizontal, vertical, origin };

Region region_of(int i, int j);

struct Move {
    int ds = 0;
    int dt = 0;
    Numeric prob;
};

/// Transitions with non-zero probability out of state (i, j), self-loop
/// included. The origin keeps 1 - h(1) - v(1) - p(1,1).
std::vector<Move> moves_from(const WalkSpec& w, int i, int j);

const char* to_string(Region r);

class NegativeProbability : public std::runtime_error {
public:
    NegativeProbability(std::string key, Numeric value);
    const std::string& key() const { return key_; }
    const Numeric& value() const { return value_; }

private:
    std::string key_;
    Numeric value_;
};

/// Outgoing mass of a region differs from 1. `deficit` is 1 minus the sum.
class RowSumViolation : public std::runtime_error {
public:
    RowSumViolation(Region region, Numeric deficit);
    Region region() const { return region_; }
    const Numeric& deficit() const { return deficit_; }

private:
    Region region_;
    Numeric deficit_;
};

class StateOnBoundary : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ValidationVerdict {
    std::array<Numeric, 3> row_sums{};  ///< interior, horizontal, vertical
    bool stochastic = false;
    bool nearest_neighbor = true;  ///< guaranteed by the representation
    bool irreducible = false;      ///< on truncation
    bool aperiodic = false;        ///< on truncation
    int period = 0;
    int truncation_size = 0;

    bool valid() const { return stochastic && nearest_neighbor && irreducible && aperiodic; }
};

/// Throws NegativeProbability or RowSumViolation. Irreducibility and
/// aperiodicity are reported on truncation: every state of the
/// truncation_size x truncation_size window must reach and be reached from
/// the origin by paths inside a box three times wider.
ValidationVerdict validate_walk(const WalkSpec& w, int truncation_size = 12);

/// m(i,j) - sum_{s,t} m(i-s, j-t) p(s,t) for i, j > 0.
Numeric interior_residual(const WalkSpec& w, const TermSet& m, int i, int j);
/// Residual of the balance equation at (i, 0), i > 0.
Numeric horizontal_residual(const WalkSpec& w, const TermSet& m, int i);
/// Residual of the balance equation at (0, j), j > 0.
Numeric vertical_residual(const WalkSpec& w, const TermSet& m, int j);

struct BalanceResidual {
    int i = 0;
    int j = 0;
    Numeric residual;
};

/// Interior states in [1,W]^2 (row-major), then (i,0) and (0,j) for 1..W.
/// The origin is left out: its balance follows from the others.
std::vector<BalanceResidual> residual_sweep(const WalkSpec& w, const TermSet& m, int window = 6);

}  // namespace qpgeom
