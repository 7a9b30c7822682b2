#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace qpgeom {

/// Tolerance configuration shared by every module.
///
/// `eps` is the regime tolerance attached to values that cannot be kept
/// exact (irrational curve roots, `~`-prefixed inputs). The remaining fields
/// govern specific numerical decisions.
struct Tolerances {
    double eps = 1e-9;        ///< approximate-regime equality
    double eps_disc = 1e-12;  ///< negative discriminants above -eps_disc are tangencies
    double eps_group = 1e-7;  ///< relative tolerance for "same coordinate"
    double rank_tol = 1e-10;  ///< pivot threshold for approximate elimination

    /// Defaults, with `eps` overridden by the QPGEOM_TOL environment variable.
    static Tolerances from_env();
};

enum class Regime { exact, approximate };

/// A scalar that is an exact rational whenever possible.
///
/// Arithmetic on two exact values stays exact. Anything touching an
/// approximate value is approximate, carrying the largest tolerance seen.
class Numeric {
public:
    Numeric() : value_(mpq_class(0)) {}
    Numeric(long v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
    Numeric(int v) : value_(mpq_class(v)) {}   // NOLINT(google-explicit-constructor)
    explicit Numeric(mpq_class q);

    static Numeric ratio(long num, long den);
    static Numeric approximate(double v, double eps);

    /// Parses "2/5", "-3", "0.15", "1.5e-3" as exact rationals and
    /// "~0.4618" as an approximate value with tolerance `eps`.
    /// Throws std::invalid_argument on malformed text.
    static Numeric parse(std::string_view text, double eps);

    bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
    Regime regime() const { return is_exact() ? Regime::exact : Regime::approximate; }
    /// Zero for exact values.
    double eps() const { return eps_; }

    /// Throws std::logic_error for approximate values.
    const mpq_class& rational() const;
    double to_double() const;

    /// -1, 0, 1. Approximate values within eps of zero report 0.
    int sign() const;
    bool is_zero() const { return sign() == 0; }

    Numeric abs() const;
    /// Integer power; negative exponents invert. Throws std::domain_error for 0^negative.
    Numeric pow(int n) const;

    Numeric operator-() const;
    Numeric& operator+=(const Numeric& rhs);
    Numeric& operator-=(const Numeric& rhs);
    Numeric& operator*=(const Numeric& rhs);
    /// Throws std::domain_error on exact division by zero.
    Numeric& operator/=(const Numeric& rhs);

    friend Numeric operator+(Numeric a, const Numeric& b) { return a += b; }
    friend Numeric operator-(Numeric a, const Numeric& b) { return a -= b; }
    friend Numeric operator*(Numeric a, const Numeric& b) { return a *= b; }
    friend Numeric operator/(Numeric a, const Numeric& b) { return a /= b; }

    /// Regime-aware equality: exact comparison when both are exact, otherwise
    /// |a-b| <= eps * max(1, |a|, |b|).
    friend bool operator==(const Numeric& a, const Numeric& b);
    /// Ordering by value, ignoring tolerance. Used for sorting.
    friend std::strong_ordering value_order(const Numeric& a, const Numeric& b);

    /// "p/q", "p", or "~<%.17g>" for approximate values.
    std::string str() const;

private:
    void demote(double other_eps);

    std::variant<mpq_class, double> value_;
    double eps_ = 0.0;
};

bool operator<(const Numeric& a, const Numeric& b);
bool operator>(const Numeric& a, const Numeric& b);
bool operator<=(const Numeric& a, const Numeric& b);
bool operator>=(const Numeric& a, const Numeric& b);

Numeric max_abs(const Numeric& a, const Numeric& b);

/// Exact square root when `x` is a perfect rational square.
bool exact_sqrt(const mpq_class& x, mpq_class& root);

std::ostream& operator<<(std::ostream& os, const Numeric& x);

}  // namespace qpgeom
