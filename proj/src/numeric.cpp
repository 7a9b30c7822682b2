#include "qpgeom/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace qpgeom {

Tolerances Tolerances::from_env() {
    Tolerances t;
    if (const char* env = std::getenv("QPGEOM_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0 && std::isfinite(v)) t.eps = v;
    }
    return t;
}

Numeric::Numeric(mpq_class q) : value_(std::move(q)) {
    std::get<mpq_class>(value_).canonicalize();
}

Numeric Numeric::ratio(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Numeric(std::move(q));
}

Numeric Numeric::approximate(double v, double eps) {
    Numeric n;
    n.value_ = v;
    n.eps_ = eps;
    return n;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Terminating decimal with optional exponent, parsed exactly.
mpq_class parse_decimal(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        s = s.substr(0, e);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6) throw std::invalid_argument("bad exponent");
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("empty number");
        if (!int_part.empty() && !all_digits(int_part)) throw std::invalid_argument("bad digits");
        if (!frac_part.empty() && !all_digits(frac_part)) throw std::invalid_argument("bad digits");
        digits = std::string(int_part) + std::string(frac_part);
        frac_digits = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("bad digits");
        digits = std::string(s);
    }
    mpz_class mantissa(digits, 10);
    const long shift = exponent - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    mpq_class q = shift >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

}  // namespace

Numeric Numeric::parse(std::string_view text, double eps) {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty numeric literal");
    if (s.front() == '~') {
        s = trim(s.substr(1));
        const std::string buf(s);
        char* end = nullptr;
        const double v = std::strtod(buf.c_str(), &end);
        if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v))
            throw std::invalid_argument("malformed approximate literal '" + std::string(text) + "'");
        return approximate(v, eps);
    }
    try {
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            std::string_view num = trim(s.substr(0, slash));
            std::string_view den = trim(s.substr(slash + 1));
            bool negative = false;
            if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
                negative = num.front() == '-';
                num.remove_prefix(1);
            }
            if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("bad fraction");
            mpz_class d(std::string(den), 10);
            if (d == 0) throw std::invalid_argument("zero denominator");
            mpq_class q(mpz_class(std::string(num), 10), d);
            q.canonicalize();
            return Numeric(negative ? mpq_class(-q) : q);
        }
        return Numeric(parse_decimal(s));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("malformed numeric literal '" + std::string(text) + "': " + e.what());
    }
}

const mpq_class& Numeric::rational() const {
    if (!is_exact()) throw std::logic_error("rational() on approximate value " + str());
    return std::get<mpq_class>(value_);
}

double Numeric::to_double() const {
    if (is_exact()) return std::get<mpq_class>(value_).get_d();
    return std::get<double>(value_);
}

int Numeric::sign() const {
    if (is_exact()) return sgn(std::get<mpq_class>(value_));
    const double v = std::get<double>(value_);
    if (std::fabs(v) <= eps_) return 0;
    return v > 0 ? 1 : -1;
}

Numeric Numeric::abs() const {
    Numeric r = *this;
    if (is_exact()) {
        auto& q = std::get<mpq_class>(r.value_);
        q = ::abs(q);
    } else {
        r.value_ = std::fabs(std::get<double>(value_));
    }
    return r;
}

Numeric Numeric::pow(int n) const {
    if (is_exact()) {
        const mpq_class& q = std::get<mpq_class>(value_);
        if (n < 0 && q == 0) throw std::domain_error("zero to a negative power");
        const unsigned long k = static_cast<unsigned long>(n < 0 ? -static_cast<long>(n) : n);
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), k);
        mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), k);
        if (n < 0) std::swap(num, den);
        mpq_class r(num, den);
        r.canonicalize();
        return Numeric(std::move(r));
    }
    const double v = std::get<double>(value_);
    if (n < 0 && v == 0.0) throw std::domain_error("zero to a negative power");
    return approximate(std::pow(v, n), eps_);
}

void Numeric::demote(double other_eps) {
    if (is_exact()) {
        const double v = std::get<mpq_class>(value_).get_d();
        value_ = v;
        eps_ = other_eps;
    } else {
        eps_ = std::max(eps_, other_eps);
    }
}

Numeric Numeric::operator-() const {
    Numeric r = *this;
    if (is_exact()) {
        auto& q = std::get<mpq_class>(r.value_);
        q = -q;
    } else {
        r.value_ = -std::get<double>(value_);
    }
    return r;
}

Numeric& Numeric::operator+=(const Numeric& rhs) {
    if (is_exact() && rhs.is_exact()) {
        std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
        return *this;
    }
    demote(rhs.eps_);
    std::get<double>(value_) += rhs.to_double();
    return *this;
}

Numeric& Numeric::operator-=(const Numeric& rhs) {
    if (is_exact() && rhs.is_exact()) {
        std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
        return *this;
    }
    demote(rhs.eps_);
    std::get<double>(value_) -= rhs.to_double();
    return *this;
}

Numeric& Numeric::operator*=(const Numeric& rhs) {
    if (is_exact() && rhs.is_exact()) {
        std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
        return *this;
    }
    demote(rhs.eps_);
    std::get<double>(value_) *= rhs.to_double();
    return *this;
}

Numeric& Numeric::operator/=(const Numeric& rhs) {
    if (is_exact() && rhs.is_exact()) {
        const mpq_class& d = std::get<mpq_class>(rhs.value_);
        if (d == 0) throw std::domain_error("division by zero");
        std::get<mpq_class>(value_) /= d;
        return *this;
    }
    demote(rhs.eps_);
    std::get<double>(value_) /= rhs.to_double();
    return *this;
}

bool operator==(const Numeric& a, const Numeric& b) {
    if (a.is_exact() && b.is_exact()) return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
    const double x = a.to_double();
    const double y = b.to_double();
    const double eps = std::max(a.eps_, b.eps_);
    return std::fabs(x - y) <= eps * std::max({1.0, std::fabs(x), std::fabs(y)});
}

std::strong_ordering value_order(const Numeric& a, const Numeric& b) {
    if (a.is_exact() && b.is_exact()) {
        const int c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    const double x = a.to_double();
    const double y = b.to_double();
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool operator<(const Numeric& a, const Numeric& b) { return value_order(a, b) < 0; }
bool operator>(const Numeric& a, const Numeric& b) { return value_order(a, b) > 0; }
bool operator<=(const Numeric& a, const Numeric& b) { return value_order(a, b) <= 0; }
bool operator>=(const Numeric& a, const Numeric& b) { return value_order(a, b) >= 0; }

Numeric max_abs(const Numeric& a, const Numeric& b) {
    Numeric x = a.abs();
    Numeric y = b.abs();
    return x >= y ? x : y;
}

bool exact_sqrt(const mpq_class& x, mpq_class& root) {
    if (x < 0) return false;
    if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return false;
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), x.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), x.get_den_mpz_t());
    root = mpq_class(num, den);
    root.canonicalize();
    return true;
}

std::string Numeric::str() const {
    if (is_exact()) return std::get<mpq_class>(value_).get_str();
    char buf[40];
    std::snprintf(buf, sizeof buf, "~%.17g", std::get<double>(value_));
    return buf;
}

std::ostream& operator<<(std::ostream& os, const Numeric& x) { return os << x.str(); }

}  // namespace qpgeom
