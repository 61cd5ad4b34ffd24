#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "randop/errors.hpp"

namespace randop {

// All probabilities, coordinates and norms are exact rationals. The theorems
// under test compare probabilities for equality, so floats are never used.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// floor(q) as an exact integer.
inline BigInt rational_floor(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt quot = n / d;
    if (n < 0 && quot * d != n) --quot;
    return quot;
}

inline BigInt rational_ceil(const Rational& q) { return -rational_floor(-q); }

// Canonical text form: "p/q" with q > 1, plain "p" for integers.
inline std::string format_rational(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts optional sign, integer part, optional "/denominator".
inline std::optional<Rational> try_parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    auto read_digits = [&](BigInt& out) -> bool {
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') return false;
        out = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            out = out * 10 + (text[pos] - '0');
            ++pos;
        }
        return true;
    };
    BigInt num;
    if (!read_digits(num)) return std::nullopt;
    BigInt den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        if (!read_digits(den)) return std::nullopt;
        if (den == 0) return std::nullopt;
    }
    if (pos != text.size()) return std::nullopt;
    Rational value(num, den);
    return negative ? Rational(-value) : value;
}

inline Rational parse_rational(std::string_view text, const std::string& field = {}) {
    auto parsed = try_parse_rational(text);
    if (!parsed) fail(Errc::ParseError, "not a rational: '" + std::string(text) + "'", field);
    return *parsed;
}

// A nonnegative rational extended with +inf; the value taken by operator
// norms of unbounded maps. +inf compares above every rational.
class ExtRational {
public:
    ExtRational() : finite_(true), value_(0) {}
    explicit ExtRational(Rational v) : finite_(true), value_(std::move(v)) {}
    static ExtRational infinity() {
        ExtRational e;
        e.finite_ = false;
        return e;
    }

    bool is_finite() const { return finite_; }
    const Rational& value() const {
        require(finite_, Errc::InvariantViolation, "value() on +inf");
        return value_;
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return a == b || a < b; }
    friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
    friend bool operator>=(const ExtRational& a, const ExtRational& b) { return b <= a; }

    friend bool operator<=(const ExtRational& a, const Rational& b) {
        return a.finite_ && a.value_ <= b;
    }
    friend bool operator>(const ExtRational& a, const Rational& b) { return !(a <= b); }

    std::string str() const { return finite_ ? format_rational(value_) : "inf"; }

private:
    bool finite_;
    Rational value_;
};

} // namespace randop
