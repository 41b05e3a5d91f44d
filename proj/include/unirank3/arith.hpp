#pragma once

#include <boost/rational.hpp>

#include <cstdlib>
#include <string>

#include "errors.hpp"

// Non-template equality with integers; the generic mixed overloads recurse
// under C++20 rewritten comparison candidates.
namespace boost {
inline bool operator==(const rational<long long>& a, long long b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<long long>& a, int b) { return a == static_cast<long long>(b); }
}  // namespace boost

namespace unirank3 {

/// Exact rational scalar. Always reduced, denominator positive.
using Rational = boost::rational<long long>;

/// Largest accepted |twice value| of an exponent.
inline constexpr long long kMaxTwice = 1000;

/// Checked constructor; sign moves to the numerator.
inline Rational rational(long long num, long long den) {
    if (den == 0) fail(ErrorKind::ZeroDenominator, "denominator is zero");
    return Rational(num, den);
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

inline bool is_half_integer(const Rational& r) { return r.denominator() == 1 || r.denominator() == 2; }

inline Rational rabs(const Rational& r) { return r < 0 ? -r : r; }

inline long long rfloor(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
    return q;
}

/// Rejects values outside the guaranteed window |2x| <= 1000.
inline const Rational& check_range(const Rational& r) {
    if (rabs(r) * 2 > Rational(kMaxTwice)) fail(ErrorKind::RangeExceeded, "exponent outside |2x| <= 1000");
    return r;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace detail {
inline long long parse_int(const std::string& s, const std::string& whole) {
    if (s.empty()) fail(ErrorKind::ParseError, "bad number '" + whole + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail(ErrorKind::ParseError, "bad number '" + whole + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') fail(ErrorKind::ParseError, "bad number '" + whole + "'");
    if (s.size() - i > 12) fail(ErrorKind::RangeExceeded, "number too long '" + whole + "'");
    return std::stoll(s);
}
}  // namespace detail

/// Accepts "3", "-1/2", "3/2" and finite decimals such as "0.25".
inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    Rational r;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        r = rational(detail::parse_int(s.substr(0, slash), text), detail::parse_int(s.substr(slash + 1), text));
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (ip.empty() || ip == "-" || ip == "+") ip += "0";
        if (fp.empty() || fp.size() > 9) fail(ErrorKind::ParseError, "bad decimal '" + text + "'");
        long long den = 1;
        for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
        long long whole = detail::parse_int(ip, text), frac = detail::parse_int(fp, text);
        if (fp[0] == '-' || fp[0] == '+') fail(ErrorKind::ParseError, "bad decimal '" + text + "'");
        r = Rational(std::llabs(whole) * den + frac, den);
        if (neg) r = -r;
    } else {
        r = Rational(detail::parse_int(s, text));
    }
    return check_range(r);
}

/// Exact half-integer stored as twice its value.
struct HalfInt {
    long long twice = 0;

    static HalfInt from_twice(long long t) {
        if (std::llabs(t) > kMaxTwice) fail(ErrorKind::RangeExceeded, "half-integer outside |2x| <= 1000");
        return HalfInt{t};
    }
    static HalfInt from_rational(const Rational& r) {
        if (!is_half_integer(r)) fail(ErrorKind::RangeExceeded, "not a half-integer: " + to_string(r));
        return from_twice((r * 2).numerator());
    }
    Rational to_rational() const { return Rational(twice, 2); }

    friend bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
};

}  // namespace unirank3
