#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "arith.hpp"

namespace unirank3 {

/// Interval [b,e] on the cuspidal line, or the empty segment.
struct Segment {
    Rational b{0}, e{-1};
    bool empty = true;

    static Segment make_empty() { return Segment{}; }
    bool contains(const Rational& x) const { return !empty && b <= x && x <= e && is_integer(x - b); }
    /// Number of points minus one; the empty segment has length -1.
    long long length() const { return empty ? -1 : (e - b).numerator(); }
    long long size() const { return empty ? 0 : length() + 1; }
    /// Central exponent (b+e)/2.
    Rational center() const { return (b + e) / 2; }

    friend bool operator==(const Segment& x, const Segment& y) {
        return x.empty == y.empty && (x.empty || (x.b == y.b && x.e == y.e));
    }
    friend bool operator!=(const Segment& x, const Segment& y) { return !(x == y); }
    friend bool operator<(const Segment& x, const Segment& y) {
        if (x.empty || y.empty) return x.empty && !y.empty;
        return std::tie(x.b, x.e) < std::tie(y.b, y.e);
    }
};

/// Checked constructor: e - b must be a non-negative integer.
inline Segment make_segment(const Rational& b, const Rational& e) {
    check_range(b);
    check_range(e);
    if (!is_integer(e - b) || e < b)
        fail(ErrorKind::NotIntegralLength, "segment [" + to_string(b) + "," + to_string(e) + "]");
    return Segment{b, e, false};
}

/// Formula-index helper: [b,b-1] is the empty unit, anything shorter vanishes.
inline std::optional<Segment> segment_or_empty(const Rational& b, const Rational& e) {
    if (e == b - 1) return Segment::make_empty();
    if (e < b - 1) return std::nullopt;
    return make_segment(b, e);
}

inline Segment singleton(const Rational& x) { return make_segment(x, x); }

inline Segment contragredient(const Segment& d) {
    if (d.empty) return d;
    return Segment{-d.e, -d.b, false};
}

/// Union is a segment and neither contains the other.
inline bool linked(const Segment& x, const Segment& y) {
    if (x.empty || y.empty) return false;
    if (!is_integer(x.b - y.b)) return false;
    if ((x.b <= y.b && y.e <= x.e) || (y.b <= x.b && x.e <= y.e)) return false;
    // union is a segment iff they overlap or are adjacent
    return !(x.e + 1 < y.b || y.e + 1 < x.b);
}

inline bool precedes(const Segment& x, const Segment& y) { return linked(x, y) && x.b < y.b; }

inline std::string render_segment(const Segment& d) {
    if (d.empty) return "[]";
    if (d.b == d.e) return "[" + to_string(d.b) + "]";
    return "[" + to_string(d.b) + "," + to_string(d.e) + "]";
}

/// Finite multiset of non-empty segments, kept sorted.
struct Multisegment {
    std::vector<Segment> entries;

    Multisegment() = default;
    Multisegment(std::vector<Segment> v) : entries(std::move(v)) { normalize(); }
    Multisegment(std::initializer_list<Segment> v) : entries(v) { normalize(); }

    void normalize() {
        entries.erase(std::remove_if(entries.begin(), entries.end(), [](const Segment& s) { return s.empty; }),
                      entries.end());
        std::sort(entries.begin(), entries.end());
    }
    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }
    /// Total number of cuspidal points.
    long long degree() const {
        long long n = 0;
        for (const auto& s : entries) n += s.size();
        return n;
    }
    friend bool operator==(const Multisegment& x, const Multisegment& y) { return x.entries == y.entries; }
    friend bool operator!=(const Multisegment& x, const Multisegment& y) { return !(x == y); }
    friend bool operator<(const Multisegment& x, const Multisegment& y) { return x.entries < y.entries; }
};

inline Multisegment operator+(const Multisegment& x, const Multisegment& y) {
    std::vector<Segment> v = x.entries;
    v.insert(v.end(), y.entries.begin(), y.entries.end());
    return Multisegment(v);
}

/// Sorted multiset of exponents.
inline std::vector<Rational> support(const Multisegment& a) {
    std::vector<Rational> out;
    for (const auto& s : a.entries)
        for (Rational x = s.b; x <= s.e; x += 1) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

inline Multisegment contragredient(const Multisegment& a) {
    std::vector<Segment> v;
    for (const auto& s : a.entries) v.push_back(contragredient(s));
    return Multisegment(v);
}

inline std::string render_multisegment(const Multisegment& a) {
    std::string out = "{";
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (i) out += ",";
        out += render_segment(a.entries[i]);
    }
    return out + "}";
}

/// No two entries linked, so the standard module is irreducible.
inline bool delta_product_irreducible(const Multisegment& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (linked(a.entries[i], a.entries[j])) return false;
    return true;
}

/// Strictly decreasing begins and ends once sorted.
inline bool is_ladder(const Multisegment& a) {
    for (std::size_t i = 1; i < a.size(); ++i)
        if (!(a.entries[i - 1].b < a.entries[i].b && a.entries[i - 1].e < a.entries[i].e)) return false;
    return true;
}

/**
 * Moeglin-Waldspurger involution on Langlands parameters.
 * Repeatedly peel a maximal chain with consecutive decreasing ends.
 */
inline Multisegment mw_involution(const Multisegment& a) {
    std::vector<Segment> rest = a.entries, out;
    while (!rest.empty()) {
        Rational top = rest.front().e;
        for (const auto& s : rest) top = std::max(top, s.e);
        std::vector<std::size_t> chain;
        std::optional<Rational> last_begin;
        for (Rational end = top;; end -= 1) {
            std::optional<std::size_t> pick;
            for (std::size_t i = 0; i < rest.size(); ++i) {
                if (rest[i].e != end) continue;
                if (last_begin && !(rest[i].b < *last_begin)) continue;
                if (std::find(chain.begin(), chain.end(), i) != chain.end()) continue;
                if (!pick || rest[*pick].b < rest[i].b) pick = i;
            }
            if (!pick) break;
            chain.push_back(*pick);
            last_begin = rest[*pick].b;
        }
        Rational len = Rational(static_cast<long long>(chain.size()));
        out.push_back(make_segment(top - len + 1, top));
        std::vector<Segment> next;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (std::find(chain.begin(), chain.end(), i) == chain.end()) {
                next.push_back(rest[i]);
            } else if (rest[i].b < rest[i].e) {
                next.push_back(Segment{rest[i].b, rest[i].e - 1, false});
            }
        }
        rest = std::move(next);
    }
    return Multisegment(out);
}

namespace detail {

inline std::vector<Segment> speh_block(long long n, long long m, const Rational& shift) {
    std::vector<Segment> v;
    Rational half_n = Rational(n - 1, 2);
    for (long long j = 0; j < m; ++j) {
        Rational c = shift + Rational(m - 1, 2) - j;
        v.push_back(Segment{c - half_n, c + half_n, false});
    }
    return v;
}

inline bool take_all(std::vector<Segment>& pool, const std::vector<Segment>& want) {
    std::vector<Segment> p = pool;
    for (const auto& w : want) {
        auto it = std::find(p.begin(), p.end(), w);
        if (it == p.end()) return false;
        p.erase(it);
    }
    pool = std::move(p);
    return true;
}

inline bool speh_search(const std::vector<Segment>& pool) {
    if (pool.empty()) return true;
    const Segment& s = pool.front();
    long long n = s.size();
    long long count = static_cast<long long>(pool.size());
    for (long long m = 1; m <= count; ++m) {
        for (long long j = 0; j < m; ++j) {
            Rational shift = s.center() - Rational(m - 1, 2) + j;
            Rational as = rabs(shift);
            if (as != 0 && !(as < Rational(1, 2))) continue;
            std::vector<Segment> rest = pool;
            if (!take_all(rest, speh_block(n, m, shift))) continue;
            if (as != 0 && !take_all(rest, speh_block(n, m, -shift))) continue;
            if (speh_search(rest)) return true;
        }
    }
    return false;
}

}  // namespace detail

/// Search over Speh blocks and complementary pairs (exponent 0 < b < 1/2).
inline bool gl_is_unitarizable(const Multisegment& a) {
    if (a.size() > 8) fail(ErrorKind::RankExceeded, "gl_is_unitarizable supports at most 8 segments");
    return detail::speh_search(a.entries);
}

/// Irreducible GL class, stored through its Langlands parameter.
struct GLIrrLabel {
    Multisegment a;

    static GLIrrLabel langlands(Multisegment m) { return GLIrrLabel{std::move(m)}; }
    /// Z(m) is L(m^t).
    static GLIrrLabel zelevinsky(const Multisegment& m) { return GLIrrLabel{mw_involution(m)}; }
    static GLIrrLabel delta(const Segment& s) { return GLIrrLabel{Multisegment{s}}; }

    friend bool operator==(const GLIrrLabel& x, const GLIrrLabel& y) { return x.a == y.a; }
    friend bool operator!=(const GLIrrLabel& x, const GLIrrLabel& y) { return !(x == y); }
    friend bool operator<(const GLIrrLabel& x, const GLIrrLabel& y) { return x.a < y.a; }
};

inline GLIrrLabel contragredient(const GLIrrLabel& l) { return GLIrrLabel{contragredient(l.a)}; }

inline std::string render_label(const GLIrrLabel& l) {
    if (l.a.size() == 1) return "d" + render_segment(l.a.entries[0]);
    std::string out = "L{";
    for (std::size_t i = 0; i < l.a.size(); ++i) {
        if (i) out += ",";
        out += render_segment(l.a.entries[i]);
    }
    return out + "}";
}

}  // namespace unirank3
