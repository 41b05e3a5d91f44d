#pragma once

#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "segments.hpp"

namespace unirank3 {

/// Canonical multiset of irreducible GL labels; the empty key is the unit.
struct ProductKey {
    std::vector<GLIrrLabel> labels;

    bool is_unit() const { return labels.empty(); }
    long long degree() const {
        long long n = 0;
        for (const auto& l : labels) n += l.a.degree();
        return n;
    }
    friend bool operator==(const ProductKey& x, const ProductKey& y) { return x.labels == y.labels; }
    friend bool operator!=(const ProductKey& x, const ProductKey& y) { return !(x == y); }
    friend bool operator<(const ProductKey& x, const ProductKey& y) { return x.labels < y.labels; }
};

/**
 * Canonical form: labels with pairwise unlinked entries are split into
 * deltas; a key made only of pairwise unlinked deltas becomes one label.
 */
inline ProductKey make_key(const std::vector<GLIrrLabel>& raw) {
    std::vector<GLIrrLabel> v;
    for (const auto& l : raw) {
        if (l.a.empty()) continue;
        if (l.a.size() > 1 && delta_product_irreducible(l.a)) {
            for (const auto& s : l.a.entries) v.push_back(GLIrrLabel::delta(s));
        } else {
            v.push_back(l);
        }
    }
    bool all_single = v.size() > 1 && std::all_of(v.begin(), v.end(), [](const GLIrrLabel& l) { return l.a.size() == 1; });
    if (all_single) {
        std::vector<Segment> segs;
        for (const auto& l : v) segs.push_back(l.a.entries[0]);
        Multisegment m(segs);
        if (delta_product_irreducible(m)) return ProductKey{{GLIrrLabel{m}}};
    }
    std::sort(v.begin(), v.end());
    return ProductKey{v};
}

inline ProductKey key_of(const GLIrrLabel& l) { return make_key({l}); }

inline ProductKey key_of_segments(const std::vector<Segment>& segs) {
    std::vector<GLIrrLabel> v;
    for (const auto& s : segs)
        if (!s.empty) v.push_back(GLIrrLabel::delta(s));
    return make_key(v);
}

inline ProductKey key_product(const ProductKey& x, const ProductKey& y) {
    std::vector<GLIrrLabel> v = x.labels;
    v.insert(v.end(), y.labels.begin(), y.labels.end());
    return make_key(v);
}

/// Every label is a standard module (its entries pairwise unlinked).
inline bool is_standard(const ProductKey& k) {
    for (const auto& l : k.labels)
        if (!delta_product_irreducible(l.a)) return false;
    return true;
}

inline std::vector<Segment> standard_segments(const ProductKey& k) {
    if (!is_standard(k)) fail(ErrorKind::NotStandardBasis, "key contains a non-standard label");
    std::vector<Segment> v;
    for (const auto& l : k.labels) v.insert(v.end(), l.a.entries.begin(), l.a.entries.end());
    std::sort(v.begin(), v.end());
    return v;
}

inline std::vector<Rational> support(const ProductKey& k) {
    std::vector<Rational> out;
    for (const auto& l : k.labels) {
        auto s = support(l.a);
        out.insert(out.end(), s.begin(), s.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ProductKey contragredient(const ProductKey& k) {
    std::vector<GLIrrLabel> v;
    for (const auto& l : k.labels) v.push_back(contragredient(l));
    return make_key(v);
}

enum class Style { Ascii, Pretty };

inline std::string render_key(const ProductKey& k, Style st = Style::Ascii) {
    if (k.is_unit()) return "1";
    std::string out;
    for (std::size_t i = 0; i < k.labels.size(); ++i) {
        if (i) out += st == Style::Ascii ? "x" : "×";
        std::string l = render_label(k.labels[i]);
        if (st == Style::Pretty && l[0] == 'd') l = "δ" + l.substr(1);
        out += l;
    }
    return out;
}

namespace detail {
template <class Map>
void add_term(Map& m, const typename Map::key_type& k, long long c) {
    if (c == 0) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, c);
    } else if ((it->second += c) == 0) {
        m.erase(it);
    }
}

inline std::string coef_prefix(long long c, bool first) {
    std::string out;
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    long long a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a) + "*";
    return out;
}
}  // namespace detail

/// Formal integer combination of product keys (an element of R).
struct GLElement {
    std::map<ProductKey, long long> terms;

    static GLElement unit() { return from_key(ProductKey{}); }
    static GLElement from_key(const ProductKey& k, long long c = 1) {
        GLElement x;
        detail::add_term(x.terms, k, c);
        return x;
    }
    static GLElement from_label(const GLIrrLabel& l) { return from_key(key_of(l)); }
    static GLElement delta(const Segment& s) { return from_key(key_of_segments({s})); }

    void add(const ProductKey& k, long long c) { detail::add_term(terms, k, c); }
    bool is_zero() const { return terms.empty(); }
    GLElement& operator+=(const GLElement& y) {
        for (const auto& [k, c] : y.terms) add(k, c);
        return *this;
    }
    GLElement& operator-=(const GLElement& y) {
        for (const auto& [k, c] : y.terms) add(k, -c);
        return *this;
    }
    friend GLElement operator+(GLElement x, const GLElement& y) { return x += y; }
    friend GLElement operator-(GLElement x, const GLElement& y) { return x -= y; }
    friend bool operator==(const GLElement& x, const GLElement& y) { return x.terms == y.terms; }
    friend bool operator!=(const GLElement& x, const GLElement& y) { return !(x == y); }
};

inline GLElement operator*(long long s, const GLElement& x) {
    GLElement out;
    for (const auto& [k, c] : x.terms) out.add(k, s * c);
    return out;
}

/// Bilinear product; on keys it is the multiset union.
inline GLElement multiply(const GLElement& x, const GLElement& y) {
    GLElement out;
    for (const auto& [k1, c1] : x.terms)
        for (const auto& [k2, c2] : y.terms) out.add(key_product(k1, k2), c1 * c2);
    return out;
}

inline GLElement contragredient_element(const GLElement& x) {
    GLElement out;
    for (const auto& [k, c] : x.terms) out.add(contragredient(k), c);
    return out;
}

inline std::string render(const GLElement& x, Style st = Style::Ascii) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : x.terms) {
        out += detail::coef_prefix(c, first);
        out += render_key(k, st);
        first = false;
    }
    return out;
}

/// Element of R (x) R.
struct GLTensor {
    std::map<std::pair<ProductKey, ProductKey>, long long> terms;

    void add(const ProductKey& a, const ProductKey& b, long long c) { detail::add_term(terms, {a, b}, c); }
    GLTensor& operator+=(const GLTensor& y) {
        for (const auto& [k, c] : y.terms) detail::add_term(terms, k, c);
        return *this;
    }
    friend bool operator==(const GLTensor& x, const GLTensor& y) { return x.terms == y.terms; }
    friend bool operator!=(const GLTensor& x, const GLTensor& y) { return !(x == y); }
};

inline GLTensor tensor_unit() {
    GLTensor t;
    t.add(ProductKey{}, ProductKey{}, 1);
    return t;
}

/// Componentwise product (a(x)b)(c(x)d) = ac (x) bd.
inline GLTensor multiply(const GLTensor& x, const GLTensor& y) {
    GLTensor out;
    for (const auto& [k1, c1] : x.terms)
        for (const auto& [k2, c2] : y.terms)
            out.add(key_product(k1.first, k2.first), key_product(k1.second, k2.second), c1 * c2);
    return out;
}

inline std::string render(const GLTensor& t, Style st = Style::Ascii) {
    if (t.terms.empty()) return "0";
    std::string out;
    bool first = true;
    const char* ot = st == Style::Ascii ? " (x) " : " ⊗ ";
    for (const auto& [k, c] : t.terms) {
        out += detail::coef_prefix(c, first);
        out += render_key(k.first, st) + ot + render_key(k.second, st);
        first = false;
    }
    return out;
}

/// m*(delta([b,e])) = sum_{i=b-1}^{e} delta([i+1,e]) (x) delta([b,i]).
inline GLTensor comult_delta(const Segment& d) {
    if (d.empty) fail(ErrorKind::NotIntegralLength, "comult_delta of the empty segment");
    GLTensor t;
    for (Rational i = d.b - 1; i <= d.e; i += 1)
        t.add(key_of_segments({*segment_or_empty(i + 1, d.e)}), key_of_segments({*segment_or_empty(d.b, i)}), 1);
    return t;
}

/// Zelevinsky segment rule: sum_i z([b,i]) (x) z([i+1,e]).
inline GLTensor comult_zeta(const Segment& d) {
    if (d.empty) fail(ErrorKind::NotIntegralLength, "comult_zeta of the empty segment");
    auto z = [](const Rational& b, const Rational& e) {
        auto s = segment_or_empty(b, e);
        if (s->empty) return ProductKey{};
        return key_of(GLIrrLabel::zelevinsky(Multisegment{*s}));
    };
    GLTensor t;
    for (Rational i = d.b - 1; i <= d.e; i += 1) t.add(z(d.b, i), z(i + 1, d.e), 1);
    return t;
}

/// Multiplicative extension of comult_delta over standard keys.
inline GLTensor comult(const GLElement& x) {
    GLTensor out;
    for (const auto& [k, c] : x.terms) {
        GLTensor t = tensor_unit();
        for (const auto& s : standard_segments(k)) t = multiply(t, comult_delta(s));
        for (const auto& [kk, cc] : t.terms) out.add(kk.first, kk.second, cc * c);
    }
    return out;
}

/// M* = (m (x) 1) o (check (x) m*) o kappa o m*, evaluated as composed maps.
inline GLTensor m_star(const GLElement& x) {
    GLTensor out;
    GLTensor first = comult(x);
    for (const auto& [k, c] : first.terms) {
        ProductKey left_check = contragredient(k.second);
        GLTensor inner = comult(GLElement::from_key(k.first));
        for (const auto& [kk, cc] : inner.terms) out.add(key_product(left_check, kk.first), kk.second, c * cc);
    }
    return out;
}

/// Closed double-sum form of M*(delta([x,y])).
inline GLTensor m_star_delta_closed(const Segment& d) {
    if (d.empty) fail(ErrorKind::NotIntegralLength, "m_star_delta_closed of the empty segment");
    GLTensor t;
    for (Rational i = d.b - 1; i <= d.e; i += 1)
        for (Rational j = i; j <= d.e; j += 1) {
            auto a = segment_or_empty(-i, -d.b);
            auto b = segment_or_empty(j + 1, d.e);
            auto m = segment_or_empty(i + 1, j);
            t.add(key_of_segments({*a, *b}), key_of_segments({*m}), 1);
        }
    return t;
}

/// Zelevinsky segment closed form of M*(z([x,y])).
inline GLTensor m_star_zeta_closed(const Segment& d) {
    if (d.empty) fail(ErrorKind::NotIntegralLength, "m_star_zeta_closed of the empty segment");
    auto z = [](const Rational& b, const Rational& e) -> std::vector<GLIrrLabel> {
        auto s = segment_or_empty(b, e);
        if (s->empty) return {};
        return {GLIrrLabel::zelevinsky(Multisegment{*s})};
    };
    GLTensor t;
    for (Rational i = d.b - 1; i <= d.e; i += 1)
        for (Rational j = d.b - 1; j <= i; j += 1) {
            auto l = z(-d.e, -i - 1);
            auto r = z(d.b, j);
            l.insert(l.end(), r.begin(), r.end());
            t.add(make_key(l), make_key(z(j + 1, i)), 1);
        }
    return t;
}

/// M*_GL(x) = sum x1 x (x2)~ over m*(x) = sum x1 (x) x2.
inline GLElement m_star_gl(const GLElement& x) {
    GLElement out;
    for (const auto& [k, c] : comult(x).terms) out.add(key_product(k.first, contragredient(k.second)), c);
    return out;
}

/// Closed form of M*_GL on a ladder representation.
inline GLElement m_star_gl_ladder(const Multisegment& lad) {
    if (!is_ladder(lad)) fail(ErrorKind::NotLadder, render_multisegment(lad));
    // a_1 > ... > a_k after reversing the ascending canonical order
    std::vector<Segment> seg(lad.entries.rbegin(), lad.entries.rend());
    std::size_t k = seg.size();
    GLElement out;
    std::vector<Rational> x(k);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            std::vector<Segment> left, right;
            for (std::size_t t = 0; t < k; ++t) {
                left.push_back(*segment_or_empty(-x[t], -seg[t].b));
                right.push_back(*segment_or_empty(x[t] + 1, seg[t].e));
            }
            out.add(make_key({GLIrrLabel{Multisegment(left)}, GLIrrLabel{Multisegment(right)}}), 1);
            return;
        }
        for (Rational v = seg[i].b - 1; v <= seg[i].e; v += 1) {
            if (i > 0 && !(v < x[i - 1])) continue;
            x[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

/// delta(d1) x delta(d2) = L{d1,d2} + delta(d1 u d2) x delta(d1 n d2) when linked.
inline GLElement two_segment_decompose(const Segment& d1, const Segment& d2) {
    GLElement out;
    out.add(key_of(GLIrrLabel{Multisegment{d1, d2}}), 1);
    if (linked(d1, d2)) {
        Segment u = make_segment(std::min(d1.b, d2.b), std::max(d1.e, d2.e));
        auto n = segment_or_empty(std::max(d1.b, d2.b), std::min(d1.e, d2.e));
        out.add(key_of_segments({u, *n}), 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Standard-basis normal form and full-flag characters

/// Polynomial in the deltas: each monomial is the multisegment of its factors.
using DeltaPoly = std::map<Multisegment, long long>;

namespace detail {

inline DeltaPoly poly_mul(const DeltaPoly& x, const DeltaPoly& y) {
    DeltaPoly out;
    for (const auto& [m1, c1] : x)
        for (const auto& [m2, c2] : y) add_term(out, m1 + m2, c1 * c2);
    return out;
}

/// Determinant over delta([a_j, b_i]) for a ladder (entries given with a_1 > a_2 > ...).
inline DeltaPoly ladder_expansion(const std::vector<Segment>& seg) {
    std::size_t k = seg.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    DeltaPoly out;
    do {
        int sign = 1;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        std::vector<Segment> factors;
        bool zero = false;
        for (std::size_t i = 0; i < k && !zero; ++i) {
            auto s = segment_or_empty(seg[perm[i]].b, seg[i].e);
            if (!s) zero = true;
            else factors.push_back(*s);
        }
        if (!zero) add_term(out, Multisegment(factors), sign);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline DeltaPoly ladder_expansion(const Multisegment& m) {
    return ladder_expansion(std::vector<Segment>(m.entries.rbegin(), m.entries.rend()));
}

inline DeltaPoly expand_uncached(const Multisegment& a) {
    if (delta_product_irreducible(a)) return DeltaPoly{{a, 1}};
    if (is_ladder(a)) return ladder_expansion(a);
    Multisegment t = mw_involution(a);
    if (delta_product_irreducible(t)) {
        // L(a) = Z(a^t) is a product of segment Zelevinsky classes, each a ladder of singletons
        DeltaPoly out{{Multisegment{}, 1}};
        for (const auto& s : t.entries) {
            std::vector<Segment> pts;
            for (Rational x = s.b; x <= s.e; x += 1) pts.push_back(singleton(x));
            out = poly_mul(out, ladder_expansion(Multisegment(pts)));
        }
        return out;
    }
    fail(ErrorKind::Undecidable, "no standard-basis expansion for L" + render_multisegment(a));
}

}  // namespace detail

/// Expansion of L(a) in products of deltas.
inline DeltaPoly expand_label(const GLIrrLabel& l) {
    static std::mutex mu;
    static std::map<Multisegment, DeltaPoly> cache;
    {
        std::lock_guard<std::mutex> g(mu);
        if (auto it = cache.find(l.a); it != cache.end()) return it->second;
    }
    DeltaPoly p = detail::expand_uncached(l.a);
    std::lock_guard<std::mutex> g(mu);
    cache.emplace(l.a, p);
    return p;
}

inline DeltaPoly to_delta(const ProductKey& k) {
    DeltaPoly out{{Multisegment{}, 1}};
    for (const auto& l : k.labels) out = detail::poly_mul(out, expand_label(l));
    return out;
}

inline DeltaPoly to_delta(const GLElement& x) {
    DeltaPoly out;
    for (const auto& [k, c] : x.terms)
        for (const auto& [m, cc] : to_delta(k)) detail::add_term(out, m, c * cc);
    return out;
}

/// Equality in the ring R, decided through the standard basis.
inline bool equal_in_ring(const GLElement& x, const GLElement& y) { return to_delta(x) == to_delta(y); }

/**
 * Decomposition into irreducible classes L(a), peeling the monomial with
 * the fewest merged points first (elementary operations increase sum of squares).
 */
inline std::map<Multisegment, long long> decompose_irreducible(const GLElement& x) {
    DeltaPoly rest = to_delta(x);
    std::map<Multisegment, long long> out;
    auto weight = [](const Multisegment& m) {
        long long w = 0;
        for (const auto& s : m.entries) w += s.size() * s.size();
        return w;
    };
    while (!rest.empty()) {
        auto best = rest.begin();
        for (auto it = rest.begin(); it != rest.end(); ++it)
            if (weight(it->first) < weight(best->first)) best = it;
        Multisegment a = best->first;
        long long c = best->second;
        out[a] += c;
        for (const auto& [m, cc] : expand_label(GLIrrLabel{a})) detail::add_term(rest, m, -c * cc);
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

/// Element of R whose keys are the delta monomials of p.
inline GLElement from_delta(const DeltaPoly& p) {
    GLElement out;
    for (const auto& [m, c] : p) out.add(key_of_segments(m.entries), c);
    return out;
}

/// Rewrites x over standard keys so that comult and m_star accept it.
inline GLElement to_standard(const GLElement& x) {
    bool ok = std::all_of(x.terms.begin(), x.terms.end(), [](const auto& t) { return is_standard(t.first); });
    return ok ? x : from_delta(to_delta(x));
}

/// Zelevinsky dual of a key, a ring homomorphism on labels.
inline ProductKey zelevinsky_dual(const ProductKey& k) {
    std::vector<GLIrrLabel> v;
    for (const auto& l : k.labels) v.push_back(GLIrrLabel{mw_involution(l.a)});
    return make_key(v);
}

using Word = std::vector<Rational>;
/// Full-flag character: multiset of exponent words.
using Character = std::map<Word, long long>;

inline Word delta_word(const Segment& s) {
    Word w;
    for (Rational x = s.e; x >= s.b; x -= 1) w.push_back(x);
    return w;
}

namespace detail {
inline void shuffle_into(const Word& a, const Word& b, long long c, Character& out) {
    Word w;
    w.reserve(a.size() + b.size());
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
        if (i == a.size() && j == b.size()) {
            add_term(out, w, c);
            return;
        }
        if (i < a.size()) {
            w.push_back(a[i]);
            rec(i + 1, j);
            w.pop_back();
        }
        if (j < b.size()) {
            w.push_back(b[j]);
            rec(i, j + 1);
            w.pop_back();
        }
    };
    rec(0, 0);
}
}  // namespace detail

/// Shuffle product of characters (the character of a parabolic product).
inline Character shuffle(const Character& x, const Character& y) {
    Character out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) detail::shuffle_into(a, b, ca * cb, out);
    return out;
}

inline Character character(const DeltaPoly& p) {
    Character out;
    for (const auto& [m, c] : p) {
        Character ch{{Word{}, 1}};
        for (const auto& s : m.entries) ch = shuffle(ch, Character{{delta_word(s), 1}});
        for (const auto& [w, cw] : ch) detail::add_term(out, w, c * cw);
    }
    return out;
}

inline Character character(const GLElement& x) { return character(to_delta(x)); }

/// Multiplicity of the irreducible u in x; exact.
inline long long mult_gl(const GLIrrLabel& u, const GLElement& x) {
    if (u.a.size() == 1) {
        // the decreasing word of a segment occurs only in delta of that segment
        Word w = delta_word(u.a.entries[0]);
        long long total = 0;
        for (const auto& [k, c] : x.terms) {
            if (support(k) != support(u.a)) continue;
            auto ch = character(to_delta(k));
            if (auto it = ch.find(w); it != ch.end()) total += c * it->second;
        }
        return total;
    }
    if (u.a.empty()) {
        long long total = 0;
        for (const auto& [k, c] : x.terms)
            if (k.is_unit()) total += c;
        return total;
    }
    GLElement same;
    for (const auto& [k, c] : x.terms)
        if (support(k) == support(u.a)) same.add(k, c);
    auto d = decompose_irreducible(same);
    auto it = d.find(u.a);
    return it == d.end() ? 0 : it->second;
}

}  // namespace unirank3
