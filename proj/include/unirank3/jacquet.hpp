#pragma once

#include <climits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "catalogue.hpp"

namespace unirank3 {

/// One summand u (x) pi of a Jacquet module.
struct JacquetTerm {
    ProductKey gl_part;
    ClassicalLabel classical_part;
    long long coefficient = 1;
};

/// Multiplicity interval; hi is empty when no upper bound was found.
struct Bounds {
    long long lo = 0;
    std::optional<long long> hi = 0;

    static Bounds exactly(long long n) { return Bounds{n, n}; }
    static Bounds unknown() { return Bounds{0, std::nullopt}; }
    bool exact() const { return hi && *hi == lo; }
    friend bool operator==(const Bounds&, const Bounds&) = default;

    /// this += c * b, swapping the ends when c < 0.
    void add_scaled(long long c, const Bounds& b) {
        if (c == 0) return;
        const long long kFloor = LLONG_MIN / 8;
        if (c > 0) {
            lo += c * b.lo;
            if (hi && b.hi) *hi += c * *b.hi;
            else hi.reset();
        } else {
            lo = b.hi && lo > kFloor ? lo + c * *b.hi : kFloor;
            if (hi) *hi += c * b.lo;
        }
    }
    /// Clamp to what a multiplicity can be and intersect with another bound.
    void meet(const Bounds& b) {
        lo = std::max(lo, b.lo);
        if (b.hi) hi = hi ? std::min(*hi, *b.hi) : *b.hi;
    }
    void clamp() {
        if (lo < 0) lo = 0;
        if (hi && *hi < lo) hi = lo;
    }
};

// ---------------------------------------------------------------------------
// Support bookkeeping

/// Absolute values of the cuspidal exponents, sorted, with multiplicity.
inline std::vector<Rational> abs_support(const Tempered& t) {
    std::vector<Rational> out;
    for (const auto& s : t.segs)
        for (Rational x = s.b; x <= s.e; x += 1) out.push_back(rabs(x));
    for (const auto& b : t.base) {
        auto v = abs_support(b);
        out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Rational> abs_support(const ClassicalLabel& l) {
    std::vector<Rational> out = abs_support(l.t);
    for (const auto& x : support(l.d)) out.push_back(rabs(x));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Rational> abs_support(const ProductKey& k) {
    std::vector<Rational> out;
    for (const auto& x : support(k)) out.push_back(rabs(x));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Rational> abs_support(const ClassicalPart& p) {
    std::vector<Rational> out = abs_support(p.base);
    auto g = abs_support(p.gl);
    out.insert(out.end(), g.begin(), g.end());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Decomposition of induced slots

inline std::optional<ClassicalSum> decompose_part(const ClassicalPart& p, const LineConfig& cfg);

namespace detail {

inline void add_sum(ClassicalSum& acc, const ClassicalSum& s, long long c) {
    for (const auto& [l, n] : s) add_term(acc, l, c * n);
}

/// Factors of a key that may be induced one at a time.
inline std::vector<GLIrrLabel> key_factors(const ProductKey& k) {
    if (!is_standard(k)) return k.labels;
    std::vector<GLIrrLabel> v;
    for (const auto& s : standard_segments(k)) v.push_back(GLIrrLabel::delta(s));
    return v;
}

inline std::optional<ClassicalSum> decompose_part_uncached(const ClassicalPart& p, const LineConfig& cfg) {
    if (p.gl.is_unit()) return ClassicalSum{{p.base, 1}};
    const auto& tab = decomposition_table(cfg);
    if (auto it = tab.find(p); it != tab.end()) return it->second;

    if (!is_standard(p.gl)) {
        // L(a) = sum of standard modules in the delta basis
        ClassicalSum acc;
        for (const auto& [m, c] : to_delta(GLElement::from_key(p.gl))) {
            auto s = decompose_part(make_part(key_of_segments(m.entries), p.base), cfg);
            if (!s) return std::nullopt;
            add_sum(acc, *s, c);
        }
        for (const auto& [l, c] : acc)
            if (c < 0) return std::nullopt;
        return acc;
    }

    auto segs = standard_segments(p.gl);
    if (p.base.is_cusp()) {
        bool points = std::all_of(segs.begin(), segs.end(), [](const Segment& s) { return s.size() == 1; });
        if (points) {
            std::vector<Rational> exps;
            for (const auto& s : segs) exps.push_back(s.b);
            if (auto ci = find_case(cfg, exps)) {
                ClassicalSum acc;
                for (const auto& e : ci->entries) add_term(acc, e.label, static_cast<long long>(e.multiplicity));
                return acc;
            }
        }
        if (segs.size() == 1 && on_alpha_lattice(segs[0].b, cfg)) {
            ClassicalSum acc;
            for (SegForm f : {SegForm::Plus, SegForm::Minus, SegForm::LAlpha})
                if (auto l = resolve_seg(segs[0].b, segs[0].e, f, cfg)) add_term(acc, *l, 1LL);
            return acc;
        }
    }
    if (segs.size() == 1 && p.base.is_tempered() && segs[0].b == -segs[0].e) {
        try {
            ClassicalSum acc;
            for (const auto& t : tempered_constituents(Multisegment{segs[0]}, p.base.t, cfg))
                add_term(acc, tempered_label(t), 1LL);
            return acc;
        } catch (const Error&) {
        }
    }
    auto factors = key_factors(p.gl);
    if (factors.size() < 2) return std::nullopt;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto inner = decompose_part(make_part(key_of(factors[i]), p.base), cfg);
        if (!inner) continue;
        std::vector<GLIrrLabel> rest;
        for (std::size_t j = 0; j < factors.size(); ++j)
            if (j != i) rest.push_back(factors[j]);
        ProductKey rk = make_key(rest);
        ClassicalSum acc;
        bool ok = true;
        for (const auto& [l, c] : *inner) {
            auto s = decompose_part(make_part(rk, l), cfg);
            if (!s) {
                ok = false;
                break;
            }
            add_sum(acc, *s, c);
        }
        if (ok) return acc;
    }
    return std::nullopt;
}

}  // namespace detail

/// Composition series of the slot gl x| base when the rules decide it.
inline std::optional<ClassicalSum> decompose_part(const ClassicalPart& p, const LineConfig& cfg) {
    static std::mutex mu;
    static std::map<std::pair<Rational, ClassicalPart>, std::optional<ClassicalSum>> cache;
    auto key = std::make_pair(cfg.alpha, p);
    {
        std::lock_guard<std::mutex> g(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto r = detail::decompose_part_uncached(p, cfg);
    std::lock_guard<std::mutex> g(mu);
    cache.emplace(key, r);
    return r;
}

/// A GL key rewritten over irreducible classes; unchanged when undecidable.
inline const GLElement& irreducible_basis(const ProductKey& k) {
    static std::mutex mu;
    static std::map<ProductKey, GLElement> cache;
    {
        std::lock_guard<std::mutex> g(mu);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
    }
    GLElement out;
    if (k.labels.size() <= 1) {
        out = GLElement::from_key(k);
    } else {
        try {
            for (const auto& [a, c] : decompose_irreducible(GLElement::from_key(k))) out.add(key_of(GLIrrLabel{a}), c);
        } catch (const Error&) {
            out = GLElement::from_key(k);
        }
    }
    std::lock_guard<std::mutex> g(mu);
    return cache.emplace(k, out).first->second;
}

/// Expands GL parts into irreducibles and every decidable slot into classical ones.
inline RSElement normalize(const RSElement& e, const LineConfig& cfg) {
    RSElement out;
    for (const auto& [k, c] : e.terms) {
        auto s = decompose_part(k.second, cfg);
        for (const auto& [g, cg] : irreducible_basis(k.first).terms) {
            if (s) {
                for (const auto& [l, n] : *s) out.add(g, part_of(l), c * cg * n);
            } else {
                out.add(g, k.second, c * cg);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// mu* of induced elements

/// M*(x) x| s: left factors multiply the GL parts, right factors enter the slot.
inline RSElement mu_star_induced(const GLElement& x, const RSElement& s) {
    GLTensor mx = m_star(to_standard(x));
    RSElement out;
    for (const auto& [k1, c1] : mx.terms)
        for (const auto& [k2, c2] : s.terms) {
            ProductKey left = key_product(k1.first, k2.first);
            ClassicalPart part = make_part(key_product(k1.second, k2.second.gl), k2.second.base);
            out.add(left, part, c1 * c2);
        }
    return out;
}

inline RSElement mu_star_induced(const GLElement& x, const RSElement& s, const LineConfig& cfg) {
    return normalize(mu_star_induced(x, s), cfg);
}

/// 1 (x) l.
inline RSElement unit_term(const ClassicalLabel& l) { return RSElement::single(ProductKey{}, part_of(l)); }

// ---------------------------------------------------------------------------
// Closed formulas

namespace detail {

inline ProductKey deltas(const Rational& b1, const Rational& e1, const Rational& b2, const Rational& e2) {
    auto x = segment_or_empty(b1, e1);
    auto y = segment_or_empty(b2, e2);
    if (!x || !y) fail(ErrorKind::NotIntegralLength, "segment shorter than empty");
    return key_of_segments({*x, *y});
}

inline ClassicalPart cusp_part() { return part_of(ClassicalLabel::cusp()); }

}  // namespace detail

/// mu* of the generalized Steinberg delta([alpha, alpha+n]; sigma).
inline RSElement mu_star_steinberg(long long n, const LineConfig& cfg) {
    const Rational& a = cfg.alpha;
    RSElement out;
    for (long long k = -1; k <= n; ++k) {
        ProductKey left = key_of_segments({*segment_or_empty(a + k + 1, a + n)});
        ClassicalPart right = k < 0 ? detail::cusp_part() : part_of(*resolve_seg(a, a + k, SegForm::Plus, cfg));
        out.add(left, right, 1);
    }
    return out;
}

/**
 * mu* of delta([-c,d]_sign; sigma) when delta([-c,d]) x| sigma reduces.
 * The first sum always keeps its lower-limit term i = -c-1; for the + form it
 * runs up to alpha-1 when c < alpha-1, as the whole induced module requires.
 */
inline RSElement mu_star_seg_delta(const Rational& c, const Rational& d, SegForm form, const LineConfig& cfg) {
    const Rational& a = cfg.alpha;
    RSElement out;
    Rational top1 = std::max(c, -c - 1);
    if (form == SegForm::Plus) top1 = std::max(top1, a - 1);
    for (Rational i = -c - 1; i <= top1; i += 1)
        for (Rational j = i + 1; j <= d; j += 1)
            if (auto l = resolve_seg(i + 1, j, form, cfg)) out.add(detail::deltas(-i, c, j + 1, d), part_of(*l), 1);
    for (Rational i = -c - 1; i <= d; i += 1)
        for (Rational j = i + 1; j <= c; j += 1)
            if (i + j < -1)
                if (auto l = resolve_seg(i + 1, j, SegForm::LAlpha, cfg)) out.add(detail::deltas(-i, c, j + 1, d), part_of(*l), 1);
    Rational top3 = (form == SegForm::Minus ? -a : a) - 1;
    for (Rational i = -c - 1; i <= top3; i += 1) out.add(detail::deltas(-i, c, i + 1, d), detail::cusp_part(), 1);
    return out;
}

/// mu* of L([-c,d]; sigma) for reducible delta([-c,d]) x| sigma with c < d.
inline RSElement mu_star_seg_langlands(const Rational& c, const Rational& d, const LineConfig& cfg) {
    const Rational& a = cfg.alpha;
    auto lkey = [](const Rational& b1, const Rational& e1, const Rational& b2, const Rational& e2) {
        return key_of(GLIrrLabel{Multisegment{*segment_or_empty(b1, e1), *segment_or_empty(b2, e2)}});
    };
    RSElement out;
    for (Rational i = -c - 1; i <= d; i += 1)
        for (Rational j = i + 1; j <= d; j += 1)
            if (i + j >= 0)
                if (auto l = resolve_seg(i + 1, j, SegForm::LAlpha, cfg)) out.add(lkey(-i, c, j + 1, d), part_of(*l), 1);
    for (Rational i = a; i <= d; i += 1) out.add(lkey(-i, c, i + 1, d), detail::cusp_part(), 1);
    return out;
}

/// Segment-type name (p, q, form) of a label, if it has one.
inline std::optional<std::tuple<Rational, Rational, SegForm>> segment_form_of(const ClassicalLabel& l, const LineConfig& cfg) {
    auto sup = abs_support(l);
    if (sup.empty()) return std::nullopt;
    Rational q = sup.back();
    Rational p = q - Rational(static_cast<long long>(sup.size())) + 1;
    if (!on_alpha_lattice(q, cfg) && !is_half_integer(q)) return std::nullopt;
    for (SegForm f : {SegForm::Plus, SegForm::Minus, SegForm::LAlpha}) {
        auto r = resolve_seg(p, q, f, cfg);
        if (r && *r == l) return std::make_tuple(p, q, f);
    }
    return std::nullopt;
}

/// mu* of the constituent of delta([p,q]) x| sigma named by form.
inline RSElement mu_star_segment_type(const Rational& p, const Rational& q, SegForm form, const LineConfig& cfg) {
    auto [pp, qq] = symmetrize(p, q);
    Rational c = -pp, d = qq;
    if (!seg_reducible(pp, qq, cfg) || !on_alpha_lattice(qq, cfg))
        return mu_star_induced(GLElement::delta(make_segment(pp, qq)), unit_term(ClassicalLabel::cusp()), cfg);
    if (form != SegForm::LAlpha) return mu_star_seg_delta(c, d, form, cfg);
    if (c == d) fail(ErrorKind::NoFormulaAvailable, "L_alpha vanishes for a symmetric segment");
    return mu_star_seg_langlands(c, d, cfg);
}

// ---------------------------------------------------------------------------
// mu* dispatch

inline GLElement gl_dual(const ProductKey& k) { return GLElement::from_key(zelevinsky_dual(k)); }

namespace detail {

inline bool nonnegative(const RSElement& e) {
    return std::all_of(e.terms.begin(), e.terms.end(), [](const auto& t) { return t.second > 0; });
}

inline bool has_unit_term(const RSElement& e, const ClassicalLabel& l) {
    auto it = e.terms.find({ProductKey{}, part_of(l)});
    return it != e.terms.end() && it->second == 1;
}

struct MuStarCache {
    std::mutex mu;
    std::map<std::pair<Rational, ClassicalLabel>, std::optional<RSElement>> done;
};

inline MuStarCache& mu_star_cache() {
    static MuStarCache c;
    return c;
}

inline std::optional<RSElement> mu_star_try(const ClassicalLabel& l, const LineConfig& cfg, std::set<ClassicalLabel>& busy);

inline std::optional<RSElement> mu_star_rec(const ClassicalLabel& l, const LineConfig& cfg, std::set<ClassicalLabel>& busy) {
    auto& cache = mu_star_cache();
    auto key = std::make_pair(cfg.alpha, l);
    {
        std::lock_guard<std::mutex> g(cache.mu);
        if (auto it = cache.done.find(key); it != cache.done.end()) return it->second;
    }
    if (busy.count(l)) return std::nullopt;
    bool top = busy.empty();
    busy.insert(l);
    std::optional<RSElement> r;
    try {
        r = mu_star_try(l, cfg, busy);
    } catch (const Error&) {
        r.reset();
    }
    busy.erase(l);
    // a failure below the top may only reflect the recursion guard
    if (r || top) {
        std::lock_guard<std::mutex> g(cache.mu);
        cache.done.emplace(key, r);
    }
    return r;
}

/// mu* of gl x| base, if mu*(base) is known.
inline std::optional<RSElement> mu_star_slot(const ClassicalPart& p, const LineConfig& cfg, std::set<ClassicalLabel>& busy) {
    auto b = mu_star_rec(p.base, cfg, busy);
    if (!b) return std::nullopt;
    return mu_star_induced(GLElement::from_key(p.gl), *b, cfg);
}

/// (z (x) w)^t = (z^t)^ (x) w^t, term by term.
inline std::optional<RSElement> dualize(const RSElement& e, const LineConfig& cfg) {
    RSElement out;
    for (const auto& [k, c] : e.terms) {
        ProductKey left = contragredient(zelevinsky_dual(k.first));
        ClassicalLabel base;
        try {
            base = ass_dual(k.second.base, cfg);
        } catch (const Error&) {
            return std::nullopt;
        }
        out.add(left, make_part(zelevinsky_dual(k.second.gl), base), c);
    }
    return normalize(out, cfg);
}

/// mu*(whole) minus the known mu* of the other constituents.
inline std::optional<RSElement> subtract_others(const ClassicalLabel& l, const RSElement& whole, const ClassicalSum& sum,
                                                const LineConfig& cfg, std::set<ClassicalLabel>& busy) {
    auto it = sum.find(l);
    if (it == sum.end() || it->second != 1) return std::nullopt;
    RSElement r = whole;
    for (const auto& [o, c] : sum) {
        if (o == l) continue;
        auto m = mu_star_rec(o, cfg, busy);
        if (!m) return std::nullopt;
        r -= c * *m;
    }
    r = normalize(r, cfg);
    if (!nonnegative(r) || !has_unit_term(r, l)) return std::nullopt;
    return r;
}

inline std::optional<RSElement> mu_star_try(const ClassicalLabel& l, const LineConfig& cfg, std::set<ClassicalLabel>& busy) {
    using K = Tempered::Kind;
    if (l.is_cusp()) return unit_term(l);

    if (auto sf = segment_form_of(l, cfg)) {
        auto [p, q, f] = *sf;
        return mu_star_segment_type(p, q, f, cfg);
    }

    if (l.is_tempered() && l.t.kind == K::Ind) {
        std::vector<Segment> segs = l.t.segs;
        ClassicalLabel base = tempered_label(l.t.under());
        auto b = mu_star_rec(base, cfg, busy);
        if (b) return mu_star_induced(from_delta(DeltaPoly{{Multisegment(segs), 1}}), *b, cfg);
    }

    // L(d; t) that equals the full induced d x| t
    if (!l.d.empty()) {
        ClassicalPart whole = make_part(key_of_segments(l.d.entries), tempered_label(l.t));
        auto s = decompose_part(whole, cfg);
        if (s && s->size() == 1 && s->begin()->first == l && s->begin()->second == 1)
            if (auto m = mu_star_slot(whole, cfg, busy)) return m;
    }

    for (const auto& [part, sum] : decomposition_table(cfg)) {
        if (!sum.count(l)) continue;
        auto whole = mu_star_slot(part, cfg, busy);
        if (!whole) continue;
        if (auto r = subtract_others(l, *whole, sum, cfg, busy)) return r;
    }

    try {
        ClassicalLabel t = ass_dual(l, cfg);
        if (t != l)
            if (auto m = mu_star_rec(t, cfg, busy))
                if (auto r = dualize(*m, cfg); r && has_unit_term(*r, l)) return r;
    } catch (const Error&) {
    }

    for (const auto& ci : catalogue(cfg)) {
        ClassicalSum sum;
        for (const auto& e : ci.entries) add_term(sum, e.label, static_cast<long long>(e.multiplicity));
        if (!sum.count(l)) continue;
        std::vector<Segment> pts;
        for (const auto& x : ci.exps) pts.push_back(singleton(x));
        RSElement whole = mu_star_induced(from_delta(DeltaPoly{{Multisegment(pts), 1}}), unit_term(ClassicalLabel::cusp()), cfg);
        if (auto r = subtract_others(l, whole, sum, cfg, busy)) return r;
    }
    return std::nullopt;
}

}  // namespace detail

/// mu*(label) from the closed formulas, inductions, tables and duality.
inline RSElement mu_star(const ClassicalLabel& l, const LineConfig& cfg) {
    std::set<ClassicalLabel> busy;
    auto r = detail::mu_star_rec(l, cfg, busy);
    if (!r) fail(ErrorKind::NoFormulaAvailable, "mu* of " + render(l) + " at alpha=" + to_string(cfg.alpha));
    return *r;
}

inline std::optional<RSElement> try_mu_star(const ClassicalLabel& l, const LineConfig& cfg) {
    std::set<ClassicalLabel> busy;
    return detail::mu_star_rec(l, cfg, busy);
}

/// The stratum of e whose classical part is the cuspidal class.
inline GLElement s_gl(const RSElement& e) {
    GLElement out;
    for (const auto& [k, c] : e.terms)
        if (k.second.gl.is_unit() && k.second.base.is_cusp()) out.add(k.first, c);
    return out;
}

/// Full-flag character of a classical class.
inline std::optional<Character> classical_character(const ClassicalLabel& l, const LineConfig& cfg) {
    if (l.is_cusp()) return Character{{Word{}, 1}};
    auto m = try_mu_star(l, cfg);
    if (!m) return std::nullopt;
    return character(s_gl(*m));
}

/// Full-flag character of the slot gl x| base.
inline std::optional<Character> classical_character(const ClassicalPart& p, const LineConfig& cfg) {
    auto b = classical_character(p.base, cfg);
    if (!b) return std::nullopt;
    if (p.gl.is_unit()) return b;
    return shuffle(character(m_star_gl(to_standard(GLElement::from_key(p.gl)))), *b);
}

// ---------------------------------------------------------------------------
// Multiplicity engine

namespace detail {

inline Bounds ratio_bound(const std::map<Multisegment, long long>& want, const std::map<Multisegment, long long>& have) {
    long long best = LLONG_MAX;
    for (const auto& [w, n] : want) {
        if (n <= 0) continue;
        auto it = have.find(w);
        best = std::min(best, (it == have.end() ? 0 : it->second) / n);
    }
    return Bounds{0, best};
}

/// Upper bound comparing GL-type Jacquet modules, in the irreducible basis when decidable.
inline Bounds character_bound(const ClassicalLabel& pi, const ClassicalPart& p, const LineConfig& cfg) {
    auto mp = try_mu_star(pi, cfg);
    auto mb = p.base.is_cusp() ? std::optional<RSElement>(unit_term(p.base)) : try_mu_star(p.base, cfg);
    if (!mp || !mb) return Bounds::unknown();
    GLElement want = s_gl(*mp);
    GLElement have = multiply(m_star_gl(to_standard(GLElement::from_key(p.gl))), s_gl(*mb));
    if (want.is_zero()) return Bounds::unknown();
    try {
        return ratio_bound(decompose_irreducible(want), decompose_irreducible(have));
    } catch (const Error&) {
    }
    Character cp = character(want), cs = character(have);
    long long best = LLONG_MAX;
    for (const auto& [w, n] : cp) {
        if (n <= 0) continue;
        auto it = cs.find(w);
        best = std::min(best, (it == cs.end() ? 0 : it->second) / n);
    }
    return Bounds{0, best};
}

/**
 * pi inside L(a) x| tau for an irreducible GL class L(a). Every subquotient
 * lies below the top exponent vector, and the classes attaining it are the
 * L(a^up + d'; t') with t' a tempered constituent, each exactly once.
 */
inline Bounds mult_irreducible_slot(const ClassicalLabel& pi, const Multisegment& a, const ClassicalLabel& tau,
                                    const LineConfig& cfg) {
    if (a.empty()) return Bounds::exactly(pi == tau ? 1 : 0);
    ClassicalPart p = make_part(key_of(GLIrrLabel{a}), tau);
    if (auto s = decompose_part(p, cfg)) {
        auto it = s->find(pi);
        return Bounds::exactly(it == s->end() ? 0 : it->second);
    }
    auto [up, du] = d_up_and_du(a);
    ClassicalLabel top{up + tau.d, tau.t};
    std::vector<Rational> etop = e_star(top);
    etop.resize(static_cast<std::size_t>(rank(pi)), Rational(0));
    auto epi = e_star(pi);
    if (!e_star_leq(epi, etop)) return Bounds::exactly(0);
    if (epi == etop) {
        if (pi.d != top.d) return Bounds::exactly(0);
        try {
            auto ts = tempered_constituents(du, tau.t, cfg);
            return Bounds::exactly(std::find(ts.begin(), ts.end(), pi.t) == ts.end() ? 0 : 1);
        } catch (const Error&) {
            return Bounds{0, 1};
        }
    }
    return character_bound(pi, p, cfg);
}

/// The full induced slot equal to an irreducible base, if there is one.
inline std::optional<ClassicalPart> unfolded_base(const ClassicalLabel& base, const LineConfig& cfg) {
    ClassicalPart w;
    if (!base.d.empty()) w = make_part(key_of_segments(base.d.entries), tempered_label(base.t));
    else if (base.t.kind == Tempered::Kind::Ind) w = make_part(key_of_segments(base.t.segs), tempered_label(base.t.under()));
    else return std::nullopt;
    auto s = decompose_part(w, cfg);
    if (s && s->size() == 1 && s->begin()->first == base && s->begin()->second == 1) return w;
    return std::nullopt;
}

/// Keys with the same induced semisimplification: each segment may be replaced by its contragredient.
inline std::vector<ProductKey> flip_variants(const ProductKey& k) {
    if (!is_standard(k)) return {k};
    auto segs = standard_segments(k);
    std::set<ProductKey> out;
    std::size_t n = segs.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Segment> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(mask >> i & 1 ? contragredient(segs[i]) : segs[i]);
        out.insert(key_of_segments(v));
    }
    return {out.begin(), out.end()};
}

}  // namespace detail

/// Multiplicity of pi in the slot p.
inline Bounds mult_classical(const ClassicalLabel& pi, const ClassicalPart& p, const LineConfig& cfg) {
    if (abs_support(pi) != abs_support(p)) return Bounds::exactly(0);
    if (auto s = decompose_part(p, cfg)) {
        auto it = s->find(pi);
        return Bounds::exactly(it == s->end() ? 0 : it->second);
    }
    Bounds b = detail::character_bound(pi, p, cfg);
    if (p.gl.labels.size() > 0)
        if (auto w = detail::unfolded_base(p.base, cfg))
            b.meet(mult_classical(pi, make_part(key_product(p.gl, w->gl), w->base), cfg));
    for (const auto& k : detail::flip_variants(p.gl)) {
        if (b.exact()) break;
        Bounds sum = Bounds::exactly(0);
        try {
            for (const auto& [a, c] : decompose_irreducible(GLElement::from_key(k)))
                sum.add_scaled(c, detail::mult_irreducible_slot(pi, a, p.base, cfg));
        } catch (const Error&) {
            continue;
        }
        b.meet(sum);
    }
    b.clamp();
    return b;
}

/// Multiplicity of target in e, exact when the rules force it.
inline Bounds multiplicity(const JacquetTerm& target, const RSElement& e, const LineConfig& cfg) {
    if (target.gl_part.labels.size() > 1) fail(ErrorKind::NotStandardBasis, "target GL part must be irreducible");
    GLIrrLabel u = target.gl_part.is_unit() ? GLIrrLabel{} : target.gl_part.labels[0];
    auto su = support(u.a);
    Bounds b = Bounds::exactly(0);
    for (const auto& [k, c] : e.terms) {
        if (support(k.first) != su) continue;
        long long g = mult_gl(u, GLElement::from_key(k.first));
        if (g == 0) continue;
        b.add_scaled(c * g, mult_classical(target.classical_part, k.second, cfg));
    }
    b.clamp();
    return b;
}

inline Bounds multiplicity(const GLIrrLabel& u, const ClassicalLabel& pi, const RSElement& e, const LineConfig& cfg) {
    return multiplicity(JacquetTerm{key_of(u), pi, 1}, e, cfg);
}

/// mu*(u x| pi), or M*(u) x| (1 (x) pi) when the two supports are disjoint.
inline std::optional<RSElement> induced_jacquet(const GLIrrLabel& u, const ClassicalLabel& pi, const LineConfig& cfg) {
    GLElement x = GLElement::from_label(u);
    if (auto m = try_mu_star(pi, cfg)) return mu_star_induced(x, *m, cfg);
    auto su = abs_support(key_of(u));
    auto sp = abs_support(pi);
    std::vector<Rational> common;
    std::set_intersection(su.begin(), su.end(), sp.begin(), sp.end(), std::back_inserter(common));
    if (!common.empty()) return std::nullopt;
    // no summand of mu*(pi) other than 1 (x) pi can meet the support of u
    return mu_star_induced(x, unit_term(pi), cfg);
}

namespace detail {

/**
 * A filtration piece (x z) (x) (y x| w), with x (x) y from M*(u) and
 * z (x) w from mu*(pi), where u sits in the reducible product x z of
 * multiplicity-free support: there u (x) pi is never both a sub and a quotient.
 */
inline bool one_sided_piece(const GLIrrLabel& u, const ClassicalLabel& pi, const LineConfig& cfg) {
    auto m = try_mu_star(pi, cfg);
    if (!m) return false;
    GLTensor mu = m_star(to_standard(GLElement::from_label(u)));
    for (const auto& [xy, c1] : mu.terms) {
        if (xy.first.is_unit()) continue;
        for (const auto& [zw, c2] : m->terms) {
            if (zw.first.is_unit()) continue;
            ProductKey xz = key_product(xy.first, zw.first);
            auto sx = support(xz);
            if (std::adjacent_find(sx.begin(), sx.end()) != sx.end()) continue;
            GLElement prod = GLElement::from_key(xz);
            if (mult_gl(u, prod) < 1) continue;
            if (decompose_irreducible(prod).size() < 2) continue;
            ClassicalPart slot = make_part(key_product(xy.second, zw.second.gl), zw.second.base);
            if (mult_classical(pi, slot, cfg).lo >= 1) return true;
        }
    }
    return false;
}

}  // namespace detail

/**
 * True certifies pi non-unitarizable: u x| pi has length at least lb, but
 * u (x) pi occurs fewer than lb times in its Jacquet module, or exactly lb
 * times with a one-sided occurrence.
 */
inline bool nonunit_certificate(const GLIrrLabel& u, const ClassicalLabel& pi, long long length_lb, const LineConfig& cfg) {
    if (u.a.empty()) return false;
    std::optional<RSElement> e;
    try {
        e = induced_jacquet(u, pi, cfg);
    } catch (const Error&) {
        return false;
    }
    if (!e) return false;
    Bounds b = multiplicity(u, pi, *e, cfg);
    if (b.hi && *b.hi < length_lb) return true;
    if (b.exact() && b.lo == length_lb) return detail::one_sided_piece(u, pi, cfg);
    return false;
}

}  // namespace unirank3
