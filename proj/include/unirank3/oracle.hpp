#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "classifier.hpp"
#include "jacquet.hpp"

namespace unirank3 {

/// A full-flag stratum: an ordered exponent list over the cuspidal tail.
struct CuspidalChain {
    std::vector<Rational> exponents;
    ClassicalLabel classical_tail = ClassicalLabel::cusp();
};

namespace detail {

/// Peels the leading exponent off with m* and recurses on the right factor.
inline long long chain_rec(const GLElement& x, const std::vector<Rational>& chain, std::size_t pos) {
    if (pos == chain.size()) {
        long long n = 0;
        for (const auto& [k, c] : x.terms)
            if (k.is_unit()) n += c;
        return n;
    }
    ProductKey head = key_of_segments({singleton(chain[pos])});
    GLElement rest;
    for (const auto& [kk, c] : comult(to_standard(x)).terms)
        if (kk.first == head) rest.add(kk.second, c);
    if (rest.is_zero()) return 0;
    return chain_rec(rest, chain, pos + 1);
}

}  // namespace detail

/// Exact multiplicity of the ordered chain in the full-flag module of x.
inline long long chain_multiplicity(const GLElement& x, const std::vector<Rational>& chain) {
    return detail::chain_rec(x, chain, 0);
}

/// The same for the part of e over the cuspidal tail.
inline long long chain_multiplicity(const RSElement& e, const CuspidalChain& chain) {
    GLElement x;
    for (const auto& [k, c] : e.terms)
        if (k.second.gl.is_unit() && k.second.base == chain.classical_tail) x.add(k.first, c);
    return chain_multiplicity(x, chain.exponents);
}

// ---------------------------------------------------------------------------
// Identity suites

struct SuiteReport {
    std::string name;
    bool passed = true;
    long long checked = 0;
    std::string counterexample;
};

namespace detail {

/// Segments with endpoints in [lo, lo+width) on the integral lattice, of length <= max_len.
inline std::vector<Segment> window_segments(long long lo, long long width, long long max_len) {
    std::vector<Segment> v;
    for (long long b = lo; b < lo + width; ++b)
        for (long long e = b; e < lo + width && e - b + 1 <= max_len; ++e) v.push_back(make_segment(b, e));
    return v;
}

/// Standard keys of total degree <= bound in a small window.
inline std::vector<ProductKey> small_keys(long long bound) {
    auto segs = window_segments(0, 3, bound);
    std::set<ProductKey> out;
    std::function<void(std::size_t, std::vector<Segment>&, long long)> rec = [&](std::size_t from, std::vector<Segment>& cur,
                                                                                long long deg) {
        if (!cur.empty()) out.insert(key_of_segments(cur));
        for (std::size_t i = from; i < segs.size(); ++i) {
            if (deg + segs[i].size() > bound) continue;
            cur.push_back(segs[i]);
            rec(i, cur, deg + segs[i].size());
            cur.pop_back();
        }
    };
    std::vector<Segment> cur;
    rec(0, cur, 0);
    return {out.begin(), out.end()};
}

inline void expect(SuiteReport& r, bool ok, const std::string& what) {
    ++r.checked;
    if (!ok && r.passed) {
        r.passed = false;
        r.counterexample = what;
    }
}

using Triple = std::map<std::tuple<ProductKey, ProductKey, ProductKey>, long long>;

inline SuiteReport suite_hopf(long long bound) {
    SuiteReport r{"hopf-compat", true, 0, ""};
    auto keys = small_keys(bound);
    for (const auto& x : keys)
        for (const auto& y : keys) {
            if (x.degree() + y.degree() > bound) continue;
            GLElement gx = GLElement::from_key(x), gy = GLElement::from_key(y);
            GLElement xy = multiply(gx, gy);
            expect(r, comult(xy) == multiply(comult(gx), comult(gy)), "m* " + render_key(x) + " * " + render_key(y));
            expect(r, m_star(xy) == multiply(m_star(gx), m_star(gy)), "M* " + render_key(x) + " * " + render_key(y));
        }
    return r;
}

inline SuiteReport suite_coassoc(long long bound) {
    SuiteReport r{"coassoc", true, 0, ""};
    for (const auto& x : small_keys(bound)) {
        Triple left, right;
        for (const auto& [k, c] : comult(GLElement::from_key(x)).terms) {
            for (const auto& [kk, cc] : comult(GLElement::from_key(k.first)).terms)
                add_term(left, std::make_tuple(kk.first, kk.second, k.second), c * cc);
            for (const auto& [kk, cc] : comult(GLElement::from_key(k.second)).terms)
                add_term(right, std::make_tuple(k.first, kk.first, kk.second), c * cc);
        }
        expect(r, left == right, render_key(x));
    }
    return r;
}

inline bool same_tensor_in_ring(const GLTensor& a, const GLTensor& b) {
    std::map<std::pair<Multisegment, Multisegment>, long long> x, y;
    auto fill = [](const GLTensor& t, auto& out) {
        for (const auto& [k, c] : t.terms)
            for (const auto& [m1, c1] : to_delta(k.first))
                for (const auto& [m2, c2] : to_delta(k.second)) add_term(out, std::make_pair(m1, m2), c * c1 * c2);
    };
    fill(a, x);
    fill(b, y);
    return x == y;
}

inline SuiteReport suite_mseg(long long bound) {
    SuiteReport r{"mseg-closed-vs-composed", true, 0, ""};
    for (const auto& s : window_segments(-1, bound + 1, bound)) {
        expect(r, m_star_delta_closed(s) == m_star(GLElement::delta(s)), "delta " + render_segment(s));
        GLElement z = GLElement::from_label(GLIrrLabel::zelevinsky(Multisegment{s}));
        expect(r, same_tensor_in_ring(m_star_zeta_closed(s), m_star(to_standard(z))), "zeta " + render_segment(s));
    }
    // ladders: closed M*_GL against the composed map
    auto segs = window_segments(0, 4, bound);
    for (const auto& a : segs)
        for (const auto& b : segs) {
            Multisegment m{a, b};
            if (m.degree() > bound || !is_ladder(m)) continue;
            GLElement composed = m_star_gl(to_standard(GLElement::from_label(GLIrrLabel{m})));
            expect(r, equal_in_ring(m_star_gl_ladder(m), composed), "ladder " + render_multisegment(m));
        }
    return r;
}

inline std::vector<Rational> suite_alphas() { return {0, Rational(1, 2), 1, Rational(3, 2), 2}; }

inline SuiteReport suite_uuvodu(long long bound) {
    SuiteReport r{"uuvodu-consistency", true, 0, ""};
    for (const auto& a : suite_alphas()) {
        LineConfig cfg = LineConfig::at(a);
        Rational dmax = a + std::min<long long>(bound, 3);
        for (Rational d = a; d <= dmax; d += 1)
            for (Rational p = -a; p <= d; p += 1) {
                if (p + d < 0) continue;
                RSElement lhs;
                for (SegForm f : {SegForm::Plus, SegForm::Minus, SegForm::LAlpha})
                    if (resolve_seg(p, d, f, cfg)) lhs += mu_star_segment_type(p, d, f, cfg);
                RSElement rhs = mu_star_induced(GLElement::delta(make_segment(p, d)), unit_term(ClassicalLabel::cusp()), cfg);
                expect(r, normalize(lhs, cfg) == rhs,
                       "alpha=" + to_string(a) + " [" + to_string(p) + "," + to_string(d) + "]");
            }
    }
    return r;
}

inline SuiteReport suite_sp(long long bound) {
    SuiteReport r{"sp-specialization", true, 0, ""};
    for (const auto& a : suite_alphas()) {
        if (a == 0) continue;
        LineConfig cfg = LineConfig::at(a);
        for (long long n = 0; n + 1 <= bound; ++n)
            expect(r, mu_star_seg_delta(-a, a + n, SegForm::Plus, cfg) == mu_star_steinberg(n, cfg),
                   "alpha=" + to_string(a) + " n=" + std::to_string(n));
    }
    return r;
}

inline SuiteReport suite_mw(long long bound) {
    SuiteReport r{"mw-involution", true, 0, ""};
    auto segs = window_segments(0, 6, 6);
    std::function<void(std::size_t, std::vector<Segment>&)> rec = [&](std::size_t from, std::vector<Segment>& cur) {
        if (!cur.empty()) {
            Multisegment m(cur);
            expect(r, mw_involution(mw_involution(m)) == m, render_multisegment(m));
        }
        if (static_cast<long long>(cur.size()) >= std::min<long long>(bound + 1, 5)) return;
        for (std::size_t i = from; i < segs.size(); ++i) {
            cur.push_back(segs[i]);
            rec(i, cur);
            cur.pop_back();
        }
    };
    std::vector<Segment> cur;
    rec(0, cur);
    return r;
}

inline SuiteReport suite_dual(long long) {
    SuiteReport r{"ass-dual", true, 0, ""};
    for (const auto& a : {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)}) {
        LineConfig cfg = LineConfig::at(a);
        for (const auto& ci : catalogue(cfg))
            for (const auto& e : ci.entries) {
                ClassicalLabel d = ass_dual(e.label, cfg);
                auto de = catalogue_entry(d, cfg);
                expect(r, ass_dual(d, cfg) == e.label && de && de->unitarizable == e.unitarizable,
                       "alpha=" + to_string(a) + " " + render(e.label));
            }
    }
    return r;
}

/// Words of s_GL(pi) starting with x match the s_GL of the rank-one strata [x] (x) tau.
inline SuiteReport suite_transitivity(long long) {
    SuiteReport r{"transitivity", true, 0, ""};
    for (const auto& a : suite_alphas()) {
        LineConfig cfg = LineConfig::at(a);
        for (const auto& ci : catalogue(cfg))
            for (const auto& e : ci.entries) {
                auto m = try_mu_star(e.label, cfg);
                if (!m) continue;
                Character direct = character(s_gl(*m));
                Character iterated;
                bool ok = true;
                for (const auto& [k, c] : m->terms) {
                    if (k.first.degree() != 1) continue;
                    Rational x = support(k.first)[0];
                    auto ch = classical_character(k.second, cfg);
                    if (!ch) {
                        ok = false;
                        break;
                    }
                    for (const auto& [w, n] : *ch) {
                        Word full{x};
                        full.insert(full.end(), w.begin(), w.end());
                        add_term(iterated, full, c * n);
                    }
                }
                if (!ok) continue;
                expect(r, direct == iterated, "alpha=" + to_string(a) + " " + render(e.label));
            }
    }
    return r;
}

inline const std::map<std::string, std::function<SuiteReport(long long)>>& suites() {
    static const std::map<std::string, std::function<SuiteReport(long long)>> s = {
        {"hopf-compat", suite_hopf},
        {"coassoc", suite_coassoc},
        {"mseg-closed-vs-composed", suite_mseg},
        {"uuvodu-consistency", suite_uuvodu},
        {"sp-specialization", suite_sp},
        {"mw-involution", suite_mw},
        {"ass-dual", suite_dual},
        {"transitivity", suite_transitivity},
    };
    return s;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
    std::vector<std::string> v;
    for (const auto& [k, f] : detail::suites()) v.push_back(k);
    return v;
}

/// Runs a registered identity suite up to the size bound.
inline SuiteReport verify_suite(const std::string& name, long long size_bound) {
    auto it = detail::suites().find(name);
    if (it == detail::suites().end()) fail(ErrorKind::UnknownSuite, name);
    return it->second(size_bound);
}

}  // namespace unirank3
