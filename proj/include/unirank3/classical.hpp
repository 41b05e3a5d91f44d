#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "glring.hpp"

namespace unirank3 {

/// One cuspidal line with its reducibility point.
struct LineConfig {
    Rational alpha{0};
    std::string line_name = "rho";
    bool selfcontragredient = true;

    static LineConfig at(const Rational& a) {
        if (a < 0 || !is_half_integer(a)) fail(ErrorKind::RangeExceeded, "alpha must lie in (1/2)Z, alpha >= 0");
        check_range(a);
        return LineConfig{a};
    }
};

/// x lies on the lattice alpha + Z.
inline bool on_alpha_lattice(const Rational& x, const LineConfig& cfg) { return is_integer(x - cfg.alpha); }

enum class Sign { None, Plus, Minus };

inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : s == Sign::Minus ? Sign::Plus : Sign::None; }

/**
 * Tempered classes built over the fixed cuspidal sigma.
 * Seg: segment type, SP: strongly positive, Tau: distinguished summand,
 * Ind: irreducible unitary induction.
 */
struct Tempered {
    enum class Kind { Cusp, Seg, SP, Tau, Ind };
    Kind kind = Kind::Cusp;
    std::vector<Segment> segs;
    Sign sign = Sign::None;
    std::vector<Tempered> base;  // empty or one element

    static Tempered cusp() { return Tempered{}; }
    const Tempered& under() const { return base.front(); }

    friend bool operator==(const Tempered& x, const Tempered& y) {
        return x.kind == y.kind && x.segs == y.segs && x.sign == y.sign && x.base == y.base;
    }
    friend bool operator!=(const Tempered& x, const Tempered& y) { return !(x == y); }
    friend bool operator<(const Tempered& x, const Tempered& y) {
        if (x.kind != y.kind) return x.kind < y.kind;
        if (x.segs != y.segs) return x.segs < y.segs;
        if (x.sign != y.sign) return x.sign < y.sign;
        return x.base < y.base;
    }
};

/// Langlands data L(d; t) with every entry of d of positive center.
struct ClassicalLabel {
    Multisegment d;
    Tempered t;

    static ClassicalLabel cusp() { return ClassicalLabel{}; }
    bool is_tempered() const { return d.empty(); }
    bool is_cusp() const { return d.empty() && t.kind == Tempered::Kind::Cusp; }

    friend bool operator==(const ClassicalLabel& x, const ClassicalLabel& y) { return x.d == y.d && x.t == y.t; }
    friend bool operator!=(const ClassicalLabel& x, const ClassicalLabel& y) { return !(x == y); }
    friend bool operator<(const ClassicalLabel& x, const ClassicalLabel& y) {
        return std::tie(x.d, x.t) < std::tie(y.d, y.t);
    }
};

inline ClassicalLabel tempered_label(Tempered t) { return ClassicalLabel{{}, std::move(t)}; }

inline long long rank(const Tempered& t) {
    long long n = 0;
    for (const auto& s : t.segs) n += s.size();
    for (const auto& b : t.base) n += rank(b);
    return n;
}

inline long long rank(const ClassicalLabel& l) { return l.d.degree() + rank(l.t); }

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string sign_text(Sign s) { return s == Sign::Plus ? "+" : s == Sign::Minus ? "-" : ""; }

inline std::string seg_list(const std::vector<Segment>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + render_segment(v[i]);
    return out;
}

/// Entries of d in descending (end, begin) order.
inline std::vector<Segment> langlands_order(const Multisegment& d) {
    std::vector<Segment> v = d.entries;
    std::sort(v.begin(), v.end(), [](const Segment& x, const Segment& y) { return std::tie(y.e, y.b) < std::tie(x.e, x.b); });
    return v;
}

}  // namespace detail

inline std::string render(const Tempered& t, Style st = Style::Ascii) {
    bool p = st == Style::Pretty;
    const std::string sig = p ? "σ" : "s";
    switch (t.kind) {
        case Tempered::Kind::Cusp:
            return sig;
        case Tempered::Kind::Seg:
            return (p ? "δ(" : "d(") + render_segment(t.segs[0]) + detail::sign_text(t.sign) + ";" + sig + ")";
        case Tempered::Kind::SP:
            return (p ? "δ_sp(" : "d_sp(") + detail::seg_list(t.segs) + ";" + sig + ")";
        case Tempered::Kind::Tau:
            return (p ? "τ(" : "tau(") + render_segment(t.segs[0]) + detail::sign_text(t.sign) + ";" +
                   render(t.under(), st) + ")";
        case Tempered::Kind::Ind:
            return "ind(" + detail::seg_list(t.segs) + ";" + render(t.under(), st) + ")";
    }
    return "?";
}

inline std::string render(const ClassicalLabel& l, Style st = Style::Ascii) {
    if (l.d.empty()) return render(l.t, st);
    return "L(" + detail::seg_list(detail::langlands_order(l.d)) + ";" + render(l.t, st) + ")";
}

// ---------------------------------------------------------------------------
// Jordan blocks and reducibility against tempered classes

/// Jord of the cuspidal sigma: {2a-1, 2a-3, ...} restricted to positive integers.
inline std::vector<long long> jord_cusp(const LineConfig& cfg) {
    std::vector<long long> out;
    Rational top = cfg.alpha * 2 - 1;
    for (Rational v = top; v > 0; v -= 2) out.push_back(v.numerator());
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline long long twice_plus_one(const Rational& x) { return (x * 2 + 1).numerator(); }

/// Strongly positive segments must start at alpha-k+1, ..., alpha.
inline std::optional<std::vector<long long>> jord_sp(const std::vector<Segment>& segs, const LineConfig& cfg) {
    std::vector<long long> base = jord_cusp(cfg);
    std::size_t k = segs.size();
    for (std::size_t i = 0; i < k; ++i)
        if (segs[i].b != cfg.alpha - Rational(static_cast<long long>(k - 1 - i))) return std::nullopt;
    if (base.size() + 1 < k) return std::nullopt;
    // drop the top k-1 blocks of sigma and add 2b_i+1 (2a-1 is replaced as well)
    std::vector<long long> out;
    std::size_t drop = std::min(base.size(), k);
    out.assign(base.begin(), base.end() - static_cast<long>(drop));
    for (const auto& s : segs) out.push_back(twice_plus_one(s.e));
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) return std::nullopt;
    if (base.size() < k) {
        // alpha small: the lowest segment may sit at an exponent with no cuspidal block (e.g. alpha = 1/2)
    }
    return out;
}

}  // namespace detail

/// Jordan blocks of a square-integrable class (formulas for the catalogued kinds).
inline std::vector<long long> jord_rho(const Tempered& t, const LineConfig& cfg) {
    using K = Tempered::Kind;
    switch (t.kind) {
        case K::Cusp:
            return jord_cusp(cfg);
        case K::SP: {
            auto j = detail::jord_sp(t.segs, cfg);
            if (!j) fail(ErrorKind::NoFormulaAvailable, "no Jord formula for " + render(t));
            return *j;
        }
        case K::Seg: {
            const Segment& s = t.segs[0];
            if (t.sign == Sign::None) {
                auto j = detail::jord_sp({s}, cfg);
                if (!j) fail(ErrorKind::NoFormulaAvailable, "no Jord formula for " + render(t));
                return *j;
            }
            if (-s.b == s.e) fail(ErrorKind::NoFormulaAvailable, render(t) + " is not square-integrable");
            std::vector<long long> out = jord_cusp(cfg);
            out.push_back(detail::twice_plus_one(-s.b));
            out.push_back(detail::twice_plus_one(s.e));
            std::sort(out.begin(), out.end());
            return out;
        }
        default:
            fail(ErrorKind::NoFormulaAvailable, render(t) + " is not square-integrable");
    }
}

/// Jord multiset of a tempered class: unitary blocks are counted twice.
inline std::vector<long long> tempered_blocks(const Tempered& t, const LineConfig& cfg) {
    using K = Tempered::Kind;
    if (t.kind == K::Tau || t.kind == K::Ind) {
        auto out = tempered_blocks(t.under(), cfg);
        for (const auto& s : t.segs) {
            out.push_back(detail::twice_plus_one(s.e));
            out.push_back(detail::twice_plus_one(s.e));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    if (t.kind == K::Seg && t.sign != Sign::None && -t.segs[0].b == t.segs[0].e) {
        auto out = jord_cusp(cfg);
        out.push_back(detail::twice_plus_one(t.segs[0].e));
        out.push_back(detail::twice_plus_one(t.segs[0].e));
        std::sort(out.begin(), out.end());
        return out;
    }
    return jord_rho(t, cfg);
}

/// delta([-r,r]) x| t reduces iff 2r+1 has the parity of Jord and is missing from it.
inline bool unitary_reducible(const Segment& s, const Tempered& t, const LineConfig& cfg) {
    if (s.b != -s.e) fail(ErrorKind::NotStandardBasis, "segment " + render_segment(s) + " is not unitary");
    if (!on_alpha_lattice(s.e, cfg)) return false;
    auto blocks = tempered_blocks(t, cfg);
    return std::find(blocks.begin(), blocks.end(), detail::twice_plus_one(s.e)) == blocks.end();
}

// ---------------------------------------------------------------------------
// Segment-type classes

enum class SegForm { Plus, Minus, LAlpha };

/// [p,q] contains x on the same lattice.
inline bool seg_meets(const Rational& p, const Rational& q, const Rational& x) {
    return is_integer(x - p) && p <= x && x <= q;
}

/// delta([p,q]) x| sigma reduces iff +-alpha lies in [p,q].
inline bool seg_reducible(const Rational& p, const Rational& q, const LineConfig& cfg) {
    return seg_meets(p, q, cfg.alpha) || seg_meets(p, q, -cfg.alpha);
}

/// Mirror [p,q] to the representative with p+q >= 0.
inline std::pair<Rational, Rational> symmetrize(const Rational& p, const Rational& q) {
    if (p + q < 0) return {-q, -p};
    return {p, q};
}

inline ClassicalLabel langlands_of(const std::vector<Segment>& d, const Tempered& t);

/**
 * The constituent of delta([p,q]) x| sigma named by form, or nullopt when
 * it vanishes.
 */
inline std::optional<ClassicalLabel> resolve_seg(Rational p, Rational q, SegForm form, const LineConfig& cfg) {
    if (!is_integer(q - p) || q < p) fail(ErrorKind::NotIntegralLength, "segment [" + to_string(p) + "," + to_string(q) + "]");
    std::tie(p, q) = symmetrize(p, q);
    const Rational& a = cfg.alpha;
    Segment whole = make_segment(p, q);
    auto whole_rep = [&]() {
        if (p == -q) {
            Tempered t;
            t.kind = Tempered::Kind::Ind;
            t.segs = {whole};
            t.base = {Tempered::cusp()};
            return tempered_label(t);
        }
        return ClassicalLabel{Multisegment{whole}, Tempered::cusp()};
    };
    if (!seg_reducible(p, q, cfg)) {
        bool plus_alive = on_alpha_lattice(q, cfg) ? q <= a - 1 : false;
        if (form == SegForm::Minus) return std::nullopt;
        if (form == SegForm::Plus) return plus_alive ? std::optional(whole_rep()) : std::nullopt;
        return plus_alive ? std::nullopt : std::optional(whole_rep());
    }
    bool symmetric = p == -q;
    bool both = seg_meets(p, q, a) && seg_meets(p, q, -a);
    if (form == SegForm::LAlpha) {
        if (symmetric) return std::nullopt;
        return ClassicalLabel{Multisegment{whole}, Tempered::cusp()};
    }
    if (symmetric || both) {
        Tempered t;
        t.kind = Tempered::Kind::Seg;
        t.segs = {whole};
        t.sign = form == SegForm::Plus ? Sign::Plus : Sign::Minus;
        return tempered_label(t);
    }
    if (form == SegForm::Minus) return std::nullopt;
    if (p == a) {
        Tempered t;
        t.kind = Tempered::Kind::Seg;
        t.segs = {whole};
        return tempered_label(t);
    }
    // -alpha < p < alpha <= q: split off the generalized Steinberg part
    Tempered st;
    st.kind = Tempered::Kind::Seg;
    st.segs = {make_segment(a, q)};
    Segment low = make_segment(p, a - 1);
    if (low.center() > 0) return ClassicalLabel{Multisegment{low}, st};
    Tempered t;
    t.kind = Tempered::Kind::Tau;
    t.segs = {low};
    t.sign = Sign::Plus;
    t.base = {st};
    return tempered_label(t);
}

/// Canonical tempered form; nullopt when the described class is zero.
inline std::optional<Tempered> canonical_tempered(Tempered t, const LineConfig& cfg) {
    using K = Tempered::Kind;
    for (auto& b : t.base) {
        auto c = canonical_tempered(b, cfg);
        if (!c) return std::nullopt;
        b = *c;
    }
    switch (t.kind) {
        case K::Cusp:
            return t;
        case K::Seg: {
            auto r = resolve_seg(t.segs[0].b, t.segs[0].e, t.sign == Sign::Minus ? SegForm::Minus : SegForm::Plus, cfg);
            if (!r) return std::nullopt;
            if (!r->is_tempered()) fail(ErrorKind::NotStandardBasis, render(*r) + " is not tempered");
            if (t.sign == Sign::None && r->t.sign != Sign::None)
                fail(ErrorKind::ParseError, "sign required for " + render(r->t));
            return r->t;
        }
        case K::SP: {
            std::sort(t.segs.begin(), t.segs.end());
            if (t.segs.size() == 1) {
                t.kind = K::Seg;
                return canonical_tempered(t, cfg);
            }
            if (!is_ladder(Multisegment(t.segs)) || !detail::jord_sp(t.segs, cfg))
                fail(ErrorKind::NoFormulaAvailable, "not a strongly positive datum: " + render(t));
            return t;
        }
        case K::Tau: {
            const Segment& s = t.segs[0];
            if (s.b != -s.e) fail(ErrorKind::NotStandardBasis, "tau needs a unitary segment");
            if (t.under().kind == K::Cusp) {
                Tempered sg;
                sg.kind = K::Seg;
                sg.segs = {s};
                sg.sign = t.sign;
                auto r = resolve_seg(s.b, s.e, t.sign == Sign::Minus ? SegForm::Minus : SegForm::Plus, cfg);
                if (!r) {
                    auto w = resolve_seg(s.b, s.e, SegForm::LAlpha, cfg);
                    if (w && t.sign == Sign::Plus) return w->t;
                    return std::nullopt;
                }
                return r->t;
            }
            if (!unitary_reducible(s, t.under(), cfg)) {
                if (t.sign == Sign::Minus) return std::nullopt;
                t.kind = K::Ind;
                t.sign = Sign::None;
                return canonical_tempered(t, cfg);
            }
            if (t.sign == Sign::None) fail(ErrorKind::ParseError, "sign required for " + render(t));
            return t;
        }
        case K::Ind: {
            Tempered b = t.under();
            std::vector<Segment> segs = t.segs;
            if (b.kind == K::Ind) {
                segs.insert(segs.end(), b.segs.begin(), b.segs.end());
                b = b.under();
            }
            std::sort(segs.begin(), segs.end());
            // each factor must be irreducible against what is already there
            Tempered acc = b;
            for (const auto& s : segs) {
                if (s.b != -s.e) fail(ErrorKind::NotStandardBasis, "ind needs unitary segments");
                if (unitary_reducible(s, acc, cfg))
                    fail(ErrorKind::UndecidableTemperedComponent,
                         "ind(" + render_segment(s) + ";" + render(acc) + ") is reducible; use tau");
                Tempered n;
                n.kind = K::Ind;
                n.segs = {s};
                n.base = {acc};
                acc = n;
            }
            if (segs.empty()) return b;
            Tempered out;
            out.kind = K::Ind;
            out.segs = segs;
            out.base = {b};
            return out;
        }
    }
    return t;
}

/// L(d; t) after moving every entry of d to positive center.
inline ClassicalLabel langlands_of(const std::vector<Segment>& d, const Tempered& t) {
    std::vector<Segment> v;
    for (const auto& s : d) {
        if (s.empty) continue;
        if (s.center() == 0) fail(ErrorKind::NotStandardBasis, "Langlands data entries need nonzero center");
        v.push_back(s.center() > 0 ? s : contragredient(s));
    }
    return ClassicalLabel{Multisegment(v), t};
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct LabelParser {
    const std::string& src;
    std::size_t pos = 0;
    std::optional<Rational> templ;  // value substituted for the symbol A
    const LineConfig& cfg;

    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::ParseError, what + " at offset " + std::to_string(pos) + " in '" + src + "'");
    }
    void skip() {
        while (pos < src.size() && src[pos] == ' ') ++pos;
    }
    bool eat(const std::string& tok) {
        skip();
        if (src.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& tok) {
        if (!eat(tok)) error("expected '" + tok + "'");
    }
    bool at_end() {
        skip();
        return pos == src.size();
    }

    Rational plain_number() {
        skip();
        std::size_t start = pos;
        if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) ++pos;
        while (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '/' || src[pos] == '.'))
            ++pos;
        if (start == pos) error("expected a number");
        return parse_rational(src.substr(start, pos - start));
    }

    Rational number() {
        skip();
        bool neg = false;
        std::size_t save = pos;
        if (pos < src.size() && src[pos] == '-') {
            neg = true;
            ++pos;
        }
        if (pos < src.size() && src[pos] == 'A') {
            if (!templ) error("symbol A outside a template");
            ++pos;
            Rational v = *templ;
            while (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) {
                bool plus = src[pos] == '+';
                ++pos;
                std::size_t s = pos;
                while (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '/')) ++pos;
                if (s == pos) error("expected an offset after A");
                Rational k = parse_rational(src.substr(s, pos - s));
                v += plus ? k : -k;
            }
            return check_range(neg ? -v : v);
        }
        pos = save;
        return check_range(plain_number());
    }

    Segment segment() {
        expect("[");
        Rational b = number();
        Rational e = b;
        if (eat(",")) e = number();
        expect("]");
        return make_segment(b, e);
    }

    std::vector<Segment> segment_list() {
        std::vector<Segment> v{segment()};
        while (true) {
            skip();
            if (pos + 1 < src.size() && src[pos] == ',' && src[pos + 1] == '[') {
                ++pos;
                v.push_back(segment());
            } else {
                break;
            }
        }
        return v;
    }

    Sign sign() {
        skip();
        if (eat("+")) return Sign::Plus;
        if (eat("-")) return Sign::Minus;
        return Sign::None;
    }

    void sigma() {
        if (!eat("s") && !eat("σ")) error("expected s");
    }

    ClassicalLabel label() {
        skip();
        if (eat("L_alpha(")) {
            Segment s = segment();
            expect(";");
            sigma();
            expect(")");
            auto r = resolve_seg(s.b, s.e, SegForm::LAlpha, cfg);
            if (!r) fail(ErrorKind::NotACataloguedCase, "L_alpha" + render_segment(s) + " vanishes");
            return *r;
        }
        if (eat("L(")) {
            auto d = segment_list();
            expect(";");
            ClassicalLabel inner = label();
            expect(")");
            if (!inner.is_tempered()) error("Langlands data must end in a tempered class");
            for (const auto& s : d)
                if (!(s.center() > 0)) error("Langlands entries need positive center");
            return ClassicalLabel{Multisegment(d), inner.t};
        }
        if (eat("d_sp(") || eat("δ_sp(")) {
            Tempered t;
            t.kind = Tempered::Kind::SP;
            t.segs = segment_list();
            expect(";");
            sigma();
            expect(")");
            return tempered_label(*canonical_tempered(t, cfg));
        }
        if (eat("d(") || eat("δ(")) {
            Segment s = segment();
            Sign sg = sign();
            expect(";");
            sigma();
            expect(")");
            auto r = resolve_seg(s.b, s.e, sg == Sign::Minus ? SegForm::Minus : SegForm::Plus, cfg);
            if (!r) fail(ErrorKind::NotACataloguedCase, "class d(" + render_segment(s) + detail::sign_text(sg) + ";s) vanishes");
            if (sg == Sign::None && r->is_tempered() && r->t.sign != Sign::None) error("sign required");
            return *r;
        }
        if (eat("tau(") || eat("τ(")) {
            Tempered t;
            t.kind = Tempered::Kind::Tau;
            t.segs = {segment()};
            t.sign = sign();
            expect(";");
            ClassicalLabel b = label();
            expect(")");
            if (!b.is_tempered()) error("tau needs a tempered base");
            t.base = {b.t};
            auto c = canonical_tempered(t, cfg);
            if (!c) fail(ErrorKind::NotACataloguedCase, "tau class vanishes");
            return tempered_label(*c);
        }
        if (eat("ind(")) {
            Tempered t;
            t.kind = Tempered::Kind::Ind;
            t.segs = segment_list();
            expect(";");
            ClassicalLabel b = label();
            expect(")");
            if (!b.is_tempered()) error("ind needs a tempered base");
            t.base = {b.t};
            return tempered_label(*canonical_tempered(t, cfg));
        }
        if (eat("s") || eat("σ")) return ClassicalLabel::cusp();
        error("unknown label");
    }
};

}  // namespace detail

/// Parses the ASCII label grammar; A stands for alpha when templ is set.
inline ClassicalLabel parse_label(const std::string& text, const LineConfig& cfg,
                                  std::optional<Rational> templ = std::nullopt) {
    detail::LabelParser p{text, 0, templ, cfg};
    ClassicalLabel l = p.label();
    if (!p.at_end()) p.error("trailing input");
    return l;
}

// ---------------------------------------------------------------------------
// Langlands data operations

/// Central exponent of an essentially square-integrable delta.
inline Rational e_exponent(const Segment& s) {
    if (s.empty) fail(ErrorKind::NotIntegralLength, "e_exponent of the empty segment");
    return s.center();
}

/// (d^up, d_u): flipped nonzero-center part and the unitary part.
inline std::pair<Multisegment, Multisegment> d_up_and_du(const Multisegment& d) {
    std::vector<Segment> up, u;
    for (const auto& s : d.entries) {
        if (s.center() == 0) u.push_back(s);
        else up.push_back(s.center() > 0 ? s : contragredient(s));
    }
    return {Multisegment(up), Multisegment(u)};
}

/// Sorted exponent vector: centers repeated by size, zeros for the tempered part.
inline std::vector<Rational> e_star(const ClassicalLabel& l) {
    std::vector<Rational> v;
    for (const auto& s : l.d.entries)
        for (long long i = 0; i < s.size(); ++i) v.push_back(s.center());
    for (long long i = 0; i < rank(l.t); ++i) v.push_back(0);
    std::sort(v.rbegin(), v.rend());
    return v;
}

/// Partial-sum order on e_* vectors (padded with zeros).
inline bool e_star_leq(std::vector<Rational> x, std::vector<Rational> y) {
    std::size_t n = std::max(x.size(), y.size());
    x.resize(n, Rational(0));
    y.resize(n, Rational(0));
    std::sort(x.rbegin(), x.rend());
    std::sort(y.rbegin(), y.rend());
    Rational sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        if (sx > sy) return false;
    }
    return true;
}

inline bool langlands_order_leq(const ClassicalLabel& t1, const ClassicalLabel& t2) {
    if (rank(t1) != rank(t2)) fail(ErrorKind::RankMismatch, "labels of different rank");
    return e_star_leq(e_star(t1), e_star(t2));
}

/// Tempered constituents of delta(d_u) x| t, one unitary segment at a time.
inline std::vector<Tempered> tempered_constituents(const Multisegment& du, const Tempered& t, const LineConfig& cfg) {
    std::vector<Tempered> cur{t};
    std::vector<Segment> segs = du.entries;
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.e < y.e; });
    for (const auto& s : segs) {
        std::vector<Tempered> next;
        for (const auto& c : cur) {
            bool red;
            try {
                red = unitary_reducible(s, c, cfg);
            } catch (const Error&) {
                fail(ErrorKind::UndecidableTemperedComponent, "cannot decide " + render_segment(s) + " x| " + render(c));
            }
            for (Sign sg : red ? std::vector<Sign>{Sign::Plus, Sign::Minus} : std::vector<Sign>{Sign::Plus}) {
                Tempered n;
                n.kind = red ? Tempered::Kind::Tau : Tempered::Kind::Ind;
                n.segs = {s};
                n.sign = red ? sg : Sign::None;
                n.base = {c};
                auto cn = canonical_tempered(n, cfg);
                if (cn) next.push_back(*cn);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

/// Irreducible subquotients L(d^up + d'; t') with t' running over T_{d,t}.
inline std::vector<ClassicalLabel> cjm_subquotients(const Multisegment& d, const ClassicalLabel& t, const LineConfig& cfg) {
    auto [up, du] = d_up_and_du(d);
    std::vector<ClassicalLabel> out;
    for (const auto& tt : tempered_constituents(du, t.t, cfg)) out.push_back(ClassicalLabel{up + t.d, tt});
    std::sort(out.begin(), out.end());
    return out;
}

/// Reducibility of pi x| sigma; nullopt when the implemented criteria do not decide it.
inline std::optional<bool> lt_reducibility(const GLIrrLabel& pi, const LineConfig& cfg) {
    auto supp = support(pi.a);
    for (const auto& x : supp)
        if (rabs(x) == cfg.alpha) return true;
    if (pi.a.size() == 1) return seg_reducible(pi.a.entries[0].b, pi.a.entries[0].e, cfg);
    bool off_lattice = std::none_of(supp.begin(), supp.end(), [&](const Rational& x) { return is_half_integer(x); });
    if (off_lattice) {
        // reduces iff L(a) x L(a^) does, which is irreducible when no segment of a links one of a^
        Multisegment dual = contragredient(pi.a);
        bool cross = false;
        for (const auto& s : pi.a.entries)
            for (const auto& t : dual.entries) cross = cross || linked(s, t);
        if (!cross) return false;
    }
    return std::nullopt;
}

/// 2^{m(rho,c)} on the integral lattice, 1 otherwise.
inline long long distinguished_multiplicity(const std::vector<Rational>& c, const LineConfig& cfg) {
    if (!is_integer(cfg.alpha)) return 1;
    long long m = 0;
    for (const auto& x : c) {
        if (!is_integer(x)) return 1;
        if (x == 0) ++m;
    }
    return 1LL << m;
}

/// Necessary conditions for unitarizability on one selfcontragredient line.
inline bool bounds_check(const std::vector<Rational>& exponents, const LineConfig& cfg) {
    const Rational& a = cfg.alpha;
    std::vector<Rational> abs_e;
    for (const auto& x : exponents) abs_e.push_back(rabs(x));
    std::sort(abs_e.begin(), abs_e.end());
    std::set<Rational> big_set;
    for (const auto& x : abs_e)
        if (x > a) big_set.insert(x);
    std::vector<Rational> big(big_set.begin(), big_set.end());
    for (std::size_t i = 1; i < big.size(); ++i)
        if (big[i] - big[i - 1] > 1) return false;
    if (a == 0) {
        // indexed over all factors with multiplicity (see the README on this reading)
        for (std::size_t i = 0; i < abs_e.size(); ++i)
            if (abs_e[i] > 0 && abs_e[i] > Rational(static_cast<long long>(i + 1)) - Rational(1, 2)) return false;
        return true;
    }
    std::optional<Rational> api;
    for (const auto& x : abs_e)
        if (x <= a) api = x;
    if (!api) return abs_e.empty();
    if (!big.empty() && big[0] - *api > 1) return false;
    for (std::size_t i = 0; i < big.size(); ++i)
        if (big[i] > *api + Rational(static_cast<long long>(i + 1))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Induced slots and R (x) R(S)

/// Formal induced class gl x| base; the unit gl part is the label itself.
struct ClassicalPart {
    ProductKey gl;
    ClassicalLabel base;

    friend bool operator==(const ClassicalPart& x, const ClassicalPart& y) { return x.gl == y.gl && x.base == y.base; }
    friend bool operator!=(const ClassicalPart& x, const ClassicalPart& y) { return !(x == y); }
    friend bool operator<(const ClassicalPart& x, const ClassicalPart& y) {
        return std::tie(x.gl, x.base) < std::tie(y.gl, y.base);
    }
};

namespace detail {
inline Rational label_weight(const GLIrrLabel& l) {
    Rational w = 0;
    for (const auto& x : support(l.a)) w += x;
    return w;
}
}  // namespace detail

/// Flip each GL factor to nonnegative weight; legal since both give the same semisimplification.
inline ProductKey flip_to_positive(const ProductKey& k) {
    std::vector<GLIrrLabel> v;
    for (const auto& l : k.labels) {
        Rational w = detail::label_weight(l);
        GLIrrLabel c = contragredient(l);
        if (w < 0 || (w == 0 && c < l)) v.push_back(c);
        else v.push_back(l);
    }
    return make_key(v);
}

inline ClassicalPart make_part(const ProductKey& gl, const ClassicalLabel& base) {
    return ClassicalPart{flip_to_positive(gl), base};
}

inline ClassicalPart part_of(const ClassicalLabel& l) { return ClassicalPart{ProductKey{}, l}; }

inline std::string render(const ClassicalPart& p, Style st = Style::Ascii) {
    if (p.gl.is_unit()) return render(p.base, st);
    return render_key(p.gl, st) + (st == Style::Ascii ? "><" : "⋊") + render(p.base, st);
}

/// Element of R (x) R(S); with unit GL parts it houses R(S).
struct RSElement {
    std::map<std::pair<ProductKey, ClassicalPart>, long long> terms;

    static RSElement single(const ProductKey& k, const ClassicalPart& p, long long c = 1) {
        RSElement e;
        e.add(k, p, c);
        return e;
    }
    void add(const ProductKey& k, const ClassicalPart& p, long long c) { detail::add_term(terms, {k, p}, c); }
    bool is_zero() const { return terms.empty(); }
    RSElement& operator+=(const RSElement& y) {
        for (const auto& [k, c] : y.terms) detail::add_term(terms, k, c);
        return *this;
    }
    RSElement& operator-=(const RSElement& y) {
        for (const auto& [k, c] : y.terms) detail::add_term(terms, k, -c);
        return *this;
    }
    friend RSElement operator+(RSElement x, const RSElement& y) { return x += y; }
    friend RSElement operator-(RSElement x, const RSElement& y) { return x -= y; }
    friend bool operator==(const RSElement& x, const RSElement& y) { return x.terms == y.terms; }
    friend bool operator!=(const RSElement& x, const RSElement& y) { return !(x == y); }
};

inline RSElement operator*(long long s, const RSElement& x) {
    RSElement out;
    for (const auto& [k, c] : x.terms) out.add(k.first, k.second, s * c);
    return out;
}

inline std::string render(const RSElement& e, Style st = Style::Ascii) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    const char* ot = st == Style::Ascii ? " (x) " : " ⊗ ";
    for (const auto& [k, c] : e.terms) {
        out += detail::coef_prefix(c, first);
        out += render_key(k.first, st) + ot + render(k.second, st);
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing of GL keys and R (x) R(S) expressions

namespace detail {

struct ExprParser : LabelParser {
    GLIrrLabel gl_label() {
        skip();
        if (eat("d[") || eat("δ[")) {
            --pos;
            return GLIrrLabel::delta(segment());
        }
        bool z = false;
        if (eat("L{") || (z = eat("Z{"))) {
            std::vector<Segment> v{segment()};
            while (eat(",")) v.push_back(segment());
            expect("}");
            return z ? GLIrrLabel::zelevinsky(Multisegment(v)) : GLIrrLabel::langlands(Multisegment(v));
        }
        error("expected a GL label");
    }

    ProductKey gl_key() {
        skip();
        if (eat("1")) return ProductKey{};
        std::vector<GLIrrLabel> v{gl_label()};
        while (eat("x") || eat("×")) v.push_back(gl_label());
        return make_key(v);
    }

    /// Either "label" or "key><label".
    ClassicalPart part() {
        skip();
        std::size_t save = pos;
        if (src.compare(pos, 2, "d[") == 0 || src.compare(pos, 2, "L{") == 0 || src.compare(pos, 2, "Z{") == 0) {
            ProductKey k = gl_key();
            if (eat("><") || eat("⋊")) return make_part(k, label());
            pos = save;
        }
        return part_of(label());
    }

    long long coefficient() {
        skip();
        std::size_t s = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (s == pos) return 1;
        if (!eat("*")) {
            pos = s;
            return 1;
        }
        return std::stoll(src.substr(s, pos - s));
    }
};

}  // namespace detail

/// Parses "c*key (x) part + ..." sums.
inline RSElement parse_rs(const std::string& text, const LineConfig& cfg, std::optional<Rational> templ = std::nullopt) {
    detail::ExprParser p{{text, 0, templ, cfg}};
    RSElement out;
    if (p.eat("0") && p.at_end()) return out;
    p.pos = 0;
    long long sign = 1;
    if (p.eat("-")) sign = -1;
    while (true) {
        long long c = p.coefficient();
        ProductKey k = p.gl_key();
        if (!p.eat("(x)") && !p.eat("⊗")) p.error("expected (x)");
        ClassicalPart part = p.part();
        out.add(k, part, sign * c);
        if (p.at_end()) break;
        if (p.eat("+")) sign = 1;
        else if (p.eat("-")) sign = -1;
        else p.error("expected + or -");
    }
    return out;
}

/// Parses a GL element "c*key + ...".
inline GLElement parse_gl(const std::string& text) {
    LineConfig cfg;
    detail::ExprParser p{{text, 0, std::nullopt, cfg}};
    GLElement out;
    long long sign = 1;
    if (p.eat("-")) sign = -1;
    while (true) {
        long long c = p.coefficient();
        out.add(p.gl_key(), sign * c);
        if (p.at_end()) break;
        if (p.eat("+")) sign = 1;
        else if (p.eat("-")) sign = -1;
        else p.error("expected + or -");
    }
    return out;
}

/// Parses "label" or "key><label" into an R(S) element.
inline ClassicalPart parse_part(const std::string& text, const LineConfig& cfg, std::optional<Rational> templ = std::nullopt) {
    detail::ExprParser p{{text, 0, templ, cfg}};
    ClassicalPart part = p.part();
    if (!p.at_end()) p.error("trailing input");
    return part;
}

}  // namespace unirank3
