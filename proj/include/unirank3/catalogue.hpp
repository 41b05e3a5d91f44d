#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "classical.hpp"

namespace unirank3 {

/// One irreducible subquotient of a catalogued induced representation.
struct CaseEntry {
    ClassicalLabel label;
    int multiplicity = 1;
    bool unitarizable = false;
    ClassicalLabel dual;
};

/// Full composition series of x_1 x ... x_k x| sigma for one exponent pattern.
struct CaseInstance {
    std::string tag;             ///< exponent pattern and regime, e.g. "(A,A+1,A+2) alpha>=1/2"
    std::vector<Rational> exps;  ///< sorted ascending
    std::vector<CaseEntry> entries;
    bool length_stated = false;  ///< the total length is a proved count rather than a tally

    int length() const {
        int n = 0;
        for (const auto& e : entries) n += e.multiplicity;
        return n;
    }
};

using ClassicalSum = std::map<ClassicalLabel, long long>;

namespace detail {

/// Raw table row: label, multiplicity, flag, dual ("=" for self-dual).
struct RawEntry {
    const char* label;
    int mult;
    bool unitary;
    const char* dual;
};

struct RawCase {
    const char* pattern;               ///< exponents in A
    std::optional<Rational> exact;     ///< alpha must equal this
    Rational min_alpha;                ///< otherwise alpha >= this
    std::vector<RawEntry> rows;
    bool length_stated;
};

inline const std::vector<RawCase>& raw_cases() {
    static const std::vector<RawCase> cases = {
        // rank one
        {"A", std::nullopt, Rational(1, 2), {{"d([A];s)", 1, true, "L([A];s)"}}, true},
        {"0", Rational(0), 0, {{"d([0]+;s)", 1, true, "d([0]-;s)"}}, true},
        // rank two
        {"A,A+1", std::nullopt, Rational(1, 2),
         {{"d([A,A+1];s)", 1, true, "L([A+1],[A];s)"}, {"L([A+1];d([A];s))", 1, false, "L([A,A+1];s)"}}, true},
        {"0,1", Rational(0), 0,
         {{"d([0,1]+;s)", 1, true, "L([1];d([0]-;s))"},
          {"d([0,1]-;s)", 1, true, "L([1];d([0]+;s))"},
          {"L([0,1];s)", 2, true, "="}},
         true},
        {"A,A", std::nullopt, Rational(1), {{"L([A],[A];s)", 1, false, "L([A];d([A];s))"}}, false},
        {"1/2,1/2", Rational(1, 2), 0,
         {{"d([-1/2,1/2]+;s)", 1, true, "L([1/2],[1/2];s)"}, {"d([-1/2,1/2]-;s)", 1, true, "L([1/2];d([1/2];s))"}}, false},
        {"0,0", Rational(0), 0, {{"ind([0];d([0]+;s))", 1, true, "ind([0];d([0]-;s))"}}, false},
        {"A-1,A", std::nullopt, Rational(3, 2),
         {{"d_sp([A-1],[A];s)", 1, true, "L([A-1,A];s)"}, {"L([A],[A-1];s)", 1, true, "L([A-1];d([A];s))"}}, false},
        {"0,1", Rational(1), 0,
         {{"tau([0]+;d([1];s))", 1, true, "L([1];ind([0];s))"}, {"L([0,1];s)", 1, true, "tau([0]-;d([1];s))"}}, false},
        // rank three
        {"A,A+1,A+2", std::nullopt, Rational(1, 2),
         {{"d([A,A+2];s)", 1, true, "L([A+2],[A+1],[A];s)"},
          {"L([A+2];d([A,A+1];s))", 1, false, "L([A+1,A+2],[A];s)"},
          {"L([A+1,A+2];d([A];s))", 1, false, "L([A+2],[A,A+1];s)"},
          {"L([A+2],[A+1];d([A];s))", 1, false, "L([A,A+2];s)"}},
         true},
        {"0,1,2", Rational(0), 0,
         {{"d([0,2]+;s)", 1, true, "L([2],[1];d([0]-;s))"},
          {"d([0,2]-;s)", 1, true, "L([2],[1];d([0]+;s))"},
          {"L([2];d([0,1]+;s))", 1, false, "L([1,2];d([0]-;s))"},
          {"L([2];d([0,1]-;s))", 1, false, "L([1,2];d([0]+;s))"},
          {"L([2],[0,1];s)", 2, false, "L([0,2];s)"}},
         true},
        {"A,A+1,A+1", std::nullopt, Rational(1, 2),
         {{"L([A+1],[A+1],[A];s)", 1, false, "L([A+1];d([A,A+1];s))"},
          {"L([A+1],[A+1];d([A];s))", 1, false, "L([A+1],[A,A+1];s)"}},
         false},
        {"0,1,1", Rational(0), 0,
         {{"L([1],[1];d([0]+;s))", 1, true, "d([-1,1]-;s)"},
          {"L([1],[1];d([0]-;s))", 1, true, "d([-1,1]+;s)"},
          {"L([1];d([0,1]+;s))", 1, true, "L([1];d([0,1]-;s))"},
          {"L([1],[0,1];s)", 2, false, "="}},
         false},
        {"A,A,A+1", std::nullopt, Rational(1),
         {{"L([A+1],[A],[A];s)", 1, false, "L([A];d([A,A+1];s))"},
          {"L([A+1],[A];d([A];s))", 1, false, "L([A,A+1],[A];s)"},
          {"L([A,A+1];d([A];s))", 1, false, "="}},
         false},
        {"1/2,1/2,3/2", Rational(1, 2), 0,
         {{"L([3/2],[1/2],[1/2];s)", 1, true, "d([-1/2,3/2]+;s)"},
          {"L([-1/2,3/2];s)", 1, true, "L([1/2,3/2];d([1/2];s))"},
          {"L([3/2],[1/2];d([1/2];s))", 1, true, "d([-1/2,3/2]-;s)"},
          {"L([1/2];d([1/2,3/2];s))", 1, true, "L([3/2];d([-1/2,1/2]-;s))"},
          {"L([1/2,3/2],[1/2];s)", 1, false, "L([3/2];d([-1/2,1/2]+;s))"}},
         false},
        {"0,0,1", Rational(0), 0,
         {{"ind([0];d([0,1]+;s))", 1, true, "L([1];ind([0];d([0]-;s)))"},
          {"ind([0];d([0,1]-;s))", 1, true, "L([1];ind([0];d([0]+;s)))"},
          {"L([0,1];d([0]+;s))", 2, true, "L([0,1];d([0]-;s))"}},
         true},
        {"A,A,A", std::nullopt, Rational(1), {{"L([A],[A],[A];s)", 1, false, "L([A],[A];d([A];s))"}}, false},
        {"1/2,1/2,1/2", Rational(1, 2), 0,
         {{"ind([-1/2,1/2];d([1/2];s))", 1, true, "L([1/2],[1/2],[1/2];s)"},
          {"L([1/2];d([-1/2,1/2]+;s))", 2, true, "="},
          {"L([1/2];d([-1/2,1/2]-;s))", 1, true, "L([1/2],[1/2];d([1/2];s))"}},
         true},
        {"0,0,0", Rational(0), 0, {{"ind([0],[0];d([0]+;s))", 1, true, "ind([0],[0];d([0]-;s))"}}, false},
        {"A-1,A,A+1", std::nullopt, Rational(3, 2),
         {{"d_sp([A-1],[A,A+1];s)", 1, true, "L([A+1],[A-1,A];s)"},
          {"L([A-1];d([A,A+1];s))", 1, true, "L([A+1],[A],[A-1];s)"},
          {"L([A+1];d_sp([A-1],[A];s))", 1, false, "L([A-1,A+1];s)"},
          {"L([A+1],[A-1];d([A];s))", 1, false, "L([A,A+1],[A-1];s)"}},
         false},
        {"0,1,2", Rational(1), 0,
         {{"L([2],[1];ind([0];s))", 1, true, "tau([0]+;d([1,2];s))"},
          {"L([2],[0,1];s)", 1, true, "tau([0]-;d([1,2];s))"},
          {"L([0,2];s)", 1, false, "L([2];tau([0]-;d([1];s)))"},
          {"L([1,2];ind([0];s))", 1, false, "L([2];tau([0]+;d([1];s)))"}},
         true},
        {"A-1,A,A", std::nullopt, Rational(3, 2),
         {{"L([A];d_sp([A-1],[A];s))", 1, false, "L([A],[A-1,A];s)"},
          {"L([A-1,A];d([A];s))", 1, false, "L([A],[A],[A-1];s)"},
          {"L([A],[A-1];d([A];s))", 1, true, "="}},
         false},
        {"0,1,1", Rational(1), 0,
         {{"L([1],[0,1];s)", 1, true, "L([0,1];d([1];s))"},
          {"L([1],[1];ind([0];s))", 1, true, "d([-1,1]+;s)"},
          {"L([1];tau([0]-;d([1];s)))", 1, true, "d([-1,1]-;s)"},
          {"L([1];tau([0]+;d([1];s)))", 1, true, "="}},
         false},
        {"A-1,A-1,A", std::nullopt, Rational(2),
         {{"L([A-1];d_sp([A-1],[A];s))", 1, false, "L([A-1],[A-1,A];s)"},
          {"L([A],[A-1],[A-1];s)", 1, false, "L([A-1],[A-1];d([A];s))"}},
         false},
        {"1/2,1/2,3/2", Rational(3, 2), 0,
         {{"L([3/2],[1/2],[1/2];s)", 1, true, "tau([-1/2,1/2]+;d([3/2];s))"},
          {"L([1/2,3/2],[1/2];s)", 1, true, "tau([-1/2,1/2]-;d([3/2];s))"},
          {"L([1/2];d_sp([1/2],[3/2];s))", 1, true, "L([-1/2,3/2];s)"},
          {"L([3/2];ind([-1/2,1/2];s))", 1, true, "L([1/2],[1/2];d([3/2];s))"}},
         false},
        {"0,0,1", Rational(1), 0,
         {{"ind([0];tau([0]+;d([1];s)))", 1, true, "L([1];ind([0],[0];s))"},
          {"L([0,1];ind([0];s))", 1, true, "ind([0];tau([0]-;d([1];s)))"}},
         false},
        {"A-2,A-1,A", std::nullopt, Rational(5, 2),
         {{"d_sp([A-2],[A-1],[A];s)", 1, true, "L([A-2,A];s)"},
          {"L([A],[A-1],[A-2];s)", 1, true, "L([A-2,A-1];d([A];s))"},
          {"L([A-1,A],[A-2];s)", 1, true, "L([A-2];d_sp([A-1],[A];s))"},
          {"L([A],[A-2,A-1];s)", 1, true, "L([A-1],[A-2];d([A];s))"}},
         false},
        {"0,1,2", Rational(2), 0,
         {{"L([2],[1];ind([0];s))", 1, true, "L([0,1];d([2];s))"},
          {"L([2],[0,1];s)", 1, true, "L([1];ind([0];d([2];s)))"},
          {"L([1,2];ind([0];s))", 1, true, "tau([0]+;d_sp([1],[2];s))"},
          {"L([0,2];s)", 1, true, "tau([0]-;d_sp([1],[2];s))"}},
         false},
    };
    return cases;
}

/// Known decompositions of induced slots, and irreducible inductions.
struct RawDecomposition {
    const char* part;
    const char* sum;  ///< "label + label + 2*label"
    std::optional<Rational> exact;
    Rational min_alpha;
};

inline const std::vector<RawDecomposition>& raw_decompositions() {
    static const std::vector<RawDecomposition> rows = {
        {"L{[-1/2],[1/2]}><s", "L([1/2],[1/2];s) + L([1/2];d([1/2];s))", Rational(1, 2), 0},
        {"d[1/2]><d([1/2];s)", "L([1/2];d([1/2];s)) + d([-1/2,1/2]+;s)", Rational(1, 2), 0},
        {"d[1/2]><L([1/2];s)", "L([1/2],[1/2];s) + d([-1/2,1/2]-;s)", Rational(1, 2), 0},
        {"d[1/2,3/2]><L([1/2];s)", "L([1/2,3/2],[1/2];s) + d([-1/2,3/2]-;s)", Rational(1, 2), 0},
        {"d[2]><d([0,1]+;s)", "L([2];d([0,1]+;s)) + d([0,2]+;s)", Rational(0), 0},
        {"d[2]><d([0,1]-;s)", "L([2];d([0,1]-;s)) + d([0,2]-;s)", Rational(0), 0},
        {"d[2]><L([1];d([0]+;s))", "L([2],[1];d([0]+;s)) + L([1,2];d([0]+;s))", Rational(0), 0},
        {"d[2]><L([1];d([0]-;s))", "L([2],[1];d([0]-;s)) + L([1,2];d([0]-;s))", Rational(0), 0},
        {"d[2]><L([0,1];s)", "L([2],[0,1];s) + L([0,2];s)", Rational(0), 0},
        {"d[1,2]><d([0]+;s)", "L([1,2];d([0]+;s)) + L([0,2];s) + d([0,2]+;s)", Rational(0), 0},
        {"d[1,2]><d([0]-;s)", "L([1,2];d([0]-;s)) + L([0,2];s) + d([0,2]-;s)", Rational(0), 0},
        {"L{[-1],[0],[1]}><s", "L([1],[1];ind([0];s)) + L([1];tau([0]-;d([1];s)))", Rational(1), 0},
        {"d[A+1]><L([A+1],[A];s)", "L([A+1],[A+1],[A];s)", std::nullopt, Rational(1, 2)},
    };
    return rows;
}

inline bool regime_matches(const std::optional<Rational>& exact, const Rational& min_alpha, const LineConfig& cfg) {
    if (exact) return cfg.alpha == *exact;
    return cfg.alpha >= min_alpha;
}

inline std::vector<Rational> parse_pattern(const std::string& pat, const Rational& a) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= pat.size()) {
        std::size_t end = pat.find(',', start);
        if (end == std::string::npos) end = pat.size();
        std::string tok = pat.substr(start, end - start);
        Rational v;
        if (tok[0] == 'A') {
            v = a;
            if (tok.size() > 1) v += parse_rational(tok.substr(1));
        } else {
            v = parse_rational(tok);
        }
        out.push_back(v);
        start = end + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string regime_text(const RawCase& rc) {
    if (rc.exact) return "alpha=" + to_string(*rc.exact);
    return "alpha>=" + to_string(rc.min_alpha);
}

}  // namespace detail

inline ClassicalSum parse_sum(const std::string& text, const LineConfig& cfg, std::optional<Rational> templ = std::nullopt) {
    ClassicalSum out;
    for (const auto& [k, c] : parse_rs("1 (x) " + [&] {
             // prefix each summand with the unit GL part
             std::string s, acc;
             std::size_t i = 0;
             while (i < text.size()) {
                 if (text.compare(i, 3, " + ") == 0) {
                     s += acc + " + 1 (x) ";
                     acc.clear();
                     i += 3;
                 } else {
                     acc += text[i++];
                 }
             }
             return s + acc;
         }(), cfg, templ).terms) {
        if (!k.second.gl.is_unit()) fail(ErrorKind::ParseError, "sum of labels expected");
        out[k.second.base] += c;
    }
    return out;
}

/// All case tables instantiated at cfg.alpha.
inline const std::vector<CaseInstance>& catalogue(const LineConfig& cfg) {
    static std::mutex mu;
    static std::map<Rational, std::shared_ptr<std::vector<CaseInstance>>> cache;
    std::lock_guard<std::mutex> g(mu);
    if (auto it = cache.find(cfg.alpha); it != cache.end()) return *it->second;
    auto out = std::make_shared<std::vector<CaseInstance>>();
    for (const auto& rc : detail::raw_cases()) {
        if (!detail::regime_matches(rc.exact, rc.min_alpha, cfg)) continue;
        CaseInstance ci;
        ci.tag = "(" + std::string(rc.pattern) + ") " + detail::regime_text(rc);
        ci.exps = detail::parse_pattern(rc.pattern, cfg.alpha);
        ci.length_stated = rc.length_stated;
        for (const auto& row : rc.rows) {
            CaseEntry e;
            e.label = parse_label(row.label, cfg, cfg.alpha);
            e.multiplicity = row.mult;
            e.unitarizable = row.unitary;
            e.dual = std::string(row.dual) == "=" ? e.label : parse_label(row.dual, cfg, cfg.alpha);
            ci.entries.push_back(e);
            if (e.dual != e.label) {
                CaseEntry f{e.dual, row.mult, row.unitary, e.label};
                ci.entries.push_back(f);
            }
        }
        out->push_back(std::move(ci));
    }
    cache.emplace(cfg.alpha, out);
    return *out;
}

/// Exponents are taken in absolute value and sorted before matching.
inline std::optional<CaseInstance> find_case(const LineConfig& cfg, std::vector<Rational> exps) {
    for (auto& x : exps) x = rabs(x);
    std::sort(exps.begin(), exps.end());
    const auto& cat = catalogue(cfg);
    // exact-alpha tables take precedence over the generic ones
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& ci : cat) {
            bool exact = ci.tag.find("alpha=") != std::string::npos;
            if ((pass == 0) != exact) continue;
            if (ci.exps == exps) return ci;
        }
    return std::nullopt;
}

/// Entry for the label in any table at this alpha.
inline std::optional<CaseEntry> catalogue_entry(const ClassicalLabel& l, const LineConfig& cfg) {
    for (const auto& ci : catalogue(cfg))
        for (const auto& e : ci.entries)
            if (e.label == l) return e;
    return std::nullopt;
}

/// Aubert dual: tables plus the generic cuspidal, rank-one and unitary-[0] rules.
inline ClassicalLabel ass_dual(const ClassicalLabel& l, const LineConfig& cfg) {
    if (l.is_cusp()) return l;
    if (auto e = catalogue_entry(l, cfg)) return e->dual;
    // L([x];s) with [x] x| s irreducible is fixed
    if (l.d.size() == 1 && l.d.entries[0].size() == 1 && l.t.kind == Tempered::Kind::Cusp &&
        !seg_reducible(l.d.entries[0].b, l.d.entries[0].e, cfg))
        return l;
    if (l.d.empty() && l.t.kind == Tempered::Kind::Ind) {
        bool zeros = std::all_of(l.t.segs.begin(), l.t.segs.end(), [](const Segment& s) { return s.b == 0 && s.e == 0; });
        if (zeros) {
            ClassicalLabel b = ass_dual(tempered_label(l.t.under()), cfg);
            if (b.is_tempered()) {
                Tempered t = l.t;
                t.base = {b.t};
                if (auto c = canonical_tempered(t, cfg)) return tempered_label(*c);
            }
        }
    }
    fail(ErrorKind::NotInDualityTable, render(l) + " at alpha=" + to_string(cfg.alpha));
}

/// Decomposition facts instantiated at cfg.alpha, keyed by the induced slot.
inline const std::map<ClassicalPart, ClassicalSum>& decomposition_table(const LineConfig& cfg) {
    static std::mutex mu;
    static std::map<Rational, std::shared_ptr<std::map<ClassicalPart, ClassicalSum>>> cache;
    std::lock_guard<std::mutex> g(mu);
    if (auto it = cache.find(cfg.alpha); it != cache.end()) return *it->second;
    auto out = std::make_shared<std::map<ClassicalPart, ClassicalSum>>();
    for (const auto& row : detail::raw_decompositions()) {
        if (!detail::regime_matches(row.exact, row.min_alpha, cfg)) continue;
        ClassicalPart p = parse_part(row.part, cfg, cfg.alpha);
        (*out)[p] = parse_sum(row.sum, cfg, cfg.alpha);
    }
    cache.emplace(cfg.alpha, out);
    return *out;
}

}  // namespace unirank3
