#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "catalogue.hpp"

namespace unirank3 {

enum class Verdict { AllUnitarizable, SomeUnitarizable, NoneUnitarizable };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::AllUnitarizable: return "AllUnitarizable";
        case Verdict::SomeUnitarizable: return "SomeUnitarizable";
        case Verdict::NoneUnitarizable: return "NoneUnitarizable";
    }
    return "?";
}

/// Exponents on one cuspidal line.
struct LineQuery {
    LineConfig cfg;
    std::vector<Rational> exps;
};

/// Exponent query across one or more lines; normalized to sorted |x|.
struct ExponentQuery {
    std::vector<LineQuery> lines;
};

inline std::vector<Rational> normalized_exponents(std::vector<Rational> v) {
    for (auto& x : v) x = check_range(rabs(x));
    std::sort(v.begin(), v.end());
    return v;
}

struct ReportEntry {
    ClassicalLabel label;
    int multiplicity = 1;
    bool unitarizable = false;
    std::optional<std::size_t> dual_of;  ///< empty: self-dual
    std::string provenance;
};

struct ClassificationReport {
    std::vector<ReportEntry> subquotients;
    Verdict verdict = Verdict::NoneUnitarizable;
    int total_length = 0;
    bool length_complete = false;  ///< total_length is a proved count
    std::string provenance;
    std::vector<ClassificationReport> components;  ///< per line, for Jantzen queries
};

/// Rank cap; the environment variable UNIRANK3_MAX_RANK may lower it.
inline int max_rank() {
    int cap = 3;
    if (const char* env = std::getenv("UNIRANK3_MAX_RANK")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 0 && v < cap) cap = static_cast<int>(v);
    }
    return cap;
}

inline void check_rank(std::size_t k) {
    if (static_cast<long long>(k) > max_rank())
        fail(ErrorKind::RankExceeded, "rank " + std::to_string(k) + " exceeds the cap " + std::to_string(max_rank()));
}

// ---------------------------------------------------------------------------
// Region propositions

namespace detail {

inline bool same_multiset(std::vector<Rational> x, std::vector<Rational> y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

inline Verdict region_rank1(const Rational& x, const Rational& a) {
    return x <= a ? Verdict::AllUnitarizable : Verdict::NoneUnitarizable;
}

inline Verdict region_rank2(const Rational& x1, const Rational& x2, const Rational& a) {
    const Rational half(1, 2);
    if (a >= 1) {
        if (x1 + x2 <= 1 || (x1 + 1 <= x2 && x2 <= a)) return Verdict::AllUnitarizable;
        if (x1 == a && x2 == a + 1) return Verdict::SomeUnitarizable;
        return Verdict::NoneUnitarizable;
    }
    if (a == half) {
        if (x2 <= half) return Verdict::AllUnitarizable;
        if (x1 == half && x2 == 3 * half) return Verdict::SomeUnitarizable;
        return Verdict::NoneUnitarizable;
    }
    return x1 + x2 <= 1 ? Verdict::AllUnitarizable : Verdict::NoneUnitarizable;
}

inline Verdict region_rank3(const Rational& x1, const Rational& x2, const Rational& x3, const Rational& a) {
    const Rational half(1, 2);
    std::vector<Rational> x{x1, x2, x3};
    auto is = [&](std::vector<Rational> y) { return same_multiset(x, std::move(y)); };
    if (a >= 3 * half) {
        if (x2 + x3 <= 1) return Verdict::AllUnitarizable;
        if (x1 + x2 <= 1 && x2 + 1 <= x3 && x3 <= a) return Verdict::AllUnitarizable;
        if (x1 + x2 <= 1 && 1 - x1 <= x3 && x3 <= 1 + x1) return Verdict::AllUnitarizable;
        if (x1 + 1 <= x2 && x2 + 1 <= x3 && x3 <= a) return Verdict::AllUnitarizable;
        if (is({a, a + 1, a + 2})) return Verdict::SomeUnitarizable;
        for (const auto& y : x)
            if (y <= a - 1 && is({y, a, a + 1})) return Verdict::SomeUnitarizable;
        if (is({a - 1, a, a})) return Verdict::SomeUnitarizable;
        return Verdict::NoneUnitarizable;
    }
    if (a == 1) {
        if (x2 + x3 <= 1) return Verdict::AllUnitarizable;
        if (x1 + x2 <= 1 && 1 - x1 <= x3 && x3 <= 1) return Verdict::AllUnitarizable;
        if (is({1, 2, 3}) || is({0, 1, 2})) return Verdict::SomeUnitarizable;
        return Verdict::NoneUnitarizable;
    }
    if (a == half) {
        if (x3 <= half) return Verdict::AllUnitarizable;
        bool hit = is({half, 3 * half, 5 * half});
        for (const auto& y : x) {
            // [y] x| delta_sp([1/2,3/2]) and its dual
            if (y <= half && is({y, half, 3 * half})) hit = true;
            // delta([y-1/2, y+1/2]) x| delta([1/2]) and its dual, y in [0,1]
            if (y >= half && y <= 3 * half && is({rabs(y - 1), y, half})) hit = true;
            // [y] x| delta([-1/2,1/2]_-) and its dual
            if (y <= 3 * half && is({half, half, y})) hit = true;
            // delta([-1+y, 1+y]) x| sigma and its dual, y in [0,1/2]
            if (y <= half && is({rabs(y - 1), y, y + 1})) hit = true;
        }
        return hit ? Verdict::SomeUnitarizable : Verdict::NoneUnitarizable;
    }
    // a == 0
    if (x1 == 0 && x2 + x3 <= 1) return Verdict::AllUnitarizable;
    if (is({0, 1, 2})) return Verdict::SomeUnitarizable;
    for (const auto& y : x)
        if (y <= 1 && is({y, 0, 1})) return Verdict::SomeUnitarizable;
    return Verdict::NoneUnitarizable;
}

}  // namespace detail

/// Verdict of the region propositions on one line (sorted |x|, k <= 3).
inline Verdict region_verdict(const std::vector<Rational>& exponents, const LineConfig& cfg) {
    check_rank(exponents.size());
    auto x = normalized_exponents(exponents);
    const Rational& a = cfg.alpha;
    switch (x.size()) {
        case 0: return Verdict::AllUnitarizable;
        case 1: return detail::region_rank1(x[0], a);
        case 2: return detail::region_rank2(x[0], x[1], a);
        default: return detail::region_rank3(x[0], x[1], x[2], a);
    }
}

// ---------------------------------------------------------------------------
// Enumeration

inline Verdict aggregate(const std::vector<ReportEntry>& v) {
    std::size_t u = 0;
    for (const auto& e : v) u += e.unitarizable ? 1 : 0;
    if (u == 0) return Verdict::NoneUnitarizable;
    return u == v.size() ? Verdict::AllUnitarizable : Verdict::SomeUnitarizable;
}

inline ClassificationReport report_of(const CaseInstance& ci) {
    ClassificationReport r;
    for (const auto& e : ci.entries) r.subquotients.push_back(ReportEntry{e.label, e.multiplicity, e.unitarizable, std::nullopt, ci.tag});
    for (std::size_t i = 0; i < ci.entries.size(); ++i) {
        if (ci.entries[i].dual == ci.entries[i].label) continue;
        for (std::size_t j = 0; j < ci.entries.size(); ++j)
            if (ci.entries[j].label == ci.entries[i].dual) r.subquotients[i].dual_of = j;
    }
    r.verdict = aggregate(r.subquotients);
    r.total_length = ci.length();
    r.length_complete = ci.length_stated;
    r.provenance = ci.tag;
    return r;
}

/// Full composition series of x_1 x ... x_k x| sigma for a catalogued case.
inline ClassificationReport enumerate_case(const Rational& alpha, const std::vector<Rational>& exponents) {
    check_rank(exponents.size());
    LineConfig cfg = LineConfig::at(alpha);
    auto ci = find_case(cfg, normalized_exponents(exponents));
    if (!ci) fail(ErrorKind::NotACataloguedCase, "no table for alpha=" + to_string(alpha));
    return report_of(*ci);
}

/// Region verdict on one line; the case table, when one matches, supplies the classes.
inline ClassificationReport classify_region(const LineQuery& q) {
    check_rank(q.exps.size());
    auto x = normalized_exponents(q.exps);
    ClassificationReport r;
    if (auto ci = find_case(q.cfg, x)) {
        r = report_of(*ci);
    } else {
        r.verdict = region_verdict(x, q.cfg);
        r.provenance = "region rank " + std::to_string(x.size()) + " alpha=" + to_string(q.cfg.alpha);
    }
    if (x.empty()) {
        r.subquotients.push_back(ReportEntry{ClassicalLabel::cusp(), 1, true, std::nullopt, "cuspidal"});
        r.total_length = 1;
        r.length_complete = true;
    }
    return r;
}

/// Every line selfcontragredient; exponents are real by construction.
inline bool weakly_real_check(const ExponentQuery& q) {
    return std::all_of(q.lines.begin(), q.lines.end(), [](const LineQuery& l) { return l.cfg.selfcontragredient; });
}

/// Component-wise classification across lines; unitarizable iff every component is.
inline ClassificationReport jantzen_classify(const ExponentQuery& q) {
    std::size_t total = 0;
    for (const auto& l : q.lines) total += l.exps.size();
    check_rank(total);
    if (!weakly_real_check(q)) fail(ErrorKind::NoFormulaAvailable, "a line is not selfcontragredient; reduce to weakly real data first");
    ClassificationReport r;
    bool all = true, none = false;
    for (const auto& l : q.lines) {
        auto c = classify_region(l);
        all = all && c.verdict == Verdict::AllUnitarizable;
        none = none || c.verdict == Verdict::NoneUnitarizable;
        r.components.push_back(std::move(c));
    }
    r.total_length = 1;
    r.length_complete = true;
    for (const auto& c : r.components) {
        r.total_length *= c.total_length;
        r.length_complete = r.length_complete && c.length_complete;
    }
    r.verdict = none ? Verdict::NoneUnitarizable : all ? Verdict::AllUnitarizable : Verdict::SomeUnitarizable;
    r.provenance = "jantzen " + std::to_string(q.lines.size()) + " line(s)";
    return r;
}

}  // namespace unirank3
