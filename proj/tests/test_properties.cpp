#include "common.hpp"
#include "oracles.hpp"

using namespace u3t;
using u3o::Block;

namespace {

const std::vector<std::string> kRegimes = {"0", "1/2", "1", "3/2", "2", "5/2", "3"};

std::string show(const std::vector<Rational>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
    return s + ")";
}

std::string show(const std::vector<Segment>& v) { return render_multisegment(Multisegment(v)); }

Verdict meet(const std::vector<Verdict>& vs) {
    bool all = true, none = false;
    for (auto v : vs) {
        all = all && v == Verdict::AllUnitarizable;
        none = none || v == Verdict::NoneUnitarizable;
    }
    return none ? Verdict::NoneUnitarizable : all ? Verdict::AllUnitarizable : Verdict::SomeUnitarizable;
}

}  // namespace

// ---------------------------------------------------------------------------
// Region grid

TEST(RegionGrid, MatchesOracle) {
    for (const auto& a : kRegimes) {
        auto cfg = at(a);
        auto grid = u3o::region_grid(cfg.alpha);
        EXPECT_GE(grid.size(), 200u) << a;
        std::map<Verdict, int> seen;
        for (const auto& p : grid) {
            Verdict want = u3o::region_oracle(p, cfg.alpha);
            Verdict got = classify_region(LineQuery{cfg, p}).verdict;
            ++seen[got];
            ASSERT_EQ(got, want) << "alpha=" << a << " " << show(p);
        }
        EXPECT_GT(seen[Verdict::AllUnitarizable], 0) << a;
        EXPECT_GT(seen[Verdict::SomeUnitarizable], 0) << a;
        EXPECT_GT(seen[Verdict::NoneUnitarizable], 0) << a;
    }
}

TEST(RegionGrid, NeverContradictsBounds) {
    for (const auto& a : kRegimes) {
        auto cfg = at(a);
        for (const auto& p : u3o::region_grid(cfg.alpha))
            if (classify_region(LineQuery{cfg, p}).verdict != Verdict::NoneUnitarizable) {
                EXPECT_TRUE(bounds_check(p, cfg)) << "alpha=" << a << " " << show(p);
            }
    }
}

TEST(RegionGrid, SignAndOrderInvariance) {
    for (const auto& a : kRegimes) {
        auto cfg = at(a);
        auto grid = u3o::region_grid(cfg.alpha);
        for (std::size_t i = 0; i < grid.size(); i += 7) {
            auto p = grid[i];
            Verdict v = region_verdict(p, cfg);
            std::reverse(p.begin(), p.end());
            p[0] = -p[0];
            EXPECT_EQ(region_verdict(p, cfg), v);
        }
    }
}

// ---------------------------------------------------------------------------
// GL unitarity

TEST(GlUnitary, AcceptsSmallTwists) {
    std::vector<Rational> betas;
    for (int k = 1; k <= 4; ++k) betas.emplace_back(k, 10);
    auto asm_ = u3o::assemblies(betas);
    EXPECT_GT(asm_.size(), 500u);
    for (const auto& bs : asm_) {
        auto v = u3o::assemble(bs);
        EXPECT_TRUE(u3o::gl_unitary_oracle(v)) << show(v);
        EXPECT_TRUE(gl_is_unitarizable(Multisegment(v))) << show(v);
    }
}

TEST(GlUnitary, RejectsLargeTwists) {
    for (int k : {5, 6, 7}) {
        auto asm_ = u3o::assemblies({Rational(k, 10)});
        int rejected = 0, checked = 0;
        for (const auto& bs : asm_) {
            if (!u3o::has_pair(bs)) continue;
            auto v = u3o::assemble(bs);
            bool want = u3o::gl_unitary_oracle(v);
            EXPECT_EQ(gl_is_unitarizable(Multisegment(v)), want) << "beta=" << k << "/10 " << show(v);
            ++checked;
            rejected += want ? 0 : 1;
        }
        EXPECT_GT(checked, 100);
        // at 1/2 every pair has the data of u(d,m+1) x u(d,m-1); past 1/2 nothing survives
        if (k > 5) {
            EXPECT_EQ(rejected, checked) << k;
        } else {
            EXPECT_EQ(rejected, 0);
        }
    }
}

TEST(GlUnitary, EndpointCollapse) {
    // nu^{1/2} x nu^{-1/2} is the Langlands data of the trivial character of GL(2)
    EXPECT_TRUE(gl_is_unitarizable(Multisegment{S("-1/2"), S("1/2")}));
    EXPECT_FALSE(gl_is_unitarizable(Multisegment{S("-1"), S("1")}));
    EXPECT_FALSE(gl_is_unitarizable(Multisegment{S("1/4")}));
}

TEST(GlUnitary, Invariances) {
    std::vector<Rational> betas{Rational(1, 10), Rational(3, 10), Rational(6, 10)};
    for (const auto& bs : u3o::assemblies(betas)) {
        Multisegment m(u3o::assemble(bs));
        if (m.size() > 6) continue;
        bool u = gl_is_unitarizable(m);
        EXPECT_EQ(gl_is_unitarizable(contragredient(m)), u) << render_multisegment(m);
        Multisegment t = mw_involution(m);
        if (t.size() <= 8) {
            EXPECT_EQ(gl_is_unitarizable(t), u) << render_multisegment(m);
        }
    }
}

// ---------------------------------------------------------------------------
// MW involution

namespace {

std::map<Rational, int> support_count(const Multisegment& m) {
    std::map<Rational, int> c;
    for (const auto& s : m.entries)
        for (Rational x = s.b; x <= s.e; x += 1) ++c[x];
    return c;
}

}  // namespace

TEST(MwProperty, SupportAndContragredient) {
    auto segs = detail::window_segments(0, 5, 5);
    for (const auto& a : segs)
        for (const auto& b : segs)
            for (const auto& c : segs) {
                if (!(a < b || a == b) || !(b < c || b == c)) continue;
                Multisegment m{a, b, c};
                Multisegment t = mw_involution(m);
                EXPECT_EQ(support_count(t), support_count(m)) << render_multisegment(m);
                EXPECT_EQ(mw_involution(contragredient(m)), contragredient(t)) << render_multisegment(m);
            }
}

TEST(MwProperty, SegmentToSingletons) {
    for (const auto& s : detail::window_segments(-2, 5, 5)) {
        std::vector<Segment> pts;
        for (Rational x = s.b; x <= s.e; x += 1) pts.push_back(singleton(x));
        EXPECT_EQ(mw_involution(Multisegment{s}), Multisegment(pts)) << render_segment(s);
        EXPECT_EQ(mw_involution(Multisegment(pts)), Multisegment{s});
    }
}

// ---------------------------------------------------------------------------
// Jantzen layer

namespace {

struct Component {
    std::string alpha;
    std::vector<Rational> exps;
};

std::vector<Component> components(int rank) {
    std::vector<Component> out;
    for (const char* a : {"0", "1/2", "1", "2"}) {
        Rational top = Q(a) + 2;
        for (Rational x = 0; x <= top; x += Rational(1, 2)) {
            if (rank == 1) {
                out.push_back({a, {x}});
                continue;
            }
            for (Rational y = x; y <= top; y += Rational(1, 2)) out.push_back({a, {x, y}});
        }
    }
    return out;
}

LineQuery on_line(const Component& c, int idx) {
    LineConfig cfg = at(c.alpha);
    cfg.line_name = "rho" + std::to_string(idx);
    return LineQuery{cfg, c.exps};
}

}  // namespace

TEST(JantzenProperty, TwoLines) {
    auto r1 = components(1), r2 = components(2);
    long long n = 0;
    auto check = [&](const Component& x, const Component& y) {
        ExponentQuery q{{on_line(x, 1), on_line(y, 2)}};
        Verdict want = meet({u3o::region_oracle(x.exps, Q(x.alpha)), u3o::region_oracle(y.exps, Q(y.alpha))});
        ASSERT_EQ(jantzen_classify(q).verdict, want);
        ASSERT_EQ(jantzen_classify(q).verdict, meet({classify_region(q.lines[0]).verdict, classify_region(q.lines[1]).verdict}));
        ++n;
    };
    for (const auto& x : r1)
        for (const auto& y : r1) check(x, y);
    for (const auto& x : r1)
        for (const auto& y : r2) {
            check(x, y);
            check(y, x);
        }
    EXPECT_GT(n, 1000);
}

TEST(JantzenProperty, ThreeLines) {
    auto r1 = components(1);
    long long n = 0;
    for (const auto& x : r1)
        for (const auto& y : r1)
            for (const auto& z : r1) {
                ExponentQuery q{{on_line(x, 1), on_line(y, 2), on_line(z, 3)}};
                Verdict want = meet({u3o::region_oracle(x.exps, Q(x.alpha)), u3o::region_oracle(y.exps, Q(y.alpha)),
                                     u3o::region_oracle(z.exps, Q(z.alpha))});
                ASSERT_EQ(jantzen_classify(q).verdict, want);
                ++n;
            }
    EXPECT_GT(n, 10000);
}
