#include "common.hpp"

using namespace u3t;

namespace {

/// Multiplicity bounds of u (x) pi in mu*(u x| pi).
Bounds induced_mult(const std::string& a, const std::string& u, const std::string& pi) {
    auto cfg = at(a);
    auto l = lab(pi, cfg);
    auto g = gl_label(u);
    auto e = induced_jacquet(g, l, cfg);
    if (!e) return Bounds::unknown();
    return multiplicity(g, l, *e, cfg);
}

void expect_display(const std::string& a, const std::string& label, const std::string& display) {
    auto cfg = at(a);
    RSElement want = normalize(rs(display, cfg), cfg);
    EXPECT_EQ(mu_star(lab(label, cfg), cfg), want) << "alpha=" << a << " " << label << "\n got  " << render(mu_star(lab(label, cfg), cfg))
                                                   << "\n want " << render(want);
}

}  // namespace

TEST(MuStar, Cuspidal) {
    auto cfg = at("1");
    EXPECT_EQ(mu_star(ClassicalLabel::cusp(), cfg), rs("1 (x) s", cfg));
}

TEST(MuStar, RankOneSquareIntegrable) {
    auto cfg = at("2");
    EXPECT_EQ(mu_star(lab("d([A];s)", cfg), cfg), rs("1 (x) d([A];s) + d[A] (x) s", cfg));
}

// displays printed with the formulas, slots expanded by the catalogue
TEST(MuStar, Displays) {
    expect_display("0", "d([0,1]+;s)", "1 (x) d([0,1]+;s) + d[1] (x) d([0]+;s) + d[0,1] (x) s");
    expect_display("0", "L([1];d([0]+;s))", "1 (x) L([1];d([0]+;s)) + d[-1] (x) d([0]+;s) + L{[-1],[0]} (x) s");
    expect_display("0", "L([0,1];s)", "1 (x) L([0,1];s) + d[0] (x) d[1]><s + d[-1,0] (x) s + L{[0],[1]} (x) s");
    expect_display("0", "L([0,2];s)",
                   "1 (x) L([0,2];s) + d[2] (x) L([0,1];s) + d[0] (x) d[1,2]><s + d[0]xd[2] (x) d[1]><s"
                   " + d[-1,0] (x) d[2]><s + L{[0],[1,2]} (x) s + d[-1,0]xd[2] (x) s + d[-2,0] (x) s");
    expect_display("0", "L([1,2];d([0]+;s))",
                   "1 (x) L([1,2];d([0]+;s)) + d[2] (x) L([1];d([0]+;s)) + d[-1] (x) d[2]><d([0]+;s)"
                   " + d[-2,-1] (x) d([0]+;s) + d[2]xd[-1] (x) d([0]+;s) + L{[-1],[0]} (x) d[2]><s"
                   " + L{[-2,-1],[0]} (x) s + d[2]xL{[-1],[0]} (x) s");
    expect_display("1/2", "L([1/2,3/2],[1/2];s)",
                   "1 (x) L([1/2,3/2],[1/2];s) + d[-1/2] (x) d[3/2]><L([1/2];s) + d[3/2] (x) L([1/2],[1/2];s)"
                   " + d[-1/2] (x) d[1/2,3/2]><s + d[-1/2]xd[3/2] (x) L([1/2];s) + d[-3/2,-1/2] (x) L([1/2];s)"
                   " + d[-1/2]xd[-1/2] (x) d[3/2]><s + d[-1/2]xd[3/2] (x) L([1/2];s) + d[-1/2]xd[3/2] (x) d([1/2];s)"
                   " + L{[-1/2],[1/2,3/2]} (x) s + d[-1/2]xd[-1/2]xd[3/2] (x) s + d[-1/2]xd[-3/2,-1/2] (x) s");
}

TEST(MuStar, SteinbergFamily) {
    auto cfg = at("3/2");
    EXPECT_EQ(mu_star_steinberg(1, cfg), rs("1 (x) d([3/2,5/2];s) + d[5/2] (x) d([3/2];s) + d[3/2,5/2] (x) s", cfg));
}

TEST(MuStar, Induced) {
    auto cfg = at("1");
    RSElement raw = mu_star_induced(gl("d[1]"), unit_term(ClassicalLabel::cusp()));
    EXPECT_EQ(raw, rs("d[1] (x) s + d[-1] (x) s + 1 (x) d[1]><s", cfg));
    RSElement s = mu_star(lab("d([1];s)", cfg), cfg);
    EXPECT_EQ(mu_star_induced(GLElement::unit(), s), s);
    // normalized: the slot splits into its two constituents
    EXPECT_EQ(mu_star_induced(gl("d[1]"), unit_term(ClassicalLabel::cusp()), cfg),
              rs("d[1] (x) s + d[-1] (x) s + 1 (x) d([1];s) + 1 (x) L([1];s)", cfg));
}

TEST(SGl, Strata) {
    auto c2 = at("2");
    EXPECT_EQ(s_gl(mu_star(lab("d([A];s)", c2), c2)), gl("d[2]"));
    EXPECT_EQ(s_gl(mu_star(ClassicalLabel::cusp(), c2)), GLElement::unit());
    auto c0 = at("0");
    EXPECT_EQ(s_gl(mu_star(lab("L([0,2];s)", c0), c0)), gl("L{[0],[1,2]} + d[-1,0]xd[2] + d[-2,0]"));
}

// Frozen from the oracle expansion (transitivity suite and display above).
TEST(SGl, FrozenHalf) {
    auto cfg = at("1/2");
    EXPECT_EQ(s_gl(mu_star(lab("L([1/2,3/2],[1/2];s)", cfg), cfg)),
              gl("L{[-3/2,-1/2],[-1/2]} + L{[-1/2],[-1/2],[3/2]} + L{[-1/2],[1/2,3/2]}"));
}

TEST(Multiplicity, UnitTerm) {
    for (const char* a : {"0", "1/2", "1", "2"}) {
        auto cfg = at(a);
        for (const auto& ci : catalogue(cfg))
            for (const auto& e : ci.entries) {
                auto m = try_mu_star(e.label, cfg);
                if (!m) continue;
                JacquetTerm t{ProductKey{}, e.label, 1};
                EXPECT_EQ(multiplicity(t, *m, cfg), Bounds::exactly(1)) << render(e.label);
            }
    }
}

TEST(Multiplicity, Lemmas) {
    EXPECT_EQ(induced_mult("1", "d[-1,1]", "L([0,2];s)"), Bounds::exactly(4));
    EXPECT_EQ(induced_mult("1/2", "d[-1/2,1/2]", "L([1/2,3/2],[1/2];s)"), Bounds::exactly(6));
    EXPECT_EQ(induced_mult("0", "d[-1,1]", "L([1,2];d([0]+;s))"), Bounds::exactly(4));
    EXPECT_EQ(induced_mult("0", "d[-1,1]", "L([1,2];d([0]-;s))"), Bounds::exactly(4));
    for (const char* a : {"3/2", "2", "5/2", "3"}) {
        Bounds b = induced_mult(a, std::string("d[-") + a + "," + a + "]", "L([A-1,A+1];s)");
        ASSERT_TRUE(b.hi.has_value()) << a;
        EXPECT_LE(*b.hi, 4) << a;
    }
}

TEST(Multiplicity, RejectsProductTarget) {
    auto cfg = at("1");
    auto m = mu_star(lab("L([0,2];s)", cfg), cfg);
    JacquetTerm t{gl("d[0]xd[1]").terms.begin()->first, ClassicalLabel::cusp(), 1};
    EXPECT_THROW(multiplicity(t, m, cfg), Error);
}

TEST(Certificate, Cases) {
    auto cert = [](const char* a, const char* u, const char* pi, long long lb) {
        auto cfg = at(a);
        return nonunit_certificate(gl_label(u), lab(pi, cfg), lb, cfg);
    };
    EXPECT_TRUE(cert("1", "d[-1,1]", "L([0,2];s)", 6));
    EXPECT_TRUE(cert("0", "d[-1,1]", "L([1,2];d([0]+;s))", 5));
    EXPECT_TRUE(cert("2", "d[-1,1]", "L([A,A+1];d([A];s))", 3));
    EXPECT_TRUE(cert("2", "d[-2,2]", "L([A-1,A+1];s)", 6));
    EXPECT_TRUE(cert("1/2", "d[-1/2,1/2]", "L([1/2,3/2],[1/2];s)", 6));
    // the unit never certifies
    auto cfg = at("1");
    EXPECT_FALSE(nonunit_certificate(GLIrrLabel{}, lab("L([0,2];s)", cfg), 1, cfg));
}

// Negative control: length >= 1 always holds, so a unitarizable class must never
// be certified, the refined one-sided test included.
TEST(Certificate, NegativeControl) {
    int tried = 0;
    for (const char* a : {"0", "1/2", "1", "2"}) {
        auto cfg = at(a);
        for (const auto& ci : catalogue(cfg))
            for (const auto& e : ci.entries) {
                if (!e.unitarizable) continue;
                for (const char* u : {"d[-1,1]", "d[-1/2,1/2]", "d[0]"}) {
                    auto g = gl_label(u);
                    auto ind = induced_jacquet(g, e.label, cfg);
                    if (!ind) continue;
                    Bounds b = multiplicity(g, e.label, *ind, cfg);
                    if (b.exact()) ++tried;
                    EXPECT_FALSE(nonunit_certificate(g, e.label, 1, cfg)) << a << " " << u << " " << render(e.label);
                }
            }
    }
    EXPECT_GT(tried, 10);
}

// Every term of mu*(pi) keeps the absolute cuspidal support of pi.
TEST(MuStarProperty, SupportConservation) {
    for (const char* a : {"0", "1/2", "1", "3/2", "2"}) {
        auto cfg = at(a);
        for (const auto& ci : catalogue(cfg))
            for (const auto& e : ci.entries) {
                auto m = try_mu_star(e.label, cfg);
                if (!m) continue;
                auto want = abs_support(e.label);
                for (const auto& [k, c] : m->terms) {
                    auto got = abs_support(k.first);
                    auto rest = abs_support(k.second);
                    got.insert(got.end(), rest.begin(), rest.end());
                    std::sort(got.begin(), got.end());
                    EXPECT_EQ(got, want) << render(e.label);
                    EXPECT_GT(c, 0) << render(e.label);
                }
            }
    }
}
