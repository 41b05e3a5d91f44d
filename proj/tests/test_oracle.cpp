#include "common.hpp"

#include <numeric>

using namespace u3t;

namespace {

long long factorial(long long n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/// All orderings of the multiset of support points.
std::vector<std::vector<Rational>> orderings(std::vector<Rational> pts) {
    std::sort(pts.begin(), pts.end());
    std::vector<std::vector<Rational>> out;
    do out.push_back(pts);
    while (std::next_permutation(pts.begin(), pts.end()));
    return out;
}

}  // namespace

TEST(Chain, TwoPointExamples) {
    GLElement d = GLElement::delta(S("0", "1"));
    EXPECT_EQ(chain_multiplicity(d, exps({"1", "0"})), 1);
    EXPECT_EQ(chain_multiplicity(d, exps({"0", "1"})), 0);
    GLElement z = GLElement::from_label(GLIrrLabel::zelevinsky(Multisegment{S("0", "1")}));
    EXPECT_EQ(chain_multiplicity(z, exps({"1", "0"})), 0);
    EXPECT_EQ(chain_multiplicity(z, exps({"0", "1"})), 1);
    GLElement prod = GLElement::from_key(key_of_segments({S("0"), S("1")}));
    EXPECT_EQ(chain_multiplicity(prod, exps({"1", "0"})), 1);
    EXPECT_EQ(chain_multiplicity(prod, exps({"0", "1"})), 1);
}

TEST(Chain, WrongSupportIsZero) {
    GLElement d = GLElement::delta(S("0", "1"));
    EXPECT_EQ(chain_multiplicity(d, exps({"2", "0"})), 0);
    EXPECT_EQ(chain_multiplicity(d, exps({"1"})), 0);
}

TEST(Chain, ClassicalTail) {
    auto cfg = at("1");
    // d([1];s): s_GL is [1] (x) s only
    RSElement m = mu_star(lab("d([1]+;s)", cfg), cfg);
    EXPECT_EQ(chain_multiplicity(m, CuspidalChain{exps({"1"})}), 1);
    EXPECT_EQ(chain_multiplicity(m, CuspidalChain{exps({"-1"})}), 0);
    RSElement l = mu_star(lab("L([1];s)", cfg), cfg);
    EXPECT_EQ(chain_multiplicity(l, CuspidalChain{exps({"-1"})}), 1);
}

// Conservation: summed over orderings, a standard product of segments has
// n! / prod |D|! full-flag words.
TEST(ChainProperty, Conservation) {
    for (const auto& k : detail::small_keys(4)) {
        GLElement x = GLElement::from_key(k);
        std::vector<Rational> pts = support(k);
        long long total = 0;
        for (const auto& w : orderings(pts)) total += chain_multiplicity(x, w);
        long long expect = factorial(static_cast<long long>(pts.size()));
        for (const auto& lbl : k.labels)
            for (const auto& s : lbl.a.entries) expect /= factorial(s.size());
        EXPECT_EQ(total, expect) << render_key(k);
    }
}

// The full-flag count of an irreducible is bounded by that of any standard module containing it.
TEST(ChainProperty, IrreducibleBelowStandard) {
    auto segs = detail::window_segments(0, 3, 3);
    for (const auto& a : segs)
        for (const auto& b : segs) {
            Multisegment m{a, b};
            if (m.degree() > 4) continue;
            GLElement irr = GLElement::from_label(GLIrrLabel{m});
            GLElement std_ = GLElement::from_key(key_of_segments(m.entries));
            for (const auto& w : orderings(support(key_of_segments(m.entries)))) {
                long long ci = chain_multiplicity(irr, w), cs = chain_multiplicity(std_, w);
                EXPECT_GE(ci, 0);
                EXPECT_LE(ci, cs) << render_multisegment(m);
            }
        }
}

TEST(Suites, AllPassAtBoundFour) {
    auto names = suite_names();
    EXPECT_GE(names.size(), 6u);
    for (const auto& n : names) {
        auto r = verify_suite(n, 4);
        EXPECT_TRUE(r.passed) << n << ": " << r.counterexample;
        EXPECT_GT(r.checked, 0) << n;
    }
}

TEST(Suites, UnknownName) {
    try {
        verify_suite("no-such-suite", 2);
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownSuite);
    }
}

TEST(Suites, CounterexampleIsReported) {
    SuiteReport r{"x", true, 0, ""};
    detail::expect(r, true, "first");
    detail::expect(r, false, "second");
    detail::expect(r, false, "third");
    EXPECT_FALSE(r.passed);
    EXPECT_EQ(r.checked, 3);
    EXPECT_EQ(r.counterexample, "second");
}
