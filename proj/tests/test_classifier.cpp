#include "common.hpp"

#include <cstdlib>

using namespace u3t;

namespace {

int unitarizable_count(const ClassificationReport& r) {
    int n = 0;
    for (const auto& e : r.subquotients) n += e.unitarizable ? 1 : 0;
    return n;
}

LineQuery line(const char* a, std::initializer_list<const char*> xs) { return LineQuery{at(a), exps(xs)}; }

const std::vector<std::string> kAlphas = {"0", "1/2", "1", "3/2", "2", "5/2", "3"};

}  // namespace

TEST(Enumerate, CaseTables) {
    auto e1 = enumerate_case(2, exps({"2", "3", "4"}));
    EXPECT_EQ(e1.subquotients.size(), 8u);
    EXPECT_EQ(e1.total_length, 8);
    EXPECT_EQ(unitarizable_count(e1), 2);
    for (const auto& e : e1.subquotients) EXPECT_EQ(e.multiplicity, 1);
    auto cfg = at("2");
    for (const auto& e : e1.subquotients)
        if (e.unitarizable) {
            EXPECT_TRUE(e.label == lab("d([A,A+2];s)", cfg) || e.label == lab("L([A+2],[A+1],[A];s)", cfg));
        }

    auto f = enumerate_case(1, exps({"0", "1", "2"}));
    EXPECT_EQ(f.subquotients.size(), 8u);
    EXPECT_EQ(f.total_length, 8);
    EXPECT_EQ(unitarizable_count(f), 4);

    auto z = enumerate_case(0, exps({"0", "1", "2"}));
    EXPECT_EQ(z.total_length, 12);
    EXPECT_EQ(z.subquotients.size(), 10u);
    EXPECT_EQ(unitarizable_count(z), 4);

    auto h = enumerate_case(Q("1/2"), exps({"1/2", "1/2", "3/2"}));
    EXPECT_EQ(static_cast<int>(h.subquotients.size()) - unitarizable_count(h), 2);
}

TEST(Enumerate, NotCatalogued) {
    try {
        enumerate_case(1, exps({"1/3"}));
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotACataloguedCase);
    }
}

TEST(Enumerate, RankTwoCounts) {
    for (const char* a : {"1", "3/2", "2", "5/2", "3"}) {
        auto r = enumerate_case(Q(a), {Q(a), Q(a) + 1});
        EXPECT_EQ(r.subquotients.size(), 4u) << a;
        EXPECT_EQ(unitarizable_count(r), 2) << a;
    }
    for (const char* a : {"3/2", "2", "5/2", "3"}) {
        auto r = enumerate_case(Q(a), {Q(a) - 1, Q(a)});
        EXPECT_EQ(r.subquotients.size(), 4u) << a;
        EXPECT_EQ(unitarizable_count(r), 4) << a;
    }
}

TEST(Enumerate, DistinguishedClassUnitarizable) {
    for (const char* a : {"3/2", "2", "5/2", "3"}) {
        auto cfg = at(a);
        auto e = catalogue_entry(lab("L([A],[A-1];d([A];s))", cfg), cfg);
        ASSERT_TRUE(e.has_value()) << a;
        EXPECT_TRUE(e->unitarizable) << a;
    }
}

TEST(Enumerate, RegimeCoherence) {
    auto shape = [](const char* a) {
        auto r = enumerate_case(Q(a), {Q(a), Q(a) + 1, Q(a) + 2});
        std::vector<std::tuple<int, bool, long>> v;
        for (const auto& e : r.subquotients) v.emplace_back(e.multiplicity, e.unitarizable, e.dual_of ? static_cast<long>(*e.dual_of) : -1L);
        return v;
    };
    EXPECT_EQ(shape("2"), shape("5/2"));
    EXPECT_EQ(shape("5/2"), shape("7/2"));
}

TEST(Region, Examples) {
    EXPECT_EQ(classify_region(line("1", {"1/4", "1/4", "1/2"})).verdict, Verdict::AllUnitarizable);
    EXPECT_EQ(classify_region(line("0", {"1/5", "3/10", "2/5"})).verdict, Verdict::NoneUnitarizable);
    // (A-2,A-1,A): all subquotients sit at ends of complementary series
    auto r = classify_region(line("5/2", {"1/2", "3/2", "5/2"}));
    EXPECT_EQ(r.verdict, Verdict::AllUnitarizable);
    EXPECT_EQ(r.subquotients.size(), 8u);
    EXPECT_EQ(classify_region(line("1", {"1/4"})).verdict, Verdict::AllUnitarizable);
    EXPECT_EQ(classify_region(line("1", {"5/4"})).verdict, Verdict::NoneUnitarizable);
    EXPECT_EQ(classify_region(line("1", {"-1/4"})).verdict, Verdict::AllUnitarizable);
}

TEST(Region, EmptyQueryIsCuspidal) {
    auto r = classify_region(line("1", {}));
    EXPECT_EQ(r.verdict, Verdict::AllUnitarizable);
    ASSERT_EQ(r.subquotients.size(), 1u);
    EXPECT_TRUE(r.subquotients[0].label.is_cusp());
}

TEST(Region, RankCap) {
    try {
        classify_region(line("1", {"0", "1", "2", "3"}));
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::RankExceeded);
    }
    setenv("UNIRANK3_MAX_RANK", "2", 1);
    EXPECT_THROW(classify_region(line("1", {"0", "1", "2"})), Error);
    EXPECT_NO_THROW(classify_region(line("1", {"0", "1"})));
    setenv("UNIRANK3_MAX_RANK", "9", 1);  // may only lower the cap
    EXPECT_THROW(classify_region(line("1", {"0", "1", "2", "3"})), Error);
    unsetenv("UNIRANK3_MAX_RANK");
}

TEST(Jantzen, Examples) {
    EXPECT_EQ(jantzen_classify(ExponentQuery{{line("1", {"1/4"}), line("0", {"0"})}}).verdict, Verdict::AllUnitarizable);
    EXPECT_EQ(jantzen_classify(ExponentQuery{{line("2", {"5/2"}), line("1/2", {"1/2"})}}).verdict, Verdict::NoneUnitarizable);
    auto r = jantzen_classify(ExponentQuery{{line("3/2", {"1/2", "3/2"}), line("0", {"0"})}});
    EXPECT_EQ(r.verdict, classify_region(line("3/2", {"1/2", "3/2"})).verdict);
    ASSERT_EQ(r.components.size(), 2u);
    EXPECT_THROW(jantzen_classify(ExponentQuery{{line("1", {"0", "1"}), line("0", {"0", "1"})}}), Error);
}

TEST(Jantzen, WeakReality) {
    EXPECT_TRUE(weakly_real_check(ExponentQuery{{line("1", {"1/4"})}}));
    EXPECT_TRUE(weakly_real_check(ExponentQuery{}));
    auto q = ExponentQuery{{line("1", {"1/4"})}};
    q.lines[0].cfg.selfcontragredient = false;
    EXPECT_FALSE(weakly_real_check(q));
    EXPECT_THROW(jantzen_classify(q), Error);
    auto empty = jantzen_classify(ExponentQuery{});
    EXPECT_EQ(empty.verdict, Verdict::AllUnitarizable);
}

// ---------------------------------------------------------------------------
// Properties over every catalogued case

TEST(ClassifierProperty, DualClosure) {
    for (const auto& a : kAlphas) {
        auto cfg = at(a);
        for (const auto& ci : catalogue(cfg)) {
            auto r = report_of(ci);
            std::multiset<ClassicalLabel> before, after;
            for (const auto& e : r.subquotients) {
                before.insert(e.label);
                ClassicalLabel d = ass_dual(e.label, cfg);
                after.insert(d);
                auto de = catalogue_entry(d, cfg);
                ASSERT_TRUE(de.has_value());
                EXPECT_EQ(de->unitarizable, e.unitarizable);
            }
            EXPECT_EQ(before, after) << ci.tag << " alpha=" << a;
        }
    }
}

TEST(ClassifierProperty, RegionAgreesWithTables) {
    for (const auto& a : kAlphas) {
        auto cfg = at(a);
        for (const auto& ci : catalogue(cfg)) {
            auto r = report_of(ci);
            EXPECT_EQ(region_verdict(ci.exps, cfg), r.verdict) << ci.tag << " alpha=" << a;
            EXPECT_EQ(classify_region(LineQuery{cfg, ci.exps}).verdict, r.verdict);
            int len = 0;
            for (const auto& e : r.subquotients) len += e.multiplicity;
            EXPECT_EQ(len, r.total_length);
        }
    }
}

TEST(ClassifierProperty, ClassifyMatchesEnumerate) {
    for (const auto& a : kAlphas) {
        auto cfg = at(a);
        for (const auto& ci : catalogue(cfg))
            EXPECT_EQ(classify_region(LineQuery{cfg, ci.exps}).verdict, enumerate_case(cfg.alpha, ci.exps).verdict);
    }
}
