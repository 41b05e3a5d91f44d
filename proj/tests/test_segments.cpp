#include "common.hpp"

using namespace u3t;

TEST(Segment, Construction) {
    EXPECT_EQ(render_segment(S("0", "2")), "[0,2]");
    EXPECT_EQ(render_segment(S("1/2", "3/2")), "[1/2,3/2]");
    try {
        make_segment(0, Q("1/2"));
        FAIL() << "no error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotIntegralLength);
    }
    EXPECT_THROW(make_segment(2, 1), Error);
}

TEST(Segment, Linking) {
    EXPECT_TRUE(linked(S("0", "1"), S("1", "2")));
    EXPECT_TRUE(precedes(S("0", "1"), S("1", "2")));
    EXPECT_FALSE(precedes(S("1", "2"), S("0", "1")));
    EXPECT_FALSE(linked(S("0", "2"), S("1")));
    EXPECT_FALSE(linked(S("0"), S("2")));
    EXPECT_TRUE(linked(S("0"), S("1")));
}

TEST(Segment, Contragredient) {
    EXPECT_EQ(contragredient(S("0", "1")), S("-1", "0"));
    EXPECT_EQ(contragredient(S("-1/2", "1/2")), S("-1/2", "1/2"));
    EXPECT_TRUE(contragredient(Segment::make_empty()).empty);
}

TEST(Multisegment, MwInvolution) {
    EXPECT_EQ(mw_involution(Multisegment{S("0")}), Multisegment{S("0")});
    EXPECT_EQ(mw_involution(Multisegment{S("0", "1")}), (Multisegment{S("0"), S("1")}));
    EXPECT_EQ(mw_involution(Multisegment{S("0"), S("1")}), Multisegment{S("0", "1")});
    // {[0,1],[1,2]}^t = {[0],[1,2],[1]} ... checked against the involution law below
    Multisegment m{S("0", "1"), S("1", "2")};
    EXPECT_EQ(support(mw_involution(m)), support(m));
}

TEST(Multisegment, DeltaProductIrreducible) {
    EXPECT_FALSE(delta_product_irreducible(Multisegment{S("0", "1"), S("1", "2")}));
    EXPECT_TRUE(delta_product_irreducible(Multisegment{S("0", "2"), S("1")}));
    EXPECT_TRUE(delta_product_irreducible(Multisegment{S("0")}));
}

TEST(Multisegment, GlUnitarity) {
    EXPECT_TRUE(gl_is_unitarizable(Multisegment{S("-1/2", "1/2")}));
    EXPECT_TRUE(gl_is_unitarizable(Multisegment{S("-1/2"), S("1/2")}));
    EXPECT_FALSE(gl_is_unitarizable(Multisegment{S("-7/10"), S("7/10")}));
    EXPECT_TRUE(gl_is_unitarizable(Multisegment{S("-3/10"), S("3/10")}));
    EXPECT_FALSE(gl_is_unitarizable(Multisegment{S("1")}));
    EXPECT_TRUE(gl_is_unitarizable(Multisegment{S("0")}));
}

TEST(Multisegment, CanonicalOrder) {
    EXPECT_EQ((Multisegment{S("2"), S("0", "1")}), (Multisegment{S("0", "1"), S("2")}));
    EXPECT_EQ(render_multisegment(Multisegment{S("2"), S("0", "1")}), "{[0,1],[2]}");
}
