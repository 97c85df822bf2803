#include "support.hpp"

#include <gtest/gtest.h>

using namespace testing_support;

namespace {

AscendingSequence growing(std::size_t depth = 8)
{
    return AscendingSequence::growing_box(1, Rational(1), Rational(1), depth);
}

AscendingSequence real_line(std::size_t depth = 8)
{
    return AscendingSequence::constant(Space::euclidean(1), depth);
}

/// Staircase membership straight from its definition: some half-integer
/// centre c has both coordinates within 1/2 of it.
bool in_staircase(const Point& p)
{
    for (std::int64_t j = -40; j <= 40; ++j) {
        const Rational c(j, 2);
        const Rational h(1, 2);
        if (p[0] > c - h && p[0] < c + h && p[1] > c - h && p[1] < c + h) return true;
    }
    return false;
}

std::vector<std::pair<Point, Point>> strip_probes(std::size_t count)
{
    gen::CaseRng rng(0, "strip-probes", 0);
    std::vector<std::pair<Point, Point>> out;
    while (out.size() < count) {
        const Rational x(rng.between(-144, 144), 16);
        const Rational y = x + Rational(rng.between(-7, 7), 16);
        if (in_staircase({x, y})) out.push_back({{x}, {y}});
    }
    return out;
}

} // namespace

TEST(AscendingSequence, Stages)
{
    const auto seq = growing();
    EXPECT_EQ(json(seq.stage(0)).dump(), json(Space::box(box("[-1,1]"))).dump());
    EXPECT_EQ(json(seq.stage(3)).dump(), json(Space::box(box("[-4,4]"))).dump());
    EXPECT_EQ(json(seq.shifted(2).stage(0)).dump(), json(Space::box(box("[-3,3]"))).dump());
    EXPECT_EQ(seq.shifted(2).max_depth(), 6U);
    EXPECT_THROW(seq.shifted(9), Error);
    EXPECT_THROW(seq.require_depth(9), Error);
    const auto prod = AscendingSequence::product(seq, growing(5));
    EXPECT_EQ(prod.max_depth(), 5U);
    EXPECT_EQ(json(prod.stage(1)).dump(), json(Space::product(Space::box(box("[-2,2]")), Space::box(box("[-2,2]")))).dump());
}

TEST(ColimitOpen, DiagonalStripMatchesDefinition)
{
    const auto prod = AscendingSequence::product(growing(), growing());
    const ColimitOpen strip{DiagonalStrip{}};
    for (std::size_t n : {0U, 1U, 3U}) {
        const auto w = strip.at(prod, n);
        const auto carrier = prod.stage(n);
        for (const auto& p : lattice(2, Rational(static_cast<std::int64_t>(n) + 2), Rational(1, 8)))
            ASSERT_EQ(w.contains(p), carrier.carrier_contains(p) && in_staircase(p)) << n;
    }
}

TEST(CheckOpen, ConstantEmptyFamily)
{
    const ColimitOpen fam{ExplicitStages{std::vector<BoxUnion>(9, BoxUnion(1))}};
    for (std::size_t p = 0; p <= 8; ++p) EXPECT_TRUE(check_open_at(growing(), fam, p).ok);
}

TEST(CheckOpen, NestedSymmetricIntervalsAreIncoherent)
{
    // (−n, n) on [−n−1, n+1]: stage m holds (−m, m) but W_n meets X_m in all of X_m.
    const ColimitOpen fam{AffineInterval{Rational(0), Rational(-1), Rational(0), Rational(1)}};
    EXPECT_TRUE(check_open_at(growing(), fam, 0).ok);
    const auto chk = check_open_at(growing(), fam, 5);
    EXPECT_FALSE(chk.ok);
    EXPECT_NE(chk.reason.find("incoherent"), std::string::npos);
}

TEST(CheckOpen, CoherentTracesOfAFixedOpen)
{
    // Traces of (−3/2, 5/2) on [−n−1, n+1].
    std::vector<BoxUnion> stages;
    for (std::size_t n = 0; n <= 8; ++n)
        stages.push_back(restrict_to_carrier(growing().stage(n), u({"(-3/2,5/2)"})));
    const ColimitOpen fam{ExplicitStages{stages}};
    for (std::size_t p = 0; p <= 8; ++p) EXPECT_TRUE(check_open_at(growing(), fam, p).ok) << p;
}

TEST(CheckOpen, ClosedLeftFaceRejectedFromStageOne)
{
    const ColimitOpen fam{AffineInterval{Rational(0), Rational(0), Rational(0), Rational(1), false, true}};
    EXPECT_TRUE(check_open_at(real_line(), fam, 0).ok);
    for (std::size_t p = 1; p <= 8; ++p) {
        const auto chk = check_open_at(real_line(), fam, p);
        EXPECT_FALSE(chk.ok) << p;
        EXPECT_EQ(chk.reason, "stage 1 is not open");
    }
}

TEST(CheckOpen, DepthExceeded)
{
    const ColimitOpen fam{FullStages{}};
    EXPECT_THROW(check_open_at(growing(3), fam, 4), Error);
}

TEST(ChainUnion, ShrinkingMarginsGiveTheTopMember)
{
    std::vector<BoxUnion> chain;
    for (std::int64_t n = 0; n <= 8; ++n)
        chain.push_back(BoxUnion::of(Box{Interval::open(Rational(-1) + Rational(1, n + 2), Rational(1) - Rational(1, n + 2))}));
    const auto fam = chain_union(growing(), chain);
    for (std::size_t p = 0; p <= 8; ++p) {
        EXPECT_EQ(fam.at(growing(), p), u({"(-9/10,9/10)"}));
        EXPECT_TRUE(check_open_at(growing(), fam, p).ok);
    }
}

TEST(ChainUnion, EmptyChainMembers)
{
    const auto fam = chain_union(growing(), std::vector<BoxUnion>(9, BoxUnion(1)));
    for (std::size_t p = 0; p <= 8; ++p) EXPECT_TRUE(fam.at(growing(), p).empty());
}

TEST(ChainUnion, StartOffset)
{
    const auto fam = chain_union(growing(), {u({"(0,1)"}), u({"(0,2)"})}, 3);
    EXPECT_EQ(fam.at(growing(), 0), u({"(0,1]"}));
    EXPECT_EQ(fam.at(growing(), 4), u({"(0,2)"}));
    EXPECT_TRUE(check_open_at(growing(), fam, 4).ok);
}

TEST(ChainUnion, Errors)
{
    try {
        chain_union(growing(), {u({"(0,2)"}), u({"(0,1)"})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_ascending);
    }
    try {
        chain_union(real_line(), {u({"[0,1)"})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_open);
    }
    EXPECT_THROW(chain_union(growing(), {}), Error);
}

TEST(BuildChain, FullStagesGiveGrowingBoxes)
{
    const auto seq = growing();
    const ColimitOpen w{FullStages{}};
    const auto cw = build_chain(seq, seq, w, pt({"0"}), pt({"0"}), 8);
    EXPECT_TRUE(verify_chain(seq, seq, w, cw).empty());
    ASSERT_EQ(cw.u_chain.size(), 9U);
    for (std::size_t n = 1; n <= 8; ++n) {
        EXPECT_TRUE(contains(cw.u_chain[n], cw.u_chain[n - 1]));
        EXPECT_TRUE(contains(cw.v_chain[n], cw.v_chain[n - 1]));
        EXPECT_EQ(cw.u_chain[n].boxes.size(), 1U);
    }
    EXPECT_FALSE(contains(cw.u_chain[0], cw.u_chain[8]));
}

TEST(BuildChain, DiagonalStripHugsTheDiagonal)
{
    const auto seq = growing();
    const ColimitOpen w{DiagonalStrip{}};
    const auto prod = AscendingSequence::product(seq, seq);
    const auto cw = build_chain(seq, seq, w, pt({"0"}), pt({"0"}), 8);
    EXPECT_TRUE(verify_chain(seq, seq, w, cw).empty());
    EXPECT_TRUE(contains(w.at(prod, 8), product_open(cw.u_chain[8], cw.v_chain[8])));
    for (std::size_t n = 0; n <= 8; ++n) {
        for (const auto& p : lattice(2, Rational(10), Rational(1, 4))) {
            if (naive_closure_member(product_open(cw.u_chain[n], cw.v_chain[n]), p)) {
                ASSERT_TRUE(in_staircase(p)) << n;
            }
        }
    }
}

TEST(BuildChain, VerifierCatchesTampering)
{
    const auto seq = growing();
    const ColimitOpen w{DiagonalStrip{}};
    auto cw = build_chain(seq, seq, w, pt({"0"}), pt({"0"}), 3);
    cw.u_chain[2] = u({"(-5,5)"});
    EXPECT_FALSE(verify_chain(seq, seq, w, cw).empty());
}

TEST(BuildChain, PointOutsideW0)
{
    const auto seq = growing();
    try {
        build_chain(seq, seq, ColimitOpen{DiagonalStrip{}}, pt({"1"}), pt({"-1"}), 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::point_outside);
    }
}

TEST(RectangleCover, EmptyProbeList)
{
    const auto seq = growing();
    const auto rep = rectangle_cover_check(seq, seq, ColimitOpen{DiagonalStrip{}}, {}, 8);
    EXPECT_TRUE(rep.probes.empty());
    EXPECT_TRUE(rep.ok());
}

TEST(RectangleCover, StripProbesPass)
{
    const auto seq = growing();
    const auto probes = strip_probes(20);
    const auto rep = rectangle_cover_check(seq, seq, ColimitOpen{DiagonalStrip{}}, probes, 8);
    ASSERT_EQ(rep.probes.size(), 20U);
    bool late = false;
    for (const auto& p : rep.probes) {
        EXPECT_EQ(p.status, ProbeStatus::passed);
        late = late || p.first_stage > 0;
    }
    EXPECT_TRUE(late);
    EXPECT_TRUE(rep.ok());
}

TEST(RectangleCover, ProbeOutsideIsSkipped)
{
    const auto seq = growing();
    const auto rep =
        rectangle_cover_check(seq, seq, ColimitOpen{DiagonalStrip{}}, {{pt({"0"}), pt({"5"})}, {pt({"0"}), pt({"0"})}}, 8);
    ASSERT_EQ(rep.probes.size(), 2U);
    EXPECT_EQ(rep.probes[0].status, ProbeStatus::skipped);
    EXPECT_EQ(rep.probes[1].status, ProbeStatus::passed);
    EXPECT_TRUE(rep.ok());
}

TEST(RectangleCover, NonOpenFamilyRejected)
{
    const auto seq = real_line();
    std::vector<BoxUnion> stages(9, u({"[0,1)x(0,1)"}));
    EXPECT_THROW(rectangle_cover_check(seq, seq, ColimitOpen{ExplicitStages{stages}}, {}, 8), Error);
}
