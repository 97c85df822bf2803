#include "support.hpp"

#include "waybelow/oracle.hpp"

#include <gtest/gtest.h>

using namespace testing_support;

namespace {

/// S ≪ T in ℝ^d for bounded sets with faces on the sixteenth grid: every
/// point of closure(S) lies in T, checked on the 1/32 lattice, which meets
/// every cell.
bool naive_way_below(const BoxUnion& s, const BoxUnion& t)
{
    for (const auto& p : lattice(s.dim, Rational(5, 2), Rational(1, 32)))
        if (naive_closure_member(s, p) && !naive_member(t, p)) return false;
    return true;
}

const Space line = Space::euclidean(1);

} // namespace

TEST(WayBelow, EmptySetIsBelowEverything)
{
    const auto v = way_below(line, u({}, 1), u({"(0,5)"}));
    EXPECT_TRUE(v.holds);
    ASSERT_TRUE(v.certificate.has_value());
    EXPECT_TRUE(v.certificate->kernel.empty());
}

TEST(WayBelow, ClosureInsideHolds)
{
    const auto v = way_below(line, u({"(0,1)"}), u({"(-1,2)"}));
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.certificate->kernel, u({"[0,1]"}));
    EXPECT_FALSE(v.refutation.has_value());
}

TEST(WayBelow, ClosureTouchingBoundaryFails)
{
    const auto v = way_below(line, u({"(0,1)"}), u({"(0,2)"}));
    EXPECT_FALSE(v.holds);
    ASSERT_TRUE(v.refutation.has_value());
    const auto* p = std::get_if<PuncturedCover>(&v.refutation->kind);
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->center, pt({"0"}));
    EXPECT_TRUE(verify_refutation(line, u({"(0,1)"}), u({"(0,2)"}), *v.refutation, 6).ok);
}

TEST(WayBelow, RationalTraceIntervalFails)
{
    const Space rq = Space::rational(box("[0,10]"));
    const auto s = u({"(1,2)"});
    const auto t = u({"(0,3)"});
    const auto v = way_below(rq, s, t);
    EXPECT_FALSE(v.holds);
    ASSERT_TRUE(v.refutation.has_value());
    const auto* sh = std::get_if<ShrinkingCover>(&v.refutation->kind);
    ASSERT_NE(sh, nullptr);
    EXPECT_EQ(sh->alpha, (Sqrt2Affine{Rational(0), Rational(1)}));
    const auto check = verify_refutation(rq, s, t, *v.refutation, 12);
    ASSERT_TRUE(check.ok) << check.reason;
    EXPECT_EQ(check.exhibits.size(), 4095U);
    for (const auto& e : check.exhibits) {
        EXPECT_TRUE(s.contains(e.point));
        // The missed point sits within 1/k of √2 for the largest index k.
        const Rational radius(1, static_cast<std::int64_t>(e.subfamily.back()));
        const Rational x = e.point[0];
        EXPECT_LT(x - radius, Rational(3, 2));
        EXPECT_TRUE((x - radius) * (x - radius) < Rational(2) || x - radius < Rational(0));
        EXPECT_TRUE((x + radius) * (x + radius) > Rational(2));
    }
}

TEST(WayBelow, RationalTraceFinitePointSetHolds)
{
    const Space rq = Space::rational(box("[0,10]"));
    const auto v = way_below(rq, u({"{1}", "{5/2}"}), u({"(0,3)"}));
    EXPECT_TRUE(v.holds);
    const CoverFamily fam{ShrinkingCover{0, Sqrt2Affine{}, Rational(1), Rational(2)}};
    const auto pick = select_subcover(rq, u({"{1}", "{5/2}"}), u({"(0,3)"}), *v.certificate, fam);
    EXPECT_EQ(pick.size(), 1U);
}

TEST(WayBelow, SetNotInsideTIsRefutedByTItself)
{
    const auto v = way_below(line, u({"(0,3)"}), u({"(0,2)"}));
    EXPECT_FALSE(v.holds);
    const auto* f = std::get_if<FiniteCover>(&v.refutation->kind);
    ASSERT_NE(f, nullptr);
    EXPECT_TRUE(verify_refutation(line, u({"(0,3)"}), u({"(0,2)"}), *v.refutation, 5).ok);
}

TEST(WayBelow, Errors)
{
    EXPECT_THROW(way_below(line, u({"(0,1)"}), u({"[0,2)"})), Error);
    EXPECT_THROW(way_below(line, u({"(0,1)x(0,1)"}), u({"(0,2)"})), Error);
}

TEST(WayBelow, UnboundedCarrierEdgesOfABox)
{
    // [0,1) is open in [0,5] and its closure [0,1] lies inside [0,2).
    const Space half = Space::box(box("[0,5]"));
    EXPECT_TRUE(way_below(half, u({"[0,1)"}), u({"[0,2)"})).holds);
    EXPECT_FALSE(way_below(half, u({"[0,2)"}), u({"[0,2)"})).holds);
}

// Decision checked against pointwise closure containment.
TEST(WayBelow, AgreesWithClosureSampling)
{
    gen::CaseRng rng(3, "waybelow-test", 0);
    int positives = 0;
    for (int round = 0; round < 200; ++round) {
        const std::size_t d = round % 2 == 0 ? 1 : 2;
        const auto t = gen::open_union(rng, d, 3);
        const auto s = rng.coin() ? gen::inner_set(rng, t, 2) : gen::any_set(rng, d, 2);
        const bool expected = naive_way_below(s, t);
        positives += expected ? 1 : 0;
        const auto v = way_below(Space::euclidean(d), s, t);
        ASSERT_EQ(v.holds, expected) << json(s).dump() << " " << json(t).dump();
        if (!v.holds) {
            const std::size_t k = std::holds_alternative<FiniteCover>(v.refutation->kind) ? 1 : 6;
            EXPECT_TRUE(verify_refutation(Space::euclidean(d), s, t, *v.refutation, k).ok);
        }
    }
    EXPECT_GT(positives, 40);
    EXPECT_LT(positives, 190);
}

TEST(VerifyRefutation, ShrinkingCoverAroundSqrt2)
{
    const Space rq = Space::rational(box("[0,10]"));
    const CoverFamily fam{ShrinkingCover{0, Sqrt2Affine{}, Rational(1), Rational(2)}};
    const auto check = verify_refutation(rq, u({"(1,2)"}), u({"(0,3)"}), fam, 5);
    EXPECT_TRUE(check.ok);
    EXPECT_EQ(check.exhibits.size(), 31U);
    std::set<std::vector<std::size_t>> subfamilies;
    for (const auto& e : check.exhibits) subfamilies.insert(e.subfamily);
    EXPECT_EQ(subfamilies.size(), 31U);
}

TEST(VerifyRefutation, CoveringFiniteFamilyIsRejected)
{
    const CoverFamily fam{FiniteCover{{u({"(-1,1)"}), u({"(1/2,3)"})}}};
    const auto check = verify_refutation(line, u({"(0,2)"}), u({"(-1,3)"}), fam, 5);
    EXPECT_FALSE(check.ok);
    EXPECT_TRUE(check.exhibits.empty());
}

TEST(VerifyRefutation, FamilyMissingPartOfTIsRejected)
{
    const CoverFamily fam{FiniteCover{{u({"(0,1)"})}}};
    EXPECT_FALSE(verify_refutation(line, u({"(0,1)"}), u({"(0,2)"}), fam, 5).ok);
}

TEST(VerifyRefutation, EmptyPrefixIsVacuous)
{
    const CoverFamily fam{ShrinkingCover{0, Sqrt2Affine{}, Rational(1), Rational(2)}};
    const auto check = verify_refutation(Space::rational(box("[0,10]")), u({"(1,2)"}), u({"(0,3)"}), fam, 0);
    EXPECT_TRUE(check.ok);
    EXPECT_TRUE(check.exhibits.empty());
}

TEST(VerifyRefutation, LongPrefixRejected)
{
    const CoverFamily fam{ShrinkingCover{0, Sqrt2Affine{}, Rational(1), Rational(2)}};
    EXPECT_THROW(verify_refutation(Space::rational(box("[0,10]")), u({"(1,2)"}), u({"(0,3)"}), fam, 21), Error);
}

TEST(VerifyRefutation, ShrinkingCoverNeedsRationalTrace)
{
    const CoverFamily fam{ShrinkingCover{0, Sqrt2Affine{}, Rational(1), Rational(2)}};
    EXPECT_FALSE(verify_refutation(line, u({"(1,2)"}), u({"(0,3)"}), fam, 3).ok);
}

TEST(SelectSubcover, GreedyOnFiniteFamilies)
{
    const auto s = u({"(0,1)"});
    const auto t = u({"(-1,2)"});
    const auto v = way_below(line, s, t);
    const CoverFamily fam{FiniteCover{{u({"(-1,1/2)"}), u({"(5,6)"}), u({"(1/4,2)"})}}};
    EXPECT_EQ(select_subcover(line, s, t, *v.certificate, fam), (std::vector<std::size_t>{1, 3}));
    const CoverFamily punctured{PuncturedCover{pt({"5"})}};
    EXPECT_EQ(select_subcover(line, s, t, *v.certificate, punctured).size(), 1U);
}

TEST(CoreCompactWitness, HalvedBoxAroundPoint)
{
    EXPECT_EQ(core_compact_witness(line, pt({"0"}), u({"(-1,1)"})), u({"(-1/2,1/2)"}));
    EXPECT_EQ(core_compact_witness(line, pt({"0"}), u({"(-1,1)", "(2,3)"})), u({"(-1/2,1/2)"}));
}

TEST(CoreCompactWitness, PostconditionOnRandomOpens)
{
    gen::CaseRng rng(9, "witness-test", 0);
    for (int round = 0; round < 100; ++round) {
        const std::size_t d = round % 2 == 0 ? 1 : 2;
        const Space space = gen::euclidean_space(rng, d);
        const auto uo = gen::open_union(rng, d, 3);
        const auto ue = restrict_to_carrier(space, uo);
        if (ue.empty()) continue;
        const auto& b = ue.boxes[rng.next() % ue.boxes.size()];
        const Point x = sample_point(b);
        const auto v = core_compact_witness(space, x, uo);
        EXPECT_TRUE(v.contains(x));
        EXPECT_TRUE(is_open_in(space, v));
        EXPECT_TRUE(way_below(space, v, uo).holds);
    }
}

TEST(CoreCompactWitness, Errors)
{
    try {
        core_compact_witness(Space::rational(box("[0,1]")), pt({"1/2"}), u({"(0,1)"}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::non_core_compact);
    }
    EXPECT_THROW(core_compact_witness(line, pt({"5"}), u({"(0,1)"})), Error);
    EXPECT_THROW(core_compact_witness(line, pt({"0"}), u({"[0,1)"})), Error);
}

TEST(Oracle, Examples)
{
    const auto yes = oracle_way_below(line, u({"(0,1)"}), u({"(-1,2)"}), 50);
    ASSERT_TRUE(yes.verdict.has_value());
    EXPECT_TRUE(*yes.verdict);

    const auto no = oracle_way_below(line, u({"(0,1)"}), u({"(0,2)"}), 50);
    ASSERT_TRUE(no.verdict.has_value());
    EXPECT_FALSE(*no.verdict);
    ASSERT_TRUE(no.defeating_cover.has_value());
    const auto* p = std::get_if<PuncturedCover>(&no.defeating_cover->kind);
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->center, pt({"0"}));

    const auto empty = oracle_way_below(line, u({}, 1), u({"(0,1)"}), 50);
    EXPECT_EQ(empty.verdict, std::optional<bool>(true));
}

TEST(Oracle, UnsupportedSpaces)
{
    EXPECT_THROW(oracle_way_below(Space::rational(box("[0,1]")), u({"(0,1)"}), u({"(0,1)"}), 5), Error);
    EXPECT_THROW(oracle_way_below(Space::euclidean(3), u({"(0,1)x(0,1)x(0,1)"}), u({"(0,1)x(0,1)x(0,1)"}), 5),
                 Error);
}

TEST(Sqrt2Affine, ComparisonsAndBounds)
{
    const Sqrt2Affine r2{};
    EXPECT_EQ(r2.compare(Rational(7, 5)), -1);
    EXPECT_EQ(r2.compare(Rational(3, 2)), 1);
    const Sqrt2Affine neg{Rational(1), Rational(-1)}; // 1 − √2
    EXPECT_EQ(neg.compare(Rational(0)), 1);
    EXPECT_EQ(neg.compare(Rational(-1, 2)), -1);
    for (unsigned level = 0; level < 28; ++level) {
        const auto [lo, hi] = neg.bounds(level);
        EXPECT_EQ(neg.compare(lo), -1);
        EXPECT_EQ(neg.compare(hi), 1);
    }
    const auto pin = pinned_irrational(Rational(0), Rational(1));
    EXPECT_EQ(pin.compare(Rational(0)), -1);
    EXPECT_EQ(pin.compare(Rational(1)), 1);
}
