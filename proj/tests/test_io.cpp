#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace testing_support;

TEST(Json, RationalEncoding)
{
    EXPECT_EQ(json(q("-3/4")).dump(), "\"-3/4\"");
    EXPECT_EQ(parse_rational(json("7/14")), q("1/2"));
    EXPECT_EQ(parse_rational(json(5)), q("5"));
    EXPECT_THROW(parse_rational(json("x")), ParseError);
    EXPECT_THROW(parse_rational(json("1/0")), ParseError);
    EXPECT_THROW(parse_rational(json("99999999999999999999")), ParseError);
    EXPECT_THROW(parse_rational(json(1.5)), ParseError);
}

TEST(Json, UnionRoundTrip)
{
    gen::CaseRng rng(1, "io-test", 0);
    for (int round = 0; round < 100; ++round) {
        const auto s = gen::any_set(rng, 1 + round % 3, 3);
        EXPECT_EQ(parse_union(json(s)), s);
    }
}

TEST(Json, IntervalFlagsDefaultToOpen)
{
    const auto iv = parse_interval(json::parse(R"({"lo": "0", "hi": 1})"));
    EXPECT_EQ(iv, Interval::open(Rational(0), Rational(1)));
    const auto closed = parse_interval(json::parse(R"({"lo": 0, "hi": 1, "lo_open": false, "hi_open": false})"));
    EXPECT_EQ(closed, Interval::closed(Rational(0), Rational(1)));
}

TEST(Json, SpaceRoundTrip)
{
    const std::vector<Space> spaces{
        Space::euclidean(2), Space::box(box("[0,1)x(2,3]")), Space::rational(box("[0,10]")),
        Space::product(Space::euclidean(1), Space::product(Space::box(box("[0,1]")), Space::rational(box("[0,1]"))))};
    for (const auto& s : spaces) EXPECT_EQ(json(parse_space(json(s))).dump(), json(s).dump());
}

TEST(Json, SequenceAndFamilyRoundTrip)
{
    const auto g = AscendingSequence::growing_box(2, Rational(1), Rational(1, 2), 5).shifted(1);
    const auto c = AscendingSequence::constant(Space::euclidean(1), 4);
    const auto p = AscendingSequence::product(g, c);
    for (const auto& s : {g, c, p}) EXPECT_EQ(json(parse_sequence(json(s))).dump(), json(s).dump());

    const std::vector<ColimitOpen> fams{
        ColimitOpen{FullStages{}}, ColimitOpen{DiagonalStrip{}, 2},
        ColimitOpen{AffineInterval{Rational(0), Rational(-1), Rational(1, 2), Rational(1), false, true}},
        ColimitOpen{ExplicitStages{{u({"(0,1)"}), u({}, 1)}}}};
    for (const auto& f : fams) EXPECT_EQ(json(parse_family(json(f))).dump(), json(f).dump());
}

TEST(Json, ParseErrors)
{
    EXPECT_THROW(parse_space(json::parse(R"({"kind": "hilbert"})")), ParseError);
    EXPECT_THROW(parse_space(json::parse(R"({"dim": 1})")), ParseError);
    EXPECT_THROW(parse_space(json::parse(R"({"kind": "euclidean_full", "dim": -1})")), ParseError);
    EXPECT_THROW(parse_union(json::parse(R"({"dim": 1, "boxes": {}})")), ParseError);
    EXPECT_THROW(parse_box(json::parse(R"({"lo": 0})")), ParseError);
    EXPECT_THROW(parse_interval(json::parse(R"({"lo": 0, "hi": 1, "lo_open": "yes"})")), ParseError);
    EXPECT_THROW(parse_sequence(json::parse(R"({"kind": "growing_box", "dim": 1, "base": 1, "step": 1})")),
                 ParseError);
    EXPECT_THROW(parse_sequence(json::parse(R"({"kind": "growing_box", "dim": 1, "base": -1, "step": 1,
                                              "max_depth": 3})")),
                 ParseError);
    EXPECT_THROW(parse_family(json::parse(R"({"kind": "spiral"})")), ParseError);
    EXPECT_THROW(parse_point(json::parse(R"({"x": 1})")), ParseError);
    EXPECT_THROW(parse_union(json::parse(R"({"dim": 2, "boxes": [[{"lo": 0, "hi": 1}]]})")), Error);
}

TEST(Json, LoadInlineAndFromFile)
{
    EXPECT_EQ(load_json(R"({"a": 1})")["a"], 1);
    EXPECT_EQ(load_json("  [1, 2]").size(), 2U);
    EXPECT_THROW(load_json("{not json"), ParseError);
    EXPECT_THROW(load_json("/nonexistent/file.json"), ParseError);

    const std::string path = testing::TempDir() + "waybelow_io_test.json";
    {
        std::ofstream out(path);
        out << R"({"kind": "euclidean_full", "dim": 2})";
    }
    EXPECT_EQ(parse_space(load_json(path)).dim(), 2U);
    std::remove(path.c_str());
}

TEST(Json, DocumentEnvelope)
{
    const auto doc = document("way_below", json{{"verdict", way_below(Space::euclidean(1), u({"(0,1)"}), u({"(-1,2)"}))}});
    EXPECT_EQ(doc["schema"], "waybelow/1");
    EXPECT_EQ(doc["kind"], "way_below");
    EXPECT_TRUE(doc["result"]["verdict"]["holds"].get<bool>());
    // Object keys are sorted, so dumps are canonical.
    EXPECT_EQ(doc.dump().find("\"kind\""), doc.dump().find('"'));
}

TEST(Json, CoverFamiliesAndDemo)
{
    const auto v = way_below(Space::rational(box("[0,10]")), u({"(1,2)"}), u({"(0,3)"}));
    const json j = v;
    EXPECT_EQ(j["refutation"]["kind"], "shrinking_around");
    EXPECT_EQ(j["refutation"]["alpha"]["surd"], "sqrt2");

    const json d = not_closed_demo(2);
    EXPECT_EQ(d["index_shift"], 1);
    ASSERT_EQ(d["limit_witnesses"].size(), 2U);
    EXPECT_EQ(d["limit_witnesses"][0]["zero_based_circle"].get<std::size_t>() + 1,
              d["limit_witnesses"][0]["circle"].get<std::size_t>());
    EXPECT_EQ(d["separations"][0]["probe_count"], 50);
}
