#ifndef WAYBELOW_IO_HPP
#define WAYBELOW_IO_HPP

#include "colimit.hpp"
#include "counterexamples.hpp"
#include "oracle.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace waybelow {

using json = nlohmann::json;

inline constexpr const char* schema_version = "waybelow/1";

/// Thrown for malformed JSON input.
class ParseError : public Error
{
public:
    explicit ParseError(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

// ---- encoding ---------------------------------------------------------------

inline void to_json(json& j, const Rational& r) { j = r.str(); }

inline void to_json(json& j, const Interval& iv)
{
    j = json{{"lo", iv.lo}, {"hi", iv.hi}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
}

inline void to_json(json& j, const Box& b) { j = b.dims; }

inline void to_json(json& j, const BoxUnion& u) { j = json{{"dim", u.dim}, {"boxes", u.boxes}}; }

inline void to_json(json& j, const Space& s)
{
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, EuclideanFull>) j = json{{"kind", "euclidean_full"}, {"dim", v.dim}};
            else if constexpr (std::is_same_v<T, EuclideanBox>) j = json{{"kind", "euclidean_box"}, {"carrier", v.carrier}};
            else if constexpr (std::is_same_v<T, RationalTrace>) j = json{{"kind", "rational_trace"}, {"carrier", v.carrier}};
            else j = json{{"kind", "product"}, {"left", *v.left}, {"right", *v.right}};
        },
        s.variant());
}

inline void to_json(json& j, const Sqrt2Affine& a)
{
    j = json{{"offset", a.offset}, {"scale", a.scale}, {"surd", "sqrt2"}};
}

inline void to_json(json& j, const CoverFamily& f)
{
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FiniteCover>) {
                j = json{{"kind", "finite"}, {"members", v.members}};
            } else if constexpr (std::is_same_v<T, PuncturedCover>) {
                j = json{{"kind", "punctured"}, {"center", v.center}};
            } else {
                j = json{{"kind", "shrinking_around"}, {"axis", v.axis}, {"alpha", v.alpha},
                         {"alpha_lo", v.alpha_lo}, {"alpha_hi", v.alpha_hi}};
            }
        },
        f.kind);
}

inline void to_json(json& j, const WayBelowVerdict& v)
{
    j = json{{"holds", v.holds}};
    j["certificate"] = v.certificate ? json{{"kernel", v.certificate->kernel}} : json(nullptr);
    j["refutation"] = v.refutation ? json(*v.refutation) : json(nullptr);
}

inline void to_json(json& j, const MissedPoint& m) { j = json{{"subfamily", m.subfamily}, {"point", m.point}}; }

inline void to_json(json& j, const RefutationCheck& r)
{
    j = json{{"ok", r.ok}, {"reason", r.reason}, {"exhibits", r.exhibits}};
}

inline void to_json(json& j, const OracleResult& r)
{
    j = json{{"verdict", r.verdict ? json(*r.verdict) : json(nullptr)},
             {"defeating_cover", r.defeating_cover ? json(*r.defeating_cover) : json(nullptr)},
             {"covers_tried", r.covers_tried}};
}

inline void to_json(json& j, const BasisRectangle& r) { j = json{{"left", r.left}, {"right", r.right}}; }

inline void to_json(json& j, const CellSelection& c)
{
    j = json{{"cell", c.cell}, {"family", c.family}, {"u", c.u}, {"v", c.v}};
}

inline void to_json(json& j, const InterpolationTrace& t)
{
    j = json{{"refinement_level", t.refinement_level}, {"per_cell", t.per_cell}, {"selected", t.selected}};
    if (t.empty_product)
        j["empty_product"] = json{{"u_s", t.empty_product->first}, {"v_t", t.empty_product->second}};
}

inline void to_json(json& j, const Interpolation& r)
{
    j = json{{"u_s", r.u_s}, {"v_t", r.v_t}, {"trace", r.trace}};
}

inline void to_json(json& j, const AscendingSequence& s)
{
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, GrowingBoxRule>)
                j = json{{"kind", "growing_box"}, {"dim", r.dim}, {"base", r.base}, {"step", r.step}};
            else if constexpr (std::is_same_v<T, ConstantRule>)
                j = json{{"kind", "constant"}, {"space", *r.space}};
            else
                j = json{{"kind", "product"}, {"left", *r.left}, {"right", *r.right}};
        },
        s.rule());
    j["max_depth"] = s.max_depth();
    j["offset"] = s.offset();
}

inline void to_json(json& j, const ColimitOpen& f)
{
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, ExplicitStages>) j = json{{"kind", "explicit"}, {"stages", r.stages}};
            else if constexpr (std::is_same_v<T, FullStages>) j = json{{"kind", "full"}};
            else if constexpr (std::is_same_v<T, DiagonalStrip>) j = json{{"kind", "diagonal_strip"}};
            else
                j = json{{"kind", "affine_interval"}, {"lo0", r.lo0},         {"lo_step", r.lo_step},
                         {"hi0", r.hi0},              {"hi_step", r.hi_step}, {"lo_open", r.lo_open},
                         {"hi_open", r.hi_open}};
        },
        f.rule());
    j["offset"] = f.offset();
}

inline void to_json(json& j, const StageEvidence& e)
{
    j = json{{"verdict", e.verdict}, {"trace", e.trace ? json(*e.trace) : json(nullptr)}};
}

inline void to_json(json& j, const ChainWitness& c)
{
    j = json{{"u_chain", c.u_chain}, {"v_chain", c.v_chain}, {"evidence", c.evidence},
             {"point", json{c.x, c.y}}, {"depth", c.depth}};
}

inline const char* to_string(ProbeStatus s)
{
    switch (s) {
        case ProbeStatus::passed: return "passed";
        case ProbeStatus::failed: return "failed";
        case ProbeStatus::skipped: return "skipped";
    }
    return "?";
}

inline void to_json(json& j, const ProbeOutcome& p)
{
    j = json{{"point", json{p.x, p.y}}, {"status", to_string(p.status)}, {"first_stage", p.first_stage},
             {"problems", p.problems}};
}

inline void to_json(json& j, const CoverReport& r) { j = json{{"ok", r.ok()}, {"probes", r.probes}}; }

inline void to_json(json& j, const OpenCheck& c) { j = json{{"ok", c.ok}, {"reason", c.reason}}; }

inline void to_json(json& j, const WedgePoint& p)
{
    j = json{{"circle_index", p.circle_index()}, {"theta", p.theta()}};
}

inline void to_json(json& j, const ASetQuery& q) { j = json{{"r", q.r}, {"point", q.point}}; }

inline void to_json(json& j, const SeparationWitness& w)
{
    std::size_t members = 0;
    for (const auto& p : w.probes) members += p.member ? 1 : 0;
    j = json{{"n", w.n},
             {"radius", w.radius},
             {"pi_lo", w.pi_lo},
             {"probe_count", w.probes.size()},
             {"probes_in_a", members},
             {"ok", w.ok()}};
}

inline void to_json(json& j, const LimitWitness& w)
{
    j = json{{"query", w.query},
             {"circle", w.circle},
             {"zero_based_circle", w.circle - 1},
             {"delta", w.delta},
             {"member", a_membership(w.query)}};
}

inline void to_json(json& j, const NotClosedDemo& d)
{
    j = json{{"separations", d.separations}, {"limit_witnesses", d.limit_witnesses}, {"index_shift", 1}};
}

/// Wraps a payload as a schema-versioned document.
inline json document(const std::string& kind, json payload)
{
    json j = json::object();
    j["schema"] = schema_version;
    j["kind"] = kind;
    j["result"] = std::move(payload);
    return j;
}

// ---- decoding ---------------------------------------------------------------

namespace detail {

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline std::string text(const json& j, const char* what)
{
    if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

inline std::size_t natural(const json& j, const char* what)
{
    if (!j.is_number_unsigned()) throw ParseError(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

inline bool flag(const json& j, const char* key, bool fallback)
{
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) throw ParseError(std::string(key) + " must be a boolean");
    return j.at(key).get<bool>();
}

} // namespace detail

/// Accepts "p/q" strings and integers.
inline Rational parse_rational(const json& j)
{
    try {
        if (j.is_number_integer()) return Rational(j.get<Rational::int_type>());
        return Rational::parse(detail::text(j, "rational"));
    } catch (const std::logic_error& e) {
        throw ParseError(e.what());
    } catch (const std::overflow_error& e) {
        throw ParseError(e.what());
    }
}

inline Interval parse_interval(const json& j)
{
    return Interval::make(parse_rational(detail::field(j, "lo")), parse_rational(detail::field(j, "hi")),
                          detail::flag(j, "lo_open", true), detail::flag(j, "hi_open", true));
}

inline Box parse_box(const json& j)
{
    if (!j.is_array()) throw ParseError("box must be an array of intervals");
    Box b;
    for (const auto& iv : j) b.dims.push_back(parse_interval(iv));
    return b;
}

inline BoxUnion parse_union(const json& j)
{
    BoxUnion u(detail::natural(detail::field(j, "dim"), "dim"));
    const auto& boxes = detail::field(j, "boxes");
    if (!boxes.is_array()) throw ParseError("boxes must be an array");
    for (const auto& b : boxes) u.boxes.push_back(parse_box(b));
    u.check();
    return u;
}

inline Point parse_point(const json& j)
{
    if (!j.is_array()) throw ParseError("point must be an array of rationals");
    Point p;
    for (const auto& c : j) p.push_back(parse_rational(c));
    return p;
}

inline Space parse_space(const json& j)
{
    const std::string kind = detail::text(detail::field(j, "kind"), "kind");
    if (kind == "euclidean_full") return Space::euclidean(detail::natural(detail::field(j, "dim"), "dim"));
    if (kind == "euclidean_box") return Space::box(parse_box(detail::field(j, "carrier")));
    if (kind == "rational_trace") return Space::rational(parse_box(detail::field(j, "carrier")));
    if (kind == "product")
        return Space::product(parse_space(detail::field(j, "left")), parse_space(detail::field(j, "right")));
    throw ParseError("unknown space kind \"" + kind + "\"");
}

inline AscendingSequence parse_sequence(const json& j)
{
    const std::string kind = detail::text(detail::field(j, "kind"), "kind");
    const std::size_t depth = detail::natural(detail::field(j, "max_depth"), "max_depth");
    const std::size_t offset = j.contains("offset") ? detail::natural(j.at("offset"), "offset") : 0;
    if (kind == "growing_box") {
        const Rational base = parse_rational(detail::field(j, "base"));
        const Rational step = parse_rational(detail::field(j, "step"));
        if (base.sign() < 0 || step.sign() < 0) throw ParseError("growing box needs base, step >= 0");
        return {GrowingBoxRule{detail::natural(detail::field(j, "dim"), "dim"), base, step}, depth, offset};
    }
    if (kind == "constant")
        return {ConstantRule{std::make_shared<const Space>(parse_space(detail::field(j, "space")))}, depth, offset};
    if (kind == "product") {
        return {ProductRule{std::make_shared<const AscendingSequence>(parse_sequence(detail::field(j, "left"))),
                            std::make_shared<const AscendingSequence>(parse_sequence(detail::field(j, "right")))},
                depth, offset};
    }
    throw ParseError("unknown sequence kind \"" + kind + "\"");
}

inline ColimitOpen parse_family(const json& j)
{
    const std::string kind = detail::text(detail::field(j, "kind"), "kind");
    const std::size_t offset = j.contains("offset") ? detail::natural(j.at("offset"), "offset") : 0;
    if (kind == "explicit") {
        ExplicitStages e;
        const auto& stages = detail::field(j, "stages");
        if (!stages.is_array()) throw ParseError("stages must be an array");
        for (const auto& s : stages) e.stages.push_back(parse_union(s));
        return {e, offset};
    }
    if (kind == "full") return {FullStages{}, offset};
    if (kind == "diagonal_strip") return {DiagonalStrip{}, offset};
    if (kind == "affine_interval") {
        return {AffineInterval{parse_rational(detail::field(j, "lo0")), parse_rational(detail::field(j, "lo_step")),
                               parse_rational(detail::field(j, "hi0")), parse_rational(detail::field(j, "hi_step")),
                               detail::flag(j, "lo_open", true), detail::flag(j, "hi_open", true)},
                offset};
    }
    throw ParseError("unknown family kind \"" + kind + "\"");
}

/// Reads a JSON argument: inline JSON if it starts with '{' or '[', else a file path.
inline json load_json(const std::string& arg)
{
    std::string content;
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        content = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw ParseError("cannot read " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        content = ss.str();
    }
    try {
        return json::parse(content);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
}

} // namespace waybelow

#endif // WAYBELOW_IO_HPP
