#ifndef WAYBELOW_PROPERTIES_HPP
#define WAYBELOW_PROPERTIES_HPP

#include "generators.hpp"
#include "io.hpp"

#include <functional>

namespace waybelow {

struct RunConfig
{
    std::uint64_t seed = 0;
    std::size_t case_count = 200;
    std::size_t depth = 8;
    std::size_t oracle_budget = 50;
};

/// Result of one law on one case. `relevant` is false when the law's
/// hypothesis did not hold (the case passes vacuously).
struct CaseOutcome
{
    bool ok = true;
    bool relevant = true;
    json detail;
};

struct LawResult
{
    std::string name;
    std::string module;
    std::size_t cases = 0;
    std::size_t relevant = 0;
    std::size_t failures = 0;
    /// First failing case: its index and details.
    std::optional<std::size_t> counterexample_case;
    json counterexample;

    [[nodiscard]] bool passed() const { return failures == 0; }
};

struct PropertyReport
{
    RunConfig config;
    std::vector<LawResult> laws;

    [[nodiscard]] bool ok() const
    {
        return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.passed(); });
    }
};

inline void to_json(json& j, const RunConfig& c)
{
    j = json{{"seed", c.seed}, {"case_count", c.case_count}, {"depth", c.depth}, {"oracle_budget", c.oracle_budget}};
}

inline void to_json(json& j, const LawResult& l)
{
    j = json{{"name", l.name},
             {"module", l.module},
             {"cases", l.cases},
             {"relevant", l.relevant},
             {"failures", l.failures},
             {"passed", l.passed()}};
    if (l.counterexample_case) {
        j["counterexample_case"] = *l.counterexample_case;
        j["counterexample"] = l.counterexample;
    }
}

inline void to_json(json& j, const PropertyReport& r)
{
    j = json{{"config", r.config}, {"laws", r.laws}, {"ok", r.ok()}};
    if (r.config.case_count == 0) j["note"] = "zero cases: every law passes vacuously";
}

/// A group of laws sharing one case generator: `run` returns one outcome per
/// law name, in order.
struct LawGroup
{
    std::string module;
    std::string stream;
    std::vector<std::string> names;
    std::function<std::vector<CaseOutcome>(gen::CaseRng&, const RunConfig&)> run;
    /// Overrides cfg.case_count when set.
    std::optional<std::size_t> case_count = std::nullopt;
};

inline std::vector<LawResult> run_group(const LawGroup& g, const RunConfig& cfg)
{
    std::vector<LawResult> out;
    for (const auto& n : g.names) out.push_back(LawResult{n, g.module, 0, 0, 0, std::nullopt, json()});
    const std::size_t count = g.case_count.value_or(cfg.case_count);
    for (std::size_t i = 0; i < count; ++i) {
        gen::CaseRng rng(cfg.seed, g.stream, i);
        std::vector<CaseOutcome> res;
        try {
            res = g.run(rng, cfg);
        } catch (const std::exception& e) {
            res.assign(g.names.size(), CaseOutcome{false, true, json{{"exception", e.what()}}});
        }
        for (std::size_t k = 0; k < out.size(); ++k) {
            auto& law = out[k];
            const auto& r = res.at(k);
            ++law.cases;
            if (r.relevant) ++law.relevant;
            if (!r.ok) {
                ++law.failures;
                if (!law.counterexample_case) {
                    law.counterexample_case = i;
                    law.counterexample = r.detail;
                }
            }
        }
    }
    return out;
}

namespace laws {

inline json set_case(const Space& space, const BoxUnion& s, const BoxUnion& t)
{
    return json{{"space", space}, {"s", s}, {"t", t}};
}

/// A Euclidean or rational-trace space of dimension 1 or 2 with an open t
/// and a set s, half the time well inside t.
struct WayBelowCase
{
    Space space;
    BoxUnion s;
    BoxUnion t;
};

inline WayBelowCase way_below_case(gen::CaseRng& rng)
{
    const std::size_t d = rng.coin() ? 1 : 2;
    const bool rational = rng.chance(1, 5);
    Space space = rational ? Space::rational(gen::carrier_box(rng, d)) : gen::euclidean_space(rng, d);
    BoxUnion t = gen::open_union(rng, d, 3);
    BoxUnion s(d);
    if (rational && rng.coin()) s = gen::point_set(rng, d, 3);
    else if (rng.coin()) s = gen::inner_set(rng, t, 2);
    else s = gen::any_set(rng, d, 2);
    return {std::move(space), std::move(s), std::move(t)};
}

inline bool holds(const Space& space, const BoxUnion& s, const BoxUnion& t) { return way_below(space, s, t).holds; }

inline LawGroup right_monotonicity()
{
    return {"waybelow", "right_monotonicity", {"right_monotonicity"}, [](gen::CaseRng& rng, const RunConfig&) {
                auto c = way_below_case(rng);
                const BoxUnion q = unite(c.t, gen::open_union(rng, c.t.dim, 2));
                CaseOutcome o;
                o.relevant = holds(c.space, c.s, c.t);
                o.ok = !o.relevant || holds(c.space, c.s, q);
                if (!o.ok) o.detail = set_case(c.space, c.s, c.t), o.detail["q"] = q;
                return std::vector<CaseOutcome>{o};
            }};
}

inline LawGroup left_monotonicity()
{
    return {"waybelow", "left_monotonicity", {"left_monotonicity"}, [](gen::CaseRng& rng, const RunConfig&) {
                auto c = way_below_case(rng);
                const BoxUnion r = intersect(c.s, gen::any_set(rng, c.s.dim, 2));
                CaseOutcome o;
                o.relevant = holds(c.space, c.s, c.t);
                o.ok = contains(c.s, r) && (!o.relevant || holds(c.space, r, c.t));
                if (!o.ok) o.detail = set_case(c.space, c.s, c.t), o.detail["r"] = r;
                return std::vector<CaseOutcome>{o};
            }};
}

inline LawGroup finite_unions()
{
    return {"waybelow", "finite_unions", {"finite_unions"}, [](gen::CaseRng& rng, const RunConfig&) {
                auto c = way_below_case(rng);
                std::vector<BoxUnion> parts{c.s};
                for (int i = 0; i < 2; ++i) {
                    if (c.space.has_rational_factor()) parts.push_back(gen::point_set(rng, c.s.dim, 2));
                    else parts.push_back(rng.coin() ? gen::inner_set(rng, c.t, 2) : gen::any_set(rng, c.s.dim, 1));
                }
                BoxUnion all(c.s.dim);
                bool each = true;
                for (const auto& p : parts) {
                    each = each && holds(c.space, p, c.t);
                    all = unite(all, p);
                }
                CaseOutcome o;
                o.relevant = each;
                o.ok = !each || holds(c.space, all, c.t);
                if (!o.ok) o.detail = json{{"space", c.space}, {"parts", parts}, {"t", c.t}};
                return std::vector<CaseOutcome>{o};
            }};
}

/// Every point of an open w lies in a grid box way-below w; checked at the
/// sample point of each cell of w.
inline LawGroup basis()
{
    return {"waybelow", "basis", {"basis"}, [](gen::CaseRng& rng, const RunConfig&) {
                const std::size_t d = rng.coin() ? 1 : 2;
                const Space space = gen::euclidean_space(rng, d);
                const BoxUnion w = restrict_to_carrier(space, gen::open_union(rng, d, 3));
                CaseOutcome o;
                o.relevant = !w.empty();
                const detail::Grid g = detail::grid_with_carrier(space, {&w});
                for (const auto& cell : detail::cells_of(g, w)) {
                    const Point p = g.sample(cell);
                    const BoxUnion v = core_compact_witness(space, p, w);
                    if (v.boxes.size() != 1 || !v.contains(p) || !holds(space, v, w)) {
                        o.ok = false;
                        o.detail = json{{"space", space}, {"w", w}, {"point", p}, {"v", v}};
                        break;
                    }
                }
                return std::vector<CaseOutcome>{o};
            }};
}

inline Space line_space(gen::CaseRng& rng, bool closed_carrier = false)
{
    return gen::euclidean_space(rng, 1, closed_carrier);
}

/// Open box around the closure of u, widened by `margin`.
inline BoxUnion fattened(const BoxUnion& u, const Rational& margin)
{
    const auto hull = bounding_box(u);
    if (!hull) return BoxUnion(u.dim);
    Box b;
    for (const auto& iv : hull->dims) b.dims.push_back(Interval::open(iv.lo - margin, iv.hi + margin));
    return BoxUnion::of(b);
}

inline LawGroup projection_image()
{
    return {"waybelow", "projection_image", {"projection_image"}, [](gen::CaseRng& rng, const RunConfig&) {
                const Space x = line_space(rng);
                const Space y = line_space(rng);
                const Space prod = Space::product(x, y);
                const BoxUnion s = gen::any_set(rng, 1, 2);
                const BoxUnion t = gen::any_set(rng, 1, 2);
                const BoxUnion st = restrict_to_carrier(prod, product_open(s, t));
                BoxUnion w = gen::open_union(rng, 2, 2);
                if (rng.chance(2, 3)) w = unite(w, fattened(st, Rational(1, 4)));
                CaseOutcome o;
                o.relevant = holds(prod, st, w);
                if (o.relevant) {
                    const bool left = holds(x, project(prod, st, Side::left), project(prod, w, Side::left));
                    const bool right = holds(y, project(prod, st, Side::right), project(prod, w, Side::right));
                    o.ok = left && right;
                }
                if (!o.ok) o.detail = json{{"x", x}, {"y", y}, {"s", s}, {"t", t}, {"w", w}};
                return std::vector<CaseOutcome>{o};
            }};
}

inline LawGroup product_core_compactness()
{
    return {"waybelow", "product_core_compactness", {"product_core_compactness"},
            [](gen::CaseRng& rng, const RunConfig&) {
                const Space prod = Space::product(line_space(rng), line_space(rng));
                const BoxUnion u = restrict_to_carrier(prod, gen::open_union(rng, 2, 3));
                CaseOutcome o;
                o.relevant = !u.empty();
                const detail::Grid g = detail::grid_with_carrier(prod, {&u});
                for (const auto& cell : detail::cells_of(g, u)) {
                    const Point p = g.sample(cell);
                    const BoxUnion v = core_compact_witness(prod, p, u);
                    if (!v.contains(p) || !is_open_in(prod, v) || !holds(prod, v, u)) {
                        o.ok = false;
                        o.detail = json{{"space", prod}, {"u", u}, {"point", p}, {"v", v}};
                        break;
                    }
                }
                return std::vector<CaseOutcome>{o};
            }};
}

/// Relevant cases are those where the oracle reached a verdict.
inline LawGroup oracle_agreement()
{
    return {"waybelow", "oracle_agreement", {"oracle_agreement"}, [](gen::CaseRng& rng, const RunConfig& cfg) {
                const std::size_t d = rng.coin() ? 1 : 2;
                const Space space = gen::euclidean_space(rng, d);
                const BoxUnion t = gen::open_union(rng, d, 3);
                const BoxUnion s = rng.coin() ? gen::inner_set(rng, t, 2) : gen::any_set(rng, d, 2);
                const auto oracle = oracle_way_below(space, s, t, cfg.oracle_budget);
                CaseOutcome o;
                o.relevant = oracle.verdict.has_value();
                o.ok = !o.relevant || *oracle.verdict == holds(space, s, t);
                if (!o.ok) o.detail = set_case(space, s, t), o.detail["oracle"] = oracle;
                return std::vector<CaseOutcome>{o};
            }};
}

/// Failed verdicts come with refutations that survive verification.
inline LawGroup refutation_soundness()
{
    return {"waybelow", "refutation_soundness", {"refutation_soundness"}, [](gen::CaseRng& rng, const RunConfig&) {
                auto c = way_below_case(rng);
                const auto v = way_below(c.space, c.s, c.t);
                CaseOutcome o;
                o.relevant = !v.holds;
                o.ok = v.holds ? (v.certificate && !v.refutation) : (v.refutation && !v.certificate);
                if (o.ok && !v.holds) {
                    const auto chk = verify_refutation(c.space, c.s, c.t, *v.refutation, 5);
                    o.ok = chk.ok;
                    if (!o.ok) o.detail = set_case(c.space, c.s, c.t), o.detail["check"] = chk;
                }
                if (!o.ok && o.detail.is_null()) o.detail = set_case(c.space, c.s, c.t), o.detail["verdict"] = v;
                return std::vector<CaseOutcome>{o};
            }};
}

/// W is a union of up to 4 open rectangles, one of which holds closure(S × T).
struct InterpolationCase
{
    Space x;
    Space y;
    BoxUnion s;
    BoxUnion t;
    BoxUnion w;
};

inline InterpolationCase interpolation_case(gen::CaseRng& rng)
{
    // Closed carriers keep closure(S × T) compact inside the carrier.
    InterpolationCase c{line_space(rng, true), line_space(rng, true), BoxUnion(1), BoxUnion(1), BoxUnion(2)};
    const Box r = gen::open_box(rng, 2);
    const BoxUnion left = BoxUnion::of(Box{r.dims[0]});
    const BoxUnion right = BoxUnion::of(Box{r.dims[1]});
    if (!rng.chance(1, 10)) c.s = gen::inner_set(rng, left, 2);
    if (!rng.chance(1, 10)) c.t = gen::inner_set(rng, right, 2);
    c.w.boxes.push_back(r);
    const auto extra = rng.between(0, 3);
    for (std::int64_t i = 0; i < extra; ++i) c.w.boxes.push_back(gen::open_box(rng, 2));
    return c;
}

inline json interpolation_json(const InterpolationCase& c)
{
    return json{{"x_space", c.x}, {"y_space", c.y}, {"s", c.s}, {"t", c.t}, {"w", c.w}};
}

/// Postconditions of interpolate, as a list of failures.
inline std::vector<std::string> interpolation_problems(const Space& x, const Space& y, const BoxUnion& s,
                                                       const BoxUnion& t, const BoxUnion& w, const Interpolation& r)
{
    std::vector<std::string> bad;
    if (!contains(r.u_s, restrict_to_carrier(x, s))) bad.emplace_back("U_S misses S");
    if (!contains(r.v_t, restrict_to_carrier(y, t))) bad.emplace_back("V_T misses T");
    if (!is_open_in(x, r.u_s)) bad.emplace_back("U_S not open");
    if (!is_open_in(y, r.v_t)) bad.emplace_back("V_T not open");
    if (!way_below(Space::product(x, y), product_open(r.u_s, r.v_t), w).holds) bad.emplace_back("U_S x V_T not way-below W");
    return bad;
}

inline LawGroup interpolation_laws()
{
    return {"interpolation",
            "interpolation",
            {"interpolation_containment", "interpolation_postconditions", "interpolation_replay",
             "interpolation_idempotent"},
            [](gen::CaseRng& rng, const RunConfig&) {
                const auto c = interpolation_case(rng);
                const auto r = interpolate(c.x, c.y, c.s, c.t, c.w);
                std::vector<CaseOutcome> out(4);
                const json base = interpolation_json(c);
                auto fail = [&](std::size_t k, json extra) {
                    out[k].ok = false;
                    out[k].detail = base;
                    out[k].detail["result"] = r;
                    out[k].detail["problem"] = std::move(extra);
                };

                if (!contains(r.u_s, restrict_to_carrier(c.x, c.s)) || !contains(r.v_t, restrict_to_carrier(c.y, c.t)))
                    fail(0, "output misses the input");
                if (auto bad = interpolation_problems(c.x, c.y, c.s, c.t, c.w, r); !bad.empty()) fail(1, bad);
                const auto [u, v] = replay(r.trace, 1, 1);
                if (json(u).dump() != json(r.u_s).dump() || json(v).dump() != json(r.v_t).dump())
                    fail(2, json{{"replayed_u", u}, {"replayed_v", v}});
                const auto again = interpolate(c.x, c.y, r.u_s, r.v_t, c.w);
                if (auto bad = interpolation_problems(c.x, c.y, r.u_s, r.v_t, c.w, again); !bad.empty())
                    fail(3, json{{"second", again}, {"problems", bad}});
                return out;
            }};
}

/// Sequences X_n = Y_n-style growing intervals and a coherent family W.
struct ColimitCase
{
    AscendingSequence sx;
    AscendingSequence sy;
    ColimitOpen w;
};

inline AscendingSequence growing_line(gen::CaseRng& rng, std::size_t depth)
{
    const Rational base = rng.pick(std::vector<Rational>{Rational(1), Rational(3, 2), Rational(2)});
    const Rational step = rng.pick(std::vector<Rational>{Rational(1, 2), Rational(1)});
    return AscendingSequence::growing_box(1, base, step, depth);
}

inline ColimitCase colimit_case(gen::CaseRng& rng, std::size_t depth)
{
    ColimitCase c{growing_line(rng, depth), growing_line(rng, depth), ColimitOpen(DiagonalStrip{})};
    const auto kind = rng.between(0, 2);
    if (kind == 1) {
        c.w = ColimitOpen(FullStages{});
    } else if (kind == 2) {
        // A fixed open set of the plane, traced on each stage.
        BoxUnion fixed(2);
        const auto n = rng.between(1, 3);
        for (std::int64_t i = 0; i < n; ++i) {
            Box b = gen::open_box(rng, 2);
            for (auto& iv : b.dims) iv = Interval::open(iv.lo * Rational(3), iv.hi * Rational(3));
            fixed.boxes.push_back(b);
        }
        const auto prod = AscendingSequence::product(c.sx, c.sy);
        ExplicitStages st;
        for (std::size_t k = 0; k <= depth; ++k) st.stages.push_back(restrict_to_carrier(prod.stage(k), fixed));
        c.w = ColimitOpen(std::move(st));
    }
    return c;
}

inline json colimit_json(const ColimitCase& c)
{
    return json{{"seq_x", c.sx}, {"seq_y", c.sy}, {"w", c.w}};
}

/// A random point of the set, at the sample point of one of its cells.
inline std::optional<Point> random_point(gen::CaseRng& rng, const BoxUnion& u)
{
    const auto cells = elementary_cells({u});
    if (cells.empty()) return std::nullopt;
    return sample_point(rng.pick(cells));
}

inline LawGroup colimit_laws()
{
    return {"colimit",
            "colimit",
            {"chain_invariants", "chain_union_open", "stage_zero_reduction", "chain_determinism"},
            [](gen::CaseRng& rng, const RunConfig& cfg) {
                const std::size_t depth = cfg.depth;
                const auto c = colimit_case(rng, depth);
                const auto prod = AscendingSequence::product(c.sx, c.sy);
                std::vector<CaseOutcome> out(4);
                const auto p0 = random_point(rng, c.w.at(prod, 0));
                // A point that first appears at a later stage, when there is one.
                const std::size_t k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(std::max<std::size_t>(depth, 1))));
                std::optional<Point> pk;
                if (k <= depth) pk = random_point(rng, difference(c.w.at(prod, k), c.w.at(prod, k - 1)));

                const json base = colimit_json(c);
                auto fail = [&](std::size_t i, json extra) {
                    out[i].ok = false;
                    out[i].detail = base;
                    out[i].detail["problem"] = std::move(extra);
                };
                if (!p0) {
                    out[0].relevant = out[1].relevant = out[3].relevant = false;
                } else {
                    const Point x{(*p0)[0]};
                    const Point y{(*p0)[1]};
                    const auto cw = build_chain(c.sx, c.sy, c.w, x, y, depth);
                    if (auto bad = verify_chain(c.sx, c.sy, c.w, cw); !bad.empty())
                        fail(0, json{{"point", *p0}, {"problems", bad}});
                    const ColimitOpen uf = chain_union(c.sx, cw.u_chain);
                    const ColimitOpen vf = chain_union(c.sy, cw.v_chain);
                    for (std::size_t p = 0; p <= depth && out[1].ok; ++p) {
                        const auto cu = check_open_at(c.sx, uf, p);
                        const auto cv = check_open_at(c.sy, vf, p);
                        if (!cu || !cv) fail(1, json{{"point", *p0}, {"stage", p}, {"u", cu}, {"v", cv}});
                    }
                    const auto again = build_chain(c.sx, c.sy, c.w, x, y, depth);
                    if (json(again).dump() != json(cw).dump()) fail(3, json{{"point", *p0}});
                }
                if (!pk) {
                    out[2].relevant = false;
                } else {
                    const auto rep =
                        rectangle_cover_check(c.sx, c.sy, c.w, {{Point{(*pk)[0]}, Point{(*pk)[1]}}}, depth);
                    const auto& po = rep.probes.front();
                    if (po.status != ProbeStatus::passed || po.first_stage != k) fail(2, json{{"probe", po}});
                }
                return out;
            }};
}

/// Ascending chains of opens on growing boxes, either explicit unions or an
/// affine interval rule, and their unions.
inline LawGroup union_openness_laws(std::optional<std::size_t> cases = std::nullopt)
{
    LawGroup g{"colimit",
               "union_openness",
               {"union_of_chain_open", "closed_face_rejected"},
               [](gen::CaseRng& rng, const RunConfig& cfg) {
                   const std::size_t depth = cfg.depth;
                   const std::size_t d = rng.coin() ? 1 : 2;
                   const Rational base = rng.pick(std::vector<Rational>{Rational(1), Rational(3, 2)});
                   const auto seq = AscendingSequence::growing_box(d, base, Rational(1), depth);
                   std::vector<BoxUnion> chain;
                   if (d == 1 && rng.coin()) {
                       const Rational lo0(-rng.between(0, 4), 4);
                       const Rational hi0(rng.between(1, 4), 4);
                       const Rational lo_step(-rng.between(0, 4), 4);
                       const Rational hi_step(rng.between(0, 4), 4);
                       const ColimitOpen rule(AffineInterval{lo0, lo_step, hi0, hi_step, true, true});
                       for (std::size_t n = 0; n <= depth; ++n) chain.push_back(rule.at(seq, n));
                   } else {
                       // Opens of ℝ^d grown by a box now and then, traced on each stage.
                       BoxUnion acc = gen::open_union(rng, d, 2);
                       for (std::size_t n = 0; n <= depth; ++n) {
                           if (n > 0 && rng.coin()) {
                               Box b = gen::open_box(rng, d);
                               const Rational scale(static_cast<std::int64_t>(n) + 1);
                               for (auto& iv : b.dims) iv = Interval::open(iv.lo * scale, iv.hi * scale);
                               acc = unite(acc, BoxUnion::of(b));
                           }
                           chain.push_back(normalize(restrict_to_carrier(seq.stage(n), acc)));
                       }
                   }
                   std::vector<CaseOutcome> out(2);
                   const ColimitOpen fam = chain_union(seq, chain);
                   for (std::size_t p = 0; p <= depth; ++p) {
                       if (const auto chk = check_open_at(seq, fam, p); !chk) {
                           out[0].ok = false;
                           out[0].detail = json{{"seq", seq}, {"chain", chain}, {"stage", p}, {"check", chk}};
                           break;
                       }
                   }

                   // [a, a + n·step) on ℝ: empty at stage 0, never open after.
                   const Rational a(rng.between(-8, 8), 4);
                   const Rational step(rng.between(1, 8), 4);
                   const ColimitOpen closed_face(AffineInterval{a, Rational(0), a, step, false, true});
                   const auto line = AscendingSequence::constant(Space::euclidean(1), depth);
                   for (std::size_t p = 0; p <= depth; ++p) {
                       if (static_cast<bool>(check_open_at(line, closed_face, p)) != (p == 0)) {
                           out[1].ok = false;
                           out[1].detail = json{{"family", closed_face}, {"stage", p}};
                           break;
                       }
                   }
                   return out;
               },
               cases};
    return g;
}

} // namespace laws

inline std::vector<LawGroup> way_below_laws()
{
    return {laws::right_monotonicity(), laws::left_monotonicity(), laws::finite_unions(),
            laws::basis(),              laws::projection_image(),  laws::product_core_compactness()};
}

/// Every law group, in report order.
inline std::vector<LawGroup> all_law_groups()
{
    auto g = way_below_laws();
    g.push_back(laws::oracle_agreement());
    g.push_back(laws::refutation_soundness());
    g.push_back(laws::interpolation_laws());
    g.push_back(laws::colimit_laws());
    g.push_back(laws::union_openness_laws());
    return g;
}

inline PropertyReport run_groups(const std::vector<LawGroup>& groups, const RunConfig& cfg)
{
    PropertyReport rep{cfg, {}};
    for (const auto& g : groups) {
        auto res = run_group(g, cfg);
        rep.laws.insert(rep.laws.end(), res.begin(), res.end());
    }
    return rep;
}

inline PropertyReport run_properties(const RunConfig& cfg = {}) { return run_groups(all_law_groups(), cfg); }

} // namespace waybelow

#endif // WAYBELOW_PROPERTIES_HPP
