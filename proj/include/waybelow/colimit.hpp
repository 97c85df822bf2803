#ifndef WAYBELOW_COLIMIT_HPP
#define WAYBELOW_COLIMIT_HPP

#include "interpolation.hpp"

#include <memory>
#include <string>
#include <variant>

namespace waybelow {

/// Stage n is EuclideanBox([-(base + step·n), base + step·n]^dim).
struct GrowingBoxRule
{
    std::size_t dim = 1;
    Rational base{1};
    Rational step{1};
};

/// Every stage is the same space.
struct ConstantRule
{
    std::shared_ptr<const Space> space;
};

class AscendingSequence;

/// Stage n is the product of the factors' stage n.
struct ProductRule
{
    std::shared_ptr<const AscendingSequence> left;
    std::shared_ptr<const AscendingSequence> right;
};

/// Rule-generated chain X_0 ⊆ X_1 ⊆ ... of carriers, truncated at max_depth.
/// Transition maps are the carrier inclusions.
class AscendingSequence
{
public:
    using Rule = std::variant<GrowingBoxRule, ConstantRule, ProductRule>;

    AscendingSequence(Rule rule, std::size_t max_depth, std::size_t offset = 0)
        : rule_(std::move(rule)), max_depth_(max_depth), offset_(offset)
    {
    }

    static AscendingSequence growing_box(std::size_t dim, Rational base, Rational step, std::size_t max_depth)
    {
        return {GrowingBoxRule{dim, base, step}, max_depth};
    }
    static AscendingSequence constant(Space space, std::size_t max_depth)
    {
        return {ConstantRule{std::make_shared<const Space>(std::move(space))}, max_depth};
    }
    static AscendingSequence product(const AscendingSequence& a, const AscendingSequence& b)
    {
        return {ProductRule{std::make_shared<const AscendingSequence>(a), std::make_shared<const AscendingSequence>(b)},
                std::min(a.max_depth(), b.max_depth())};
    }

    [[nodiscard]] const Rule& rule() const { return rule_; }
    [[nodiscard]] std::size_t max_depth() const { return max_depth_; }
    [[nodiscard]] std::size_t offset() const { return offset_; }

    [[nodiscard]] std::size_t dim() const { return stage(0).dim(); }

    [[nodiscard]] Space stage(std::size_t n) const
    {
        const std::size_t idx = n + offset_;
        return std::visit(
            [&](const auto& r) -> Space {
                using T = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<T, GrowingBoxRule>) {
                    const Rational half = r.base + r.step * Rational(static_cast<std::int64_t>(idx));
                    Box b;
                    for (std::size_t k = 0; k < r.dim; ++k) b.dims.push_back(Interval::closed(-half, half));
                    return Space::box(std::move(b));
                } else if constexpr (std::is_same_v<T, ConstantRule>) {
                    return *r.space;
                } else {
                    return Space::product(r.left->stage(idx), r.right->stage(idx));
                }
            },
            rule_);
    }

    /// The sequence n ↦ X_{n+k}, with max_depth reduced by k.
    [[nodiscard]] AscendingSequence shifted(std::size_t k) const
    {
        if (k > max_depth_) throw Error(ErrorKind::depth_exceeded, "shift beyond max depth");
        return {rule_, max_depth_ - k, offset_ + k};
    }

    /// Throws DepthExceeded if n > max_depth.
    void require_depth(std::size_t n) const
    {
        if (n > max_depth_)
            throw Error(ErrorKind::depth_exceeded,
                        "stage " + std::to_string(n) + " beyond max depth " + std::to_string(max_depth_));
    }

private:
    Rule rule_;
    std::size_t max_depth_;
    std::size_t offset_;
};

/// Stage n given explicitly.
struct ExplicitStages
{
    std::vector<BoxUnion> stages;
};

/// Stage n is the whole (bounded) carrier of the stage.
struct FullStages
{
};

/// Staircase strip around the diagonal of a 2-d product: the union of the
/// open squares (j/2 - 1/2, j/2 + 1/2)^2 over all integers j, cut to the stage.
struct DiagonalStrip
{
};

/// One-dimensional stages (lo0 + lo_step·n, hi0 + hi_step·n) with fixed
/// endpoint flags, cut to the stage.
struct AffineInterval
{
    Rational lo0;
    Rational lo_step;
    Rational hi0;
    Rational hi_step;
    bool lo_open = true;
    bool hi_open = true;
};

/// Stage-indexed family W_n of subsets, one per stage of a sequence.
class ColimitOpen
{
public:
    using Rule = std::variant<ExplicitStages, FullStages, DiagonalStrip, AffineInterval>;

    ColimitOpen(Rule rule, std::size_t offset = 0) : rule_(std::move(rule)), offset_(offset) {} // NOLINT

    [[nodiscard]] const Rule& rule() const { return rule_; }
    [[nodiscard]] std::size_t offset() const { return offset_; }

    [[nodiscard]] ColimitOpen shifted(std::size_t k) const { return {rule_, offset_ + k}; }

    /// W_n ∩ carrier(stage n).
    [[nodiscard]] BoxUnion at(const AscendingSequence& seq, std::size_t n) const
    {
        const Space space = seq.stage(n);
        const std::size_t idx = n + offset_;
        const std::size_t d = space.dim();
        BoxUnion raw = std::visit(
            [&](const auto& r) -> BoxUnion {
                using T = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<T, ExplicitStages>) {
                    if (idx >= r.stages.size())
                        throw Error(ErrorKind::depth_exceeded, "explicit family has no stage " + std::to_string(idx));
                    return r.stages[idx];
                } else if constexpr (std::is_same_v<T, FullStages>) {
                    return BoxUnion::of(bounded_carrier(space));
                } else if constexpr (std::is_same_v<T, DiagonalStrip>) {
                    if (d != 2) throw Error(ErrorKind::dimension_mismatch, "diagonal strip needs a 2-d stage");
                    const Box c = bounded_carrier(space);
                    const Rational lo = std::max(c.dims[0].lo, c.dims[1].lo);
                    const Rational hi = std::min(c.dims[0].hi, c.dims[1].hi);
                    BoxUnion u(2);
                    const Rational half(1, 2);
                    for (std::int64_t j = (lo * Rational(2)).floor() - 2; Rational(j) * half - half <= hi + Rational(1); ++j) {
                        const Rational center = Rational(j) * half;
                        const Interval side = Interval::open(center - half, center + half);
                        const Box sq{side, side};
                        if (!intersect(sq, c).is_empty()) u.boxes.push_back(sq);
                    }
                    return u;
                } else {
                    if (d != 1) throw Error(ErrorKind::dimension_mismatch, "affine interval family is 1-d");
                    const Rational n_r(static_cast<std::int64_t>(idx));
                    return BoxUnion::of(Box{Interval::make(r.lo0 + r.lo_step * n_r, r.hi0 + r.hi_step * n_r,
                                                           r.lo_open, r.hi_open)});
                }
            },
            rule_);
        raw.dim = d;
        return normalize(restrict_to_carrier(space, raw));
    }

private:
    Rule rule_;
    std::size_t offset_;

    static Box bounded_carrier(const Space& space)
    {
        Box b;
        for (const auto& ax : space.carrier_axes()) {
            if (!ax) throw Error(ErrorKind::invalid_argument, "family needs bounded carriers");
            b.dims.push_back(*ax);
        }
        return b;
    }
};

struct OpenCheck
{
    bool ok = true;
    std::string reason;

    explicit operator bool() const { return ok; }
};

/// A subset of the union is open iff its trace on every stage is open. At
/// finite depth: W_n open in stage n for n ≤ p, and W_m = W_n ∩ X_m for m ≤ n ≤ p.
inline OpenCheck check_open_at(const AscendingSequence& seq, const ColimitOpen& fam, std::size_t p)
{
    seq.require_depth(p);
    std::vector<BoxUnion> traces;
    for (std::size_t n = 0; n <= p; ++n) {
        traces.push_back(fam.at(seq, n));
        if (!is_open_in(seq.stage(n), traces.back()))
            return {false, "stage " + std::to_string(n) + " is not open"};
    }
    for (std::size_t n = 1; n <= p; ++n)
        for (std::size_t m = 0; m < n; ++m)
            if (!same_set(traces[m], restrict_to_carrier(seq.stage(m), traces[n])))
                return {false, "stages " + std::to_string(m) + " and " + std::to_string(n) + " are incoherent"};
    return {};
}

/// The family U with U ∩ X_p = ∪_{max(p,start) ≤ n ≤ N} U_n ∩ X_p for an
/// ascending chain of opens U_n ⊆ X_n, n = start..N (chain[i] is U_{start+i}).
inline ColimitOpen chain_union(const AscendingSequence& seq, const std::vector<BoxUnion>& chain,
                               std::size_t start = 0)
{
    if (chain.empty()) throw Error(ErrorKind::invalid_argument, "empty chain");
    const std::size_t top = start + chain.size() - 1;
    seq.require_depth(top);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (!is_open_in(seq.stage(start + i), chain[i]))
            throw Error(ErrorKind::not_open, "chain member at stage " + std::to_string(start + i));
        if (i > 0 && !contains(restrict_to_carrier(seq.stage(start + i), chain[i]),
                               restrict_to_carrier(seq.stage(start + i - 1), chain[i - 1])))
            throw Error(ErrorKind::not_ascending, "chain drops points at stage " + std::to_string(start + i));
    }
    ExplicitStages stages;
    for (std::size_t p = 0; p <= top; ++p) {
        const Space sp = seq.stage(p);
        BoxUnion acc(seq.dim());
        for (std::size_t n = std::max(p, start); n <= top; ++n)
            acc = unite(acc, restrict_to_carrier(sp, chain[n - start]));
        stages.stages.push_back(std::move(acc));
    }
    return ColimitOpen(std::move(stages));
}

struct StageEvidence
{
    WayBelowVerdict verdict;
    std::optional<InterpolationTrace> trace;
};

/// The two ascending chains U_n, V_n with (x, y) ∈ U_n × V_n ≪ W_n.
struct ChainWitness
{
    std::vector<BoxUnion> u_chain;
    std::vector<BoxUnion> v_chain;
    std::vector<StageEvidence> evidence;
    Point x;
    Point y;
    std::size_t depth = 0;
};

namespace detail {

inline std::pair<BoxUnion, BoxUnion> split_box(const BoxUnion& v, std::size_t dx)
{
    const Box& b = v.boxes.front();
    Box l(std::vector<Interval>(b.dims.begin(), b.dims.begin() + static_cast<std::ptrdiff_t>(dx)));
    Box r(std::vector<Interval>(b.dims.begin() + static_cast<std::ptrdiff_t>(dx), b.dims.end()));
    return {BoxUnion::of(std::move(l)), BoxUnion::of(std::move(r))};
}

inline Point concat(const Point& a, const Point& b)
{
    Point p = a;
    p.insert(p.end(), b.begin(), b.end());
    return p;
}

} // namespace detail

/// Builds the chains stage by stage: a core-compactness witness inside W_0
/// for the base case, then interpolation of U_n × V_n ≪ W_{n+1} at each step.
inline ChainWitness build_chain(const AscendingSequence& seq_x, const AscendingSequence& seq_y,
                                const ColimitOpen& w, const Point& x, const Point& y, std::size_t depth)
{
    seq_x.require_depth(depth);
    seq_y.require_depth(depth);
    const auto prod = AscendingSequence::product(seq_x, seq_y);
    if (auto chk = check_open_at(prod, w, depth); !chk)
        throw Error(ErrorKind::not_open, "W fails the openness check: " + chk.reason);
    const Point xy = detail::concat(x, y);
    if (xy.size() != prod.dim()) throw Error(ErrorKind::dimension_mismatch, "point dimension");
    const Space p0 = prod.stage(0);
    const BoxUnion w0 = w.at(prod, 0);
    if (!p0.carrier_contains(xy) || !w0.contains(xy))
        throw Error(ErrorKind::point_outside, "(x, y) is not in W_0");

    ChainWitness out;
    out.x = x;
    out.y = y;
    out.depth = depth;
    const std::size_t dx = seq_x.dim();
    auto [u0, v0] = detail::split_box(core_compact_witness(p0, xy, w0), dx);
    out.evidence.push_back({way_below(p0, product_open(u0, v0), w0), std::nullopt});
    out.u_chain.push_back(std::move(u0));
    out.v_chain.push_back(std::move(v0));

    for (std::size_t n = 0; n < depth; ++n) {
        const Space xs = seq_x.stage(n + 1);
        const Space ys = seq_y.stage(n + 1);
        const BoxUnion wn = w.at(prod, n + 1);
        Interpolation step;
        try {
            step = interpolate(xs, ys, out.u_chain.back(), out.v_chain.back(), wn);
        } catch (const Error& e) {
            throw Error(e.kind(), "stage " + std::to_string(n + 1) + ": " + e.what());
        }
        out.evidence.push_back({way_below(prod.stage(n + 1), product_open(step.u_s, step.v_t), wn), step.trace});
        out.u_chain.push_back(std::move(step.u_s));
        out.v_chain.push_back(std::move(step.v_t));
    }
    return out;
}

/// Recomputes every invariant of a witness; empty result means all hold.
inline std::vector<std::string> verify_chain(const AscendingSequence& seq_x, const AscendingSequence& seq_y,
                                             const ColimitOpen& w, const ChainWitness& cw)
{
    std::vector<std::string> bad;
    const auto prod = AscendingSequence::product(seq_x, seq_y);
    if (cw.u_chain.size() != cw.depth + 1 || cw.v_chain.size() != cw.depth + 1 ||
        cw.evidence.size() != cw.depth + 1) {
        bad.emplace_back("chain lengths do not match depth");
        return bad;
    }
    for (std::size_t n = 0; n <= cw.depth; ++n) {
        const std::string at = "stage " + std::to_string(n) + ": ";
        const Space xs = seq_x.stage(n);
        const Space ys = seq_y.stage(n);
        if (!cw.u_chain[n].contains(cw.x) || !cw.v_chain[n].contains(cw.y)) bad.push_back(at + "point not in U_n x V_n");
        if (!is_open_in(xs, cw.u_chain[n])) bad.push_back(at + "U_n not open");
        if (!is_open_in(ys, cw.v_chain[n])) bad.push_back(at + "V_n not open");
        if (n > 0) {
            if (!contains(cw.u_chain[n], cw.u_chain[n - 1])) bad.push_back(at + "U_{n-1} not inside U_n");
            if (!contains(cw.v_chain[n], cw.v_chain[n - 1])) bad.push_back(at + "V_{n-1} not inside V_n");
        }
        if (!way_below(prod.stage(n), product_open(cw.u_chain[n], cw.v_chain[n]), w.at(prod, n)).holds)
            bad.push_back(at + "U_n x V_n not way-below W_n");
        if (!cw.evidence[n].verdict.holds) bad.push_back(at + "recorded verdict does not hold");
        if (n > 0) {
            if (!cw.evidence[n].trace) {
                bad.push_back(at + "missing interpolation trace");
            } else {
                const auto [u, v] = replay(*cw.evidence[n].trace, xs.dim(), ys.dim());
                if (u != cw.u_chain[n] || v != cw.v_chain[n]) bad.push_back(at + "trace does not replay");
            }
        }
    }
    return bad;
}

enum class ProbeStatus
{
    passed,
    failed,
    skipped
};

struct ProbeOutcome
{
    Point x;
    Point y;
    ProbeStatus status = ProbeStatus::skipped;
    std::size_t first_stage = 0;
    std::vector<std::string> problems;
};

struct CoverReport
{
    std::vector<ProbeOutcome> probes;

    [[nodiscard]] bool ok() const
    {
        return std::none_of(probes.begin(), probes.end(),
                            [](const ProbeOutcome& p) { return p.status == ProbeStatus::failed; });
    }
};

/// For each probe (x, y) in W_N: reindex from the first stage containing it,
/// build the chains, union them, and confirm (x, y) ∈ U × V ⊆ W at every
/// stage up to N. Probes outside W_N are skipped.
inline CoverReport rectangle_cover_check(const AscendingSequence& seq_x, const AscendingSequence& seq_y,
                                         const ColimitOpen& w, const std::vector<std::pair<Point, Point>>& probes,
                                         std::size_t depth)
{
    const auto prod = AscendingSequence::product(seq_x, seq_y);
    if (auto chk = check_open_at(prod, w, depth); !chk)
        throw Error(ErrorKind::not_open, "W fails the openness check: " + chk.reason);

    CoverReport report;
    for (const auto& [x, y] : probes) {
        ProbeOutcome po;
        po.x = x;
        po.y = y;
        const Point xy = detail::concat(x, y);
        if (!w.at(prod, depth).contains(xy) || !prod.stage(depth).carrier_contains(xy)) {
            report.probes.push_back(std::move(po));
            continue;
        }
        std::size_t k = 0;
        while (!(prod.stage(k).carrier_contains(xy) && w.at(prod, k).contains(xy))) ++k;
        po.first_stage = k;

        const auto sx = seq_x.shifted(k);
        const auto sy = seq_y.shifted(k);
        const auto sw = w.shifted(k);
        const ChainWitness cw = build_chain(sx, sy, sw, x, y, depth - k);
        po.problems = verify_chain(sx, sy, sw, cw);

        const ColimitOpen uf = chain_union(seq_x, cw.u_chain, k);
        const ColimitOpen vf = chain_union(seq_y, cw.v_chain, k);
        if (!check_open_at(seq_x, uf, depth)) po.problems.emplace_back("union of U_n is not open");
        if (!check_open_at(seq_y, vf, depth)) po.problems.emplace_back("union of V_n is not open");
        if (!uf.at(seq_x, depth).contains(x) || !vf.at(seq_y, depth).contains(y))
            po.problems.emplace_back("probe not in U x V");
        for (std::size_t p = 0; p <= depth; ++p)
            if (!contains(w.at(prod, p), product_open(uf.at(seq_x, p), vf.at(seq_y, p))))
                po.problems.push_back("U x V not inside W at stage " + std::to_string(p));
        po.status = po.problems.empty() ? ProbeStatus::passed : ProbeStatus::failed;
        report.probes.push_back(std::move(po));
    }
    return report;
}

} // namespace waybelow

#endif // WAYBELOW_COLIMIT_HPP
