#ifndef WAYBELOW_WAYBELOW_HPP
#define WAYBELOW_WAYBELOW_HPP

#include "spaces.hpp"
#include "surd.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace waybelow {

/// Explicit finite list of opens.
struct FiniteCover
{
    std::vector<BoxUnion> members;
};

/// Members t ∖ [center − 1/k, center + 1/k]^d for k ≥ 1. Covers t whenever
/// the (rational) center lies outside t.
struct PuncturedCover
{
    Point center;
};

/// Members t ∖ {x : |x[axis] − α| ≤ 1/k} for k ≥ 1, α irrational. Covers
/// every set of rational points; alpha_lo < α < alpha_hi.
struct ShrinkingCover
{
    std::size_t axis = 0;
    Sqrt2Affine alpha;
    Rational alpha_lo;
    Rational alpha_hi;
};

struct CoverFamily
{
    std::variant<FiniteCover, PuncturedCover, ShrinkingCover> kind;

    /// Number of members; nullopt for the infinite families.
    [[nodiscard]] std::optional<std::size_t> size() const
    {
        if (const auto* f = std::get_if<FiniteCover>(&kind)) return f->members.size();
        return std::nullopt;
    }
};

/// Evidence for S ≪ T: a compact set between them, and a procedure selecting
/// a finite subfamily of any cover of T that covers S.
struct SubcoverSelector
{
    /// Compact K with S ⊆ K ⊆ T (closure of S, or S itself when finite).
    BoxUnion kernel;
};

struct WayBelowVerdict
{
    bool holds = false;
    std::optional<SubcoverSelector> certificate;
    std::optional<CoverFamily> refutation;
};

namespace detail {

inline bool is_finite_point_set(const BoxUnion& u)
{
    return std::all_of(u.boxes.begin(), u.boxes.end(), [](const Box& b) {
        return b.is_empty() ||
               std::all_of(b.dims.begin(), b.dims.end(), [](const Interval& i) { return i.is_point(); });
    });
}

inline Box closed_cube(const Point& center, const Rational& radius)
{
    Box b;
    for (const auto& c : center) b.dims.push_back(Interval::closed(c - radius, c + radius));
    return b;
}

/// First grid cell of `a` missing from `b`, as a sample point.
inline std::optional<Point> first_point_outside(const BoxUnion& a, const BoxUnion& b)
{
    const Grid g = grid_for(a.dim, {&a, &b});
    for (const auto& c : cells_of(g, a)) {
        Point p = g.sample(c);
        if (!b.contains(p)) return p;
    }
    return std::nullopt;
}

/// True iff the point lies in {x : |x[axis] − α| ≤ radius}.
inline bool in_slab(const ShrinkingCover& f, const Point& p, const Rational& radius)
{
    return f.alpha.compare(p[f.axis] + radius) >= 0 && f.alpha.compare(p[f.axis] - radius) <= 0;
}

} // namespace detail

/// The k-th member (k ≥ 1) of a finite or punctured family, intersected with
/// the carrier. Shrinking families have irrational members and no box form.
inline BoxUnion cover_member(const Space& space, const BoxUnion& t, const CoverFamily& fam, std::size_t k)
{
    if (k == 0) throw Error(ErrorKind::invalid_argument, "cover members are indexed from 1");
    if (const auto* f = std::get_if<FiniteCover>(&fam.kind)) {
        if (k > f->members.size()) throw Error(ErrorKind::invalid_argument, "cover member out of range");
        return restrict_to_carrier(space, f->members[k - 1]);
    }
    if (const auto* p = std::get_if<PuncturedCover>(&fam.kind)) {
        const BoxUnion te = restrict_to_carrier(space, t);
        const BoxUnion cube = BoxUnion::of(detail::closed_cube(p->center, Rational(1, static_cast<std::int64_t>(k))));
        return difference(te, cube);
    }
    throw Error(ErrorKind::unsupported_space, "shrinking cover members have irrational faces");
}

/// Decides s ≪ t in `space`.
///
/// Euclidean carriers (and products of them): holds iff the closure of s in
/// ℝ^d lies in t. A failure is refuted by the cover punctured at a point of
/// closure(s) ∖ t. Rational traces: holds iff s is a finite point set inside
/// t; an infinite s is refuted by a shrinking cover around an irrational.
inline WayBelowVerdict way_below(const Space& space, const BoxUnion& s, const BoxUnion& t)
{
    require_dim(space, s);
    require_dim(space, t);
    if (!is_open_in(space, t)) throw Error(ErrorKind::not_open, "t is not open in the space");

    const BoxUnion se = restrict_to_carrier(space, s);
    const BoxUnion te = restrict_to_carrier(space, t);

    WayBelowVerdict v;
    if (se.empty()) {
        v.holds = true;
        v.certificate = SubcoverSelector{BoxUnion(s.dim)};
        return v;
    }
    if (!contains(te, se)) {
        // {t} covers t, and neither it nor the empty subfamily covers s.
        v.refutation = CoverFamily{FiniteCover{{te}}};
        return v;
    }

    if (space.has_rational_factor()) {
        if (space.is_product())
            throw Error(ErrorKind::unsupported_space, "products with rational-trace factors");
        if (detail::is_finite_point_set(se)) {
            v.holds = true;
            v.certificate = SubcoverSelector{normalize(se)};
            return v;
        }
        for (const auto& b : se.boxes) {
            for (std::size_t k = 0; k < b.dim(); ++k) {
                const Interval& iv = b.dims[k];
                if (b.is_empty() || iv.is_point()) continue;
                ShrinkingCover f;
                f.axis = k;
                f.alpha = pinned_irrational(iv.lo, iv.hi);
                std::tie(f.alpha_lo, f.alpha_hi) = f.alpha.bounds(0);
                v.refutation = CoverFamily{f};
                return v;
            }
        }
    }

    BoxUnion kernel = closure(se);
    if (contains(te, kernel)) {
        v.holds = true;
        v.certificate = SubcoverSelector{std::move(kernel)};
        return v;
    }
    v.refutation = CoverFamily{PuncturedCover{*detail::first_point_outside(kernel, te)}};
    return v;
}

/// Indices (from 1) of a finite subfamily of `fam` covering s, assuming the
/// verdict holds and `fam` covers t. Finite families use smallest-index-first
/// greedy selection; the nested infinite families need a single member.
inline std::vector<std::size_t> select_subcover(const Space& space, const BoxUnion& s, const BoxUnion& t,
                                                const SubcoverSelector& sel, const CoverFamily& fam)
{
    const BoxUnion se = restrict_to_carrier(space, s);
    if (se.empty()) return {};
    if (const auto* f = std::get_if<FiniteCover>(&fam.kind)) {
        const detail::Grid g = [&] {
            std::vector<std::vector<Rational>> cuts(se.dim);
            detail::add_cuts(cuts, sel.kernel);
            detail::add_cuts(cuts, se);
            for (const auto& m : f->members) detail::add_cuts(cuts, m);
            return detail::make_grid(se.dim, cuts);
        }();
        auto todo = detail::cells_of(g, se);
        std::vector<std::size_t> picked;
        for (std::size_t i = 0; i < f->members.size() && !todo.empty(); ++i) {
            const BoxUnion m = restrict_to_carrier(space, f->members[i]);
            bool used = false;
            for (auto it = todo.begin(); it != todo.end();) {
                if (m.contains(g.sample(*it))) {
                    it = todo.erase(it);
                    used = true;
                } else {
                    ++it;
                }
            }
            if (used) picked.push_back(i + 1);
        }
        if (!todo.empty()) throw Error(ErrorKind::precondition_failed, "family does not cover s");
        return picked;
    }
    for (std::int64_t k = 1; k <= (std::int64_t{1} << 40); k *= 2) {
        const Rational r(1, k);
        if (std::holds_alternative<PuncturedCover>(fam.kind)) {
            if (contains(cover_member(space, t, fam, static_cast<std::size_t>(k)), se))
                return {static_cast<std::size_t>(k)};
        } else {
            const auto& sh = std::get<ShrinkingCover>(fam.kind);
            // s is a finite point set here, so a thin enough slab misses it.
            bool clear = true;
            for (const auto& b : sel.kernel.boxes) {
                const Point p = sample_point(b);
                if (detail::in_slab(sh, p, r) || !restrict_to_carrier(space, t).contains(p)) clear = false;
            }
            if (clear) return {static_cast<std::size_t>(k)};
        }
    }
    throw Error(ErrorKind::inconclusive, "no member of the nested family covers s");
}

/// One subfamily of a refutation together with a point of s it misses.
struct MissedPoint
{
    std::vector<std::size_t> subfamily; // member indices, from 1
    Point point;
};

struct RefutationCheck
{
    bool ok = false;
    std::string reason;
    std::vector<MissedPoint> exhibits;

    explicit operator bool() const { return ok; }
};

/// Largest family prefix verify_refutation will enumerate subsets of.
inline constexpr std::size_t max_refutation_prefix = 20;

/// Checks that `r` is a cover of t by opens of `space` and that every
/// nonempty subfamily of its first k_max members misses a rational point of
/// s, recording that point.
inline RefutationCheck verify_refutation(const Space& space, const BoxUnion& s, const BoxUnion& t,
                                         const CoverFamily& r, std::size_t k_max)
{
    require_dim(space, s);
    require_dim(space, t);
    RefutationCheck out;
    if (k_max > max_refutation_prefix)
        throw Error(ErrorKind::invalid_argument, "k_max larger than " + std::to_string(max_refutation_prefix));

    const BoxUnion se = restrict_to_carrier(space, s);
    const BoxUnion te = restrict_to_carrier(space, t);
    if (!is_open_in(space, te)) throw Error(ErrorKind::not_open, "t is not open in the space");

    std::size_t n = k_max;
    if (const auto* f = std::get_if<FiniteCover>(&r.kind)) {
        n = std::min(n, f->members.size());
        BoxUnion all(s.dim);
        for (const auto& m : f->members) {
            if (!is_open_in(space, m)) throw Error(ErrorKind::not_open, "cover member is not open");
            all = unite(all, restrict_to_carrier(space, m));
        }
        if (!contains(all, te)) {
            out.reason = "family does not cover t";
            return out;
        }
    } else if (const auto* p = std::get_if<PuncturedCover>(&r.kind)) {
        if (p->center.size() != s.dim) throw Error(ErrorKind::dimension_mismatch, "puncture center");
        if (te.contains(p->center)) {
            out.reason = "puncture center lies in t, so the family does not cover t";
            return out;
        }
        for (std::size_t k = 1; k <= n; ++k)
            if (!is_open_in(space, cover_member(space, t, r, k)))
                throw Error(ErrorKind::not_open, "cover member is not open");
    } else {
        const auto& sh = std::get<ShrinkingCover>(r.kind);
        if (sh.axis >= s.dim) throw Error(ErrorKind::dimension_mismatch, "shrinking axis");
        if (!(sh.alpha.compare(sh.alpha_lo) < 0 && sh.alpha.compare(sh.alpha_hi) > 0)) {
            out.reason = "pinned irrational is not between its bounds";
            return out;
        }
        if (space.is_product() || !std::holds_alternative<RationalTrace>(space.variant())) {
            out.reason = "shrinking families cover t only in rational-trace spaces";
            return out;
        }
    }

    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        MissedPoint mp;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t{1} << i)) mp.subfamily.push_back(i + 1);
        const std::size_t top = mp.subfamily.back();

        std::optional<Point> miss;
        if (const auto* f = std::get_if<FiniteCover>(&r.kind)) {
            BoxUnion u(s.dim);
            for (auto i : mp.subfamily) u = unite(u, restrict_to_carrier(space, f->members[i - 1]));
            miss = detail::first_point_outside(se, u);
            if (miss && (!se.contains(*miss) || u.contains(*miss))) miss.reset();
        } else if (const auto* p = std::get_if<PuncturedCover>(&r.kind)) {
            // Members are nested, so the subfamily's union is its largest member.
            const BoxUnion member = cover_member(space, t, r, top);
            const BoxUnion near = intersect(
                se, BoxUnion::of(detail::closed_cube(p->center, Rational(1, static_cast<std::int64_t>(top)))));
            if (!near.empty()) {
                const auto it = std::find_if(near.boxes.begin(), near.boxes.end(),
                                             [](const Box& b) { return !b.is_empty(); });
                Point q = sample_point(*it);
                if (se.contains(q) && !member.contains(q)) miss = std::move(q);
            }
        } else {
            const auto& sh = std::get<ShrinkingCover>(r.kind);
            const Rational radius(1, static_cast<std::int64_t>(top));
            for (const auto& b : se.boxes) {
                if (b.is_empty()) continue;
                const Interval& iv = b.dims[sh.axis];
                if (!(sh.alpha.compare(iv.lo) < 0 && sh.alpha.compare(iv.hi) > 0)) continue;
                // Refine α until its bracket is thinner than the slab and inside the box.
                for (unsigned level = 0; level < 60; ++level) {
                    const auto [lo, hi] = sh.alpha.bounds(level);
                    if (hi - lo < radius && iv.lo < lo && hi < iv.hi) {
                        Point q = sample_point(b);
                        q[sh.axis] = midpoint(lo, hi);
                        if (se.contains(q) && detail::in_slab(sh, q, radius)) miss = std::move(q);
                        break;
                    }
                }
                if (miss) break;
            }
        }
        if (!miss) {
            out.reason = "a subfamily covers s";
            out.exhibits.clear();
            return out;
        }
        mp.point = std::move(*miss);
        out.exhibits.push_back(std::move(mp));
    }
    out.ok = true;
    return out;
}

/// Open v with x ∈ v ≪ u in a core-compact (Euclidean or product) space.
///
/// Starts from the grid star of x's cell, grows it one cut at a time (axis
/// order, low side first) while it stays inside u, then halves every face
/// toward x. Faces on a closed carrier edge through x stay closed.
inline BoxUnion core_compact_witness(const Space& space, const Point& x, const BoxUnion& u)
{
    require_dim(space, u);
    if (x.size() != u.dim) throw Error(ErrorKind::dimension_mismatch, "point dimension");
    if (space.has_rational_factor())
        throw Error(ErrorKind::non_core_compact, "rational-trace spaces are not core-compact");
    if (!is_open_in(space, u)) throw Error(ErrorKind::not_open, "u is not open in the space");
    const BoxUnion ue = restrict_to_carrier(space, u);
    if (!space.carrier_contains(x) || !ue.contains(x))
        throw Error(ErrorKind::point_outside, "x does not lie in u");

    const std::size_t d = u.dim;
    const detail::Grid g = detail::grid_with_carrier(space, {&ue});
    const auto axes = space.carrier_axes();

    std::vector<std::pair<std::size_t, std::size_t>> range(d);
    for (std::size_t k = 0; k < d; ++k) {
        const auto& ax = g.axes[k];
        const std::size_t i = ax.index_of(x[k]);
        const bool on_cut = i < ax.cuts.size() && ax.cuts[i] == x[k];
        if (on_cut) range[k] = {2 * i, 2 * i + 2};
        else range[k] = {2 * i, 2 * i};
    }

    auto fits = [&](const std::vector<std::pair<std::size_t, std::size_t>>& r) -> std::optional<Box> {
        Box b;
        for (std::size_t k = 0; k < d; ++k) {
            auto iv = detail::clipped_span(g.axes[k], axes[k], r[k].first, r[k].second);
            if (!iv) return std::nullopt;
            b.dims.push_back(*iv);
        }
        if (!contains(ue, BoxUnion::of(b))) return std::nullopt;
        return b;
    };

    auto current = fits(range);
    if (!current) throw Error(ErrorKind::not_open, "star of x escapes u");
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t k = 0; k < d; ++k) {
            if (range[k].first >= 2) {
                auto r = range;
                r[k].first -= 2;
                if (auto b = fits(r)) {
                    range = r;
                    current = b;
                    grew = true;
                }
            }
            if (range[k].second + 2 < g.axes[k].atom_count()) {
                auto r = range;
                r[k].second += 2;
                if (auto b = fits(r)) {
                    range = r;
                    current = b;
                    grew = true;
                }
            }
        }
    }

    Box v;
    for (std::size_t k = 0; k < d; ++k) {
        const Interval& e = current->dims[k];
        Interval iv;
        if (!e.lo_open && e.lo == x[k]) {
            iv.lo = e.lo;
            iv.lo_open = false;
        } else {
            iv.lo = midpoint(e.lo, x[k]);
            iv.lo_open = true;
        }
        if (!e.hi_open && e.hi == x[k]) {
            iv.hi = e.hi;
            iv.hi_open = false;
        } else {
            iv.hi = midpoint(x[k], e.hi);
            iv.hi_open = true;
        }
        v.dims.push_back(Interval::make(iv.lo, iv.hi, iv.lo_open, iv.hi_open));
    }
    return BoxUnion::of(std::move(v));
}

} // namespace waybelow

#endif // WAYBELOW_WAYBELOW_HPP
