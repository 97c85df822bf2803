#ifndef WAYBELOW_INTERPOLATION_HPP
#define WAYBELOW_INTERPOLATION_HPP

#include "waybelow.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace waybelow {

/// Open rectangle U × V of the product, stored by factor.
struct BasisRectangle
{
    Box left;
    Box right;

    friend bool operator==(const BasisRectangle&, const BasisRectangle&) = default;
};

/// First pass at one cell c of closure(S): the finite family I_c of basis
/// rectangles whose left factors contain c, with U_c = ∩ U_i and V_c = ∪ V_i.
struct CellSelection
{
    Box cell;
    std::vector<BasisRectangle> family;
    BoxUnion u;
    BoxUnion v;
};

struct InterpolationTrace
{
    unsigned refinement_level = 0;
    std::vector<CellSelection> per_cell;
    /// Indices into per_cell chosen so the left factors cover closure(S).
    std::vector<std::size_t> selected;
    /// Output recorded directly when S × T is empty and no cells exist.
    std::optional<std::pair<BoxUnion, BoxUnion>> empty_product;
};

struct Interpolation
{
    BoxUnion u_s;
    BoxUnion v_t;
    InterpolationTrace trace;
};

/// Raised when S × T ≪ W fails; carries the refuting verdict.
class InterpolationPreconditionFailed : public Error
{
public:
    explicit InterpolationPreconditionFailed(WayBelowVerdict v)
        : Error(ErrorKind::precondition_failed, "S x T is not way-below W"), verdict_(std::move(v))
    {
    }
    [[nodiscard]] const WayBelowVerdict& verdict() const { return verdict_; }

private:
    WayBelowVerdict verdict_;
};

inline constexpr unsigned default_max_refine = 4;

namespace detail {

/// Inserts `levels` rounds of midpoints between consecutive cuts.
inline AxisGrid refine(AxisGrid ax, unsigned levels)
{
    for (unsigned l = 0; l < levels; ++l) {
        std::vector<Rational> finer;
        finer.reserve(2 * ax.cuts.size());
        for (std::size_t i = 0; i < ax.cuts.size(); ++i) {
            if (i > 0) finer.push_back(midpoint(ax.cuts[i - 1], ax.cuts[i]));
            finer.push_back(ax.cuts[i]);
        }
        ax.cuts = std::move(finer);
    }
    return ax;
}

/// Smallest open grid box containing the cell (its star), clipped to the
/// carrier; nullopt when it would be unbounded.
inline std::optional<Box> star_box(const Grid& g, const std::vector<std::optional<Interval>>& carrier,
                                   const CellIndex& cell)
{
    Box b;
    for (std::size_t k = 0; k < cell.size(); ++k) {
        const std::size_t a = cell[k];
        const std::size_t reach = g.axes[k].is_point(a) ? 1 : 0;
        const std::size_t first = a - reach;
        const std::size_t last = a + reach;
        auto iv = clipped_span(g.axes[k], carrier[k], first, last);
        if (!iv) return std::nullopt;
        b.dims.push_back(*iv);
    }
    return b;
}

/// Slices of w's boxes on the axes from..from+count, not merged, so every
/// face coordinate of w survives as a cut.
inline BoxUnion factor_faces(const BoxUnion& w, std::size_t from, std::size_t count)
{
    BoxUnion out(count);
    for (const auto& b : w.boxes)
        out.boxes.emplace_back(std::vector<Interval>(b.dims.begin() + static_cast<std::ptrdiff_t>(from),
                                                     b.dims.begin() + static_cast<std::ptrdiff_t>(from + count)));
    return out;
}

inline Grid factor_grid(const Space& space, const BoxUnion& set, const BoxUnion& w_part, unsigned level)
{
    Grid g = grid_with_carrier(space, {&set, &w_part});
    for (auto& ax : g.axes) ax = refine(std::move(ax), level);
    return g;
}

inline BoxUnion fold_intersect(const std::vector<BoxUnion>& parts)
{
    BoxUnion acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = intersect(acc, parts[i]);
    return normalize(acc);
}

inline BoxUnion fold_unite(std::size_t dim, const std::vector<BoxUnion>& parts)
{
    BoxUnion acc(dim);
    for (const auto& p : parts) acc = unite(acc, p);
    return acc;
}

/// Open neighbourhood of a bounded set: its hull widened by 1, in the carrier.
inline BoxUnion open_hull(const Space& space, const BoxUnion& u)
{
    const auto hull = bounding_box(u);
    if (!hull) return BoxUnion(u.dim);
    Box b;
    for (const auto& iv : hull->dims) b.dims.push_back(Interval::open(iv.lo - Rational(1), iv.hi + Rational(1)));
    return normalize(restrict_to_carrier(space, BoxUnion::of(b)));
}

/// Closure-containment test for Euclidean carriers, without the openness
/// check on `w_eff` (already restricted to the carrier).
inline bool rect_way_below(const BoxUnion& w_eff, const Box& left, const Box& right)
{
    return contains(w_eff, BoxUnion::of(product(left, right).closure()));
}

} // namespace detail

/// Recomputes (U_S, V_T) from a trace: U_c = ∩ U_i, V_c = ∪ V_i per cell,
/// then U_S = ∪ U_c and V_T = ∩ V_c over the selected cells.
inline std::pair<BoxUnion, BoxUnion> replay(const InterpolationTrace& trace, std::size_t dx, std::size_t dy)
{
    if (trace.empty_product) return *trace.empty_product;
    std::vector<BoxUnion> us;
    std::vector<BoxUnion> vs;
    for (auto idx : trace.selected) {
        const auto& sel = trace.per_cell.at(idx);
        std::vector<BoxUnion> lefts;
        std::vector<BoxUnion> rights;
        for (const auto& r : sel.family) {
            lefts.push_back(BoxUnion::of(r.left));
            rights.push_back(BoxUnion::of(r.right));
        }
        us.push_back(detail::fold_intersect(lefts));
        vs.push_back(detail::fold_unite(dy, rights));
    }
    if (us.empty()) return {BoxUnion(dx), BoxUnion(dy)};
    return {detail::fold_unite(dx, us), detail::fold_intersect(vs)};
}

/// Product interpolation: from S × T ≪ W build opens U_S ⊇ S and V_T ⊇ T
/// with U_S × V_T ≪ W.
///
/// Elementary cells of closure(S) stand in for points. For each cell c, basis
/// rectangles star(c) × star(c') over the cells c' of closure(T), where a star
/// is the smallest open grid box around a cell, are scanned in cell order and
/// picked greedily (when way-below W) until their right factors cover
/// closure(T); U_c is the intersection of the
/// picked left factors, V_c the union of the right ones. A second greedy pass
/// picks cells until the U_c cover closure(S). The cut grid starts one dyadic
/// level finer than the inputs and is refined up to `max_refine` levels.
inline Interpolation interpolate(const Space& x_space, const Space& y_space, const BoxUnion& s,
                                 const BoxUnion& t, const BoxUnion& w, unsigned max_refine = default_max_refine)
{
    if (x_space.has_rational_factor() || y_space.has_rational_factor())
        throw Error(ErrorKind::unsupported_space, "interpolation needs core-compact factors");
    require_dim(x_space, s);
    require_dim(y_space, t);
    const Space prod = Space::product(x_space, y_space);
    require_dim(prod, w);

    const BoxUnion se = normalize(restrict_to_carrier(x_space, s));
    const BoxUnion te = normalize(restrict_to_carrier(y_space, t));
    auto verdict = way_below(prod, product_open(se, te), w);
    if (!verdict.holds) throw InterpolationPreconditionFailed(std::move(verdict));

    const std::size_t dx = x_space.dim();
    const std::size_t dy = y_space.dim();
    Interpolation out;
    if (se.empty() || te.empty()) {
        // The product is empty, so only openness and containment matter.
        out.u_s = detail::open_hull(x_space, se);
        out.v_t = detail::open_hull(y_space, te);
        out.trace.empty_product = std::make_pair(out.u_s, out.v_t);
        return out;
    }

    const BoxUnion w_eff = restrict_to_carrier(prod, w);
    const BoxUnion w_left = detail::factor_faces(w_eff, 0, dx);
    const BoxUnion w_right = detail::factor_faces(w_eff, dx, dy);
    const auto x_carrier = x_space.carrier_axes();
    const auto y_carrier = y_space.carrier_axes();
    const BoxUnion s_bar = closure(se);
    const BoxUnion t_bar = closure(te);

    for (unsigned level = 1; level <= std::max(1U, max_refine); ++level) {
        const detail::Grid gx = detail::factor_grid(x_space, s_bar, w_left, level);
        const detail::Grid gy = detail::factor_grid(y_space, t_bar, w_right, level);
        const auto x_cells = detail::cells_of(gx, s_bar);
        const auto y_cells = detail::cells_of(gy, t_bar);

        std::map<std::pair<Box, Box>, bool> cache;
        auto is_basis = [&](const Box& l, const Box& r) {
            auto key = std::make_pair(l, r);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            const bool ok = detail::rect_way_below(w_eff, l, r);
            cache.emplace(std::move(key), ok);
            return ok;
        };

        InterpolationTrace trace;
        trace.refinement_level = level;
        bool failed = false;
        for (const auto& xc : x_cells) {
            CellSelection sel;
            sel.cell = gx.box(xc);
            std::set<detail::CellIndex> todo(y_cells.begin(), y_cells.end());
            const auto left = detail::star_box(gx, x_carrier, xc);
            for (const auto& yc : y_cells) {
                if (todo.empty() || !left) break;
                const auto right = detail::star_box(gy, y_carrier, yc);
                if (!right) continue;
                const bool useful = std::any_of(todo.begin(), todo.end(),
                                                [&](const auto& c) { return right->contains(gy.sample(c)); });
                if (!useful || !is_basis(*left, *right)) continue;
                for (auto it = todo.begin(); it != todo.end();)
                    it = right->contains(gy.sample(*it)) ? todo.erase(it) : std::next(it);
                sel.family.push_back(BasisRectangle{*left, *right});
            }
            if (!todo.empty()) {
                failed = true;
                break;
            }
            std::vector<BoxUnion> lefts;
            std::vector<BoxUnion> rights;
            for (const auto& r : sel.family) {
                lefts.push_back(BoxUnion::of(r.left));
                rights.push_back(BoxUnion::of(r.right));
            }
            sel.u = detail::fold_intersect(lefts);
            sel.v = detail::fold_unite(dy, rights);
            trace.per_cell.push_back(std::move(sel));
        }
        if (failed) continue;

        std::set<detail::CellIndex> todo(x_cells.begin(), x_cells.end());
        for (std::size_t i = 0; i < trace.per_cell.size() && !todo.empty(); ++i) {
            bool used = false;
            for (auto it = todo.begin(); it != todo.end();) {
                if (trace.per_cell[i].u.contains(gx.sample(*it))) {
                    it = todo.erase(it);
                    used = true;
                } else {
                    ++it;
                }
            }
            if (used) trace.selected.push_back(i);
        }
        if (!todo.empty()) throw std::logic_error("interpolation: cells left uncovered by their own U_c");

        auto [u_s, v_t] = replay(trace, dx, dy);
        out.u_s = std::move(u_s);
        out.v_t = std::move(v_t);
        out.trace = std::move(trace);
        return out;
    }
    throw Error(ErrorKind::inconclusive,
                "no basis family covers closure(T) after " + std::to_string(max_refine) + " refinements");
}

} // namespace waybelow

#endif // WAYBELOW_INTERPOLATION_HPP
