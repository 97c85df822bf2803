#ifndef WAYBELOW_GEOMETRY_HPP
#define WAYBELOW_GEOMETRY_HPP

#include "errors.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace waybelow {

using Point = std::vector<Rational>;

/// Cell decomposition is exponential in the dimension.
inline constexpr std::size_t max_cell_dimension = 4;

/// Interval with rational endpoints and independent open/closed flags.
///
/// Either lo < hi, or lo == hi with both ends closed (a single point).
/// Every empty interval is represented by the same canonical value.
struct Interval
{
    Rational lo{0};
    Rational hi{0};
    bool lo_open = true;
    bool hi_open = true;

    static Interval make(Rational lo, Rational hi, bool lo_open, bool hi_open)
    {
        if (lo > hi || (lo == hi && (lo_open || hi_open))) return empty();
        return Interval{lo, hi, lo_open, hi_open};
    }
    static Interval open(Rational lo, Rational hi) { return make(lo, hi, true, true); }
    static Interval closed(Rational lo, Rational hi) { return make(lo, hi, false, false); }
    static Interval point(Rational x) { return Interval{x, x, false, false}; }
    static Interval empty() { return Interval{}; }

    [[nodiscard]] bool is_empty() const { return lo == hi && (lo_open || hi_open); }
    [[nodiscard]] bool is_point() const { return lo == hi && !lo_open && !hi_open; }
    [[nodiscard]] bool is_open() const { return lo_open && hi_open; }

    [[nodiscard]] bool contains(const Rational& x) const
    {
        if (is_empty()) return false;
        const bool above = lo_open ? lo < x : lo <= x;
        const bool below = hi_open ? x < hi : x <= hi;
        return above && below;
    }

    [[nodiscard]] Interval closure() const
    {
        if (is_empty()) return empty();
        return Interval{lo, hi, false, false};
    }

    friend auto operator<=>(const Interval&, const Interval&) = default;
};

inline Interval intersect(const Interval& a, const Interval& b)
{
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    Rational lo = a.lo;
    bool lo_open = a.lo_open;
    if (b.lo > lo || (b.lo == lo && b.lo_open)) {
        lo = b.lo;
        lo_open = b.lo_open || (a.lo == b.lo && a.lo_open);
    }
    Rational hi = a.hi;
    bool hi_open = a.hi_open;
    if (b.hi < hi || (b.hi == hi && b.hi_open)) {
        hi = b.hi;
        hi_open = b.hi_open || (a.hi == b.hi && a.hi_open);
    }
    return Interval::make(lo, hi, lo_open, hi_open);
}

/// Product of intervals; empty iff some factor is empty.
struct Box
{
    std::vector<Interval> dims;

    Box() = default;
    explicit Box(std::vector<Interval> d) : dims(std::move(d)) {}
    Box(std::initializer_list<Interval> d) : dims(d) {}

    [[nodiscard]] std::size_t dim() const { return dims.size(); }

    [[nodiscard]] bool is_empty() const
    {
        return std::any_of(dims.begin(), dims.end(), [](const Interval& i) { return i.is_empty(); });
    }
    [[nodiscard]] bool is_open() const
    {
        return std::all_of(dims.begin(), dims.end(), [](const Interval& i) { return i.is_open(); });
    }
    [[nodiscard]] bool is_closed() const
    {
        return std::all_of(dims.begin(), dims.end(), [](const Interval& i) {
            return !i.lo_open && !i.hi_open;
        });
    }

    [[nodiscard]] bool contains(const Point& p) const
    {
        for (std::size_t k = 0; k < dims.size(); ++k)
            if (!dims[k].contains(p[k])) return false;
        return true;
    }

    [[nodiscard]] Box closure() const
    {
        Box out;
        out.dims.reserve(dims.size());
        for (const auto& i : dims) out.dims.push_back(i.closure());
        return out;
    }

    friend auto operator<=>(const Box&, const Box&) = default;
};

inline Box intersect(const Box& a, const Box& b)
{
    Box out;
    out.dims.reserve(a.dims.size());
    for (std::size_t k = 0; k < a.dims.size(); ++k) out.dims.push_back(intersect(a.dims[k], b.dims[k]));
    return out;
}

/// Concatenation of coordinates: the box a × b.
inline Box product(const Box& a, const Box& b)
{
    Box out = a;
    out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
    return out;
}

/// Finite union of boxes of a common dimension.
struct BoxUnion
{
    std::size_t dim = 1;
    std::vector<Box> boxes;

    BoxUnion() = default;
    explicit BoxUnion(std::size_t d) : dim(d) {}
    BoxUnion(std::size_t d, std::vector<Box> b) : dim(d), boxes(std::move(b)) {}

    static BoxUnion of(Box b)
    {
        const std::size_t d = b.dim();
        return BoxUnion(d, {std::move(b)});
    }

    [[nodiscard]] bool empty() const
    {
        return std::all_of(boxes.begin(), boxes.end(), [](const Box& b) { return b.is_empty(); });
    }

    [[nodiscard]] bool contains(const Point& p) const
    {
        return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(p); });
    }

    /// Throws DimensionMismatch unless every box has dimension `dim`.
    void check() const
    {
        if (dim == 0) throw Error(ErrorKind::dimension_mismatch, "box union of dimension 0");
        for (const auto& b : boxes)
            if (b.dim() != dim)
                throw Error(ErrorKind::dimension_mismatch,
                            "box of dimension " + std::to_string(b.dim()) + " in union of dimension " +
                                std::to_string(dim));
    }

    friend bool operator==(const BoxUnion&, const BoxUnion&) = default;
};

inline void require_same_dim(const BoxUnion& a, const BoxUnion& b)
{
    a.check();
    b.check();
    if (a.dim != b.dim)
        throw Error(ErrorKind::dimension_mismatch,
                    "dimensions " + std::to_string(a.dim) + " and " + std::to_string(b.dim));
}

inline bool member(const Point& p, const BoxUnion& u) { return u.contains(p); }

namespace detail {

/// Sorted coordinate cuts along one axis and the atoms they induce.
///
/// With cuts c_0 < ... < c_{m-1}, atom 2i+1 is the point {c_i} and atom 2i
/// is the open gap (c_{i-1}, c_i), where c_{-1} = -inf and c_m = +inf.
struct AxisGrid
{
    std::vector<Rational> cuts;

    [[nodiscard]] std::size_t atom_count() const { return 2 * cuts.size() + 1; }

    [[nodiscard]] std::size_t index_of(const Rational& c) const
    {
        const auto it = std::lower_bound(cuts.begin(), cuts.end(), c);
        return static_cast<std::size_t>(it - cuts.begin());
    }

    [[nodiscard]] bool is_point(std::size_t atom) const { return atom % 2 == 1; }
    [[nodiscard]] bool bounded_below(std::size_t atom) const { return atom != 0; }
    [[nodiscard]] bool bounded_above(std::size_t atom) const { return atom != 2 * cuts.size(); }

    [[nodiscard]] Rational sample(std::size_t atom) const
    {
        if (cuts.empty()) return Rational(0);
        if (atom % 2 == 1) return cuts[atom / 2];
        const std::size_t i = atom / 2;
        if (i == 0) return cuts.front() - Rational(1);
        if (i == cuts.size()) return cuts.back() + Rational(1);
        return midpoint(cuts[i - 1], cuts[i]);
    }

    /// Atom range [first, last] covered by a non-empty interval whose
    /// endpoints are cuts.
    [[nodiscard]] std::pair<std::size_t, std::size_t> range(const Interval& iv) const
    {
        const std::size_t i = index_of(iv.lo);
        const std::size_t j = index_of(iv.hi);
        const std::size_t first = iv.lo_open ? 2 * i + 2 : 2 * i + 1;
        const std::size_t last = iv.hi_open ? 2 * j : 2 * j + 1;
        return {first, last};
    }

    /// Interval spanned by the bounded atoms first..last.
    [[nodiscard]] Interval span(std::size_t first, std::size_t last) const
    {
        Rational lo = first % 2 == 1 ? cuts[first / 2] : cuts[first / 2 - 1];
        Rational hi = last % 2 == 1 ? cuts[last / 2] : cuts[last / 2];
        return Interval::make(lo, hi, first % 2 == 0, last % 2 == 0);
    }
};

using CellIndex = std::vector<std::size_t>;

struct Grid
{
    std::vector<AxisGrid> axes;

    [[nodiscard]] std::size_t dim() const { return axes.size(); }

    [[nodiscard]] Point sample(const CellIndex& cell) const
    {
        Point p(cell.size());
        for (std::size_t k = 0; k < cell.size(); ++k) p[k] = axes[k].sample(cell[k]);
        return p;
    }

    [[nodiscard]] Box box(const CellIndex& cell) const
    {
        Box b;
        b.dims.reserve(cell.size());
        for (std::size_t k = 0; k < cell.size(); ++k) b.dims.push_back(axes[k].span(cell[k], cell[k]));
        return b;
    }

    /// Calls f on every cell inside the (non-empty) box, in lexicographic order.
    template<typename F>
    void for_each_cell(const Box& b, F&& f) const
    {
        const std::size_t d = axes.size();
        std::vector<std::pair<std::size_t, std::size_t>> ranges(d);
        for (std::size_t k = 0; k < d; ++k) ranges[k] = axes[k].range(b.dims[k]);
        CellIndex cell(d);
        for (std::size_t k = 0; k < d; ++k) cell[k] = ranges[k].first;
        while (true) {
            if (!f(static_cast<const CellIndex&>(cell))) return;
            std::size_t k = d;
            while (k > 0) {
                --k;
                if (cell[k] < ranges[k].second) {
                    ++cell[k];
                    for (std::size_t r = k + 1; r < d; ++r) cell[r] = ranges[r].first;
                    break;
                }
                if (k == 0) return;
            }
            if (d == 0) return;
        }
    }
};

inline void add_cuts(std::vector<std::vector<Rational>>& cuts, const BoxUnion& u)
{
    for (const auto& b : u.boxes) {
        if (b.is_empty()) continue;
        for (std::size_t k = 0; k < b.dim(); ++k) {
            cuts[k].push_back(b.dims[k].lo);
            cuts[k].push_back(b.dims[k].hi);
        }
    }
}

inline Grid make_grid(std::size_t dim, const std::vector<std::vector<Rational>>& raw)
{
    if (dim > max_cell_dimension)
        throw Error(ErrorKind::dimension_too_large,
                    "cell decomposition supports dimension <= " + std::to_string(max_cell_dimension) +
                        ", got " + std::to_string(dim));
    Grid g;
    g.axes.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        auto c = raw[k];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        g.axes[k].cuts = std::move(c);
    }
    return g;
}

inline Grid grid_for(std::size_t dim, std::initializer_list<const BoxUnion*> unions)
{
    std::vector<std::vector<Rational>> cuts(dim);
    for (const auto* u : unions) add_cuts(cuts, *u);
    return make_grid(dim, cuts);
}

/// Cells of the grid lying inside u, sorted and deduplicated.
inline std::set<CellIndex> cells_of(const Grid& g, const BoxUnion& u)
{
    std::set<CellIndex> out;
    for (const auto& b : u.boxes) {
        if (b.is_empty()) continue;
        g.for_each_cell(b, [&](const CellIndex& c) {
            out.insert(c);
            return true;
        });
    }
    return out;
}

/// Merges a set of cells into disjoint boxes: runs along the last axis first,
/// then equal-profile neighbours along each earlier axis.
inline BoxUnion merge_cells(const Grid& g, const std::set<CellIndex>& cells)
{
    const std::size_t d = g.dim();
    using Ranges = std::vector<std::pair<std::size_t, std::size_t>>;
    std::vector<Ranges> blocks;
    blocks.reserve(cells.size());
    for (const auto& c : cells) {
        Ranges r(d);
        for (std::size_t k = 0; k < d; ++k) r[k] = {c[k], c[k]};
        blocks.push_back(std::move(r));
    }
    for (std::size_t axis = d; axis-- > 0;) {
        // Group by the ranges on every other axis; merge contiguous runs on `axis`.
        std::map<Ranges, std::vector<std::pair<std::size_t, std::size_t>>> groups;
        for (const auto& b : blocks) {
            Ranges key = b;
            key[axis] = {0, 0};
            groups[key].push_back(b[axis]);
        }
        std::vector<Ranges> merged;
        for (auto& [key, runs] : groups) {
            std::sort(runs.begin(), runs.end());
            std::size_t i = 0;
            while (i < runs.size()) {
                auto cur = runs[i];
                std::size_t j = i + 1;
                while (j < runs.size() && runs[j].first == cur.second + 1) {
                    cur.second = runs[j].second;
                    ++j;
                }
                Ranges r = key;
                r[axis] = cur;
                merged.push_back(std::move(r));
                i = j;
            }
        }
        std::sort(merged.begin(), merged.end());
        blocks = std::move(merged);
    }
    BoxUnion out(d);
    out.boxes.reserve(blocks.size());
    for (const auto& r : blocks) {
        Box b;
        b.dims.reserve(d);
        for (std::size_t k = 0; k < d; ++k) b.dims.push_back(g.axes[k].span(r[k].first, r[k].second));
        out.boxes.push_back(std::move(b));
    }
    return out;
}

/// Drops every cut across which membership never changes, so that the merged
/// boxes depend only on the point set.
inline void drop_inessential_cuts(Grid& g, std::set<CellIndex>& cells)
{
    for (std::size_t k = 0; k < g.dim(); ++k) {
        std::size_t i = 0;
        while (i < g.axes[k].cuts.size()) {
            const std::size_t lo = 2 * i;
            bool essential = false;
            for (const auto& c : cells) {
                if (c[k] < lo || c[k] > lo + 2) continue;
                CellIndex probe = c;
                for (std::size_t a = lo; a <= lo + 2 && !essential; ++a) {
                    probe[k] = a;
                    essential = cells.count(probe) == 0;
                }
                if (essential) break;
            }
            if (essential) {
                ++i;
                continue;
            }
            std::set<CellIndex> remapped;
            for (auto c : cells) {
                if (c[k] > lo + 2) c[k] -= 2;
                else if (c[k] >= lo) c[k] = lo;
                remapped.insert(std::move(c));
            }
            cells = std::move(remapped);
            g.axes[k].cuts.erase(g.axes[k].cuts.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
}

/// Combines two unions cell-wise with a boolean predicate on (in_a, in_b).
template<typename Pred>
BoxUnion combine(const BoxUnion& a, const BoxUnion& b, Pred keep)
{
    require_same_dim(a, b);
    const Grid g = grid_for(a.dim, {&a, &b});
    std::set<CellIndex> candidates = cells_of(g, a);
    for (const auto& c : cells_of(g, b)) candidates.insert(c);
    std::set<CellIndex> kept;
    for (const auto& c : candidates) {
        const Point p = g.sample(c);
        if (keep(a.contains(p), b.contains(p))) kept.insert(c);
    }
    Grid reduced = g;
    drop_inessential_cuts(reduced, kept);
    return merge_cells(reduced, kept);
}

} // namespace detail

/// Point-set equal union of pairwise-disjoint boxes. Maximal intervals in
/// dimension 1; disjoint merged cells otherwise. The output depends only on
/// the point set, so normalize is idempotent and equal sets normalize equal.
inline BoxUnion normalize(const BoxUnion& u)
{
    u.check();
    detail::Grid g = detail::grid_for(u.dim, {&u});
    auto cells = detail::cells_of(g, u);
    detail::drop_inessential_cuts(g, cells);
    return detail::merge_cells(g, cells);
}

/// Box-wise closure; empty boxes are dropped.
inline BoxUnion closure(const BoxUnion& u)
{
    BoxUnion out(u.dim);
    for (const auto& b : u.boxes)
        if (!b.is_empty()) out.boxes.push_back(b.closure());
    return out;
}

/// True iff every point of `inner` lies in `outer`.
inline bool contains(const BoxUnion& outer, const BoxUnion& inner)
{
    require_same_dim(outer, inner);
    const detail::Grid g = detail::grid_for(outer.dim, {&outer, &inner});
    for (const auto& b : inner.boxes) {
        if (b.is_empty()) continue;
        bool ok = true;
        g.for_each_cell(b, [&](const detail::CellIndex& c) {
            ok = outer.contains(g.sample(c));
            return ok;
        });
        if (!ok) return false;
    }
    return true;
}

inline bool same_set(const BoxUnion& a, const BoxUnion& b) { return contains(a, b) && contains(b, a); }

/// Grid cells induced by every coordinate cut of the inputs, restricted to
/// their union. Each cell lies entirely inside or entirely outside each input.
inline std::vector<Box> elementary_cells(const std::vector<BoxUnion>& us)
{
    if (us.empty()) return {};
    const std::size_t d = us.front().dim;
    std::vector<std::vector<Rational>> cuts(d);
    for (const auto& u : us) {
        require_same_dim(us.front(), u);
        detail::add_cuts(cuts, u);
    }
    const detail::Grid g = detail::make_grid(d, cuts);
    std::set<detail::CellIndex> all;
    for (const auto& u : us)
        for (const auto& c : detail::cells_of(g, u)) all.insert(c);
    std::vector<Box> out;
    out.reserve(all.size());
    for (const auto& c : all) out.push_back(g.box(c));
    return out;
}

/// A rational point inside a non-empty box.
inline Point sample_point(const Box& b)
{
    Point p;
    p.reserve(b.dim());
    for (const auto& i : b.dims) p.push_back(i.is_point() ? i.lo : midpoint(i.lo, i.hi));
    return p;
}

inline BoxUnion unite(const BoxUnion& a, const BoxUnion& b)
{
    require_same_dim(a, b);
    BoxUnion all = a;
    all.boxes.insert(all.boxes.end(), b.boxes.begin(), b.boxes.end());
    return normalize(all);
}

inline BoxUnion intersect(const BoxUnion& a, const BoxUnion& b)
{
    return detail::combine(a, b, [](bool x, bool y) { return x && y; });
}

inline BoxUnion difference(const BoxUnion& a, const BoxUnion& b)
{
    return detail::combine(a, b, [](bool x, bool y) { return x && !y; });
}

/// Pairwise products of boxes: membership is the conjunction of factors.
inline BoxUnion product(const BoxUnion& u, const BoxUnion& v)
{
    u.check();
    v.check();
    BoxUnion out(u.dim + v.dim);
    for (const auto& a : u.boxes) {
        if (a.is_empty()) continue;
        for (const auto& b : v.boxes)
            if (!b.is_empty()) out.boxes.push_back(product(a, b));
    }
    return out;
}

/// Smallest closed box containing every box of u; nullopt when u is empty.
inline std::optional<Box> bounding_box(const BoxUnion& u)
{
    std::optional<Box> out;
    for (const auto& b : u.boxes) {
        if (b.is_empty()) continue;
        if (!out) {
            out = b.closure();
            continue;
        }
        for (std::size_t k = 0; k < b.dim(); ++k) {
            out->dims[k].lo = std::min(out->dims[k].lo, b.dims[k].lo);
            out->dims[k].hi = std::max(out->dims[k].hi, b.dims[k].hi);
        }
    }
    return out;
}

} // namespace waybelow

#endif // WAYBELOW_GEOMETRY_HPP
