#ifndef WAYBELOW_SPACES_HPP
#define WAYBELOW_SPACES_HPP

#include "geometry.hpp"

#include <memory>
#include <optional>
#include <variant>

namespace waybelow {

class Space;

/// ℝ^d.
struct EuclideanFull
{
    std::size_t dim = 1;
};

/// A box of ℝ^d with the subspace topology.
struct EuclideanBox
{
    Box carrier;
};

/// ℚ^d ∩ carrier with the subspace topology; not core-compact.
struct RationalTrace
{
    std::size_t dim = 1;
    Box carrier;
};

struct ProductSpace
{
    std::shared_ptr<const Space> left;
    std::shared_ptr<const Space> right;
};

/// Ambient topology for box unions. An open set of a space is a BoxUnion
/// read as (union ∩ carrier).
class Space
{
public:
    using Variant = std::variant<EuclideanFull, EuclideanBox, RationalTrace, ProductSpace>;

    Space(EuclideanFull s) : v_(s) {}                 // NOLINT
    Space(EuclideanBox s) : v_(std::move(s)) {}       // NOLINT
    Space(RationalTrace s) : v_(std::move(s)) {}      // NOLINT
    Space(ProductSpace s) : v_(std::move(s)) {}       // NOLINT

    static Space euclidean(std::size_t d) { return EuclideanFull{d}; }
    static Space box(Box carrier) { return EuclideanBox{std::move(carrier)}; }
    static Space rational(Box carrier)
    {
        const std::size_t d = carrier.dim();
        return RationalTrace{d, std::move(carrier)};
    }
    static Space product(Space left, Space right)
    {
        return ProductSpace{std::make_shared<const Space>(std::move(left)),
                            std::make_shared<const Space>(std::move(right))};
    }

    [[nodiscard]] const Variant& variant() const { return v_; }

    [[nodiscard]] std::size_t dim() const
    {
        return std::visit(
            [](const auto& s) -> std::size_t {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, EuclideanFull>) return s.dim;
                else if constexpr (std::is_same_v<T, EuclideanBox>) return s.carrier.dim();
                else if constexpr (std::is_same_v<T, RationalTrace>) return s.dim;
                else return s.left->dim() + s.right->dim();
            },
            v_);
    }

    [[nodiscard]] bool is_product() const { return std::holds_alternative<ProductSpace>(v_); }

    [[nodiscard]] const ProductSpace& as_product() const
    {
        if (!is_product()) throw Error(ErrorKind::unsupported_space, "not a product space");
        return std::get<ProductSpace>(v_);
    }

    /// True if some factor is a rational trace.
    [[nodiscard]] bool has_rational_factor() const
    {
        return std::visit(
            [](const auto& s) -> bool {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, RationalTrace>) return true;
                else if constexpr (std::is_same_v<T, ProductSpace>)
                    return s.left->has_rational_factor() || s.right->has_rational_factor();
                else return false;
            },
            v_);
    }

    /// Per-axis carrier constraint; nullopt means the whole real line.
    [[nodiscard]] std::vector<std::optional<Interval>> carrier_axes() const
    {
        return std::visit(
            [](const auto& s) -> std::vector<std::optional<Interval>> {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, EuclideanFull>) {
                    return std::vector<std::optional<Interval>>(s.dim);
                } else if constexpr (std::is_same_v<T, ProductSpace>) {
                    auto l = s.left->carrier_axes();
                    auto r = s.right->carrier_axes();
                    l.insert(l.end(), r.begin(), r.end());
                    return l;
                } else {
                    return {s.carrier.dims.begin(), s.carrier.dims.end()};
                }
            },
            v_);
    }

    [[nodiscard]] bool carrier_contains(const Point& p) const
    {
        const auto axes = carrier_axes();
        if (p.size() != axes.size()) return false;
        for (std::size_t k = 0; k < p.size(); ++k)
            if (axes[k] && !axes[k]->contains(p[k])) return false;
        return true;
    }

private:
    Variant v_;
};

inline void require_dim(const Space& space, const BoxUnion& u)
{
    u.check();
    if (space.dim() != u.dim)
        throw Error(ErrorKind::dimension_mismatch, "space of dimension " + std::to_string(space.dim()) +
                                                       " but set of dimension " + std::to_string(u.dim));
}

/// u ∩ carrier, box by box.
inline BoxUnion restrict_to_carrier(const Space& space, const BoxUnion& u)
{
    require_dim(space, u);
    const auto axes = space.carrier_axes();
    BoxUnion out(u.dim);
    for (const auto& b : u.boxes) {
        Box clipped = b;
        for (std::size_t k = 0; k < axes.size(); ++k)
            if (axes[k]) clipped.dims[k] = intersect(clipped.dims[k], *axes[k]);
        if (!clipped.is_empty()) out.boxes.push_back(std::move(clipped));
    }
    return out;
}

namespace detail {

inline Grid grid_with_carrier(const Space& space, std::initializer_list<const BoxUnion*> unions)
{
    const std::size_t d = space.dim();
    std::vector<std::vector<Rational>> cuts(d);
    for (const auto* u : unions) add_cuts(cuts, *u);
    const auto axes = space.carrier_axes();
    for (std::size_t k = 0; k < d; ++k) {
        if (axes[k] && !axes[k]->is_empty()) {
            cuts[k].push_back(axes[k]->lo);
            cuts[k].push_back(axes[k]->hi);
        }
    }
    return make_grid(d, cuts);
}

/// Span of the atoms first..last along axis k, clipped to the carrier axis;
/// nullopt if it is unbounded.
inline std::optional<Interval> clipped_span(const AxisGrid& ax, const std::optional<Interval>& carrier,
                                            std::size_t first, std::size_t last)
{
    const bool unbounded = !ax.bounded_below(first) || !ax.bounded_above(last);
    if (unbounded && !carrier) return std::nullopt;
    Rational lo = carrier ? carrier->lo : Rational(0);
    bool lo_open = carrier ? carrier->lo_open : true;
    Rational hi = carrier ? carrier->hi : Rational(0);
    bool hi_open = carrier ? carrier->hi_open : true;
    if (ax.bounded_below(first)) {
        lo = first % 2 == 1 ? ax.cuts[first / 2] : ax.cuts[first / 2 - 1];
        lo_open = first % 2 == 0;
    }
    if (ax.bounded_above(last)) {
        hi = ax.cuts[last / 2];
        hi_open = last % 2 == 0;
    }
    Interval iv = Interval::make(lo, hi, lo_open, hi_open);
    if (carrier) iv = intersect(iv, *carrier);
    return iv;
}

/// Calls f on each cell of the star of `cell` (cells whose closure contains it).
template<typename F>
bool for_each_star_cell(const Grid& g, const CellIndex& cell, F&& f)
{
    const std::size_t d = cell.size();
    std::vector<std::vector<std::size_t>> choices(d);
    for (std::size_t k = 0; k < d; ++k) {
        choices[k].push_back(cell[k]);
        if (g.axes[k].is_point(cell[k])) {
            choices[k].push_back(cell[k] - 1);
            choices[k].push_back(cell[k] + 1);
        }
    }
    CellIndex cur(d);
    std::vector<std::size_t> pos(d, 0);
    while (true) {
        for (std::size_t k = 0; k < d; ++k) cur[k] = choices[k][pos[k]];
        if (!f(static_cast<const CellIndex&>(cur))) return false;
        std::size_t k = d;
        while (k > 0) {
            --k;
            if (++pos[k] < choices[k].size()) break;
            pos[k] = 0;
            if (k == 0) return true;
        }
    }
}

} // namespace detail

/// True iff u ∩ carrier is open in the subspace topology of the carrier.
///
/// Decided on the cell grid of u and the carrier: every cell of the set must
/// have its whole star (within the carrier) inside the set. Rational traces
/// use the same test since every cell meets ℚ^d densely.
inline bool is_open_in(const Space& space, const BoxUnion& u)
{
    const BoxUnion a = restrict_to_carrier(space, u);
    const detail::Grid g = detail::grid_with_carrier(space, {&a});
    for (const auto& cell : detail::cells_of(g, a)) {
        const bool ok = detail::for_each_star_cell(g, cell, [&](const detail::CellIndex& n) {
            const Point p = g.sample(n);
            return !space.carrier_contains(p) || a.contains(p);
        });
        if (!ok) return false;
    }
    return true;
}

enum class Side
{
    left,
    right
};

/// Image of w under the projection onto one factor of a product space.
inline BoxUnion project(const Space& product_space, const BoxUnion& w, Side side)
{
    const auto& prod = product_space.as_product();
    require_dim(product_space, w);
    const std::size_t dl = prod.left->dim();
    const std::size_t from = side == Side::left ? 0 : dl;
    const std::size_t count = side == Side::left ? dl : prod.right->dim();
    BoxUnion out(count);
    for (const auto& b : w.boxes) {
        if (b.is_empty()) continue;
        Box part(std::vector<Interval>(b.dims.begin() + static_cast<std::ptrdiff_t>(from),
                                       b.dims.begin() + static_cast<std::ptrdiff_t>(from + count)));
        out.boxes.push_back(std::move(part));
    }
    return normalize(out);
}

/// The rectangles u × v as a union over the product.
inline BoxUnion product_open(const BoxUnion& u, const BoxUnion& v) { return product(u, v); }

} // namespace waybelow

#endif // WAYBELOW_SPACES_HPP
