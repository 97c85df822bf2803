#ifndef WAYBELOW_ORACLE_HPP
#define WAYBELOW_ORACLE_HPP

#include "waybelow.hpp"

#include <optional>

namespace waybelow {

struct OracleResult
{
    /// nullopt when the budget ran out before a decision.
    std::optional<bool> verdict;
    /// A cover of t with no finite subfamily covering s, when verdict is false.
    std::optional<CoverFamily> defeating_cover;
    std::size_t covers_tried = 0;
};

namespace detail {

/// Smallest positive gap between consecutive cuts on any axis.
inline Rational min_cut_gap(const Grid& g)
{
    std::optional<Rational> gap;
    for (const auto& ax : g.axes)
        for (std::size_t i = 1; i < ax.cuts.size(); ++i) {
            const Rational d = ax.cuts[i] - ax.cuts[i - 1];
            if (!gap || d < *gap) gap = d;
        }
    return gap.value_or(Rational(1));
}

} // namespace detail

/// Brute-force way-below check straight from the cover definition.
///
/// Tries punctured covers t ∖ [p − 1/k, p + 1/k]^d around every grid point p
/// near s that lies outside t, searching k = 1, 2, 4, ... for a member that
/// covers s. The search stops once 1/k is below half the finest cut gap: no
/// grid point outside closure(s) is that close to s. Any budget left over is
/// spent on finite dyadic grid covers of t, whose subcovers are found
/// greedily and checked.
inline OracleResult oracle_way_below(const Space& space, const BoxUnion& s, const BoxUnion& t,
                                     std::size_t budget)
{
    require_dim(space, s);
    require_dim(space, t);
    if (space.has_rational_factor() || space.dim() > 2)
        throw Error(ErrorKind::unsupported_space, "oracle supports Euclidean carriers of dimension <= 2");

    OracleResult out;
    const BoxUnion se = restrict_to_carrier(space, s);
    const BoxUnion te = restrict_to_carrier(space, t);
    if (se.empty()) {
        out.verdict = true;
        return out;
    }

    const detail::Grid g = detail::grid_with_carrier(space, {&se, &te});
    const Box hull = *bounding_box(se);
    const Rational gap = detail::min_cut_gap(g);

    std::int64_t k_last = 1;
    while (Rational(1, k_last) >= gap / Rational(2)) k_last *= 2;

    for (const auto& cell : detail::cells_of(g, BoxUnion::of(hull))) {
        const Point p = g.sample(cell);
        if (te.contains(p)) continue;
        if (out.covers_tried == budget) return out;
        ++out.covers_tried;

        const CoverFamily fam{PuncturedCover{p}};
        bool has_subcover = false;
        for (std::int64_t k = 1; k <= k_last && !has_subcover; k *= 2)
            has_subcover = contains(cover_member(space, t, fam, static_cast<std::size_t>(k)), se);
        if (!has_subcover) {
            out.verdict = false;
            out.defeating_cover = fam;
            return out;
        }
    }

    // Finite covers always admit subcovers; these exercise the search itself.
    const Box span = *bounding_box(te);
    for (std::int64_t level = 0; level < 3 && out.covers_tried < budget; ++level) {
        ++out.covers_tried;
        const Rational h(1, std::int64_t{1} << level);
        std::vector<BoxUnion> members;
        std::vector<std::vector<Rational>> centers(space.dim());
        for (std::size_t k = 0; k < space.dim(); ++k) {
            Rational c = Rational(span.dims[k].lo.floor()) - h;
            for (; c <= span.dims[k].hi + h; c += h) centers[k].push_back(c);
        }
        std::vector<std::size_t> idx(space.dim(), 0);
        while (true) {
            Box cube;
            for (std::size_t k = 0; k < space.dim(); ++k)
                cube.dims.push_back(Interval::open(centers[k][idx[k]] - h, centers[k][idx[k]] + h));
            BoxUnion m = intersect(te, BoxUnion::of(cube));
            if (!m.empty()) members.push_back(std::move(m));
            std::size_t k = space.dim();
            bool done = true;
            while (k-- > 0) {
                if (++idx[k] < centers[k].size()) {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
            if (done) break;
        }
        BoxUnion covered(s.dim);
        for (const auto& m : members) {
            if (contains(covered, se)) break;
            if (!contains(covered, intersect(m, se))) covered = unite(covered, m);
        }
        if (!contains(covered, se)) {
            out.verdict = false;
            out.defeating_cover = CoverFamily{FiniteCover{members}};
            return out;
        }
    }
    out.verdict = true;
    return out;
}

} // namespace waybelow

#endif // WAYBELOW_ORACLE_HPP
