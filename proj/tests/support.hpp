#ifndef WAYBELOW_TESTS_SUPPORT_HPP
#define WAYBELOW_TESTS_SUPPORT_HPP

#include "waybelow/generators.hpp"
#include "waybelow/io.hpp"

#include <string>
#include <string_view>

namespace testing_support {

using namespace waybelow;

inline Rational q(std::string_view s) { return Rational::parse(s); }

/// "(0,1]", "[1/2,3)", "{2}" (a single point).
inline Interval iv(std::string_view s)
{
    if (s.front() == '{') return Interval::point(q(s.substr(1, s.size() - 2)));
    const auto comma = s.find(',');
    return Interval::make(q(s.substr(1, comma - 1)), q(s.substr(comma + 1, s.size() - comma - 2)), s.front() == '(',
                          s.back() == ')');
}

/// "(0,1)x[2,3]".
inline Box box(std::string_view s)
{
    Box b;
    std::size_t start = 0;
    while (true) {
        const auto x = s.find('x', start);
        b.dims.push_back(iv(s.substr(start, x == std::string_view::npos ? std::string_view::npos : x - start)));
        if (x == std::string_view::npos) break;
        start = x + 1;
    }
    return b;
}

/// Union of boxes; an empty list needs the dimension.
inline BoxUnion u(std::initializer_list<std::string_view> boxes, std::size_t dim = 0)
{
    BoxUnion out(dim);
    for (auto b : boxes) out.boxes.push_back(box(b));
    if (!out.boxes.empty()) out.dim = out.boxes.front().dim();
    return out;
}

inline Point pt(std::initializer_list<std::string_view> cs)
{
    Point p;
    for (auto c : cs) p.push_back(q(c));
    return p;
}

/// Membership by direct evaluation of the boxes, independent of any
/// normalization: a point is in a union iff some box holds it.
inline bool naive_member(const BoxUnion& s, const Point& p)
{
    for (const auto& b : s.boxes) {
        bool in = true;
        for (std::size_t k = 0; k < p.size() && in; ++k) {
            const Interval& i = b.dims[k];
            const bool lo_ok = i.lo_open ? p[k] > i.lo : p[k] >= i.lo;
            const bool hi_ok = i.hi_open ? p[k] < i.hi : p[k] <= i.hi;
            in = lo_ok && hi_ok;
        }
        if (in) return true;
    }
    return false;
}

/// Naive membership in the closure: some box's closure holds the point.
inline bool naive_closure_member(const BoxUnion& s, const Point& p)
{
    for (const auto& b : s.boxes) {
        if (b.is_empty()) continue;
        bool in = true;
        for (std::size_t k = 0; k < p.size() && in; ++k) in = p[k] >= b.dims[k].lo && p[k] <= b.dims[k].hi;
        if (in) return true;
    }
    return false;
}

/// All points of the grid step·ℤ^d inside [-reach, reach]^d.
inline std::vector<Point> lattice(std::size_t d, const Rational& reach, const Rational& step)
{
    std::vector<Rational> line;
    for (Rational x = -reach; x <= reach; x += step) line.push_back(x);
    std::vector<Point> out{Point{}};
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Point> next;
        for (const auto& p : out)
            for (const auto& x : line) {
                Point r = p;
                r.push_back(x);
                next.push_back(std::move(r));
            }
        out = std::move(next);
    }
    return out;
}

/// Openness of a set whose faces lie on the quarter grid, judged at the
/// sixteenth lattice: each member's 3^d − 1 neighbours at distance 1/64
/// (inside the carrier) must be members too. Exact for such sets, since
/// membership is constant on each local piece around a point.
inline bool naive_open(const Space& space, const BoxUnion& s, const Rational& reach)
{
    const std::size_t d = s.dim;
    const Rational eps(1, 64);
    for (const auto& p : lattice(d, reach, Rational(1, 16))) {
        if (!space.carrier_contains(p) || !naive_member(s, p)) continue;
        std::vector<int> dir(d, -1);
        while (true) {
            Point n = p;
            for (std::size_t k = 0; k < d; ++k) n[k] += eps * Rational(dir[k]);
            if (space.carrier_contains(n) && !naive_member(s, n)) return false;
            std::size_t k = 0;
            while (k < d && dir[k] == 1) dir[k++] = -1;
            if (k == d) break;
            ++dir[k];
        }
    }
    return true;
}

} // namespace testing_support

#endif // WAYBELOW_TESTS_SUPPORT_HPP
