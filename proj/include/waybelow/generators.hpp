#ifndef WAYBELOW_GENERATORS_HPP
#define WAYBELOW_GENERATORS_HPP

#include "spaces.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace waybelow::gen {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Random source for one test case, keyed by (seed, stream name, case index)
/// so cases are reproducible independently of each other. Only the raw
/// engine output is used: standard distributions differ across libraries.
class CaseRng
{
public:
    CaseRng(std::uint64_t seed, std::string_view stream, std::uint64_t index)
        : eng_(splitmix64(splitmix64(seed) ^ splitmix64(fnv1a(stream)) ^ splitmix64(index + 1)))
    {
    }

    std::uint64_t next() { return eng_(); }

    /// Uniform-ish integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return next() % den < num; }

    bool coin() { return chance(1, 2); }

    template<typename T>
    const T& pick(const std::vector<T>& v)
    {
        return v.at(static_cast<std::size_t>(between(0, static_cast<std::int64_t>(v.size()) - 1)));
    }

private:
    std::mt19937_64 eng_;
};

/// Endpoints live on the quarter grid of [-2, 2].
inline constexpr std::int64_t grid_den = 4;
inline constexpr std::int64_t grid_reach = 8;

inline Interval open_interval(CaseRng& rng)
{
    const std::int64_t a = rng.between(-grid_reach, grid_reach - 1);
    const std::int64_t b = rng.between(a + 1, std::min(a + grid_reach, grid_reach));
    return Interval::open(Rational(a, grid_den), Rational(b, grid_den));
}

/// Interval with random endpoint flags; sometimes a single point.
inline Interval any_interval(CaseRng& rng)
{
    if (rng.chance(1, 6)) return Interval::point(Rational(rng.between(-grid_reach, grid_reach), grid_den));
    const Interval o = open_interval(rng);
    return Interval::make(o.lo, o.hi, rng.coin(), rng.coin());
}

inline Box open_box(CaseRng& rng, std::size_t d)
{
    Box b;
    for (std::size_t k = 0; k < d; ++k) b.dims.push_back(open_interval(rng));
    return b;
}

inline Box any_box(CaseRng& rng, std::size_t d)
{
    Box b;
    for (std::size_t k = 0; k < d; ++k) b.dims.push_back(any_interval(rng));
    return b;
}

/// Union of 1..max_boxes open boxes.
inline BoxUnion open_union(CaseRng& rng, std::size_t d, std::size_t max_boxes)
{
    BoxUnion u(d);
    const auto n = rng.between(1, static_cast<std::int64_t>(max_boxes));
    for (std::int64_t i = 0; i < n; ++i) u.boxes.push_back(open_box(rng, d));
    return u;
}

/// Union of 0..max_boxes boxes of any shape; empty about one time in ten.
inline BoxUnion any_set(CaseRng& rng, std::size_t d, std::size_t max_boxes)
{
    BoxUnion u(d);
    if (rng.chance(1, 10)) return u;
    const auto n = rng.between(1, static_cast<std::int64_t>(max_boxes));
    for (std::int64_t i = 0; i < n; ++i) u.boxes.push_back(any_box(rng, d));
    return u;
}

/// Box whose closure lies inside the open box `outer`, with endpoints on the
/// sixteenth grid strictly between outer's endpoints.
inline Box inner_box(CaseRng& rng, const Box& outer)
{
    Box b;
    for (const auto& iv : outer.dims) {
        const Rational step(1, 16);
        const auto slots = ((iv.hi - iv.lo) / step).floor() - 1;
        const auto i = rng.between(1, slots);
        const auto j = rng.between(i, slots);
        const Rational lo = iv.lo + step * Rational(i);
        const Rational hi = iv.lo + step * Rational(j);
        b.dims.push_back(i == j ? Interval::point(lo) : Interval::make(lo, hi, rng.coin(), rng.coin()));
    }
    return b;
}

/// 1..max_pieces inner boxes of a random box of the open union t.
inline BoxUnion inner_set(CaseRng& rng, const BoxUnion& t, std::size_t max_pieces)
{
    BoxUnion u(t.dim);
    const Box& host = rng.pick(t.boxes);
    const auto n = rng.between(1, static_cast<std::int64_t>(max_pieces));
    for (std::int64_t i = 0; i < n; ++i) u.boxes.push_back(inner_box(rng, host));
    return u;
}

/// Finite set of 1..max_points grid points.
inline BoxUnion point_set(CaseRng& rng, std::size_t d, std::size_t max_points)
{
    BoxUnion u(d);
    const auto n = rng.between(1, static_cast<std::int64_t>(max_points));
    for (std::int64_t i = 0; i < n; ++i) {
        Box b;
        for (std::size_t k = 0; k < d; ++k)
            b.dims.push_back(Interval::point(Rational(rng.between(-grid_reach, grid_reach), grid_den)));
        u.boxes.push_back(std::move(b));
    }
    return u;
}

/// A carrier box around the origin: each side from [-2,-1] to [1,2], with
/// random endpoint flags unless `closed`.
inline Box carrier_box(CaseRng& rng, std::size_t d, bool closed = false)
{
    Box b;
    for (std::size_t k = 0; k < d; ++k) {
        const Rational lo(-rng.between(4, 8), grid_den);
        const Rational hi(rng.between(4, 8), grid_den);
        b.dims.push_back(closed ? Interval::closed(lo, hi) : Interval::make(lo, hi, rng.coin(), rng.coin()));
    }
    return b;
}

/// ℝ^d two times in three, otherwise a Euclidean box.
inline Space euclidean_space(CaseRng& rng, std::size_t d, bool closed_carrier = false)
{
    if (rng.chance(2, 3)) return Space::euclidean(d);
    return Space::box(carrier_box(rng, d, closed_carrier));
}

} // namespace waybelow::gen

#endif // WAYBELOW_GENERATORS_HPP
