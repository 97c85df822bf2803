#ifndef WAYBELOW_COUNTEREXAMPLES_HPP
#define WAYBELOW_COUNTEREXAMPLES_HPP

#include "errors.hpp"
#include "rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace waybelow {

/// A point of the wedge of circles C_1, C_2, ...: angle theta ∈ [0,1) on
/// circle `circle_index`. Theta 0 is the shared basepoint, stored as (0, 0).
class WedgePoint
{
public:
    WedgePoint() = default;

    WedgePoint(std::size_t circle_index, Rational theta)
    {
        theta = theta - Rational(theta.floor());
        if (theta.sign() == 0) return;
        if (circle_index == 0) throw Error(ErrorKind::invalid_argument, "circle 0 holds only the basepoint");
        circle_ = circle_index;
        theta_ = theta;
    }

    static WedgePoint basepoint() { return {}; }

    [[nodiscard]] std::size_t circle_index() const { return circle_; }
    [[nodiscard]] const Rational& theta() const { return theta_; }
    [[nodiscard]] bool is_basepoint() const { return theta_.sign() == 0; }

    friend bool operator==(const WedgePoint&, const WedgePoint&) = default;

private:
    std::size_t circle_ = 0;
    Rational theta_{0};
};

/// Rational bracket lo < π < hi from the continued-fraction convergents of π.
/// Level L takes the best lower and upper bounds among convergents c_0..c_{L+3},
/// so level 0 is 333/106 < π < 355/113.
struct PiBounds
{
    Rational lo;
    Rational hi;
    unsigned level = 0;

    static constexpr std::array<std::int64_t, 33> partial_quotients{
        3, 7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14, 2, 1, 1, 2, 2, 2, 2, 1, 84, 2, 1, 1, 15, 3, 13, 1, 4, 2, 6, 6};

    /// Highest level whose convergents fit in 64 bits.
    static constexpr unsigned max_level = partial_quotients.size() - 4;

    static PiBounds at(unsigned level)
    {
        if (level > max_level)
            throw Error(ErrorKind::depth_exceeded, "pi bounds beyond level " + std::to_string(max_level));
        PiBounds out;
        out.level = level;
        std::int64_t h_prev = 1;
        std::int64_t k_prev = 0;
        std::int64_t h = partial_quotients[0];
        std::int64_t k = 1;
        out.lo = Rational(h);
        for (unsigned i = 1; i <= level + 3; ++i) {
            const std::int64_t a = partial_quotients[i];
            const std::int64_t hn = a * h + h_prev;
            const std::int64_t kn = a * k + k_prev;
            h_prev = h;
            k_prev = k;
            h = hn;
            k = kn;
            // Even convergents lie below π, odd ones above, each closer than the last.
            if (i % 2 == 0) out.lo = Rational(h, k);
            else out.hi = Rational(h, k);
        }
        return out;
    }

    [[nodiscard]] PiBounds refine() const { return at(level + 1); }

    /// Sign of x − π, refining from this level until the bracket separates.
    [[nodiscard]] int compare(const Rational& x) const
    {
        for (PiBounds b = *this;; b = b.refine()) {
            if (x < b.lo) return -1;
            if (x > b.hi) return 1;
        }
    }

    /// floor(π / d) for d > 0.
    [[nodiscard]] std::int64_t floor_div(const Rational& d) const
    {
        for (PiBounds b = *this;; b = b.refine()) {
            const auto f = (b.lo / d).floor();
            if ((b.hi / d).floor() == f) return f;
        }
    }
};

/// Query "is (r, point) in A?".
struct ASetQuery
{
    Rational r;
    WedgePoint point;

    friend bool operator==(const ASetQuery&, const ASetQuery&) = default;
};

/// Membership in A_n: π/n ≤ r ≤ π/n + max(θ, 1 − θ), θ on circle n ≥ 1.
inline bool in_a_n(const Rational& r, std::size_t n, const Rational& theta, const PiBounds& pi = PiBounds::at(0))
{
    if (n == 0) throw Error(ErrorKind::invalid_argument, "A_n needs n >= 1");
    const Rational nn(static_cast<Rational::int_type>(n));
    const Rational reach = theta.sign() == 0 ? Rational(1) : std::max(theta, Rational(1) - theta);
    return pi.compare(nn * r) >= 0 && pi.compare(nn * (r - reach)) <= 0;
}

namespace detail {

/// Smallest n ≥ 1 with π/n ≤ r, for r > 0.
inline std::size_t first_circle_below(const Rational& r, const PiBounds& pi)
{
    return static_cast<std::size_t>(pi.floor_div(r)) + 1;
}

} // namespace detail

/// Membership in A ∩ (ℚ × (C_1 ∨ ... ∨ C_stage)); stage 0 means the whole
/// wedge. The basepoint lies on every circle, so it is in A when some A_n holds.
inline bool a_membership_in_stage(const ASetQuery& q, std::size_t stage, const PiBounds& pi = PiBounds::at(0))
{
    if (!q.point.is_basepoint()) {
        if (stage != 0 && q.point.circle_index() > stage) return false;
        return in_a_n(q.r, q.point.circle_index(), q.point.theta(), pi);
    }
    if (q.r.sign() <= 0) return false;
    // The circle with the largest π/n ≤ r also has the largest upper end.
    const std::size_t n = detail::first_circle_below(q.r, pi);
    if (stage != 0 && n > stage) return false;
    return in_a_n(q.r, n, Rational(0), pi);
}

inline bool a_membership(const ASetQuery& q, const PiBounds& pi = PiBounds::at(0))
{
    return a_membership_in_stage(q, 0, pi);
}

struct SeparationProbe
{
    ASetQuery query;
    bool member = false;
};

struct SeparationWitness
{
    std::size_t n = 0;
    Rational radius;
    /// lo bound of π used for the analytic check 3 < π.
    Rational pi_lo;
    std::vector<SeparationProbe> probes;

    [[nodiscard]] bool ok() const
    {
        return pi_lo > Rational(3) &&
               std::none_of(probes.begin(), probes.end(), [](const auto& p) { return p.member; });
    }
};

inline constexpr std::size_t separation_r_steps = 10;
inline constexpr std::size_t separation_theta_steps = 5;

/// Probes a 10 × 5 grid of (r, θ) in (−radius, radius) × [0,1), spreading
/// the points over circles 1..n, against A restricted to stage n.
inline SeparationWitness check_separation(std::size_t n, const Rational& radius)
{
    if (n == 0) throw Error(ErrorKind::invalid_argument, "stage must be >= 1");
    SeparationWitness w;
    w.n = n;
    w.radius = radius;
    const PiBounds pi = PiBounds::at(0);
    w.pi_lo = pi.lo;
    const auto steps = static_cast<Rational::int_type>(separation_r_steps + 1);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < separation_r_steps; ++j) {
        const Rational r = -radius + Rational(2) * radius * Rational(static_cast<Rational::int_type>(j + 1), steps);
        for (std::size_t t = 0; t < separation_theta_steps; ++t, ++idx) {
            const Rational theta(static_cast<Rational::int_type>(t),
                                 static_cast<Rational::int_type>(separation_theta_steps));
            ASetQuery q{r, WedgePoint(1 + idx % n, theta)};
            w.probes.push_back({q, a_membership_in_stage(q, n, pi)});
        }
    }
    return w;
}

/// Neighbourhood (−3/n, 3/n) × (stage n) of (0, basepoint) missing A: members
/// on circle i ≤ n have r ≥ π/i ≥ π/n > 3/n.
inline SeparationWitness stage_separation_witness(std::size_t n)
{
    if (n == 0) throw Error(ErrorKind::invalid_argument, "stage must be >= 1");
    return check_separation(n, Rational(3, static_cast<Rational::int_type>(n)));
}

struct LimitWitness
{
    ASetQuery query;
    /// Circle whose A_n contains the point (internal index, from 1).
    std::size_t circle = 0;
    Rational delta;
};

/// A point of A inside (−delta, delta) × V for any open V around the basepoint
/// whose arc on C_n has width arc(n) > 0: the basepoint with r ∈ A_n, where n
/// is the smallest circle with π/n < delta.
inline LimitWitness product_limit_witness(const Rational& delta,
                                          const std::function<Rational(std::size_t)>& arc)
{
    if (delta.sign() <= 0) throw Error(ErrorKind::invalid_argument, "delta must be positive");
    PiBounds pi = PiBounds::at(0);
    const std::size_t n = detail::first_circle_below(delta, pi);
    if (arc(n).sign() <= 0) throw Error(ErrorKind::invalid_argument, "arc widths must be positive");
    const Rational nn(static_cast<Rational::int_type>(n));
    while (pi.hi / nn >= delta) pi = pi.refine();
    // r must also stay below π/n + 1, the top of A_n at the basepoint.
    const Rational top = std::min(delta, pi.lo / nn + Rational(1));
    LimitWitness w{{midpoint(pi.hi / nn, top), WedgePoint::basepoint()}, n, delta};
    if (!in_a_n(w.query.r, n, Rational(0)) || !a_membership(w.query))
        throw std::logic_error("limit witness failed self-verification");
    return w;
}

struct NotClosedDemo
{
    std::vector<SeparationWitness> separations;
    std::vector<LimitWitness> limit_witnesses;
};

/// Witnesses with delta = 1/k for k = 1..k_max, paired with the stage
/// separations for n = 1..k_max.
inline NotClosedDemo not_closed_demo(std::size_t k_max)
{
    if (k_max == 0) throw Error(ErrorKind::invalid_argument, "k_max must be >= 1");
    NotClosedDemo out;
    const auto constant_arc = [](std::size_t) { return Rational(1, 4); };
    for (std::size_t k = 1; k <= k_max; ++k) {
        out.limit_witnesses.push_back(
            product_limit_witness(Rational(1, static_cast<Rational::int_type>(k)), constant_arc));
        out.separations.push_back(stage_separation_witness(k));
    }
    return out;
}

} // namespace waybelow

#endif // WAYBELOW_COUNTEREXAMPLES_HPP
