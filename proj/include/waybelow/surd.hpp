#ifndef WAYBELOW_SURD_HPP
#define WAYBELOW_SURD_HPP

#include "rational.hpp"

#include <utility>

namespace waybelow {

/// The irrational number offset + scale·√2 (scale ≠ 0).
///
/// Comparisons against rationals are exact (by squaring); `bounds` gives
/// nested rational brackets from bisecting √2.
struct Sqrt2Affine
{
    Rational offset{0};
    Rational scale{1};

    /// Sign of x − value.
    [[nodiscard]] int compare(const Rational& x) const
    {
        const Rational a = x - offset;
        const int sa = a.sign();
        const int sq = scale.sign();
        if (sa >= 0 && sq < 0) return 1;
        if (sa <= 0 && sq > 0) return -1;
        // Same strict sign: compare a² with 2·scale².
        const Rational lhs = a * a;
        const Rational rhs = Rational(2) * scale * scale;
        if (sa > 0) return lhs > rhs ? 1 : -1;
        return lhs < rhs ? 1 : -1;
    }

    /// Strict rational bounds lo < value < hi, width |scale|·2^-level.
    [[nodiscard]] std::pair<Rational, Rational> bounds(unsigned level) const
    {
        Rational lo(1);
        Rational hi(2);
        for (unsigned i = 0; i < level; ++i) {
            const Rational mid = midpoint(lo, hi);
            if (mid * mid < Rational(2)) lo = mid;
            else hi = mid;
        }
        Rational a = offset + scale * lo;
        Rational b = offset + scale * hi;
        if (scale.sign() < 0) std::swap(a, b);
        return {a, b};
    }

    friend bool operator==(const Sqrt2Affine&, const Sqrt2Affine&) = default;
};

/// The irrational point of (a, b) used to refute way-below on rational traces:
/// a + (b − a)(√2 − 1).
inline Sqrt2Affine pinned_irrational(const Rational& a, const Rational& b)
{
    return Sqrt2Affine{Rational(2) * a - b, b - a};
}

} // namespace waybelow

#endif // WAYBELOW_SURD_HPP
