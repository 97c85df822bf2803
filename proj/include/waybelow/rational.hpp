#ifndef WAYBELOW_RATIONAL_HPP
#define WAYBELOW_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace waybelow {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator. Intermediate
/// products are computed in 128 bits; a result that does not fit back into
/// 64 bits raises std::overflow_error instead of wrapping.
class Rational
{
public:
    using int_type = std::int64_t;

    constexpr Rational() = default;
    constexpr Rational(int_type n) : num_(n) {} // NOLINT: implicit by intent

    Rational(int_type n, int_type d) { assign(n, d); }

    [[nodiscard]] constexpr int_type num() const { return num_; }
    [[nodiscard]] constexpr int_type den() const { return den_; }

    [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
    [[nodiscard]] constexpr int sign() const { return (num_ > 0) - (num_ < 0); }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        using wide = __int128;
        return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_,
                         wide(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        using wide = __int128;
        return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_,
                         wide(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        using wide = __int128;
        return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        using wide = __int128;
        return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
    }
    Rational operator-() const
    {
        if (num_ == std::numeric_limits<int_type>::min())
            throw std::overflow_error("rational negation overflow");
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational&, const Rational&) = default;

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        using wide = __int128;
        const wide lhs = wide(a.num_) * b.den_;
        const wide rhs = wide(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Largest integer not exceeding the value.
    [[nodiscard]] int_type floor() const
    {
        int_type q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }

    /// "p/q", or just "p" for integers.
    [[nodiscard]] std::string str() const
    {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
    static Rational parse(std::string_view text)
    {
        const auto slash = text.find('/');
        auto parse_int = [](std::string_view s) -> int_type {
            if (s.empty()) throw std::invalid_argument("empty rational component");
            std::size_t pos = 0;
            const bool neg = s[0] == '-';
            if (neg || s[0] == '+') pos = 1;
            if (pos == s.size()) throw std::invalid_argument("malformed rational");
            __int128 v = 0;
            for (; pos < s.size(); ++pos) {
                if (s[pos] < '0' || s[pos] > '9')
                    throw std::invalid_argument("malformed rational: " + std::string(s));
                v = v * 10 + (s[pos] - '0');
                if (v > std::numeric_limits<int_type>::max())
                    throw std::overflow_error("rational literal out of range");
            }
            return static_cast<int_type>(neg ? -v : v);
        };
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    [[nodiscard]] double to_double() const
    {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

private:
    int_type num_ = 0;
    int_type den_ = 1;

    void assign(int_type n, int_type d)
    {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        *this = from_wide(n, d);
    }

    static __int128 gcd_wide(__int128 a, __int128 b)
    {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(__int128 n, __int128 d)
    {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = gcd_wide(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 hi = std::numeric_limits<int_type>::max();
        if (n > hi || n < -hi || d > hi) throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<int_type>(n);
        r.den_ = static_cast<int_type>(d);
        return r;
    }
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

} // namespace waybelow

template<>
struct std::hash<waybelow::Rational>
{
    std::size_t operator()(const waybelow::Rational& r) const noexcept
    {
        const auto h1 = std::hash<std::int64_t>{}(r.num());
        const auto h2 = std::hash<std::int64_t>{}(r.den());
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};

#endif // WAYBELOW_RATIONAL_HPP
