#pragma once

#include <mpmat/eft.hpp>
#include <mpmat/errors.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mpmat {

/// Unevaluated sum hi + lo of two doubles with |lo| <= ulp(hi) / 2,
/// giving roughly 106 bits of significand.
class DoubleDouble {
public:
    /// Unit roundoff of the format.
    static constexpr double epsilon = 0x1p-104;
    /// Digits that make to_string/from_string round-trip.
    static constexpr int round_trip_digits = 40;

    constexpr DoubleDouble() noexcept = default;
    constexpr DoubleDouble(double x) noexcept : hi_(x) {}  // NOLINT(implicit)

    /// Takes the components as given; caller guarantees non-overlap.
    static constexpr DoubleDouble from_parts(double hi, double lo) noexcept
    {
        DoubleDouble r;
        r.hi_ = hi;
        r.lo_ = lo;
        return r;
    }

    /// Exact for every 64-bit integer.
    static DoubleDouble from_integer(std::int64_t v) noexcept
    {
        const double hi = static_cast<double>(v);
        // v - (int64)hi is exact; hi may equal 2^63 only for v near INT64_MAX.
        const double lo = (hi >= 0x1p63) ? static_cast<double>(v - INT64_MAX) - 1.0
                                         : static_cast<double>(v - static_cast<std::int64_t>(hi));
        double e;
        const double s = eft::quick_two_sum(hi, lo, e);
        return from_parts(s, e);
    }

    static DoubleDouble from_string(std::string_view text);
    std::string to_string(int digits = round_trip_digits) const;

    constexpr double hi() const noexcept { return hi_; }
    constexpr double lo() const noexcept { return lo_; }
    constexpr double to_double() const noexcept { return hi_ + lo_; }

    DoubleDouble& operator+=(const DoubleDouble& b) noexcept { return *this = *this + b; }
    DoubleDouble& operator-=(const DoubleDouble& b) noexcept { return *this = *this - b; }
    DoubleDouble& operator*=(const DoubleDouble& b) noexcept { return *this = *this * b; }
    DoubleDouble& operator/=(const DoubleDouble& b) { return *this = *this / b; }

    constexpr DoubleDouble operator-() const noexcept { return from_parts(-hi_, -lo_); }

    friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        double s2, t2;
        double s1 = eft::two_sum(a.hi_, b.hi_, s2);
        const double t1 = eft::two_sum(a.lo_, b.lo_, t2);
        s2 += t1;
        s1 = eft::quick_two_sum(s1, s2, s2);
        s2 += t2;
        s1 = eft::quick_two_sum(s1, s2, s2);
        return from_parts(s1, s2);
    }

    friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        return a + (-b);
    }

    friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        double e;
        double p = eft::two_prod(a.hi_, b.hi_, e);
        e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        p = eft::quick_two_sum(p, e, e);
        return from_parts(p, e);
    }

    friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b)
    {
        if (b.hi_ == 0.0) {
            throw DomainError("DoubleDouble division by zero");
        }
        double q1 = a.hi_ / b.hi_;
        DoubleDouble r = a - mul_double(b, q1);
        double q2 = r.hi_ / b.hi_;
        r -= mul_double(b, q2);
        const double q3 = r.hi_ / b.hi_;
        q1 = eft::quick_two_sum(q1, q2, q2);
        return from_parts(q1, q2) + DoubleDouble(q3);
    }

    friend DoubleDouble sqrt(const DoubleDouble& a)
    {
        if (a.hi_ == 0.0) {
            return {};
        }
        if (a.hi_ < 0.0) {
            throw DomainError("DoubleDouble sqrt of negative value");
        }
        // One Newton step on 1/sqrt(a) lifted from the double estimate.
        const double x = 1.0 / std::sqrt(a.hi_);
        const double ax = a.hi_ * x;
        double e;
        const double ax2 = eft::two_sqr(ax, e);
        const DoubleDouble diff = a - from_parts(ax2, e);
        double err;
        const double s = eft::two_sum(ax, diff.hi_ * (x * 0.5), err);
        return from_parts(s, err).renormalized();
    }

    friend DoubleDouble abs(const DoubleDouble& a) noexcept { return a.hi_ < 0.0 ? -a : a; }

    friend constexpr bool operator==(const DoubleDouble& a, const DoubleDouble& b) noexcept
    {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }

    friend constexpr std::partial_ordering operator<=>(const DoubleDouble& a,
                                                       const DoubleDouble& b) noexcept
    {
        if (auto c = a.hi_ <=> b.hi_; c != 0) {
            return c;
        }
        return a.lo_ <=> b.lo_;
    }

    /// fl(hi + lo) == hi and zero hi implies zero lo.
    bool is_normalized() const noexcept
    {
        if (hi_ == 0.0) {
            return lo_ == 0.0;
        }
        return hi_ + lo_ == hi_;
    }

private:
    static DoubleDouble mul_double(const DoubleDouble& a, double b) noexcept
    {
        double e;
        double p = eft::two_prod(a.hi_, b, e);
        e += a.lo_ * b;
        p = eft::quick_two_sum(p, e, e);
        return from_parts(p, e);
    }

    DoubleDouble renormalized() const noexcept
    {
        double e;
        const double s = eft::quick_two_sum(hi_, lo_, e);
        return from_parts(s, e);
    }

    double hi_ = 0.0;
    double lo_ = 0.0;
};

// Namespace-scope declarations so mpmat::sqrt / mpmat::abs name the friends.
DoubleDouble sqrt(const DoubleDouble& a);
DoubleDouble abs(const DoubleDouble& a) noexcept;

}  // namespace mpmat
