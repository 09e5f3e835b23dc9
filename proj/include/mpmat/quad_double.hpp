#pragma once

#include <mpmat/double_double.hpp>
#include <mpmat/eft.hpp>
#include <mpmat/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mpmat {

namespace detail {

// Restores non-overlap of a 4-term expansion of decreasing magnitude.
inline void renorm4(double& c0, double& c1, double& c2, double& c3) noexcept
{
    if (std::isinf(c0)) {
        return;
    }
    double s0, s1, s2 = 0.0, s3 = 0.0;
    s0 = eft::quick_two_sum(c2, c3, c3);
    s0 = eft::quick_two_sum(c1, s0, c2);
    c0 = eft::quick_two_sum(c0, s0, c1);

    s0 = c0;
    s1 = c1;
    if (s1 != 0.0) {
        s1 = eft::quick_two_sum(s1, c2, s2);
        if (s2 != 0.0) {
            s2 = eft::quick_two_sum(s2, c3, s3);
        } else {
            s1 = eft::quick_two_sum(s1, c3, s2);
        }
    } else {
        s0 = eft::quick_two_sum(s0, c2, s1);
        if (s1 != 0.0) {
            s1 = eft::quick_two_sum(s1, c3, s2);
        } else {
            s0 = eft::quick_two_sum(s0, c3, s1);
        }
    }
    c0 = s0;
    c1 = s1;
    c2 = s2;
    c3 = s3;
}

// Second (compressing) pass shared by both 5-term renormalizations.
inline void compress5(double& c0, double& c1, double& c2, double& c3, double& c4) noexcept
{
    double s0, s1, s2 = 0.0, s3 = 0.0;
    s0 = eft::quick_two_sum(c0, c1, s1);
    if (s1 != 0.0) {
        s1 = eft::quick_two_sum(s1, c2, s2);
        if (s2 != 0.0) {
            s2 = eft::quick_two_sum(s2, c3, s3);
            if (s3 != 0.0) {
                s3 += c4;
            } else {
                s2 = eft::quick_two_sum(s2, c4, s3);
            }
        } else {
            s1 = eft::quick_two_sum(s1, c3, s2);
            if (s2 != 0.0) {
                s2 = eft::quick_two_sum(s2, c4, s3);
            } else {
                s1 = eft::quick_two_sum(s1, c4, s2);
            }
        }
    } else {
        s0 = eft::quick_two_sum(s0, c2, s1);
        if (s1 != 0.0) {
            s1 = eft::quick_two_sum(s1, c3, s2);
            if (s2 != 0.0) {
                s2 = eft::quick_two_sum(s2, c4, s3);
            } else {
                s1 = eft::quick_two_sum(s1, c4, s2);
            }
        } else {
            s0 = eft::quick_two_sum(s0, c3, s1);
            if (s1 != 0.0) {
                s1 = eft::quick_two_sum(s1, c4, s2);
            } else {
                s0 = eft::quick_two_sum(s0, c4, s1);
            }
        }
    }
    c0 = s0;
    c1 = s1;
    c2 = s2;
    c3 = s3;
}

// Hot-path 5-to-4 renormalization; inputs must already decrease in magnitude.
inline void renorm5(double& c0, double& c1, double& c2, double& c3, double& c4) noexcept
{
    if (std::isinf(c0)) {
        return;
    }
    double s0 = eft::quick_two_sum(c3, c4, c4);
    s0 = eft::quick_two_sum(c2, s0, c3);
    s0 = eft::quick_two_sum(c1, s0, c2);
    c0 = eft::quick_two_sum(c0, s0, c1);
    compress5(c0, c1, c2, c3, c4);
}

// Sums a + s into (a, b) keeping the leading part; returns a finished
// component when both accumulator words are occupied, 0 otherwise.
inline double quick_three_accum(double& a, double& b, double c) noexcept
{
    double s = eft::two_sum(b, c, b);
    s = eft::two_sum(a, s, a);
    const bool za = (a != 0.0);
    const bool zb = (b != 0.0);
    if (za && zb) {
        return s;
    }
    if (!zb) {
        b = a;
        a = s;
    } else {
        a = s;
    }
    return 0.0;
}

}  // namespace detail

/// Unevaluated sum c0 + c1 + c2 + c3 of four non-overlapping doubles of
/// decreasing magnitude, roughly 212 bits of significand.
class QuadDouble {
public:
    static constexpr double epsilon = 0x1p-209;
    static constexpr int round_trip_digits = 70;

    constexpr QuadDouble() noexcept = default;
    constexpr QuadDouble(double x) noexcept : c_{x, 0.0, 0.0, 0.0} {}  // NOLINT(implicit)
    constexpr QuadDouble(const DoubleDouble& x) noexcept  // NOLINT(implicit)
        : c_{x.hi(), x.lo(), 0.0, 0.0}
    {
    }

    static constexpr QuadDouble from_parts(double c0, double c1, double c2, double c3) noexcept
    {
        QuadDouble r;
        r.c_ = {c0, c1, c2, c3};
        return r;
    }

    /// Renormalizes an arbitrary 5-term expansion into QD form. Unlike the
    /// internal hot path the input need not be ordered by magnitude.
    static QuadDouble renormalize(double c0, double c1, double c2, double c3, double c4) noexcept
    {
        if (std::isinf(c0)) {
            return from_parts(c0, c1, c2, c3);
        }
        std::array<double, 5> c{c0, c1, c2, c3, c4};
        std::sort(c.begin(), c.end(),
                  [](double x, double y) { return std::abs(x) > std::abs(y); });
        // Two exact bottom-up sweeps leave a leading-term-dominated
        // expansion that the compressing pass can take over.
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 3; i >= 0; --i) {
                c[i] = eft::two_sum(c[i], c[i + 1], c[i + 1]);
            }
        }
        detail::compress5(c[0], c[1], c[2], c[3], c[4]);
        return from_parts(c[0], c[1], c[2], c[3]);
    }

    static QuadDouble from_integer(std::int64_t v) noexcept
    {
        const DoubleDouble d = DoubleDouble::from_integer(v);
        return QuadDouble(d);
    }

    static QuadDouble from_string(std::string_view text);
    std::string to_string(int digits = round_trip_digits) const;

    constexpr double operator[](std::size_t i) const noexcept { return c_[i]; }
    constexpr const std::array<double, 4>& components() const noexcept { return c_; }
    constexpr double to_double() const noexcept { return c_[0] + (c_[1] + (c_[2] + c_[3])); }

    QuadDouble& operator+=(const QuadDouble& b) noexcept { return *this = *this + b; }
    QuadDouble& operator-=(const QuadDouble& b) noexcept { return *this = *this - b; }
    QuadDouble& operator*=(const QuadDouble& b) noexcept { return *this = *this * b; }
    QuadDouble& operator/=(const QuadDouble& b) { return *this = *this / b; }

    constexpr QuadDouble operator-() const noexcept
    {
        return from_parts(-c_[0], -c_[1], -c_[2], -c_[3]);
    }

    // Merges the two expansions by decreasing magnitude through a
    // double-length accumulator, then renormalizes.
    friend QuadDouble operator+(const QuadDouble& a, const QuadDouble& b) noexcept
    {
        int i = 0;
        int j = 0;
        int k = 0;
        double u, v;
        std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};

        if (std::abs(a.c_[i]) > std::abs(b.c_[j])) {
            u = a.c_[i++];
        } else {
            u = b.c_[j++];
        }
        if (std::abs(a.c_[i]) > std::abs(b.c_[j])) {
            v = a.c_[i++];
        } else {
            v = b.c_[j++];
        }
        u = eft::quick_two_sum(u, v, v);

        while (k < 4) {
            if (i >= 4 && j >= 4) {
                x[k] = u;
                if (k < 3) {
                    x[++k] = v;
                }
                break;
            }
            double t;
            if (i >= 4) {
                t = b.c_[j++];
            } else if (j >= 4) {
                t = a.c_[i++];
            } else if (std::abs(a.c_[i]) > std::abs(b.c_[j])) {
                t = a.c_[i++];
            } else {
                t = b.c_[j++];
            }
            const double s = detail::quick_three_accum(u, v, t);
            if (s != 0.0) {
                x[k++] = s;
            }
        }

        for (int r = i; r < 4; ++r) {
            x[3] += a.c_[r];
        }
        for (int r = j; r < 4; ++r) {
            x[3] += b.c_[r];
        }
        detail::renorm4(x[0], x[1], x[2], x[3]);
        return from_parts(x[0], x[1], x[2], x[3]);
    }

    friend QuadDouble operator-(const QuadDouble& a, const QuadDouble& b) noexcept
    {
        return a + (-b);
    }

    friend QuadDouble operator*(const QuadDouble& a, const QuadDouble& b) noexcept
    {
        using eft::three_sum;
        using eft::two_prod;
        using eft::two_sum;
        double q0, q1, q2, q3, q4, q5, q6, q7, q8, q9;
        double t0, t1, r1;

        double p0 = two_prod(a.c_[0], b.c_[0], q0);

        double p1 = two_prod(a.c_[0], b.c_[1], q1);
        double p2 = two_prod(a.c_[1], b.c_[0], q2);

        double p3 = two_prod(a.c_[0], b.c_[2], q3);
        double p4 = two_prod(a.c_[1], b.c_[1], q4);
        double p5 = two_prod(a.c_[2], b.c_[0], q5);

        three_sum(p1, p2, q0);

        // (s0, s1, s2) = (p2, q1, q2) + (p3, p4, p5)
        three_sum(p2, q1, q2);
        three_sum(p3, p4, p5);
        double s0 = two_sum(p2, p3, t0);
        double s1 = two_sum(q1, p4, t1);
        double s2 = q2 + p5;
        s1 = two_sum(s1, t0, t0);
        s2 += (t0 + t1);

        double p6 = two_prod(a.c_[0], b.c_[3], q6);
        double p7 = two_prod(a.c_[1], b.c_[2], q7);
        double p8 = two_prod(a.c_[2], b.c_[1], q8);
        double p9 = two_prod(a.c_[3], b.c_[0], q9);

        // Nine-two sum of q0, s1, q3, q4, q5, p6, p7, p8, p9.
        q0 = two_sum(q0, q3, q3);
        q4 = two_sum(q4, q5, q5);
        p6 = two_sum(p6, p7, p7);
        p8 = two_sum(p8, p9, p9);
        t0 = two_sum(q0, q4, t1);
        t1 += (q3 + q5);
        const double r0 = two_sum(p6, p8, r1);
        r1 += (p7 + p9);
        q3 = two_sum(t0, r0, q4);
        q4 += (t1 + r1);
        t0 = two_sum(q3, s1, t1);
        t1 += q4;

        t1 += a.c_[1] * b.c_[3] + a.c_[2] * b.c_[2] + a.c_[3] * b.c_[1] + q6 + q7 + q8 + q9 + s2;

        detail::renorm5(p0, p1, s0, t0, t1);
        return from_parts(p0, p1, s0, t0);
    }

    friend QuadDouble operator/(const QuadDouble& a, const QuadDouble& b)
    {
        if (b.c_[0] == 0.0) {
            throw DomainError("QuadDouble division by zero");
        }
        const double q0 = a.c_[0] / b.c_[0];
        QuadDouble r = a - b * QuadDouble(q0);
        const double q1 = r.c_[0] / b.c_[0];
        r -= b * QuadDouble(q1);
        const double q2 = r.c_[0] / b.c_[0];
        r -= b * QuadDouble(q2);
        const double q3 = r.c_[0] / b.c_[0];
        r -= b * QuadDouble(q3);
        const double q4 = r.c_[0] / b.c_[0];
        return renormalize(q0, q1, q2, q3, q4);
    }

    friend QuadDouble sqrt(const QuadDouble& a)
    {
        if (a.c_[0] == 0.0) {
            return {};
        }
        if (a.c_[0] < 0.0) {
            throw DomainError("QuadDouble sqrt of negative value");
        }
        // Newton iteration r <- r + r * (1/2 - (a/2) r^2) for 1/sqrt(a);
        // each step doubles the correct bits of the 53-bit seed.
        QuadDouble r(1.0 / std::sqrt(a.c_[0]));
        const QuadDouble half_a = a * QuadDouble(0.5);
        const QuadDouble half(0.5);
        for (int it = 0; it < 3; ++it) {
            r += r * (half - half_a * (r * r));
        }
        return r * a;
    }

    friend QuadDouble abs(const QuadDouble& a) noexcept { return a.c_[0] < 0.0 ? -a : a; }

    friend constexpr bool operator==(const QuadDouble& a, const QuadDouble& b) noexcept
    {
        return a.c_ == b.c_;
    }

    friend constexpr std::partial_ordering operator<=>(const QuadDouble& a,
                                                       const QuadDouble& b) noexcept
    {
        for (std::size_t i = 0; i < 4; ++i) {
            if (auto c = a.c_[i] <=> b.c_[i]; c != 0) {
                return c;
            }
        }
        return std::partial_ordering::equivalent;
    }

    bool is_normalized() const noexcept
    {
        for (std::size_t i = 0; i + 1 < 4; ++i) {
            if (c_[i] == 0.0) {
                for (std::size_t j = i + 1; j < 4; ++j) {
                    if (c_[j] != 0.0) {
                        return false;
                    }
                }
                return true;
            }
            if (c_[i] + c_[i + 1] != c_[i]) {
                return false;
            }
        }
        return true;
    }

private:
    std::array<double, 4> c_{0.0, 0.0, 0.0, 0.0};
};

// Namespace-scope declarations so mpmat::sqrt / mpmat::abs name the friends.
QuadDouble sqrt(const QuadDouble& a);
QuadDouble abs(const QuadDouble& a) noexcept;

}  // namespace mpmat
