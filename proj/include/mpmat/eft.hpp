#pragma once

// Error-free transformations on IEEE binary64.
//
// All routines assume round-to-nearest-ties-even and must not be compiled
// with floating-point contraction or reassociation (-ffp-contract=off, no
// -ffast-math). Overflow to infinity propagates; it is not trapped.

#include <cmath>
#include <utility>

namespace mpmat::eft {

/// s = fl(a + b), e = (a + b) - s exactly. No ordering requirement on a, b.
inline double two_sum(double a, double b, double& e) noexcept
{
    const double s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
    return s;
}

/// Same as two_sum but requires |a| >= |b| (or a == 0).
inline double quick_two_sum(double a, double b, double& e) noexcept
{
    const double s = a + b;
    e = b - (s - a);
    return s;
}

inline double two_diff(double a, double b, double& e) noexcept
{
    const double s = a - b;
    const double bb = s - a;
    e = (a - (s - bb)) - (b + bb);
    return s;
}

/// Veltkamp split: a = hi + lo with both halves fitting in 26 bits.
inline void split(double a, double& hi, double& lo) noexcept
{
    constexpr double splitter = 134217729.0;  // 2^27 + 1
    constexpr double split_thresh = 6.69692879491417e+299;  // 2^996
    if (a > split_thresh || a < -split_thresh) {
        a *= 3.7252902984619140625e-09;  // 2^-28
        const double t = splitter * a;
        hi = t - (t - a);
        lo = a - hi;
        hi *= 268435456.0;  // 2^28
        lo *= 268435456.0;
    } else {
        const double t = splitter * a;
        hi = t - (t - a);
        lo = a - hi;
    }
}

/// p = fl(a * b), e = a * b - p exactly (barring underflow of e).
inline double two_prod(double a, double b, double& e) noexcept
{
    const double p = a * b;
#if defined(__FMA__) || defined(__FP_FAST_FMA)
    e = std::fma(a, b, -p);
#else
    double a_hi, a_lo, b_hi, b_lo;
    split(a, a_hi, a_lo);
    split(b, b_hi, b_lo);
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo;
#endif
    return p;
}

inline double two_sqr(double a, double& e) noexcept
{
    const double p = a * a;
#if defined(__FMA__) || defined(__FP_FAST_FMA)
    e = std::fma(a, a, -p);
#else
    double hi, lo;
    split(a, hi, lo);
    e = ((hi * hi - p) + 2.0 * hi * lo) + lo * lo;
#endif
    return p;
}

/// (a, b, c) -> (a, b, c) with a + b + c preserved exactly and a the
/// leading component.
inline void three_sum(double& a, double& b, double& c) noexcept
{
    double t2, t3;
    const double t1 = two_sum(a, b, t2);
    a = two_sum(c, t1, t3);
    b = two_sum(t2, t3, c);
}

/// Like three_sum but folds the two trailing errors into b.
inline void three_sum2(double& a, double& b, double& c) noexcept
{
    double t2, t3;
    const double t1 = two_sum(a, b, t2);
    a = two_sum(c, t1, t3);
    b = t2 + t3;
}

/// Returns (fl(a*b), error) as a pair. Convenience for tests and callers
/// that prefer value semantics.
inline std::pair<double, double> two_prod(double a, double b) noexcept
{
    double e;
    const double p = two_prod(a, b, e);
    return {p, e};
}

inline std::pair<double, double> two_sum(double a, double b) noexcept
{
    double e;
    const double s = two_sum(a, b, e);
    return {s, e};
}

}  // namespace mpmat::eft
