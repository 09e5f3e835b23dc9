#pragma once

#include <mpmat/double_double.hpp>
#include <mpmat/quad_double.hpp>

#include <cmath>
#include <random>

namespace testing_support {

/// Random normalized expansions with magnitudes spread over 2^[-exp_range, exp_range].
class ScalarSampler {
public:
    explicit ScalarSampler(unsigned seed, int exp_range = 30) : rng_(seed), exp_range_(exp_range)
    {
    }

    double unit() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng_); }

    double number()
    {
        const int e = std::uniform_int_distribution<int>(-exp_range_, exp_range_)(rng_);
        return std::ldexp(unit(), e);
    }

    mpmat::DoubleDouble dd()
    {
        const double hi = number();
        const double lo = unit() * std::ldexp(std::abs(hi), -54);
        double e;
        const double s = mpmat::eft::quick_two_sum(hi, lo, e);
        return mpmat::DoubleDouble::from_parts(s, e);
    }

    mpmat::QuadDouble qd()
    {
        const double c0 = number();
        const double c1 = unit() * std::ldexp(std::abs(c0), -54);
        const double c2 = unit() * std::ldexp(std::abs(c0), -107);
        const double c3 = unit() * std::ldexp(std::abs(c0), -160);
        return mpmat::QuadDouble::renormalize(c0, c1, c2, c3, 0.0);
    }

    /// Like qd(), but each component fills the bits directly below the previous
    /// one, so the value carries the nominal 212 bits and no more.
    mpmat::QuadDouble qd_dense()
    {
        double c[4];
        c[0] = number();
        for (int k = 1; k < 4; ++k) {
            const double mag = std::uniform_real_distribution<double>(0.5, 1.0)(rng_);
            const double sign = unit() < 0.0 ? -1.0 : 1.0;
            c[k] = sign * mag * std::ldexp(std::abs(c[k - 1]), -54);
        }
        return mpmat::QuadDouble::renormalize(c[0], c[1], c[2], c[3], 0.0);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    int exp_range_;
};

}  // namespace testing_support
