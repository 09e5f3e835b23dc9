#pragma once

// The number interface every algorithm in mpmat is generic over.
//
// A scalar type T provides the ring operators, division, unary minus and
// ordering directly; the remaining operations (constants, sqrt, abs, decimal
// conversion, unit roundoff) go through ScalarTraits<T> so that plain double
// can take part without wrapper types.

#include <mpmat/double_double.hpp>
#include <mpmat/errors.hpp>
#include <mpmat/quad_double.hpp>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace mpmat {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr const char* name = "d";
    static constexpr double epsilon = 0x1p-53;
    static constexpr int round_trip_digits = 17;

    static constexpr double zero() noexcept { return 0.0; }
    static constexpr double one() noexcept { return 1.0; }
    static double from_integer(std::int64_t v) noexcept { return static_cast<double>(v); }

    static double from_string(std::string_view s)
    {
        double v = 0.0;
        if (!s.empty() && s.front() == '+') {
            s.remove_prefix(1);
        }
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw DomainError("cannot parse double from '" + std::string(s) + "'");
        }
        return v;
    }

    static std::string to_string(double v, int digits = round_trip_digits)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*e", digits > 0 ? digits - 1 : 0, v);
        return buf;
    }

    static double sqrt(double v)
    {
        if (v < 0.0) {
            throw DomainError("sqrt of negative value");
        }
        return std::sqrt(v);
    }

    static double abs(double v) noexcept { return std::abs(v); }
    static double to_double(double v) noexcept { return v; }
};

template <>
struct ScalarTraits<DoubleDouble> {
    static constexpr const char* name = "dd";
    static constexpr double epsilon = DoubleDouble::epsilon;
    static constexpr int round_trip_digits = DoubleDouble::round_trip_digits;

    static constexpr DoubleDouble zero() noexcept { return {}; }
    static constexpr DoubleDouble one() noexcept { return {1.0}; }
    static DoubleDouble from_integer(std::int64_t v) noexcept { return DoubleDouble::from_integer(v); }
    static DoubleDouble from_string(std::string_view s) { return DoubleDouble::from_string(s); }
    static std::string to_string(const DoubleDouble& v, int digits = round_trip_digits)
    {
        return v.to_string(digits);
    }
    static DoubleDouble sqrt(const DoubleDouble& v) { return mpmat::sqrt(v); }
    static DoubleDouble abs(const DoubleDouble& v) noexcept { return mpmat::abs(v); }
    static double to_double(const DoubleDouble& v) noexcept { return v.to_double(); }
};

template <>
struct ScalarTraits<QuadDouble> {
    static constexpr const char* name = "qd";
    static constexpr double epsilon = QuadDouble::epsilon;
    static constexpr int round_trip_digits = QuadDouble::round_trip_digits;

    static constexpr QuadDouble zero() noexcept { return {}; }
    static constexpr QuadDouble one() noexcept { return {1.0}; }
    static QuadDouble from_integer(std::int64_t v) noexcept { return QuadDouble::from_integer(v); }
    static QuadDouble from_string(std::string_view s) { return QuadDouble::from_string(s); }
    static std::string to_string(const QuadDouble& v, int digits = round_trip_digits)
    {
        return v.to_string(digits);
    }
    static QuadDouble sqrt(const QuadDouble& v) { return mpmat::sqrt(v); }
    static QuadDouble abs(const QuadDouble& v) noexcept { return mpmat::abs(v); }
    static double to_double(const QuadDouble& v) noexcept { return v.to_double(); }
};

template <class T>
concept Scalar = std::regular<T> && std::totally_ordered<T> &&
    requires(T a, T b, std::int64_t i, std::string_view s) {
        { a + b } -> std::convertible_to<T>;
        { a - b } -> std::convertible_to<T>;
        { a * b } -> std::convertible_to<T>;
        { a / b } -> std::convertible_to<T>;
        { -a } -> std::convertible_to<T>;
        { ScalarTraits<T>::zero() } -> std::convertible_to<T>;
        { ScalarTraits<T>::one() } -> std::convertible_to<T>;
        { ScalarTraits<T>::from_integer(i) } -> std::convertible_to<T>;
        { ScalarTraits<T>::from_string(s) } -> std::convertible_to<T>;
        { ScalarTraits<T>::to_string(a) } -> std::convertible_to<std::string>;
        { ScalarTraits<T>::sqrt(a) } -> std::convertible_to<T>;
        { ScalarTraits<T>::abs(a) } -> std::convertible_to<T>;
        { ScalarTraits<T>::to_double(a) } -> std::convertible_to<double>;
        { ScalarTraits<T>::epsilon } -> std::convertible_to<double>;
    };

template <Scalar T>
T scalar_sqrt(const T& v)
{
    return ScalarTraits<T>::sqrt(v);
}

template <Scalar T>
T scalar_abs(const T& v)
{
    return ScalarTraits<T>::abs(v);
}

template <Scalar T>
double to_double(const T& v)
{
    return ScalarTraits<T>::to_double(v);
}

template <Scalar T>
constexpr double epsilon_of() noexcept
{
    return ScalarTraits<T>::epsilon;
}

}  // namespace mpmat
