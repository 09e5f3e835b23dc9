#pragma once

#include <mpmat/scalar.hpp>

#include <atomic>
#include <cstdint>
#include <string>
#include <string_view>

namespace mpmat {

struct OpCounts {
    std::uint64_t mul = 0;
    std::uint64_t add = 0;  // additions and subtractions
    std::uint64_t div = 0;

    friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

/// Process-wide tallies shared by every CountingScalar<T> of one T.
class OpCounters {
public:
    void reset() noexcept
    {
        mul_.store(0, std::memory_order_relaxed);
        add_.store(0, std::memory_order_relaxed);
        div_.store(0, std::memory_order_relaxed);
    }

    OpCounts snapshot() const noexcept
    {
        return {mul_.load(std::memory_order_relaxed), add_.load(std::memory_order_relaxed),
                div_.load(std::memory_order_relaxed)};
    }

    void count_mul() noexcept { mul_.fetch_add(1, std::memory_order_relaxed); }
    void count_add() noexcept { add_.fetch_add(1, std::memory_order_relaxed); }
    void count_div() noexcept { div_.fetch_add(1, std::memory_order_relaxed); }

private:
    std::atomic<std::uint64_t> mul_{0};
    std::atomic<std::uint64_t> add_{0};
    std::atomic<std::uint64_t> div_{0};
};

/// Wraps a scalar and tallies every multiplication, addition/subtraction
/// and division performed on it. Results are bitwise those of T.
template <Scalar T>
class CountingScalar {
public:
    using inner_type = T;

    CountingScalar() = default;
    CountingScalar(const T& v) : value_(v) {}  // NOLINT(implicit)
    CountingScalar(double v) requires(!std::same_as<T, double>) : value_(v) {}  // NOLINT(implicit)

    static OpCounters& counters() noexcept
    {
        static OpCounters shared;
        return shared;
    }

    const T& value() const noexcept { return value_; }

    friend CountingScalar operator+(const CountingScalar& a, const CountingScalar& b)
    {
        counters().count_add();
        return CountingScalar(a.value_ + b.value_);
    }
    friend CountingScalar operator-(const CountingScalar& a, const CountingScalar& b)
    {
        counters().count_add();
        return CountingScalar(a.value_ - b.value_);
    }
    friend CountingScalar operator*(const CountingScalar& a, const CountingScalar& b)
    {
        counters().count_mul();
        return CountingScalar(a.value_ * b.value_);
    }
    friend CountingScalar operator/(const CountingScalar& a, const CountingScalar& b)
    {
        counters().count_div();
        return CountingScalar(a.value_ / b.value_);
    }
    CountingScalar operator-() const { return CountingScalar(-value_); }

    CountingScalar& operator+=(const CountingScalar& b) { return *this = *this + b; }
    CountingScalar& operator-=(const CountingScalar& b) { return *this = *this - b; }
    CountingScalar& operator*=(const CountingScalar& b) { return *this = *this * b; }
    CountingScalar& operator/=(const CountingScalar& b) { return *this = *this / b; }

    friend bool operator==(const CountingScalar& a, const CountingScalar& b)
    {
        return a.value_ == b.value_;
    }
    friend auto operator<=>(const CountingScalar& a, const CountingScalar& b)
    {
        return a.value_ <=> b.value_;
    }

private:
    T value_{};
};

template <Scalar T>
struct ScalarTraits<CountingScalar<T>> {
    using Inner = ScalarTraits<T>;
    static constexpr const char* name = Inner::name;
    static constexpr double epsilon = Inner::epsilon;
    static constexpr int round_trip_digits = Inner::round_trip_digits;

    static CountingScalar<T> zero() { return Inner::zero(); }
    static CountingScalar<T> one() { return Inner::one(); }
    static CountingScalar<T> from_integer(std::int64_t v) { return Inner::from_integer(v); }
    static CountingScalar<T> from_string(std::string_view s) { return Inner::from_string(s); }
    static std::string to_string(const CountingScalar<T>& v, int digits = round_trip_digits)
    {
        return Inner::to_string(v.value(), digits);
    }
    static CountingScalar<T> sqrt(const CountingScalar<T>& v) { return Inner::sqrt(v.value()); }
    static CountingScalar<T> abs(const CountingScalar<T>& v) { return Inner::abs(v.value()); }
    static double to_double(const CountingScalar<T>& v) { return Inner::to_double(v.value()); }
};

}  // namespace mpmat
