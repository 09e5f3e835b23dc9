#pragma once

// Test matrices: the sqrt(5)/sqrt(3) benchmark pair with its closed-form
// product, seeded uniform random matrices, and the ill-conditioned Lotkin
// matrix. All generators are pure functions of their arguments.

#include <mpmat/matrix.hpp>
#include <mpmat/scalar.hpp>

#include <cstdint>
#include <utility>

namespace mpmat {

/// SplitMix64 (Steele, Lea, Flood). Fixed here so seeded matrices are
/// reproducible across platforms and standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1p-53; }

private:
    std::uint64_t state_;
};

namespace detail {

template <Scalar T>
constexpr int random_words() noexcept
{
    int bits = 0;
    for (double e = ScalarTraits<T>::epsilon; e < 1.0; e *= 2.0) {
        ++bits;
    }
    return (bits + 52) / 53;
}

// Uniform on [0, 1) filled to the working precision, 53 bits per word.
template <Scalar T>
T random_unit(SplitMix64& rng)
{
    T r = ScalarTraits<T>::zero();
    T scale = ScalarTraits<T>::one();
    const T step(0x1p-53);
    for (int w = 0; w < random_words<T>(); ++w) {
        r += T(rng.next_unit()) * scale;
        scale *= step;
    }
    return r;
}

}  // namespace detail

/// A = [sqrt(5) (i + j - 1)], B = [sqrt(3) (n - i)] with 1-based i, j. The
/// square roots are taken in T from exact integers.
template <Scalar T>
std::pair<DenseMatrix<T>, DenseMatrix<T>> generate_bench_pair(std::size_t n)
{
    using Tr = ScalarTraits<T>;
    const T sqrt5 = Tr::sqrt(Tr::from_integer(5));
    const T sqrt3 = Tr::sqrt(Tr::from_integer(3));
    DenseMatrix<T> a(n, n);
    DenseMatrix<T> b(n, n);
    const auto ni = static_cast<std::int64_t>(n);
    for (std::int64_t i = 1; i <= ni; ++i) {
        const T b_entry = sqrt3 * Tr::from_integer(ni - i);
        for (std::int64_t j = 1; j <= ni; ++j) {
            a(i - 1, j - 1) = sqrt5 * Tr::from_integer(i + j - 1);
            b(i - 1, j - 1) = b_entry;
        }
    }
    return {std::move(a), std::move(b)};
}

/// Exact entry (i, j) of the benchmark product, 1-based:
/// sqrt(15) * sum_k (i + k - 1)(n - k), with the sum in exact integers.
template <Scalar T>
T exact_bench_product(std::size_t n, std::size_t i, std::size_t /*j*/)
{
    using Tr = ScalarTraits<T>;
    const auto ni = static_cast<std::int64_t>(n);
    const auto ii = static_cast<std::int64_t>(i);
    std::int64_t s = 0;
    for (std::int64_t k = 1; k <= ni; ++k) {
        s += (ii + k - 1) * (ni - k);
    }
    return Tr::sqrt(Tr::from_integer(15)) * Tr::from_integer(s);
}

/// Full exact_bench_product matrix.
template <Scalar T>
DenseMatrix<T> exact_bench_matrix(std::size_t n)
{
    DenseMatrix<T> c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const T v = exact_bench_product<T>(n, i + 1, 1);
        for (std::size_t j = 0; j < n; ++j) {
            c(i, j) = v;
        }
    }
    return c;
}

/// rows x cols matrix, entries uniform on [lo, hi], reproducible from seed.
template <Scalar T>
DenseMatrix<T> generate_random(std::size_t rows, std::size_t cols, std::uint64_t seed,
                               double lo = -1.0, double hi = 1.0)
{
    SplitMix64 rng(seed);
    DenseMatrix<T> m(rows, cols);
    const T low(lo);
    const T width(hi - lo);
    for (T& x : m.elements()) {
        x = low + width * detail::random_unit<T>(rng);
    }
    return m;
}

/// n x n matrix, entries uniform on [-1, 1].
template <Scalar T>
DenseMatrix<T> generate_random(std::size_t n, std::uint64_t seed)
{
    return generate_random<T>(n, n, seed);
}

/// First row all ones, a_ij = 1 / (i + j - 1) below it (1-based).
template <Scalar T>
DenseMatrix<T> generate_lotkin(std::size_t n)
{
    using Tr = ScalarTraits<T>;
    DenseMatrix<T> m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        m(0, j) = Tr::one();
    }
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = Tr::one() / Tr::from_integer(static_cast<std::int64_t>(i + j + 1));
        }
    }
    return m;
}

}  // namespace mpmat
