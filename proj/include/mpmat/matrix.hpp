#pragma once

#include <mpmat/errors.hpp>
#include <mpmat/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace mpmat {

/// Non-owning rectangular window into row-major storage with a row stride.
/// MatrixView<const T> is the read-only form.
template <class T>
class MatrixView {
public:
    using value_type = std::remove_const_t<T>;

    MatrixView() = default;
    MatrixView(T* data, std::size_t rows, std::size_t cols, std::size_t stride) noexcept
        : data_(data), rows_(rows), cols_(cols), stride_(stride)
    {
    }

    // Mutable -> const conversion.
    template <class U>
        requires(std::is_const_v<T> && std::is_same_v<std::remove_const_t<T>, U>)
    MatrixView(const MatrixView<U>& other) noexcept  // NOLINT(implicit)
        : MatrixView(other.data(), other.rows(), other.cols(), other.stride())
    {
    }

    T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * stride_ + j]; }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t stride() const noexcept { return stride_; }
    T* data() const noexcept { return data_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    std::span<T> row(std::size_t i) const noexcept { return {data_ + i * stride_, cols_}; }

    /// Sub-window starting at (row0, col0). Must lie inside this view.
    MatrixView block(std::size_t row0, std::size_t col0, std::size_t nrows,
                     std::size_t ncols) const
    {
        if (row0 + nrows > rows_ || col0 + ncols > cols_) {
            throw DimensionError("block [" + std::to_string(row0) + "+" + std::to_string(nrows) +
                                 ", " + std::to_string(col0) + "+" + std::to_string(ncols) +
                                 "] outside " + std::to_string(rows_) + "x" +
                                 std::to_string(cols_) + " view");
        }
        return MatrixView(data_ + row0 * stride_ + col0, nrows, ncols, stride_);
    }

private:
    T* data_ = nullptr;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
};

template <Scalar T>
using ConstView = MatrixView<const T>;

/// Owning row-major m x n matrix.
template <Scalar T>
class DenseMatrix {
public:
    using value_type = T;

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<T>::zero())
    {
    }

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = ScalarTraits<T>::one();
        }
        return m;
    }

    /// Copies a view into fresh storage.
    static DenseMatrix from_view(ConstView<T> v)
    {
        DenseMatrix m(v.rows(), v.cols());
        for (std::size_t i = 0; i < v.rows(); ++i) {
            std::copy_n(v.row(i).data(), v.cols(), m.data_.data() + i * m.cols_);
        }
        return m;
    }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept
    {
        return data_[i * cols_ + j];
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<T> elements() noexcept { return data_; }
    std::span<const T> elements() const noexcept { return data_; }

    MatrixView<T> view() noexcept { return {data_.data(), rows_, cols_, cols_}; }
    ConstView<T> view() const noexcept { return {data_.data(), rows_, cols_, cols_}; }
    ConstView<T> cview() const noexcept { return view(); }

    MatrixView<T> block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc)
    {
        return view().block(r0, c0, nr, nc);
    }
    ConstView<T> block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        return view().block(r0, c0, nr, nc);
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

namespace detail {

inline void require_same_shape(std::size_t ar, std::size_t ac, std::size_t br, std::size_t bc,
                               const char* what)
{
    if (ar != br || ac != bc) {
        throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(ar) + "x" +
                             std::to_string(ac) + " vs " + std::to_string(br) + "x" +
                             std::to_string(bc));
    }
}

}  // namespace detail

// Elementwise kernels on views. Rows [row_begin, row_end) only, so callers can
// split the work over disjoint row ranges.

template <Scalar T>
void add_rows(ConstView<T> a, ConstView<T> b, MatrixView<T> c, std::size_t row_begin,
              std::size_t row_end)
{
    for (std::size_t i = row_begin; i < row_end; ++i) {
        const T* ar = a.row(i).data();
        const T* br = b.row(i).data();
        T* cr = c.row(i).data();
        for (std::size_t j = 0; j < c.cols(); ++j) {
            cr[j] = ar[j] + br[j];
        }
    }
}

template <Scalar T>
void sub_rows(ConstView<T> a, ConstView<T> b, MatrixView<T> c, std::size_t row_begin,
              std::size_t row_end)
{
    for (std::size_t i = row_begin; i < row_end; ++i) {
        const T* ar = a.row(i).data();
        const T* br = b.row(i).data();
        T* cr = c.row(i).data();
        for (std::size_t j = 0; j < c.cols(); ++j) {
            cr[j] = ar[j] - br[j];
        }
    }
}

/// c = a + b over equally shaped views (c may alias a or b).
template <Scalar T>
void add_into(ConstView<T> a, ConstView<T> b, MatrixView<T> c)
{
    detail::require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "add");
    detail::require_same_shape(a.rows(), a.cols(), c.rows(), c.cols(), "add");
    add_rows(a, b, c, 0, c.rows());
}

template <Scalar T>
void sub_into(ConstView<T> a, ConstView<T> b, MatrixView<T> c)
{
    detail::require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "sub");
    detail::require_same_shape(a.rows(), a.cols(), c.rows(), c.cols(), "sub");
    sub_rows(a, b, c, 0, c.rows());
}

template <Scalar T>
void copy_into(ConstView<T> src, MatrixView<T> dst)
{
    detail::require_same_shape(src.rows(), src.cols(), dst.rows(), dst.cols(), "copy");
    for (std::size_t i = 0; i < src.rows(); ++i) {
        std::copy_n(src.row(i).data(), src.cols(), dst.row(i).data());
    }
}

template <Scalar T>
void fill_zero(MatrixView<T> dst)
{
    for (std::size_t i = 0; i < dst.rows(); ++i) {
        std::fill_n(dst.row(i).data(), dst.cols(), ScalarTraits<T>::zero());
    }
}

template <Scalar T>
DenseMatrix<T> mat_add(const DenseMatrix<T>& a, const DenseMatrix<T>& b)
{
    detail::require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "mat_add");
    DenseMatrix<T> c(a.rows(), a.cols());
    add_into<T>(a.view(), b.view(), c.view());
    return c;
}

template <Scalar T>
DenseMatrix<T> mat_sub(const DenseMatrix<T>& a, const DenseMatrix<T>& b)
{
    detail::require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "mat_sub");
    DenseMatrix<T> c(a.rows(), a.cols());
    sub_into<T>(a.view(), b.view(), c.view());
    return c;
}

/// Maximum absolute column sum.
template <Scalar T>
T norm_1(ConstView<T> a)
{
    T best = ScalarTraits<T>::zero();
    for (std::size_t j = 0; j < a.cols(); ++j) {
        T sum = ScalarTraits<T>::zero();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            sum += scalar_abs(a(i, j));
        }
        best = std::max(best, sum);
    }
    return best;
}

/// Maximum absolute row sum.
template <Scalar T>
T norm_inf(ConstView<T> a)
{
    T best = ScalarTraits<T>::zero();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T sum = ScalarTraits<T>::zero();
        for (std::size_t j = 0; j < a.cols(); ++j) {
            sum += scalar_abs(a(i, j));
        }
        best = std::max(best, sum);
    }
    return best;
}

template <Scalar T>
T norm_1(const DenseMatrix<T>& a)
{
    return norm_1<T>(a.view());
}

template <Scalar T>
T norm_inf(const DenseMatrix<T>& a)
{
    return norm_inf<T>(a.view());
}

/// max |x - r| / |r| over elements; where r is zero the element contributes
/// |x - r| / ||ref||_inf instead.
template <Scalar T>
T max_componentwise_rel_error(ConstView<T> x, ConstView<T> ref)
{
    detail::require_same_shape(x.rows(), x.cols(), ref.rows(), ref.cols(),
                               "max_componentwise_rel_error");
    const T zero = ScalarTraits<T>::zero();
    const T ref_norm = norm_inf<T>(ref);
    T worst = zero;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const T diff = scalar_abs(x(i, j) - ref(i, j));
            if (ref(i, j) != zero) {
                worst = std::max(worst, diff / scalar_abs(ref(i, j)));
            } else if (diff != zero) {
                if (ref_norm == zero) {
                    throw DomainError("relative error against an all-zero reference");
                }
                worst = std::max(worst, diff / ref_norm);
            }
        }
    }
    return worst;
}

template <Scalar T>
T max_componentwise_rel_error(const DenseMatrix<T>& x, const DenseMatrix<T>& ref)
{
    return max_componentwise_rel_error<T>(x.view(), ref.view());
}

/// ||x - ref||_inf / ||ref||_inf (absolute norm when ref is zero).
template <Scalar T>
T normwise_rel_error(ConstView<T> x, ConstView<T> ref)
{
    detail::require_same_shape(x.rows(), x.cols(), ref.rows(), ref.cols(), "normwise_rel_error");
    DenseMatrix<T> diff(x.rows(), x.cols());
    sub_into<T>(x, ref, diff.view());
    const T num = norm_inf(diff);
    const T den = norm_inf<T>(ref);
    return den == ScalarTraits<T>::zero() ? num : num / den;
}

/// Elementwise U(T); falls back to a rounding trip through double when U
/// cannot be built from T.
template <Scalar U, Scalar T>
DenseMatrix<U> convert_matrix(const DenseMatrix<T>& a)
{
    DenseMatrix<U> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if constexpr (std::is_constructible_v<U, T>) {
                out(i, j) = U(a(i, j));
            } else {
                out(i, j) = U(to_double(a(i, j)));
            }
        }
    }
    return out;
}

}  // namespace mpmat
