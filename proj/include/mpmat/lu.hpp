#pragma once

// Pivot-free LU factorization. The blocked variant factors a K-wide panel,
// solves for the border blocks U12 and L21, and updates the trailing matrix
// with A22 - L21 * U12 using any of the matmul algorithms.

#include <mpmat/errors.hpp>
#include <mpmat/matmul.hpp>
#include <mpmat/matrix.hpp>
#include <mpmat/parallel.hpp>
#include <mpmat/scalar.hpp>

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>

namespace mpmat {

struct LuPlan {
    std::size_t n_min = 32;
    /// Panel width K = alpha * n_min.
    std::size_t alpha = 1;
    /// Trailing-update multiplication. Its n_min and worker count are taken
    /// from this plan.
    MatmulPlan update{};
    std::size_t workers = 1;

    std::size_t panel_size() const noexcept { return alpha * n_min; }

    MatmulPlan update_plan() const noexcept
    {
        MatmulPlan p = update;
        p.n_min = n_min;
        p.workers = workers;
        return p;
    }

    void validate() const
    {
        if (alpha < 1) {
            throw std::invalid_argument("alpha must be >= 1");
        }
        if (workers < 1) {
            throw std::invalid_argument("worker count must be >= 1");
        }
        update_plan().validate();
    }
};

/// Unit-lower L strictly below the diagonal, U on and above it.
template <Scalar T>
struct LuFactors {
    DenseMatrix<T> lu;

    std::size_t size() const noexcept { return lu.rows(); }

    DenseMatrix<T> lower() const
    {
        const std::size_t n = size();
        DenseMatrix<T> l = DenseMatrix<T>::identity(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                l(i, j) = lu(i, j);
            }
        }
        return l;
    }

    DenseMatrix<T> upper() const
    {
        const std::size_t n = size();
        DenseMatrix<T> u(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                u(i, j) = lu(i, j);
            }
        }
        return u;
    }
};

template <Scalar T>
struct SolveReport {
    DenseMatrix<T> x_hat;  // n x 1
    std::optional<T> max_rel_error;
    T residual_norm{};     // ||A x - b||_inf / (||A||_inf ||x||_inf)
    double seconds = 0.0;
};

namespace detail {

inline void require_square(std::size_t rows, std::size_t cols, const char* what)
{
    if (rows != cols) {
        throw DimensionError(std::string(what) + ": matrix is " + std::to_string(rows) + "x" +
                             std::to_string(cols) + ", expected square");
    }
}

// One Doolittle elimination step on rows [r0, r1) below pivot k, so a
// row-parallel caller shares this exact arithmetic.
template <Scalar T>
void eliminate_column(MatrixView<T> a, std::size_t k, std::size_t r0, std::size_t r1)
{
    const std::size_t n = a.cols();
    const T pivot = a(k, k);
    const T* uk = a.row(k).data();
    for (std::size_t i = r0; i < r1; ++i) {
        T* ai = a.row(i).data();
        const T l = ai[k] / pivot;
        ai[k] = l;
        for (std::size_t j = k + 1; j < n; ++j) {
            ai[j] -= l * uk[j];
        }
    }
}

// In-place Doolittle elimination of a square view. Pivot indices in errors
// are reported relative to `offset`.
template <Scalar T>
void lu_in_place(MatrixView<T> a, std::size_t offset, std::size_t workers)
{
    const std::size_t n = a.rows();
    const T zero = ScalarTraits<T>::zero();
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == zero) {
            throw SingularError(offset + k);
        }
        parallel_for(k + 1, n, workers, [&](std::size_t r0, std::size_t r1) {
            eliminate_column<T>(a, k, r0, r1);
        });
    }
}

// A12 <- L11^{-1} A12 with unit-lower L11, one independent column at a time.
template <Scalar T>
void solve_unit_lower_left(ConstView<T> l11, MatrixView<T> a12, std::size_t workers)
{
    const std::size_t k = l11.rows();
    parallel_for(0, a12.cols(), workers, [&](std::size_t c0, std::size_t c1) {
        for (std::size_t i = 1; i < k; ++i) {
            const T* li = l11.row(i).data();
            T* ai = a12.row(i).data();
            for (std::size_t p = 0; p < i; ++p) {
                const T lip = li[p];
                const T* ap = a12.row(p).data();
                for (std::size_t j = c0; j < c1; ++j) {
                    ai[j] -= lip * ap[j];
                }
            }
        }
    });
}

// A21 <- A21 U11^{-1}, one independent row at a time.
template <Scalar T>
void solve_upper_right(ConstView<T> u11, MatrixView<T> a21, std::size_t workers)
{
    const std::size_t k = u11.rows();
    parallel_for(0, a21.rows(), workers, [&](std::size_t r0, std::size_t r1) {
        for (std::size_t r = r0; r < r1; ++r) {
            T* x = a21.row(r).data();
            for (std::size_t j = 0; j < k; ++j) {
                T v = x[j];
                for (std::size_t p = 0; p < j; ++p) {
                    v -= x[p] * u11(p, j);
                }
                x[j] = v / u11(j, j);
            }
        }
    });
}

}  // namespace detail

/// Pivot-free Doolittle factorization in the fixed k, i, j order. Throws
/// SingularError on a zero pivot.
template <Scalar T>
LuFactors<T> lu_unblocked(const DenseMatrix<T>& a)
{
    detail::require_square(a.rows(), a.cols(), "lu_unblocked");
    LuFactors<T> f{a};
    detail::lu_in_place<T>(f.lu.view(), 0, 1);
    return f;
}

/// lu_unblocked with the row loop of each elimination step split across
/// workers. Bitwise identical to lu_unblocked.
template <Scalar T>
LuFactors<T> lu_rowwise(const DenseMatrix<T>& a, std::size_t workers)
{
    detail::require_square(a.rows(), a.cols(), "lu_rowwise");
    LuFactors<T> f{a};
    detail::lu_in_place<T>(f.lu.view(), 0, workers);
    return f;
}

template <Scalar T>
LuFactors<T> lu_blocked(const DenseMatrix<T>& a, const LuPlan& plan)
{
    plan.validate();
    detail::require_square(a.rows(), a.cols(), "lu_blocked");
    const std::size_t n = a.rows();
    const std::size_t panel = plan.panel_size();
    const MatmulPlan update = plan.update_plan();

    LuFactors<T> f{a};
    auto m = f.lu.view();
    for (std::size_t k0 = 0; k0 < n; k0 += panel) {
        const std::size_t kb = std::min(panel, n - k0);
        const std::size_t rest = n - k0 - kb;
        auto a11 = m.block(k0, k0, kb, kb);
        detail::lu_in_place<T>(a11, k0, 1);
        if (rest == 0) {
            break;
        }
        auto a12 = m.block(k0, k0 + kb, kb, rest);
        auto a21 = m.block(k0 + kb, k0, rest, kb);
        auto a22 = m.block(k0 + kb, k0 + kb, rest, rest);
        detail::solve_unit_lower_left<T>(a11, a12, plan.workers);
        detail::solve_upper_right<T>(a11, a21, plan.workers);

        DenseMatrix<T> prod(rest, rest);
        multiply_into<T>(a21, a12, prod.view(), update);
        parallel_for(0, rest, plan.workers, [&](std::size_t r0, std::size_t r1) {
            sub_rows<T>(a22, prod.view(), a22, r0, r1);
        });
    }
    return f;
}

/// L * U from packed factors, for reconstruction checks.
template <Scalar T>
DenseMatrix<T> reconstruct(const LuFactors<T>& f)
{
    return matmul_simple(f.lower(), f.upper());
}

/// Solves L U x = b by forward then backward substitution. b is n x 1.
template <Scalar T>
DenseMatrix<T> lu_substitute(const LuFactors<T>& f, const DenseMatrix<T>& b)
{
    const std::size_t n = f.size();
    if (b.rows() != n || b.cols() != 1) {
        throw DimensionError("lu_substitute: right-hand side has wrong shape");
    }
    const auto& lu = f.lu;
    DenseMatrix<T> x = b;
    for (std::size_t i = 1; i < n; ++i) {
        T v = x(i, 0);
        for (std::size_t p = 0; p < i; ++p) {
            v -= lu(i, p) * x(p, 0);
        }
        x(i, 0) = v;
    }
    for (std::size_t i = n; i-- > 0;) {
        T v = x(i, 0);
        for (std::size_t p = i + 1; p < n; ++p) {
            v -= lu(i, p) * x(p, 0);
        }
        x(i, 0) = v / lu(i, i);
    }
    return x;
}

/// b = A x computed with the Simple algorithm.
template <Scalar T>
DenseMatrix<T> build_rhs(const DenseMatrix<T>& a, const DenseMatrix<T>& x_true)
{
    return matmul_simple(a, x_true);
}

/// [0, 1, ..., n-1]^T
template <Scalar T>
DenseMatrix<T> counting_vector(std::size_t n)
{
    DenseMatrix<T> x(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = ScalarTraits<T>::from_integer(static_cast<std::int64_t>(i));
    }
    return x;
}

template <Scalar T>
T solve_residual(const DenseMatrix<T>& a, const DenseMatrix<T>& x, const DenseMatrix<T>& b)
{
    const DenseMatrix<T> r = mat_sub(matmul_simple(a, x), b);
    const T den = norm_inf(a) * norm_inf(x);
    const T num = norm_inf(r);
    return den == ScalarTraits<T>::zero() ? num : num / den;
}

template <Scalar T>
SolveReport<T> report_solution(const DenseMatrix<T>& a, const DenseMatrix<T>& b,
                               DenseMatrix<T> x_hat, const DenseMatrix<T>* x_true,
                               double seconds)
{
    SolveReport<T> report;
    report.seconds = seconds;
    if (x_true != nullptr) {
        report.max_rel_error = max_componentwise_rel_error(x_hat, *x_true);
    }
    report.residual_norm = solve_residual(a, x_hat, b);
    report.x_hat = std::move(x_hat);
    return report;
}

/// Factors with lu_blocked and substitutes. The timed section covers the
/// factorization and both substitutions.
template <Scalar T>
SolveReport<T> solve(const DenseMatrix<T>& a, const DenseMatrix<T>& b, const LuPlan& plan,
                     const DenseMatrix<T>* x_true = nullptr)
{
    detail::require_square(a.rows(), a.cols(), "solve");
    const auto start = std::chrono::steady_clock::now();
    const LuFactors<T> f = lu_blocked(a, plan);
    DenseMatrix<T> x_hat = lu_substitute(f, b);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report_solution(a, b, std::move(x_hat), x_true, seconds);
}

/// Same report using the row-parallel unblocked factorization.
template <Scalar T>
SolveReport<T> solve_rowwise(const DenseMatrix<T>& a, const DenseMatrix<T>& b,
                             std::size_t workers, const DenseMatrix<T>* x_true = nullptr)
{
    detail::require_square(a.rows(), a.cols(), "solve_rowwise");
    const auto start = std::chrono::steady_clock::now();
    const LuFactors<T> f = lu_rowwise(a, workers);
    DenseMatrix<T> x_hat = lu_substitute(f, b);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report_solution(a, b, std::move(x_hat), x_true, seconds);
}

/// ||A||_1 ||A^{-1}||_1 with A^{-1} formed column by column from unit-vector
/// solves against one pivot-free factorization.
template <Scalar T>
T condition_number_1(const DenseMatrix<T>& a)
{
    detail::require_square(a.rows(), a.cols(), "condition_number_1");
    const std::size_t n = a.rows();
    const LuFactors<T> f = lu_unblocked(a);
    T inv_norm = ScalarTraits<T>::zero();
    DenseMatrix<T> e(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
        e(j, 0) = ScalarTraits<T>::one();
        const DenseMatrix<T> col = lu_substitute(f, e);
        e(j, 0) = ScalarTraits<T>::zero();
        T sum = ScalarTraits<T>::zero();
        for (std::size_t i = 0; i < n; ++i) {
            sum += scalar_abs(col(i, 0));
        }
        inv_norm = std::max(inv_norm, sum);
    }
    return norm_1(a) * inv_norm;
}

}  // namespace mpmat
