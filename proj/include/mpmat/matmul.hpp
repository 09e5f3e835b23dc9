#pragma once

// Dense matrix multiplication: the triple loop (Simple), cache-blocked
// (Block), and the two seven-product recursions (Strassen and Winograd's
// variant of it). Every algorithm is deterministic for any worker budget:
// parallel runs split work into pieces whose arithmetic is identical to the
// serial run.

#include <mpmat/errors.hpp>
#include <mpmat/matrix.hpp>
#include <mpmat/parallel.hpp>
#include <mpmat/scalar.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace mpmat {

enum class MatmulAlgorithm { Simple, Block, Strassen, Winograd };

inline std::string_view to_string(MatmulAlgorithm a) noexcept
{
    switch (a) {
    case MatmulAlgorithm::Simple: return "simple";
    case MatmulAlgorithm::Block: return "block";
    case MatmulAlgorithm::Strassen: return "strassen";
    case MatmulAlgorithm::Winograd: return "winograd";
    }
    return "?";
}

inline std::optional<MatmulAlgorithm> parse_matmul_algorithm(std::string_view s) noexcept
{
    for (auto a : {MatmulAlgorithm::Simple, MatmulAlgorithm::Block, MatmulAlgorithm::Strassen,
                   MatmulAlgorithm::Winograd}) {
        if (s == to_string(a)) {
            return a;
        }
    }
    return std::nullopt;
}

struct MatmulPlan {
    MatmulAlgorithm algorithm = MatmulAlgorithm::Block;
    std::size_t block_size = 32;
    /// Recursion stops at n <= n_min and hands the block to Block(n_min).
    std::size_t n_min = 32;
    std::size_t workers = 1;

    void validate() const
    {
        if (block_size < 1) {
            throw std::invalid_argument("block size must be >= 1");
        }
        if (n_min < 2) {
            throw std::invalid_argument("n_min must be >= 2");
        }
        if (workers < 1) {
            throw std::invalid_argument("worker count must be >= 1");
        }
    }
};

namespace detail {

inline void require_conforming(std::size_t m, std::size_t l, std::size_t l2, std::size_t n,
                               std::size_t cm, std::size_t cn)
{
    if (l != l2 || cm != m || cn != n) {
        throw DimensionError("matmul: cannot multiply " + std::to_string(m) + "x" +
                             std::to_string(l) + " by " + std::to_string(l2) + "x" +
                             std::to_string(n) + " into " + std::to_string(cm) + "x" +
                             std::to_string(cn));
    }
}

// c_ij = sum_k a_ik b_kj for rows [r0, r1), k ascending from an exact zero.
template <Scalar T>
void simple_rows(ConstView<T> a, ConstView<T> b, MatrixView<T> c, std::size_t r0, std::size_t r1)
{
    const std::size_t l = a.cols();
    for (std::size_t i = r0; i < r1; ++i) {
        for (std::size_t j = 0; j < c.cols(); ++j) {
            T sum = ScalarTraits<T>::zero();
            for (std::size_t k = 0; k < l; ++k) {
                sum += a(i, k) * b(k, j);
            }
            c(i, j) = sum;
        }
    }
}

// Block rows [br0, br1) of the bs-grid. Per element of C the products are
// accumulated with k ascending, the same sequence simple_rows produces.
template <Scalar T>
void block_rows(ConstView<T> a, ConstView<T> b, MatrixView<T> c, std::size_t bs, std::size_t br0,
                std::size_t br1)
{
    const std::size_t m = a.rows();
    const std::size_t l = a.cols();
    const std::size_t n = b.cols();
    for (std::size_t bi = br0; bi < br1; ++bi) {
        const std::size_t i0 = bi * bs;
        const std::size_t i1 = std::min(m, i0 + bs);
        for (std::size_t i = i0; i < i1; ++i) {
            std::fill_n(c.row(i).data(), n, ScalarTraits<T>::zero());
        }
        for (std::size_t k0 = 0; k0 < l; k0 += bs) {
            const std::size_t k1 = std::min(l, k0 + bs);
            for (std::size_t j0 = 0; j0 < n; j0 += bs) {
                const std::size_t j1 = std::min(n, j0 + bs);
                for (std::size_t i = i0; i < i1; ++i) {
                    T* ci = c.row(i).data();
                    for (std::size_t k = k0; k < k1; ++k) {
                        const T aik = a(i, k);
                        const T* bk = b.row(k).data();
                        for (std::size_t j = j0; j < j1; ++j) {
                            ci[j] += aik * bk[j];
                        }
                    }
                }
            }
        }
    }
}

template <Scalar T>
void simple_into(ConstView<T> a, ConstView<T> b, MatrixView<T> c, std::size_t workers)
{
    parallel_for(0, a.rows(), workers,
                 [&](std::size_t r0, std::size_t r1) { simple_rows<T>(a, b, c, r0, r1); });
}

template <Scalar T>
void block_into(ConstView<T> a, ConstView<T> b, MatrixView<T> c, std::size_t bs,
                std::size_t workers)
{
    const std::size_t block_rows_count = (a.rows() + bs - 1) / bs;
    parallel_for(0, block_rows_count, workers, [&](std::size_t b0, std::size_t b1) {
        block_rows<T>(a, b, c, bs, b0, b1);
    });
}

template <Scalar T>
DenseMatrix<T> padded_copy(ConstView<T> src, std::size_t rows, std::size_t cols)
{
    DenseMatrix<T> out(rows, cols);
    copy_into<T>(src, out.block(0, 0, src.rows(), src.cols()));
    return out;
}

template <Scalar T>
void strassen_square(ConstView<T> a, ConstView<T> b, MatrixView<T> c, const MatmulPlan& plan,
                     std::size_t workers, bool winograd);

// Seven-product level for an even n. Products run as parallel sections; the
// quadrant combination runs after the join, split over rows.
template <Scalar T>
void strassen_even(ConstView<T> a, ConstView<T> b, MatrixView<T> c, const MatmulPlan& plan,
                   std::size_t workers)
{
    const std::size_t h = a.rows() / 2;
    const auto a11 = a.block(0, 0, h, h), a12 = a.block(0, h, h, h);
    const auto a21 = a.block(h, 0, h, h), a22 = a.block(h, h, h, h);
    const auto b11 = b.block(0, 0, h, h), b12 = b.block(0, h, h, h);
    const auto b21 = b.block(h, 0, h, h), b22 = b.block(h, h, h, h);

    std::array<DenseMatrix<T>, 7> p;
    for (auto& m : p) {
        m = DenseMatrix<T>(h, h);
    }

    auto sum = [h](ConstView<T> x, ConstView<T> y) {
        DenseMatrix<T> t(h, h);
        add_into<T>(x, y, t.view());
        return t;
    };
    auto diff = [h](ConstView<T> x, ConstView<T> y) {
        DenseMatrix<T> t(h, h);
        sub_into<T>(x, y, t.view());
        return t;
    };
    auto mul = [&](ConstView<T> x, ConstView<T> y, std::size_t idx, std::size_t budget) {
        strassen_square<T>(x, y, p[idx].view(), plan, budget, false);
    };

    const std::array<SectionTask, 7> sections{
        [&](std::size_t w) { mul(sum(a11, a22).view(), sum(b11, b22).view(), 0, w); },
        [&](std::size_t w) { mul(sum(a21, a22).view(), b11, 1, w); },
        [&](std::size_t w) { mul(a11, diff(b12, b22).view(), 2, w); },
        [&](std::size_t w) { mul(a22, diff(b21, b11).view(), 3, w); },
        [&](std::size_t w) { mul(sum(a11, a12).view(), b22, 4, w); },
        [&](std::size_t w) { mul(diff(a21, a11).view(), sum(b11, b12).view(), 5, w); },
        [&](std::size_t w) { mul(diff(a12, a22).view(), sum(b21, b22).view(), 6, w); },
    };
    run_parallel_sections(sections, workers);

    auto c11 = c.block(0, 0, h, h), c12 = c.block(0, h, h, h);
    auto c21 = c.block(h, 0, h, h), c22 = c.block(h, h, h, h);
    parallel_for(0, h, workers, [&](std::size_t r0, std::size_t r1) {
        for (std::size_t i = r0; i < r1; ++i) {
            for (std::size_t j = 0; j < h; ++j) {
                const T& p1 = p[0](i, j);
                const T& p2 = p[1](i, j);
                const T& p3 = p[2](i, j);
                const T& p4 = p[3](i, j);
                const T& p5 = p[4](i, j);
                const T& p6 = p[5](i, j);
                const T& p7 = p[6](i, j);
                c11(i, j) = p1 + p4 - p5 + p7;
                c12(i, j) = p3 + p5;
                c21(i, j) = p2 + p4;
                c22(i, j) = p1 - p2 + p3 + p6;
            }
        }
    });
}

// Winograd's form: 8 pre-additions, 7 products, 7 post-additions.
template <Scalar T>
void winograd_even(ConstView<T> a, ConstView<T> b, MatrixView<T> c, const MatmulPlan& plan,
                   std::size_t workers)
{
    const std::size_t h = a.rows() / 2;
    const auto a11 = a.block(0, 0, h, h), a12 = a.block(0, h, h, h);
    const auto a21 = a.block(h, 0, h, h), a22 = a.block(h, h, h, h);
    const auto b11 = b.block(0, 0, h, h), b12 = b.block(0, h, h, h);
    const auto b21 = b.block(h, 0, h, h), b22 = b.block(h, h, h, h);

    DenseMatrix<T> s1(h, h), s2(h, h), s3(h, h), s4(h, h);
    DenseMatrix<T> t1(h, h), t2(h, h), t3(h, h), t4(h, h);
    const std::array<SectionTask, 2> pre{
        [&](std::size_t) {
            add_into<T>(a21, a22, s1.view());
            sub_into<T>(s1.view(), a11, s2.view());
            sub_into<T>(a11, a21, s3.view());
            sub_into<T>(a12, s2.view(), s4.view());
        },
        [&](std::size_t) {
            sub_into<T>(b12, b11, t1.view());
            sub_into<T>(b22, t1.view(), t2.view());
            sub_into<T>(b22, b12, t3.view());
            sub_into<T>(t2.view(), b21, t4.view());
        },
    };
    run_parallel_sections(pre, workers);

    std::array<DenseMatrix<T>, 7> m;
    for (auto& x : m) {
        x = DenseMatrix<T>(h, h);
    }
    auto mul = [&](ConstView<T> x, ConstView<T> y, std::size_t idx, std::size_t budget) {
        strassen_square<T>(x, y, m[idx].view(), plan, budget, true);
    };
    const std::array<SectionTask, 7> products{
        [&](std::size_t w) { mul(a11, b11, 0, w); },
        [&](std::size_t w) { mul(a12, b21, 1, w); },
        [&](std::size_t w) { mul(s4.view(), b22, 2, w); },
        [&](std::size_t w) { mul(a22, t4.view(), 3, w); },
        [&](std::size_t w) { mul(s1.view(), t1.view(), 4, w); },
        [&](std::size_t w) { mul(s2.view(), t2.view(), 5, w); },
        [&](std::size_t w) { mul(s3.view(), t3.view(), 6, w); },
    };
    run_parallel_sections(products, workers);

    auto c11 = c.block(0, 0, h, h), c12 = c.block(0, h, h, h);
    auto c21 = c.block(h, 0, h, h), c22 = c.block(h, h, h, h);
    parallel_for(0, h, workers, [&](std::size_t r0, std::size_t r1) {
        for (std::size_t i = r0; i < r1; ++i) {
            for (std::size_t j = 0; j < h; ++j) {
                const T u1 = m[0](i, j) + m[1](i, j);
                const T u2 = m[0](i, j) + m[5](i, j);
                const T u3 = u2 + m[6](i, j);
                const T u4 = u2 + m[4](i, j);
                c11(i, j) = u1;
                c12(i, j) = u4 + m[2](i, j);
                c21(i, j) = u3 - m[3](i, j);
                c22(i, j) = u3 + m[4](i, j);
            }
        }
    });
}

template <Scalar T>
void strassen_square(ConstView<T> a, ConstView<T> b, MatrixView<T> c, const MatmulPlan& plan,
                     std::size_t workers, bool winograd)
{
    const std::size_t n = a.rows();
    if (n <= plan.n_min) {
        block_into<T>(a, b, c, plan.n_min, workers);
        return;
    }
    auto level = [&](ConstView<T> x, ConstView<T> y, MatrixView<T> z) {
        if (winograd) {
            winograd_even<T>(x, y, z, plan, workers);
        } else {
            strassen_even<T>(x, y, z, plan, workers);
        }
    };
    if (n % 2 == 0) {
        level(a, b, c);
        return;
    }
    // Odd size: zero-pad to n + 1 for this level only, then crop.
    const DenseMatrix<T> ap = padded_copy<T>(a, n + 1, n + 1);
    const DenseMatrix<T> bp = padded_copy<T>(b, n + 1, n + 1);
    DenseMatrix<T> cp(n + 1, n + 1);
    level(ap.view(), bp.view(), cp.view());
    copy_into<T>(cp.block(0, 0, n, n), c);
}

template <Scalar T>
void recursive_into(ConstView<T> a, ConstView<T> b, MatrixView<T> c, const MatmulPlan& plan,
                    bool winograd)
{
    const std::size_t m = a.rows();
    const std::size_t l = a.cols();
    const std::size_t n = b.cols();
    if (m == l && l == n) {
        strassen_square<T>(a, b, c, plan, plan.workers, winograd);
        return;
    }
    const std::size_t lo = std::min({m, l, n});
    const std::size_t hi = std::max({m, l, n});
    if (lo <= 2 * plan.n_min) {
        block_into<T>(a, b, c, plan.block_size, plan.workers);
        return;
    }
    if (hi <= 2 * lo) {
        // Close to square: embed in the bounding square.
        const DenseMatrix<T> ap = padded_copy<T>(a, hi, hi);
        const DenseMatrix<T> bp = padded_copy<T>(b, hi, hi);
        DenseMatrix<T> cp(hi, hi);
        strassen_square<T>(ap.view(), bp.view(), cp.view(), plan, plan.workers, winograd);
        copy_into<T>(cp.block(0, 0, m, n), c);
        return;
    }
    // Elongated: tile into lo-sized pieces, accumulating over the inner tiles.
    const std::size_t s = lo;
    for (std::size_t i0 = 0; i0 < m; i0 += s) {
        const std::size_t mi = std::min(s, m - i0);
        for (std::size_t j0 = 0; j0 < n; j0 += s) {
            const std::size_t nj = std::min(s, n - j0);
            auto ct = c.block(i0, j0, mi, nj);
            DenseMatrix<T> part(mi, nj);
            for (std::size_t k0 = 0; k0 < l; k0 += s) {
                const std::size_t lk = std::min(s, l - k0);
                auto target = (k0 == 0) ? ct : part.view();
                recursive_into<T>(a.block(i0, k0, mi, lk), b.block(k0, j0, lk, nj), target,
                                  plan, winograd);
                if (k0 != 0) {
                    add_into<T>(ct, part.view(), ct);
                }
            }
        }
    }
}

}  // namespace detail

/// C = A * B into a preallocated view using the plan's algorithm. C must not
/// alias A or B.
template <Scalar T>
void multiply_into(ConstView<T> a, ConstView<T> b, MatrixView<T> c, const MatmulPlan& plan)
{
    plan.validate();
    detail::require_conforming(a.rows(), a.cols(), b.rows(), b.cols(), c.rows(), c.cols());
    if (c.empty()) {
        return;
    }
    if (a.cols() == 0) {
        fill_zero<T>(c);
        return;
    }
    switch (plan.algorithm) {
    case MatmulAlgorithm::Simple:
        detail::simple_into<T>(a, b, c, plan.workers);
        break;
    case MatmulAlgorithm::Block:
        detail::block_into<T>(a, b, c, plan.block_size, plan.workers);
        break;
    case MatmulAlgorithm::Strassen:
        detail::recursive_into<T>(a, b, c, plan, false);
        break;
    case MatmulAlgorithm::Winograd:
        detail::recursive_into<T>(a, b, c, plan, true);
        break;
    }
}

template <Scalar T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b, const MatmulPlan& plan)
{
    detail::require_conforming(a.rows(), a.cols(), b.rows(), b.cols(), a.rows(), b.cols());
    DenseMatrix<T> c(a.rows(), b.cols());
    multiply_into<T>(a.view(), b.view(), c.view(), plan);
    return c;
}

template <Scalar T>
DenseMatrix<T> matmul_simple(const DenseMatrix<T>& a, const DenseMatrix<T>& b,
                             std::size_t workers = 1)
{
    return multiply(a, b, MatmulPlan{MatmulAlgorithm::Simple, 32, 32, workers});
}

template <Scalar T>
DenseMatrix<T> matmul_block(const DenseMatrix<T>& a, const DenseMatrix<T>& b, MatmulPlan plan = {})
{
    plan.algorithm = MatmulAlgorithm::Block;
    return multiply(a, b, plan);
}

/// Square operands; n <= n_min delegates to Block(n_min).
template <Scalar T>
DenseMatrix<T> matmul_strassen(const DenseMatrix<T>& a, const DenseMatrix<T>& b,
                               MatmulPlan plan = {})
{
    plan.algorithm = MatmulAlgorithm::Strassen;
    return multiply(a, b, plan);
}

template <Scalar T>
DenseMatrix<T> matmul_winograd(const DenseMatrix<T>& a, const DenseMatrix<T>& b,
                               MatmulPlan plan = {})
{
    plan.algorithm = MatmulAlgorithm::Winograd;
    return multiply(a, b, plan);
}

}  // namespace mpmat
