#include <mpmat/generators.hpp>
#include <mpmat/matrix.hpp>
#include <mpmat/matrix_io.hpp>

#include "support/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using mpmat::DenseMatrix;
using mpmat::DoubleDouble;
using mpmat::QuadDouble;

namespace {

template <class T>
DenseMatrix<T> from_rows(std::initializer_list<std::initializer_list<double>> rows)
{
    DenseMatrix<T> m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (double v : r) {
            m(i, j++) = T(v);
        }
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE_TEMPLATE("bench pair small cases", T, DoubleDouble, QuadDouble)
{
    using Tr = mpmat::ScalarTraits<T>;
    const T s5 = Tr::sqrt(Tr::from_integer(5));
    const T s3 = Tr::sqrt(Tr::from_integer(3));

    const auto [a2, b2] = mpmat::generate_bench_pair<T>(2);
    CHECK(a2(0, 0) == s5);
    CHECK(a2(0, 1) == s5 * T(2.0));
    CHECK(a2(1, 0) == s5 * T(2.0));
    CHECK(a2(1, 1) == s5 * T(3.0));
    CHECK(b2(0, 0) == s3);
    CHECK(b2(0, 1) == s3);
    CHECK(b2(1, 0) == T());
    CHECK(b2(1, 1) == T());

    const auto [a1, b1] = mpmat::generate_bench_pair<T>(1);
    CHECK(a1(0, 0) == s5);
    CHECK(b1(0, 0) == T());
}

TEST_CASE("bench pair entries against a high-precision sqrt")
{
    const auto [a, b] = mpmat::generate_bench_pair<DoubleDouble>(3);
    const oracle::Wide expected = 4 * sqrt(oracle::Wide(5));
    CHECK(oracle::rel_error(oracle::wide(a(1, 2)), expected) <= 2 * DoubleDouble::epsilon);
    CHECK(std::abs(a(1, 2).to_double() - 8.94427190999916) < 1e-13);

    const auto [aq, bq] = mpmat::generate_bench_pair<QuadDouble>(3);
    CHECK(oracle::rel_error(oracle::wide(aq(1, 2)), expected) <= 4 * QuadDouble::epsilon);
}

TEST_CASE("bench B has identical columns")
{
    const auto [a, b] = mpmat::generate_bench_pair<DoubleDouble>(17);
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 1; j < b.cols(); ++j) {
            REQUIRE(b(i, j) == b(i, 0));
        }
    }
}

TEST_CASE("generators are pure")
{
    CHECK(mpmat::generate_bench_pair<QuadDouble>(9) == mpmat::generate_bench_pair<QuadDouble>(9));
    CHECK(mpmat::generate_lotkin<DoubleDouble>(7) == mpmat::generate_lotkin<DoubleDouble>(7));
    CHECK(mpmat::generate_random<DoubleDouble>(16, 5) == mpmat::generate_random<DoubleDouble>(16, 5));
    CHECK(mpmat::generate_random<QuadDouble>(16, 5) == mpmat::generate_random<QuadDouble>(16, 5));
    CHECK_FALSE(mpmat::generate_random<DoubleDouble>(16, 5) ==
                mpmat::generate_random<DoubleDouble>(16, 6));
}

TEST_CASE("exact bench product closed form")
{
    using Tr = mpmat::ScalarTraits<DoubleDouble>;
    const DoubleDouble s15 = Tr::sqrt(Tr::from_integer(15));
    CHECK(mpmat::exact_bench_product<DoubleDouble>(2, 1, 1) == s15);
    CHECK(mpmat::exact_bench_product<DoubleDouble>(2, 1, 2) == s15);
    CHECK(mpmat::exact_bench_product<DoubleDouble>(3, 2, 3) == s15 * DoubleDouble(7.0));

    // Agrees with the exact rational product of the integer parts of A and B.
    const std::size_t n = 11;
    for (std::size_t i = 1; i <= n; ++i) {
        oracle::Integer s = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            s += oracle::Integer(i + k - 1) * oracle::Integer(n - k);
        }
        const oracle::Wide ref = oracle::Wide(s) * sqrt(oracle::Wide(15));
        REQUIRE(oracle::rel_error(oracle::wide(mpmat::exact_bench_product<QuadDouble>(n, i, 3)),
                                  ref) <= 4 * QuadDouble::epsilon);
    }
}

TEST_CASE("random matrices")
{
    const auto a = mpmat::generate_random<DoubleDouble>(64, 42);
    for (const auto& x : a.elements()) {
        REQUIRE(x >= DoubleDouble(-1.0));
        REQUIRE(x <= DoubleDouble(1.0));
        REQUIRE(x.is_normalized());
    }

    // Uniform on [-1, 1] has variance 1/3; over 65536 samples 3 sigma is
    // 3 * sqrt(1/3 / 65536) ~ 0.0068, far inside 0.05.
    const auto big = mpmat::generate_random<DoubleDouble>(256, 7);
    double mean = 0.0;
    for (const auto& x : big.elements()) {
        mean += x.to_double();
    }
    mean /= static_cast<double>(big.size());
    CHECK(std::abs(mean) < 0.05);

    const auto unit = mpmat::generate_random<QuadDouble>(8, 8, 3, 0.0, 1.0);
    for (const auto& x : unit.elements()) {
        REQUIRE(x >= QuadDouble(0.0));
        REQUIRE(x <= QuadDouble(1.0));
    }
}

TEST_CASE("random entries use the full working precision")
{
    // The second word of a DD random entry is populated, not left at zero.
    const auto a = mpmat::generate_random<DoubleDouble>(8, 1);
    int nonzero_lo = 0;
    for (const auto& x : a.elements()) {
        nonzero_lo += x.lo() != 0.0 ? 1 : 0;
    }
    CHECK(nonzero_lo > 50);
}

TEST_CASE("lotkin matrix")
{
    const auto l1 = mpmat::generate_lotkin<DoubleDouble>(1);
    CHECK(l1.rows() == 1);
    CHECK(l1(0, 0) == DoubleDouble(1.0));

    const auto l2 = mpmat::generate_lotkin<QuadDouble>(2);
    CHECK(l2(0, 0) == QuadDouble(1.0));
    CHECK(l2(0, 1) == QuadDouble(1.0));
    CHECK(oracle::rel_error(oracle::wide(l2(1, 0)), oracle::Wide(1) / 2) == 0.0);
    CHECK(oracle::rel_error(oracle::wide(l2(1, 1)), oracle::Wide(1) / 3) <= 4 * QuadDouble::epsilon);

    const auto l8 = mpmat::generate_lotkin<QuadDouble>(8);
    const auto exact = oracle::lotkin(8);
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            REQUIRE(oracle::rel_error(oracle::wide(l8(i, j)), oracle::to_wide(exact[i][j])) <=
                    4 * QuadDouble::epsilon);
        }
    }
}

TEST_CASE_TEMPLATE("norms and elementwise operations", T, double, DoubleDouble, QuadDouble)
{
    const auto a = from_rows<T>({{1, -2}, {3, 4}});
    CHECK(mpmat::norm_1(a) == T(6.0));
    CHECK(mpmat::norm_inf(a) == T(7.0));
    CHECK(mpmat::mat_sub(a, a) == DenseMatrix<T>(2, 2));
    CHECK(mpmat::mat_add(a, a) == from_rows<T>({{2, -4}, {6, 8}}));
    CHECK_THROWS_AS(mpmat::mat_add(a, DenseMatrix<T>(2, 3)), mpmat::DimensionError);
    CHECK_THROWS_AS(mpmat::mat_sub(a, DenseMatrix<T>(3, 2)), mpmat::DimensionError);
}

TEST_CASE("max componentwise relative error")
{
    const auto ref = from_rows<double>({{2, 0}});
    const auto x = from_rows<double>({{2.0002, 0.0001}});
    CHECK(mpmat::max_componentwise_rel_error(x, x) == 0.0);
    CHECK(mpmat::max_componentwise_rel_error(x, ref) == doctest::Approx(1e-4).epsilon(1e-9));

    const double delta = 1e-20;
    const auto r = mpmat::generate_random<DoubleDouble>(5, 4, 9);
    DenseMatrix<DoubleDouble> scaled = r;
    for (auto& v : scaled.elements()) {
        v = v * (DoubleDouble(1.0) + DoubleDouble(delta));
    }
    CHECK(mpmat::max_componentwise_rel_error(scaled, r).to_double() ==
          doctest::Approx(delta).epsilon(1e-6));

    CHECK_THROWS_AS(mpmat::max_componentwise_rel_error(x, DenseMatrix<double>(1, 2)),
                    mpmat::DomainError);
    CHECK(mpmat::max_componentwise_rel_error(DenseMatrix<double>(1, 2), DenseMatrix<double>(1, 2)) ==
          0.0);
    CHECK_THROWS_AS(mpmat::max_componentwise_rel_error(x, DenseMatrix<double>(2, 1)),
                    mpmat::DimensionError);
}

TEST_CASE("views and blocks")
{
    auto m = mpmat::generate_random<DoubleDouble>(6, 5, 2);
    auto blk = m.block(1, 2, 3, 3);
    CHECK(blk(0, 0) == m(1, 2));
    CHECK(blk(2, 2) == m(3, 4));
    blk(1, 1) = DoubleDouble(42.0);
    CHECK(m(2, 3) == DoubleDouble(42.0));
    CHECK(DenseMatrix<DoubleDouble>::from_view(blk).rows() == 3);
    CHECK_THROWS_AS(m.block(4, 0, 3, 1), mpmat::DimensionError);
    CHECK_THROWS_AS(blk.block(0, 1, 1, 3), mpmat::DimensionError);
}

TEST_CASE_TEMPLATE("matrix text files round-trip", T, DoubleDouble, QuadDouble)
{
    const auto m = mpmat::generate_random<T>(4, 3, 11);
    std::stringstream ss;
    mpmat::write_matrix(ss, m);
    std::string header;
    std::getline(std::istringstream(ss.str()), header);
    CHECK(header == std::string("4 3 ") + mpmat::ScalarTraits<T>::name);
    CHECK(mpmat::peek_matrix_precision(ss) == mpmat::ScalarTraits<T>::name);
    CHECK(mpmat::read_matrix<T>(ss) == m);
}

TEST_CASE("matrix text files reject malformed input")
{
    for (const char* bad : {"", "2 2\n1 2\n3 4\n", "2 2 qd\n1 2\n3 4\n", "2 2 dd\n1 2\n3\n",
                            "1 2 dd\n1 2 3\n", "2 1 dd\n1\n", "1 1 dd\nx\n", "0 1 dd\n"}) {
        std::istringstream in(bad);
        CHECK_THROWS_AS(mpmat::read_matrix<DoubleDouble>(in), mpmat::DomainError);
    }
}
