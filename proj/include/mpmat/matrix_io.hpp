#pragma once

// Plain-text matrix files: a header line "rows cols precision" followed by
// one whitespace-separated row of decimal strings per line.

#include <mpmat/errors.hpp>
#include <mpmat/matrix.hpp>
#include <mpmat/scalar.hpp>

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace mpmat {

template <Scalar T>
void write_matrix(std::ostream& out, const DenseMatrix<T>& m)
{
    out << m.rows() << ' ' << m.cols() << ' ' << ScalarTraits<T>::name << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j != 0) {
                out << ' ';
            }
            out << ScalarTraits<T>::to_string(m(i, j));
        }
        out << '\n';
    }
}

/// Reads the precision token from a header without consuming the stream.
inline std::string peek_matrix_precision(std::istream& in)
{
    const auto pos = in.tellg();
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string prec;
    if (!(in >> rows >> cols >> prec)) {
        throw DomainError("matrix file: malformed header");
    }
    in.seekg(pos);
    return prec;
}

template <Scalar T>
DenseMatrix<T> read_matrix(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header)) {
        throw DomainError("matrix file: missing header");
    }
    std::istringstream hs(header);
    long long rows = 0;
    long long cols = 0;
    std::string prec;
    std::string extra;
    if (!(hs >> rows >> cols >> prec) || (hs >> extra) || rows < 1 || cols < 1) {
        throw DomainError("matrix file: malformed header '" + header + "'");
    }
    if (prec != ScalarTraits<T>::name) {
        throw DomainError("matrix file: precision '" + prec + "' but expected '" +
                          ScalarTraits<T>::name + "'");
    }
    DenseMatrix<T> m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    std::string line;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!std::getline(in, line)) {
            throw DomainError("matrix file: expected " + std::to_string(rows) + " rows, got " +
                              std::to_string(i));
        }
        std::istringstream ls(line);
        std::string token;
        std::size_t j = 0;
        while (ls >> token) {
            if (j == m.cols()) {
                throw DomainError("matrix file: too many entries in row " + std::to_string(i + 1));
            }
            m(i, j++) = ScalarTraits<T>::from_string(token);
        }
        if (j != m.cols()) {
            throw DomainError("matrix file: too few entries in row " + std::to_string(i + 1));
        }
    }
    return m;
}

}  // namespace mpmat
