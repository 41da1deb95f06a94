#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ldpput/rational.hpp"

namespace ldpput {

/** Dense row-major rational matrix. */
class RationalMatrix
{
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector row(std::size_t r) const;
    RationalVector col(std::size_t c) const;
    void set_row(std::size_t r, const RationalVector& v);
    void append_row(const RationalVector& v);

    RationalMatrix transpose() const;

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    RationalVector data_;
};

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalVector multiply(const RationalMatrix& a, const RationalVector& x);

/**
 * In-place reduced row echelon form. Returns the pivot column of each
 * nonzero row, in order; the rank is the size of the result.
 */
std::vector<std::size_t> reduce_to_rref(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/** Basis of {x : A x = 0}, one vector per free column of the RREF. */
std::vector<RationalVector> nullspace(const RationalMatrix& a);

/**
 * Unique solution of A x = b when A has full column rank and the system is
 * consistent; nullopt otherwise (inconsistent or rank deficient).
 */
std::optional<RationalVector> solve_unique(const RationalMatrix& a, const RationalVector& b);

} // namespace ldpput
