#include "ldpput/linalg.hpp"

#include <utility>

#include "ldpput/errors.hpp"

namespace ldpput {

RationalVector RationalMatrix::row(std::size_t r) const
{
    return RationalVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

RationalVector RationalMatrix::col(std::size_t c) const
{
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

void RationalMatrix::set_row(std::size_t r, const RationalVector& v)
{
    if (v.size() != cols_)
        throw InvalidArgument("row length mismatch");
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(r, c) = v[c];
}

void RationalMatrix::append_row(const RationalVector& v)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = v.size();
    if (v.size() != cols_)
        throw InvalidArgument("row length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() != b.rows())
        throw InvalidArgument("matrix product dimension mismatch");
    RationalMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

RationalVector multiply(const RationalMatrix& a, const RationalVector& x)
{
    if (a.cols() != x.size())
        throw InvalidArgument("matrix-vector dimension mismatch");
    RationalVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (x[k] != 0)
                out[i] += a(i, k) * x[k];
    return out;
}

std::vector<std::size_t> reduce_to_rref(RationalMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(RationalMatrix m)
{
    return reduce_to_rref(m).size();
}

std::vector<RationalVector> nullspace(const RationalMatrix& a)
{
    RationalMatrix m = a;
    auto pivots = reduce_to_rref(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free])
            continue;
        RationalVector v(a.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve_unique(const RationalMatrix& a, const RationalVector& b)
{
    if (b.size() != a.rows())
        throw InvalidArgument("right-hand side length mismatch");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = reduce_to_rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt; // inconsistent
    if (pivots.size() != a.cols())
        return std::nullopt; // rank deficient
    RationalVector x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = aug(i, a.cols());
    return x;
}

} // namespace ldpput
