#include "ldpput/simplex.hpp"

#include <limits>
#include <vector>

#include "ldpput/errors.hpp"

namespace ldpput {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Tableau layout: rows 0..m-1 hold B⁻¹[A | I | b]; row m holds reduced
// costs with -z in the last column. Columns n..n+m-1 are artificials.
class Tableau
{
public:
    Tableau(const RationalMatrix& a, const RationalVector& b)
        : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), cells_((m_ + 1) * width_),
          basis_(m_)
    {
        for (std::size_t i = 0; i < m_; ++i) {
            bool flip = b[i] < 0;
            for (std::size_t j = 0; j < n_; ++j)
                at(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
            at(i, n_ + i) = 1;
            at(i, rhs_col()) = flip ? Rational(-b[i]) : b[i];
            basis_[i] = n_ + i;
        }
    }

    Rational& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }
    std::size_t rhs_col() const { return width_ - 1; }
    std::size_t obj_row() const { return m_; }
    bool is_artificial(std::size_t j) const { return j >= n_ && j < n_ + m_; }

    void set_phase_one_costs()
    {
        for (std::size_t j = 0; j < width_; ++j) {
            Rational s = 0;
            if (!is_artificial(j))
                for (std::size_t i = 0; i < m_; ++i)
                    s -= at(i, j);
            at(obj_row(), j) = s;
        }
    }

    void set_phase_two_costs(const RationalVector& c)
    {
        for (std::size_t j = 0; j < width_; ++j) {
            if (is_artificial(j)) {
                at(obj_row(), j) = 0;
                continue;
            }
            Rational d = (j < n_) ? c[j] : Rational(0);
            for (std::size_t i = 0; i < m_; ++i) {
                std::size_t bj = basis_[i];
                if (bj < n_ && c[bj] != 0 && at(i, j) != 0)
                    d -= c[bj] * at(i, j);
            }
            at(obj_row(), j) = d;
        }
    }

    void pivot(std::size_t r, std::size_t c)
    {
        Rational inv = 1 / at(r, c);
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < width_; ++j) {
            if (at(r, j) == 0)
                continue;
            at(r, j) *= inv;
            nz.push_back(j);
        }
        Rational f, tmp;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r || at(i, c) == 0)
                continue;
            f = at(i, c);
            for (auto j : nz) {
                tmp = f * at(r, j);
                at(i, j) -= tmp;
            }
        }
        basis_[r] = c;
    }

    // Runs Bland's-rule iterations; returns false if unbounded.
    bool optimize(bool allow_artificial_entering)
    {
        for (;;) {
            std::size_t enter = kNone;
            for (std::size_t j = 0; j + 1 < width_; ++j) {
                if (!allow_artificial_entering && is_artificial(j))
                    continue;
                if (at(obj_row(), j) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == kNone)
                return true;

            std::size_t leave = kNone;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (at(i, enter) <= 0)
                    continue;
                Rational ratio = at(i, rhs_col()) / at(i, enter);
                if (leave == kNone || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == kNone)
                return false;
            pivot(leave, enter);
        }
    }

    // After phase 1: pivot remaining zero-valued artificials out of the basis.
    void expel_artificials()
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_artificial(basis_[i]))
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (at(i, j) != 0) {
                    pivot(i, j);
                    break;
                }
            // A row with no structural nonzero is redundant; its artificial
            // stays basic at zero and never re-enters.
        }
    }

    Rational phase_one_value() const { return -at(obj_row(), rhs_col()); }

    RationalVector solution() const
    {
        RationalVector x(n_);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_)
                x[basis_[i]] = at(i, rhs_col());
        return x;
    }

private:
    std::size_t m_, n_, width_;
    RationalVector cells_;
    std::vector<std::size_t> basis_;
};

void check_shapes(const RationalMatrix& a, const RationalVector& b)
{
    if (a.rows() != b.size())
        throw InvalidArgument("LP right-hand side length mismatch");
}

} // namespace

std::optional<RationalVector> find_feasible_point(const RationalMatrix& a, const RationalVector& b)
{
    check_shapes(a, b);
    Tableau tab(a, b);
    tab.set_phase_one_costs();
    tab.optimize(true);
    if (tab.phase_one_value() != 0)
        return std::nullopt;
    tab.expel_artificials();
    return tab.solution();
}

LpSolution solve_lp(const LinearProgram& lp)
{
    check_shapes(lp.constraints, lp.rhs);
    if (lp.objective.size() != lp.constraints.cols())
        throw InvalidArgument("LP objective length mismatch");

    Tableau tab(lp.constraints, lp.rhs);
    tab.set_phase_one_costs();
    tab.optimize(true);
    LpSolution out;
    if (tab.phase_one_value() != 0) {
        out.status = LpStatus::Infeasible;
        return out;
    }
    tab.expel_artificials();
    tab.set_phase_two_costs(lp.objective);
    if (!tab.optimize(false)) {
        out.status = LpStatus::Unbounded;
        return out;
    }
    out.status = LpStatus::Optimal;
    out.x = tab.solution();
    out.value = 0;
    for (std::size_t j = 0; j < out.x.size(); ++j)
        out.value += lp.objective[j] * out.x[j];
    return out;
}

} // namespace ldpput
