#include "ldpput/ldp_geometry.hpp"

#include <functional>

#include "ldpput/errors.hpp"
#include "ldpput/simplex.hpp"

namespace ldpput {

namespace {

void require_subset_alphabet(std::size_t m)
{
    if (m < 2 || m > kMaxSubsetAlphabet)
        throw InvalidArgument("LDP geometry needs 2 <= m <= " + std::to_string(kMaxSubsetAlphabet) +
                              ", got m = " + std::to_string(m));
}

void require_nonnegative_nonzero(const RationalVector& v)
{
    bool nonzero = false;
    for (const auto& x : v) {
        if (x < 0)
            throw NotInCone("vector has a negative component");
        if (x != 0)
            nonzero = true;
    }
    if (!nonzero)
        throw ZeroVector("extreme-direction tests need a nonzero vector");
}

} // namespace

RationalVector staircase_row(std::uint32_t mask, std::size_t m, const Rational& t)
{
    RationalVector row(m);
    for (std::size_t x = 0; x < m; ++x)
        row[x] = (mask & (1u << x)) ? t : Rational(1);
    return row;
}

StaircaseMatrix::StaircaseMatrix(const FiniteAlphabet& input, const PrivacyLevel& level)
    : input_(input), level_(level)
{
    const std::size_t m = input.size();
    require_subset_alphabet(m);
    entries_ = RationalMatrix(subset_count(m), m);
    for (std::size_t p = 0; p < entries_.rows(); ++p)
        entries_.set_row(p, staircase_row(subset_mask(p), m, level.t()));
}

StaircaseMatrix staircase_matrix(const FiniteAlphabet& input, const PrivacyLevel& level)
{
    return StaircaseMatrix(input, level);
}

bool in_weight_polytope(const RationalVector& c, const FiniteAlphabet& input, const PrivacyLevel& level)
{
    const std::size_t m = input.size();
    require_subset_alphabet(m);
    if (c.size() != subset_count(m))
        return false;
    RationalVector column_sums(m);
    for (std::size_t p = 0; p < c.size(); ++p) {
        if (c[p] < 0)
            return false;
        if (c[p] == 0)
            continue;
        const auto mask = subset_mask(p);
        for (std::size_t x = 0; x < m; ++x)
            column_sums[x] += (mask & (1u << x)) ? Rational(c[p] * level.t()) : c[p];
    }
    for (const auto& s : column_sums)
        if (s != 1)
            return false;
    return true;
}

WeightVector::WeightVector(RationalVector c, FiniteAlphabet input, PrivacyLevel level)
    : c_(std::move(c)), input_(std::move(input)), level_(std::move(level))
{
    if (!in_weight_polytope(c_, input_, level_))
        throw PolytopeViolation("weight vector is not in the maximal-LDP polytope");
}

std::vector<std::uint32_t> WeightVector::support() const
{
    std::vector<std::uint32_t> out;
    for (std::size_t p = 0; p < c_.size(); ++p)
        if (c_[p] != 0)
            out.push_back(subset_mask(p));
    return out;
}

std::string subset_label(std::uint32_t mask, const FiniteAlphabet& input)
{
    std::string s = "{";
    bool first = true;
    for (std::size_t x = 0; x < input.size(); ++x)
        if (mask & (1u << x)) {
            if (!first)
                s += ",";
            s += input.letter(x);
            first = false;
        }
    return s + "}";
}

Channel extremal_channel(const WeightVector& c)
{
    const auto& input = c.input();
    const std::size_t m = input.size(), n = subset_count(m);
    RationalMatrix rows(n, m);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        const auto mask = subset_mask(p);
        for (std::size_t x = 0; x < m; ++x)
            rows(p, x) = (mask & (1u << x)) ? Rational(c[p] * c.level().t()) : c[p];
        labels.push_back(subset_label(mask, input));
    }
    return Channel(input, FiniteAlphabet(std::move(labels)), std::move(rows));
}

ConeConstraintMatrix cone_constraint_matrix(std::size_t m, const PrivacyLevel& level)
{
    ConeConstraintMatrix out;
    out.pair_rows = RationalMatrix(m * (m - 1), m);
    std::size_t r = 0;
    for (std::size_t z = 0; z < m; ++z)
        for (std::size_t zp = 0; zp < m; ++zp) {
            if (z == zp)
                continue;
            out.pair_rows(r, z) = level.t();
            out.pair_rows(r, zp) = -1;
            out.pairs.emplace_back(z, zp);
            ++r;
        }
    out.with_nonnegativity = out.pair_rows;
    for (std::size_t x = 0; x < m; ++x) {
        RationalVector e(m);
        e[x] = 1;
        out.with_nonnegativity.append_row(e);
    }
    return out;
}

bool in_ldp_cone(const RationalVector& v, const PrivacyLevel& level)
{
    if (v.empty())
        return false;
    Rational lo = v[0], hi = v[0];
    for (const auto& x : v) {
        if (x < lo)
            lo = x;
        if (x > hi)
            hi = x;
    }
    return lo >= 0 && level.t() * lo >= hi;
}

std::optional<std::uint32_t> is_extreme_direction(const RationalVector& v, const FiniteAlphabet& input,
                                                  const PrivacyLevel& level)
{
    if (v.size() != input.size())
        throw AlphabetMismatch("vector length does not match the alphabet");
    bool nonzero = false;
    for (const auto& x : v)
        if (x != 0)
            nonzero = true;
    if (!nonzero)
        throw ZeroVector("extreme-direction test needs a nonzero vector");
    if (!in_ldp_cone(v, level))
        return std::nullopt;

    Rational lo = v[0], hi = v[0];
    for (const auto& x : v) {
        if (x < lo)
            lo = x;
        if (x > hi)
            hi = x;
    }
    if (level.t() == 1)
        return lo == hi ? std::optional<std::uint32_t>(1u) : std::nullopt;
    if (hi != level.t() * lo)
        return std::nullopt; // includes the constant vector
    std::uint32_t mask = 0;
    for (std::size_t x = 0; x < v.size(); ++x) {
        if (v[x] == hi)
            mask |= 1u << x;
        else if (v[x] != lo)
            return std::nullopt; // a third value
    }
    return mask;
}

bool kernel_rank_check(const RationalVector& v, const FiniteAlphabet& input, const PrivacyLevel& level)
{
    const std::size_t m = input.size();
    if (v.size() != m)
        throw AlphabetMismatch("vector length does not match the alphabet");
    require_nonnegative_nonzero(v);
    const auto cone = cone_constraint_matrix(m, level);
    const auto values = multiply(cone.with_nonnegativity, v);

    RationalMatrix active;
    for (std::size_t r = 0; r < values.size(); ++r) {
        if (values[r] < 0)
            throw NotInCone("vector violates an LDP cone constraint");
        if (values[r] == 0) {
            if (active.rows() == 0)
                active = RationalMatrix(0, m);
            active.append_row(cone.with_nonnegativity.row(r));
        }
    }
    if (active.rows() == 0)
        return m == 1;
    // v is in the kernel by construction; extremality means nothing else is.
    return nullspace(active).size() == 1;
}

bool is_maximal(const Channel& q, const PrivacyLevel& level)
{
    if (!is_ldp(q, level))
        throw NotLDP("maximality is only defined for LDP channels");
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        auto row = q.row(y);
        if (is_zero(row))
            continue;
        if (!is_extreme_direction(row, q.input(), level))
            return false;
    }
    return true;
}

WeightVector canonical_weight(const Channel& q, const PrivacyLevel& level)
{
    if (!is_maximal(q, level))
        throw NotMaximal("channel has a row that is not an extreme direction");
    const std::size_t m = q.input_size();
    RationalVector c(subset_count(m));
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        auto row = q.row(y);
        if (is_zero(row))
            continue;
        const auto mask = *is_extreme_direction(row, q.input(), level);
        // Scale of the row is its value off the subset (the staircase "1" entry);
        // at t = 1 every entry is that scale.
        std::size_t off = 0;
        while (off < m && (mask & (1u << off)) && level.t() != 1)
            ++off;
        c[subset_point(mask)] += row[off];
    }
    return WeightVector(std::move(c), q.input(), level);
}

MaximalDomination dominating_maximal(const Channel& q, const PrivacyLevel& level)
{
    if (!is_ldp(q, level))
        throw NotLDP("only LDP channels are dominated by maximal LDP channels");
    const std::size_t m = q.input_size(), n = subset_count(m);
    const auto staircase_t = StaircaseMatrix(q.input(), level).matrix().transpose();

    // Conic decomposition of each row over the staircase rows.
    std::vector<RationalVector> pieces(q.output_size());
    RationalVector gathered(n);
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        auto row = q.row(y);
        if (is_zero(row)) {
            pieces[y] = RationalVector(n);
            continue;
        }
        auto coeffs = find_feasible_point(staircase_t, row);
        if (!coeffs)
            throw DecompositionInfeasible("row " + std::to_string(y) +
                                          " has no conic decomposition over staircase rows");
        for (std::size_t p = 0; p < n; ++p)
            gathered[p] += (*coeffs)[p];
        pieces[y] = std::move(*coeffs);
    }

    WeightVector c(gathered, q.input(), level);
    Channel maximal = extremal_channel(c);

    // Row y of Q is Σ_p pieces[y][p]·S_p = Σ_p (pieces[y][p]/C_p)·Q̃_p.
    RationalMatrix w(q.output_size(), n);
    for (std::size_t p = 0; p < n; ++p) {
        if (gathered[p] == 0) {
            w(0, p) = 1; // Q̃_p is a zero row; any stochastic column works
            continue;
        }
        for (std::size_t y = 0; y < q.output_size(); ++y)
            w(y, p) = pieces[y][p] / gathered[p];
    }
    DominanceWitness witness{Channel(maximal.output(), q.output(), std::move(w))};
    if (!(compose(witness.post_processor, maximal).matrix() == q.matrix()))
        throw DecompositionInfeasible("gathered witness does not reproduce the channel");
    return {std::move(maximal), std::move(witness)};
}

std::vector<BasicSolution> enumerate_basic_solutions(const RationalMatrix& a, const RationalVector& b)
{
    const std::size_t rows = a.rows(), cols = a.cols(), width = cols + 1;
    if (b.size() != rows)
        throw InvalidArgument("right-hand side length mismatch");

    // states[k] is the Gauss-Jordan reduced [A | b] after k pivots.
    std::vector<RationalVector> states(rows + 1, RationalVector(rows * width));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j)
            states[0][i * width + j] = a(i, j);
        states[0][i * width + cols] = b[i];
    }

    std::vector<BasicSolution> out;
    std::vector<std::size_t> chosen;
    Rational f, tmp;

    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t depth, std::size_t first) {
        const auto& cur = states[depth];
        auto& next = states[depth + 1];
        for (std::size_t j = first; j < cols; ++j) {
            std::size_t pivot_row = depth;
            while (pivot_row < rows && cur[pivot_row * width + j] == 0)
                ++pivot_row;
            if (pivot_row == rows)
                continue; // column j depends on the chosen ones

            next = cur;
            if (pivot_row != depth)
                for (std::size_t c = j; c < width; ++c)
                    std::swap(next[pivot_row * width + c], next[depth * width + c]);
            const Rational inv = 1 / next[depth * width + j];
            for (std::size_t c = j; c < width; ++c)
                next[depth * width + c] *= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == depth || next[i * width + j] == 0)
                    continue;
                f = next[i * width + j];
                for (std::size_t c = j; c < width; ++c) {
                    tmp = f * next[depth * width + c];
                    next[i * width + c] -= tmp;
                }
            }

            chosen.push_back(j);
            bool consistent = true;
            for (std::size_t i = depth + 1; i < rows; ++i)
                if (next[i * width + cols] != 0) {
                    consistent = false;
                    break;
                }
            if (consistent) {
                // Any larger independent support reproduces this solution padded
                // with zeros, so the branch ends here either way.
                bool positive = true;
                for (std::size_t i = 0; i <= depth; ++i)
                    if (next[i * width + cols] <= 0) {
                        positive = false;
                        break;
                    }
                if (positive) {
                    BasicSolution s;
                    s.support = chosen;
                    s.values = RationalVector(cols);
                    for (std::size_t i = 0; i <= depth; ++i)
                        s.values[chosen[i]] = next[i * width + cols];
                    out.push_back(std::move(s));
                }
            } else if (depth + 1 < rows) {
                extend(depth + 1, j + 1);
            }
            chosen.pop_back();
        }
    };
    extend(0, 0);
    return out;
}

std::vector<WeightVector> enumerate_polytope_vertices(const FiniteAlphabet& input, const PrivacyLevel& level,
                                                      std::size_t cap)
{
    const std::size_t m = input.size();
    if (m > cap)
        throw DimensionCap("vertex enumeration capped at m = " + std::to_string(cap) + ", got m = " +
                           std::to_string(m));
    const auto staircase_t = StaircaseMatrix(input, level).matrix().transpose();
    auto solutions = enumerate_basic_solutions(staircase_t, RationalVector(m, Rational(1)));

    // Distinct supports carry distinct strictly positive solutions, so no dedup is needed.
    std::vector<WeightVector> out;
    out.reserve(solutions.size());
    for (auto& s : solutions)
        out.emplace_back(std::move(s.values), input, level);
    return out;
}

} // namespace ldpput
