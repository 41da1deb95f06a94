#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ldpput/channels.hpp"
#include "ldpput/groups.hpp"
#include "ldpput/linalg.hpp"

namespace ldpput {

/**
 * One row per nonempty proper subset y ⊂ X (bitmask order), with entry t
 * where x ∈ y and 1 elsewhere.
 */
class StaircaseMatrix
{
public:
    StaircaseMatrix(const FiniteAlphabet& input, const PrivacyLevel& level);

    const FiniteAlphabet& input() const { return input_; }
    const PrivacyLevel& level() const { return level_; }
    std::size_t alphabet_size() const { return input_.size(); }
    std::size_t subset_rows() const { return entries_.rows(); }
    const RationalMatrix& matrix() const { return entries_; }
    RationalVector row_for(std::uint32_t mask) const { return entries_.row(subset_point(mask)); }

private:
    FiniteAlphabet input_;
    PrivacyLevel level_;
    RationalMatrix entries_;
};

StaircaseMatrix staircase_matrix(const FiniteAlphabet& input, const PrivacyLevel& level);

/** The staircase row of a single subset, built without the full matrix. */
RationalVector staircase_row(std::uint32_t mask, std::size_t m, const Rational& t);

bool in_weight_polytope(const RationalVector& c, const FiniteAlphabet& input, const PrivacyLevel& level);

/** A point of the maximal-LDP polytope {c ≥ 0 : cᵀS = 1ᵀ}, indexed by subset point. */
class WeightVector
{
public:
    /** Throws PolytopeViolation unless c lies in the polytope. */
    WeightVector(RationalVector c, FiniteAlphabet input, PrivacyLevel level);

    const RationalVector& weights() const { return c_; }
    const Rational& operator[](std::size_t point) const { return c_[point]; }
    const Rational& at_mask(std::uint32_t mask) const { return c_[subset_point(mask)]; }
    const FiniteAlphabet& input() const { return input_; }
    const PrivacyLevel& level() const { return level_; }
    /** Masks with nonzero weight, ascending. */
    std::vector<std::uint32_t> support() const;

    friend bool operator==(const WeightVector& a, const WeightVector& b)
    {
        return a.c_ == b.c_ && a.level_ == b.level_ && a.input_.size() == b.input_.size();
    }

private:
    RationalVector c_;
    FiniteAlphabet input_;
    PrivacyLevel level_;
};

/**
 * Rows c_y·S_y for every y ∈ B(X), zero rows included; output letters are
 * the subsets written as "{a,b}".
 */
Channel extremal_channel(const WeightVector& c);

std::string subset_label(std::uint32_t mask, const FiniteAlphabet& input);

/** Rows t·e_z − e_{z'} for ordered pairs z ≠ z', followed by the identity block. */
struct ConeConstraintMatrix
{
    RationalMatrix pair_rows;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    RationalMatrix with_nonnegativity;
};

ConeConstraintMatrix cone_constraint_matrix(std::size_t m, const PrivacyLevel& level);

bool in_ldp_cone(const RationalVector& v, const PrivacyLevel& level);

/**
 * Constructive extreme-direction test: the subset Z with v ∝ (t on Z, 1 off Z)
 * when v has that shape, absent otherwise. At t = 1 every positive constant
 * vector is the single extreme direction and {first letter} is returned.
 * Throws ZeroVector for v = 0.
 */
std::optional<std::uint32_t> is_extreme_direction(const RationalVector& v, const FiniteAlphabet& input,
                                                  const PrivacyLevel& level);

/**
 * Active-constraint oracle: true iff the kernel of the rows of T ⊕ I that are
 * tight at v is exactly span{v}. Throws NotInCone (or ZeroVector).
 */
bool kernel_rank_check(const RationalVector& v, const FiniteAlphabet& input, const PrivacyLevel& level);

/** Every nonzero row is an extreme direction. Throws NotLDP. */
bool is_maximal(const Channel& q, const PrivacyLevel& level);

/** Gathers rows along each extreme ray. Throws NotMaximal. */
WeightVector canonical_weight(const Channel& q, const PrivacyLevel& level);

struct MaximalDomination
{
    Channel maximal;          ///< extremal channel Q̃ with Q ≼ Q̃
    DominanceWitness witness; ///< W with Q = W·Q̃
};

/** Splits every row into staircase summands and gathers them. Throws NotLDP. */
MaximalDomination dominating_maximal(const Channel& q, const PrivacyLevel& level);

inline constexpr std::size_t kDefaultAlphabetCap = 5;

/** A basic feasible solution: strictly positive values on `support`. */
struct BasicSolution
{
    std::vector<std::size_t> support;
    RationalVector values; ///< full-length vector, zero off the support
};

/**
 * All vertices of {x ≥ 0 : A x = b} by support enumeration: every set of
 * linearly independent columns for which the system has a strictly positive
 * solution. Results are in lexicographic support order.
 */
std::vector<BasicSolution> enumerate_basic_solutions(const RationalMatrix& a, const RationalVector& b);

/** Vertices of the weight polytope. Throws DimensionCap when m > cap. */
std::vector<WeightVector> enumerate_polytope_vertices(const FiniteAlphabet& input, const PrivacyLevel& level,
                                                      std::size_t cap = kDefaultAlphabetCap);

} // namespace ldpput
