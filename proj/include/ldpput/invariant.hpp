#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "ldpput/channels.hpp"
#include "ldpput/groups.hpp"
#include "ldpput/ldp_geometry.hpp"

namespace ldpput {

struct OrbitCoefficients
{
    std::size_t r = 0;          ///< |{y ∈ O : x ∈ y}| for any x in the input orbit
    std::size_t orbit_size = 0; ///< |O|
    std::size_t k = 0;          ///< common subset size in O
    Rational r_tilde;           ///< t·r + |O| − r
};

/**
 * Coefficients of one (input orbit, subset orbit) pair. r is counted at the
 * smallest letter and re-checked at every other one; throws
 * RepresentativeMismatch when the counts differ or the subsets differ in size.
 */
OrbitCoefficients orbit_coefficients(const std::vector<std::size_t>& input_orbit,
                                     const std::vector<std::uint32_t>& subset_orbit, const PrivacyLevel& level);

/** Orbits of G on X and on B(X), with every r̃ coefficient. */
class OrbitTable
{
public:
    OrbitTable(PermGroup group, PrivacyLevel level);

    const PermGroup& group() const { return group_; }
    const PrivacyLevel& level() const { return level_; }
    const FiniteAlphabet& input() const { return group_.alphabet(); }
    std::size_t alphabet_size() const { return group_.degree(); }

    const std::vector<std::vector<std::size_t>>& input_orbits() const { return input_orbits_; }
    /** Subset orbits as ascending masks; the first mask is the representative. */
    const std::vector<std::vector<std::uint32_t>>& subset_orbits() const { return subset_orbits_; }
    std::size_t subset_orbit_count() const { return subset_orbits_.size(); }
    std::uint32_t representative(std::size_t orbit) const { return subset_orbits_[orbit].front(); }
    /** Orbit index of a subset mask. */
    std::size_t orbit_of(std::uint32_t mask) const { return orbit_of_[subset_point(mask)]; }

    const OrbitCoefficients& coefficients(std::size_t input_orbit, std::size_t subset_orbit) const
    {
        return coefficients_[input_orbit * subset_orbits_.size() + subset_orbit];
    }
    /** r̃ with rows indexed by input orbits and columns by subset orbits. */
    RationalMatrix r_tilde_matrix() const;
    bool transitive() const { return input_orbits_.size() == 1; }

private:
    PermGroup group_;
    PrivacyLevel level_;
    std::vector<std::vector<std::size_t>> input_orbits_;
    std::vector<std::vector<std::uint32_t>> subset_orbits_;
    std::vector<std::size_t> orbit_of_;
    std::vector<OrbitCoefficients> coefficients_;
};

/** Orbit-indexed weights w_O. Membership in S^G is not enforced here. */
class OrbitWeightVector
{
public:
    /** Throws InvalidArgument on a length mismatch. */
    OrbitWeightVector(RationalVector w, std::shared_ptr<const OrbitTable> table);

    const RationalVector& weights() const { return w_; }
    const Rational& operator[](std::size_t orbit) const { return w_[orbit]; }
    const OrbitTable& table() const { return *table_; }
    const std::shared_ptr<const OrbitTable>& table_ptr() const { return table_; }
    /** Orbits with nonzero weight, ascending. */
    std::vector<std::size_t> support() const;

    friend bool operator==(const OrbitWeightVector& a, const OrbitWeightVector& b)
    {
        return a.w_ == b.w_ && a.table_ == b.table_;
    }

private:
    RationalVector w_;
    std::shared_ptr<const OrbitTable> table_;
};

bool in_invariant_polytope(const OrbitWeightVector& w);

/**
 * ⊕_O w_O·S_{X,O}: one row per subset, grouped by orbit in table order and
 * ascending within an orbit. Throws PolytopeViolation.
 */
Channel invariant_extremal_channel(const OrbitWeightVector& w);

/** The subset action carried over to the row order of invariant_extremal_channel. */
GroupAction invariant_output_action(const OrbitTable& table);

/** c_y = w_O for y ∈ O. Throws PolytopeViolation. */
WeightVector lift_weights(const OrbitWeightVector& w);

/** m / (|O|·(k·t + m − k)). Throws NotTransitive. */
Rational transitive_vertex_weight(const OrbitTable& table, std::size_t subset_orbit);

/** The point of S^G carrying transitive_vertex_weight on one orbit only. */
OrbitWeightVector transitive_vertex(const std::shared_ptr<const OrbitTable>& table, std::size_t subset_orbit);

/**
 * Uniform weight m / (C(m,k)·(k·t + m − k)) on every k-subset; rows in mask
 * order. Built directly rather than through Sym(X), so it works past the
 * group-order cap. Throws BadSubsetSize.
 */
Channel ss_mechanism(const FiniteAlphabet& input, std::size_t k, const PrivacyLevel& level);

inline constexpr std::size_t kDefaultOrbitCap = 30;

/** Vertices of S^G in lexicographic orbit-support order. Throws DimensionCap. */
std::vector<OrbitWeightVector> enumerate_invariant_vertices(const std::shared_ptr<const OrbitTable>& table,
                                                            std::size_t orbit_cap = kDefaultOrbitCap);

} // namespace ldpput
