#include <doctest.h>

#include "ldpput/errors.hpp"
#include "ldpput/invariant.hpp"
#include "test_support.hpp"

using namespace ldpput;
using testsupport::frac;
using testsupport::labels;

namespace {

std::shared_ptr<const OrbitTable> table_for(PermGroup g, const Rational& t)
{
    return std::make_shared<const OrbitTable>(std::move(g), PrivacyLevel(t));
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("orbit coefficients")
{
    const PrivacyLevel t(2);
    const auto c1 = orbit_coefficients({0, 1, 2}, {1, 2, 4}, t);
    CHECK(c1.r == 1);
    CHECK(c1.orbit_size == 3);
    CHECK(c1.r_tilde == 4); // t + 2
    const auto c2 = orbit_coefficients({0, 1, 2}, {3, 5, 6}, t);
    CHECK(c2.r == 2);
    CHECK(c2.r_tilde == 5); // 2t + 1
    CHECK_THROWS_AS(orbit_coefficients({0, 1, 2}, {1, 2}, t), RepresentativeMismatch);
    CHECK_THROWS_AS(orbit_coefficients({0, 1}, {1, 6}, t), RepresentativeMismatch);

    // Sym(m): r = C(m−1, k−1), |O| = C(m, k), and m·r = |O|·k.
    for (std::size_t m = 2; m <= 5; ++m) {
        const auto table = table_for(symmetric_group(labels(m)), 3);
        CHECK(table->subset_orbit_count() == m - 1);
        for (std::size_t o = 0; o < table->subset_orbit_count(); ++o) {
            const auto& c = table->coefficients(0, o);
            CHECK(c.r == binom(m - 1, c.k - 1));
            CHECK(c.orbit_size == binom(m, c.k));
            CHECK(m * c.r == c.orbit_size * c.k);
        }
    }
}

TEST_CASE("invariant polytope membership and lift")
{
    const auto z3 = table_for(cyclic_group(labels(3)), 2);
    CHECK(in_invariant_polytope(OrbitWeightVector({frac(1, 4), 0}, z3)));
    CHECK(in_invariant_polytope(OrbitWeightVector({0, frac(1, 5)}, z3)));
    CHECK_FALSE(in_invariant_polytope(OrbitWeightVector({0, 0}, z3)));
    CHECK_THROWS_AS(OrbitWeightVector({0}, z3), InvalidArgument);
    CHECK_THROWS_AS(lift_weights(OrbitWeightVector({0, 0}, z3)), PolytopeViolation);

    const auto lifted = lift_weights(OrbitWeightVector({frac(1, 4), 0}, z3));
    CHECK(lifted.at_mask(1) == frac(1, 4));
    CHECK(lifted.at_mask(3) == 0);

    const auto q = invariant_extremal_channel(OrbitWeightVector({frac(1, 4), 0}, z3));
    CHECK(q(0, 0) == frac(1, 2));
    CHECK(q(0, 1) == frac(1, 4));
    CHECK(is_maximal(q, PrivacyLevel(2)));
}

TEST_CASE("trivial group reproduces the plain polytope")
{
    for (std::size_t m = 2; m <= 4; ++m) {
        const auto table = table_for(trivial_group(labels(m)), frac(3, 2));
        const auto inv = enumerate_invariant_vertices(table);
        const auto plain = enumerate_polytope_vertices(labels(m), PrivacyLevel(frac(3, 2)));
        REQUIRE(inv.size() == plain.size());
        for (std::size_t i = 0; i < inv.size(); ++i) {
            CHECK(lift_weights(inv[i]) == plain[i]);
            CHECK(invariant_extremal_channel(inv[i]).matrix() == extremal_channel(plain[i]).matrix());
        }
    }
}

TEST_CASE("transitive groups: one vertex per orbit with the closed-form weight")
{
    for (std::size_t m = 2; m <= 5; ++m)
        for (const auto& g : {symmetric_group(labels(m)), cyclic_group(labels(m))}) {
            const auto table = table_for(g, 2);
            const auto vertices = enumerate_invariant_vertices(table);
            CHECK(vertices.size() == table->subset_orbit_count());
            for (std::size_t o = 0; o < vertices.size(); ++o) {
                CHECK(vertices[o].support() == std::vector<std::size_t>{o});
                CHECK(vertices[o][o] == transitive_vertex_weight(*table, o));
            }
        }
    const auto z3 = table_for(cyclic_group(labels(3)), 2);
    CHECK(transitive_vertex_weight(*z3, 0) == frac(1, 4));
    const auto s2 = table_for(symmetric_group(labels(2)), 7);
    CHECK(transitive_vertex_weight(*s2, 0) == frac(1, 8));
    const auto swap = table_for(generate_group(labels(3), {{1, 0, 2}}), 2);
    CHECK_THROWS_AS(transitive_vertex_weight(*swap, 0), NotTransitive);
}

TEST_CASE("non-transitive group vertices")
{
    const auto table = table_for(generate_group(labels(3), {{1, 0, 2}}), 2);
    CHECK(table->input_orbits().size() == 2);
    for (const auto& v : enumerate_invariant_vertices(table)) {
        CHECK(v.support().size() <= 2);
        CHECK(in_invariant_polytope(v));
        CHECK(in_weight_polytope(lift_weights(v).weights(), labels(3), PrivacyLevel(2)));
    }
}

TEST_CASE("invariant extremal channels are invariant, maximal and canonical")
{
    for (std::size_t m = 3; m <= 4; ++m) {
        Permutation swap01(m);
        for (std::size_t i = 0; i < m; ++i)
            swap01[i] = i;
        std::swap(swap01[0], swap01[1]);
        for (const auto& g : {cyclic_group(labels(m)), generate_group(labels(m), {swap01})}) {
            const auto table = table_for(g, 3);
            const auto action = invariant_output_action(*table);
            CHECK(action.satisfies_action_laws());
            for (const auto& v : enumerate_invariant_vertices(table)) {
                const auto q = invariant_extremal_channel(v);
                CHECK(is_maximal(q, PrivacyLevel(3)));
                CHECK(is_invariant(q, action));
                CHECK(canonical_weight(q, PrivacyLevel(3)) == lift_weights(v));
                CHECK(equivalent(symmetrize(g, q), q));
            }
        }
    }
}

TEST_CASE("subset selection mechanism")
{
    const auto rr = ss_mechanism(labels(2), 1, PrivacyLevel(3));
    CHECK(rr.matrix() == binary_randomized_response(PrivacyLevel(3)).matrix());
    const auto ss = ss_mechanism(labels(3), 1, PrivacyLevel(2));
    CHECK(ss.row(0) == RationalVector{frac(1, 2), frac(1, 4), frac(1, 4)});
    CHECK_THROWS_AS(ss_mechanism(labels(3), 3, PrivacyLevel(2)), BadSubsetSize);
    CHECK_THROWS_AS(ss_mechanism(labels(3), 0, PrivacyLevel(2)), BadSubsetSize);
    for (std::size_t m = 2; m <= 5; ++m)
        for (const auto& t : {frac(3, 2), frac(2, 1), frac(5, 1)})
            for (std::size_t k = 1; k < m; ++k) {
                const auto q = ss_mechanism(labels(m), k, PrivacyLevel(t));
                CHECK(is_maximal(q, PrivacyLevel(t)));
                // Same channel as the Sym(X) construction on the k-subset orbit.
                const auto table = table_for(symmetric_group(labels(m)), t);
                const auto w = transitive_vertex(table, k - 1);
                CHECK(canonical_weight(q, PrivacyLevel(t)) == lift_weights(w));
                CHECK(equivalent(invariant_extremal_channel(w), q));
            }
}
