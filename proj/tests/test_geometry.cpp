#include <doctest.h>

#include "ldpput/errors.hpp"
#include "ldpput/ldp_geometry.hpp"
#include "test_support.hpp"

using namespace ldpput;
using testsupport::frac;
using testsupport::labels;

TEST_CASE("staircase matrix layout")
{
    const auto s = staircase_matrix(labels(3), PrivacyLevel(2));
    CHECK(s.subset_rows() == 6);
    CHECK(s.row_for(0b101) == RationalVector{2, 1, 2});
    CHECK(s.row_for(0b010) == RationalVector{1, 2, 1});
    CHECK_THROWS_AS(staircase_matrix(labels(1), PrivacyLevel(2)), InvalidArgument);
}

TEST_CASE("weight polytope membership")
{
    const PrivacyLevel t(2);
    const auto x = labels(3);
    RationalVector singles(6), pairs(6);
    for (auto mask : {1u, 2u, 4u})
        singles[subset_point(mask)] = frac(1, 4);
    for (auto mask : {3u, 5u, 6u})
        pairs[subset_point(mask)] = frac(1, 5);
    CHECK(in_weight_polytope(singles, x, t));
    CHECK(in_weight_polytope(pairs, x, t));
    CHECK_FALSE(in_weight_polytope(RationalVector(6), x, t));
    CHECK_THROWS_AS(WeightVector(RationalVector(6), x, t), PolytopeViolation);

    const auto q = extremal_channel(WeightVector(singles, x, t));
    CHECK(q.output_size() == 6);
    CHECK(q.output().letter(subset_point(5)) == "{0,2}");
    CHECK(q(0, 0) == frac(1, 2));
    CHECK(is_ldp(q, t));
    CHECK(is_maximal(q, t));
}

TEST_CASE("vertex enumeration matches the brute-force oracle")
{
    for (std::size_t m = 2; m <= 4; ++m)
        for (const auto& t : {frac(3, 2), frac(2, 1), frac(5, 1)}) {
            auto got = enumerate_polytope_vertices(labels(m), PrivacyLevel(t));
            std::vector<RationalVector> weights;
            for (const auto& v : got)
                weights.push_back(v.weights());
            std::sort(weights.begin(), weights.end());
            CHECK(weights == testsupport::vertex_oracle(m, t));
            for (const auto& v : got) {
                const auto q = extremal_channel(v);
                CHECK(is_ldp(q, PrivacyLevel(t)));
                CHECK(is_maximal(q, PrivacyLevel(t)));
            }
        }
    CHECK(enumerate_polytope_vertices(labels(3), PrivacyLevel(2)).size() == 5);
    CHECK_THROWS_AS(enumerate_polytope_vertices(labels(6), PrivacyLevel(2)), DimensionCap);
}

TEST_CASE("vertex enumeration order is lexicographic in support")
{
    const auto v = enumerate_polytope_vertices(labels(4), PrivacyLevel(3));
    for (std::size_t i = 1; i < v.size(); ++i) {
        std::vector<std::size_t> a, b;
        for (auto mask : v[i - 1].support())
            a.push_back(subset_point(mask));
        for (auto mask : v[i].support())
            b.push_back(subset_point(mask));
        CHECK(a < b);
    }
}

TEST_CASE("extreme directions: constructive test and kernel oracle")
{
    const PrivacyLevel t(2);
    const auto x = labels(3);
    CHECK(is_extreme_direction({2, 1, 2}, x, t) == 0b101u);
    CHECK(is_extreme_direction({4, 2, 2}, x, t) == 0b001u);
    CHECK_FALSE(is_extreme_direction({1, 1, 1}, x, t));
    CHECK_FALSE(is_extreme_direction({2, frac(3, 2), 1}, x, t));
    CHECK_FALSE(is_extreme_direction({3, 1, 1}, x, t)); // outside the cone
    CHECK_THROWS_AS(is_extreme_direction({0, 0, 0}, x, t), ZeroVector);
    CHECK(kernel_rank_check({2, 1, 2}, x, t));
    CHECK_FALSE(kernel_rank_check({1, 1, 1}, x, t));
    CHECK_THROWS_AS(kernel_rank_check({3, 1, 1}, x, t), NotInCone);

    // At t = 1 the cone is the ray of constant vectors.
    const PrivacyLevel one(1);
    CHECK(is_extreme_direction({5, 5, 5}, x, one) == 0b001u);
    CHECK(kernel_rank_check({5, 5, 5}, x, one));
}

TEST_CASE("canonical weights invert extremal channels")
{
    for (std::size_t m = 2; m <= 4; ++m) {
        const PrivacyLevel t(frac(5, 2));
        const auto vertices = enumerate_polytope_vertices(labels(m), t);
        for (std::uint64_t i = 0; i < 20; ++i) {
            auto rng = testsupport::rng_for(21, i);
            WeightVector c(testsupport::random_polytope_point(rng, vertices), labels(m), t);
            const auto q = extremal_channel(c);
            CHECK(canonical_weight(q, t) == c);
            // Equivalence moves keep the canonical weight.
            const auto moved = split_row(permute_outputs(q, [&] {
                                             Permutation p(q.output_size());
                                             for (std::size_t k = 0; k < p.size(); ++k)
                                                 p[k] = p.size() - 1 - k;
                                             return p;
                                         }()),
                                         0, frac(1, 3));
            CHECK(canonical_weight(moved, t) == c);
        }
    }
    CHECK_THROWS_AS(canonical_weight(uniform_channel(labels(3), 2), PrivacyLevel(2)), NotMaximal);
    CHECK_THROWS_AS(is_maximal(identity_channel(labels(2)), PrivacyLevel(2)), NotLDP);
}

TEST_CASE("dominating maximal channel with exact witness")
{
    for (std::uint64_t i = 0; i < 30; ++i) {
        auto rng = testsupport::rng_for(31, i);
        const std::size_t m = testsupport::pick(rng, 2, 4);
        const PrivacyLevel t(testsupport::frac(static_cast<long>(testsupport::pick(rng, 3, 10)), 2));
        const auto q = testsupport::random_ldp_channel(rng, m, testsupport::pick(rng, 1, 5), t.t());
        const auto d = dominating_maximal(q, t);
        CHECK(is_maximal(d.maximal, t));
        CHECK(compose(d.witness.post_processor, d.maximal).matrix() == q.matrix());
        CHECK(dominates(d.maximal, q));
    }
    // The uniform channel is strictly dominated.
    const auto d = dominating_maximal(uniform_channel(labels(3), 3), PrivacyLevel(2));
    CHECK_FALSE(dominates(uniform_channel(labels(3), 3), d.maximal));
}
