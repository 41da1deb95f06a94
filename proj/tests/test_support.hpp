#pragma once

// Random instance generators and independent oracles shared by the unit and
// acceptance tests.

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ldpput/applications.hpp"
#include "ldpput/channels.hpp"
#include "ldpput/decision.hpp"
#include "ldpput/invariant.hpp"
#include "ldpput/ldp_geometry.hpp"

namespace testsupport {

using namespace ldpput;

inline Rational frac(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t i)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(i)};
    return std::mt19937_64(seq);
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline RationalVector random_distribution(std::mt19937_64& rng, std::size_t n, bool full_support = false)
{
    RationalVector v(n);
    Rational s;
    for (auto& x : v) {
        x = static_cast<long>(pick(rng, full_support ? 1 : 0, 9));
        s += x;
    }
    if (s == 0) {
        v[pick(rng, 0, n - 1)] = 1;
        s = 1;
    }
    for (auto& x : v)
        x /= s;
    return v;
}

inline RationalMatrix random_stochastic(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
    RationalMatrix a(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        auto col = random_distribution(rng, rows);
        for (std::size_t i = 0; i < rows; ++i)
            a(i, j) = col[i];
    }
    return a;
}

inline FiniteAlphabet labels(std::size_t n) { return FiniteAlphabet::range(n); }

/** Any channel X→Y with n outputs, no privacy constraint. */
inline Channel random_channel(std::mt19937_64& rng, std::size_t m, std::size_t n)
{
    return Channel(labels(m), labels(n), random_stochastic(rng, n, m));
}

/** A random ε-LDP channel: mixture of uniform and an arbitrary channel, inside the cone. */
inline Channel random_ldp_channel(std::mt19937_64& rng, std::size_t m, std::size_t n, const Rational& t)
{
    const Rational alpha = (t - 1) / (Rational(n) + t - 1) * frac(static_cast<long>(pick(rng, 0, 8)), 8);
    const auto noise = random_stochastic(rng, n, m);
    RationalMatrix a(n, m);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < m; ++x)
            a(y, x) = (1 - alpha) / Rational(n) + alpha * noise(y, x);
    return Channel(labels(m), labels(n), std::move(a));
}

/** A random point of the weight polytope as a convex mix of vertices. */
inline RationalVector random_polytope_point(std::mt19937_64& rng, const std::vector<WeightVector>& vertices)
{
    RationalVector c(vertices.front().weights().size());
    const std::size_t terms = pick(rng, 1, 4);
    std::vector<std::pair<std::size_t, long>> mix;
    long total = 0;
    for (std::size_t i = 0; i < terms; ++i) {
        mix.emplace_back(pick(rng, 0, vertices.size() - 1), static_cast<long>(pick(rng, 1, 20)));
        total += mix.back().second;
    }
    for (const auto& [v, w] : mix)
        for (std::size_t p = 0; p < c.size(); ++p)
            c[p] += frac(w, total) * vertices[v][p];
    return c;
}

/** Random problem with |Θ| = nt, |A| = na and small integer losses. */
inline DecisionProblem random_problem(std::mt19937_64& rng, std::size_t nt, std::size_t m, std::size_t na)
{
    RationalMatrix loss(nt, na);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t a = 0; a < na; ++a)
            loss(i, a) = static_cast<long>(pick(rng, 0, 5));
    return DecisionProblem(labels(nt), labels(m), labels(na), random_stochastic(rng, m, nt), std::move(loss));
}

/** Bayes risk by brute force over every deterministic rule. */
inline Rational bayes_risk_oracle(const DecisionProblem& p, const RationalVector& prior, const Channel& q)
{
    const std::size_t na = p.actions().size(), ny = q.output_size();
    std::vector<std::size_t> choice(ny, 0);
    std::optional<Rational> best;
    while (true) {
        RationalMatrix rule(na, ny);
        for (std::size_t y = 0; y < ny; ++y)
            rule(choice[y], y) = 1;
        DecisionRule r(rule);
        Rational v;
        for (std::size_t th = 0; th < p.theta().size(); ++th)
            v += prior[th] * risk(p, th, q, r);
        if (!best || v < *best)
            best = v;
        std::size_t i = 0;
        while (i < ny && ++choice[i] == na)
            choice[i++] = 0;
        if (i == ny)
            break;
    }
    return *best;
}

/** Vertices of {c ≥ 0 : Sᵀc = 1} by trying every column subset of size ≤ m. */
inline std::vector<RationalVector> vertex_oracle(std::size_t m, const Rational& t)
{
    const auto st = staircase_matrix(labels(m), PrivacyLevel(t)).matrix().transpose();
    const std::size_t n = st.cols();
    std::vector<RationalVector> out;
    for (std::uint32_t set = 1; set < (1u << n); ++set) {
        if (static_cast<std::size_t>(std::popcount(set)) > m)
            continue;
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if (set & (1u << j))
                cols.push_back(j);
        RationalMatrix sub(m, cols.size() + 1);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < cols.size(); ++k)
                sub(i, k) = st(i, cols[k]);
            sub(i, cols.size()) = 1;
        }
        auto piv = reduce_to_rref(sub);
        if (piv.size() != cols.size() || std::find(piv.begin(), piv.end(), cols.size()) != piv.end())
            continue; // dependent columns or inconsistent system
        RationalVector c(n);
        bool positive = true;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            c[cols[k]] = sub(k, cols.size());
            positive = positive && c[cols[k]] > 0;
        }
        if (positive && std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * Cardioid per-orbit Bayes risk by trapezoidal θ-integration of the raw
 * model against the cosine loss; the inner minimum over a is taken from the
 * integrated (α, β_c, β_s) moments.
 */
inline double cardioid_numeric_risk(std::size_t m, double gamma, double t, const std::vector<std::uint32_t>& orbit,
                                    double w, int grid = 10000)
{
    const double pi = std::numbers::pi;
    double total = 0.0;
    for (auto y : orbit) {
        double alpha = 0.0, bc = 0.0, bs = 0.0;
        for (int i = 0; i <= grid; ++i) {
            const double th = 2.0 * pi * i / grid;
            const double weight = (i == 0 || i == grid) ? 0.5 : 1.0;
            double py = 0.0;
            for (std::size_t x = 0; x < m; ++x) {
                const double q = w * ((y & (1u << x)) ? t : 1.0);
                py += (1.0 + gamma * std::cos(2.0 * pi * x / m - th)) / m * q;
            }
            alpha += weight * py;
            bc += weight * py * std::cos(th);
            bs += weight * py * std::sin(th);
        }
        alpha /= grid;
        bc /= grid;
        bs /= grid;
        // E[1 − cos(θ − a)] = α − β_c cos a − β_s sin a, minimized at a = atan2(β_s, β_c).
        total += alpha - std::hypot(bc, bs);
    }
    return total;
}

/** θ-risk of the cardioid Bayes rule a*(y) = arg Z_y (blind guess when Z_y = 0). */
inline double cardioid_theta_risk(std::size_t m, double gamma, double t, const std::vector<std::uint32_t>& orbit,
                                  double w, double theta)
{
    const double pi = std::numbers::pi;
    double r = 0.0;
    for (auto y : orbit) {
        double re = 0.0, im = 0.0;
        for (std::size_t x = 0; x < m; ++x)
            if (y & (1u << x)) {
                re += std::cos(2.0 * pi * x / m);
                im += std::sin(2.0 * pi * x / m);
            }
        const bool blind = std::hypot(re, im) < 1e-12;
        const double a = std::atan2(im, re);
        double py = 0.0;
        for (std::size_t x = 0; x < m; ++x)
            py += (1.0 + gamma * std::cos(2.0 * pi * x / m - theta)) / m * w * ((y & (1u << x)) ? t : 1.0);
        r += py * (blind ? 1.0 : 1.0 - std::cos(theta - a));
    }
    return r;
}

} // namespace testsupport
