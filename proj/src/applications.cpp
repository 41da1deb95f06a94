#include "ldpput/applications.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "ldpput/errors.hpp"

namespace ldpput {

void validate(const HtSpec& spec)
{
    if (spec.m < 2)
        throw InvalidArgument("hypothesis testing needs m >= 2");
    if (spec.gamma <= 0 || spec.gamma > 1)
        throw InvalidArgument("gamma must lie in (0, 1]");
}

void validate(const CardioidSpec& spec)
{
    if (spec.m < 3)
        throw InvalidArgument("cardioid estimation needs m >= 3");
    if (spec.gamma <= 0 || spec.gamma > 1)
        throw InvalidArgument("gamma must lie in (0, 1]");
}

DecisionProblem ht_problem(const HtSpec& spec)
{
    validate(spec);
    const std::size_t m = spec.m;
    const auto x = FiniteAlphabet::range(m);
    const Rational smooth = (1 - spec.gamma) / Rational(m);
    RationalMatrix model(m, m), loss(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            model(i, j) = i == j ? Rational(smooth + spec.gamma) : smooth;
            loss(i, j) = i == j ? 0 : 1;
        }
    return DecisionProblem(x, x, x, std::move(model), std::move(loss), uniform_prior(m));
}

InvarianceDeclaration ht_symmetry(const HtSpec& spec)
{
    const auto action = GroupAction::natural(symmetric_group(FiniteAlphabet::range(spec.m)));
    return {action, action, action};
}

Rational ht_orbit_risk(const HtSpec& spec, std::size_t k)
{
    validate(spec);
    const Rational m(spec.m), kk(k);
    const auto& t = spec.level.t();
    return 1 - (1 - spec.gamma) / m - spec.gamma * t / (kk * t + m - kk);
}

Rational ht_put_closed_form(const HtSpec& spec)
{
    return ht_orbit_risk(spec, 1);
}

HtMinimaxCheck ht_minimax_check(const HtSpec& spec)
{
    const auto problem = ht_problem(spec);
    const auto q = ss_mechanism(problem.inputs(), 1, spec.level);
    HtMinimaxCheck out;
    out.equalizer = check_equalizer(problem, *problem.prior(), q, Rational(0));
    out.bayes = bayes_optimal_risk(problem, *problem.prior(), q).value;
    out.minimax = minimax_risk(problem, q).value;
    return out;
}

bool ht_minimax_equals_bayes(const HtSpec& spec)
{
    return ht_minimax_check(spec).holds();
}

double z_magnitude(std::uint32_t mask, std::size_t m)
{
    double re = 0.0, im = 0.0;
    for (std::size_t x = 0; x < m; ++x)
        if (mask & (1u << x)) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(m);
            re += std::cos(angle);
            im += std::sin(angle);
        }
    return std::hypot(re, im);
}

double cardioid_orbit_risk(const CardioidSpec& spec, std::uint32_t mask)
{
    validate(spec);
    const double m = static_cast<double>(spec.m);
    const double k = static_cast<double>(std::popcount(mask));
    const double t = to_double(spec.level.t());
    return 1.0 - to_double(spec.gamma) * (t - 1.0) * z_magnitude(mask, spec.m) / (2.0 * (k * t + m - k));
}

CardioidClosedForm cardioid_put_closed_form(const CardioidSpec& spec)
{
    validate(spec);
    const double m = static_cast<double>(spec.m);
    const double t = to_double(spec.level.t());
    const double pi = std::numbers::pi;
    double best = -1.0;
    std::size_t best_k = 1;
    for (std::size_t k = 1; k < spec.m; ++k) {
        const double kk = static_cast<double>(k);
        const double v = std::sin(pi * kk / m) / (kk * t + m - kk);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    return {1.0 - to_double(spec.gamma) * (t - 1.0) / (2.0 * std::sin(pi / m)) * best, best_k};
}

std::uint32_t cardioid_consecutive_maximizer(std::size_t m, std::size_t k)
{
    if (k < 1 || k >= m)
        throw BadSubsetSize("subset size must lie in [1, m-1]");
    const std::uint32_t consecutive = (1u << k) - 1;
    if (m <= 12) {
        const double best = z_magnitude(consecutive, m);
        for (std::uint32_t mask = 1; mask < (1u << m) - 1; ++mask)
            if (static_cast<std::size_t>(std::popcount(mask)) == k && z_magnitude(mask, m) > best + 1e-12)
                throw InvalidArgument("subset " + std::to_string(mask) + " beats the consecutive subset");
    }
    return consecutive;
}

PutResult cardioid_put_over_orbits(const CardioidSpec& spec)
{
    validate(spec);
    auto table = std::make_shared<const OrbitTable>(cyclic_group(FiniteAlphabet::range(spec.m)), spec.level);
    return put_transitive_closed_form(
        [spec](const OrbitTable& t, std::size_t orbit) { return Scalar(cardioid_orbit_risk(spec, t.representative(orbit))); },
        table);
}

} // namespace ldpput
