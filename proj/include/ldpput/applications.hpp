#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>

#include "ldpput/decision.hpp"
#include "ldpput/invariant.hpp"
#include "ldpput/put_solver.hpp"

namespace ldpput {

/** Hypothesis testing over smoothed point masses: P(x|θ) = (1−γ)/m + γ·δ_{xθ}. */
struct HtSpec
{
    std::size_t m;
    Rational gamma;
    PrivacyLevel level;
};

/** Discrete cardioid estimation: P(x|θ) = (1 + γ cos(2πx/m − θ))/m, cosine loss. */
struct CardioidSpec
{
    std::size_t m;
    Rational gamma;
    PrivacyLevel level;
};

/** Throws InvalidArgument for m < 2 or γ outside (0, 1]. */
void validate(const HtSpec& spec);
/** Throws InvalidArgument for m < 3 or γ outside (0, 1]. */
void validate(const CardioidSpec& spec);

/** Θ = X = A = [m], 0-1 loss, uniform prior attached. */
DecisionProblem ht_problem(const HtSpec& spec);
/** Sym(m) acting identically on Θ, X and A. */
InvarianceDeclaration ht_symmetry(const HtSpec& spec);

/** 1 − (1−γ)/m − γt/(t+m−1). */
Rational ht_put_closed_form(const HtSpec& spec);
/** Bayes risk of the k-subset selection mechanism: 1 − (1−γ)/m − γt/(kt+m−k). */
Rational ht_orbit_risk(const HtSpec& spec, std::size_t k);

struct HtMinimaxCheck
{
    bool equalizer = false;
    Rational bayes;
    Rational minimax;
    bool holds() const { return equalizer && bayes == minimax; }
};

/** Equalizer and minimax LP at the k=1 subset selection mechanism. */
HtMinimaxCheck ht_minimax_check(const HtSpec& spec);
bool ht_minimax_equals_bayes(const HtSpec& spec);

/** |Σ_{x∈y} e^{2πix/m}|. */
double z_magnitude(std::uint32_t mask, std::size_t m);

/** 1 − γ(t−1)|Z_y| / (2(k·t + m − k)) with k = |y|. */
double cardioid_orbit_risk(const CardioidSpec& spec, std::uint32_t mask);

struct CardioidClosedForm
{
    double value;
    std::size_t k; ///< maximizing subset size
};

/** 1 − γ(t−1)/(2 sin(π/m)) · max_k sin(πk/m)/(k·t + m − k). */
CardioidClosedForm cardioid_put_closed_form(const CardioidSpec& spec);

/**
 * {0, …, k−1}. For m ≤ 12 every k-subset is checked to have |Z| no larger;
 * throws InvalidArgument otherwise.
 */
std::uint32_t cardioid_consecutive_maximizer(std::size_t m, std::size_t k);

/** Minimum of cardioid_orbit_risk over the cyclic-group subset orbits. */
PutResult cardioid_put_over_orbits(const CardioidSpec& spec);

} // namespace ldpput
