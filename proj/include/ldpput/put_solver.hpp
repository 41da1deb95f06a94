#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldpput/channels.hpp"
#include "ldpput/decision.hpp"
#include "ldpput/invariant.hpp"
#include "ldpput/ldp_geometry.hpp"

namespace ldpput {

/** An objective value: exact when every input to it was rational. */
class Scalar
{
public:
    Scalar() : exact_(Rational(0)), approx_(0.0) {}
    Scalar(Rational v) : exact_(std::move(v)), approx_(to_double(*exact_)) {}
    Scalar(double v) : approx_(v) {}

    bool is_exact() const { return exact_.has_value(); }
    const Rational& exact() const { return *exact_; }
    double approx() const { return approx_; }
    std::string to_string() const;

private:
    std::optional<Rational> exact_;
    double approx_;
};

/** Exact comparison when both sides are exact, double otherwise. */
int compare(const Scalar& a, const Scalar& b);
/** a − b, exact when both are. */
Scalar difference(const Scalar& a, const Scalar& b);

enum class Sense { Minimize, Maximize };
enum class PutMethod { VertexEnumeration, LinearProgram, TransitiveClosedForm };
enum class Certificate { Exact, BoundOnly, EqualizerCertified };

std::string to_string(PutMethod method);
std::string to_string(Certificate certificate);

/**
 * A channel functional plus the caller's attestation that its optimum over
 * the polytope sits at a vertex (concave for minimization, convex for
 * maximization).
 */
struct ChannelObjective
{
    std::string name;
    std::function<Scalar(const Channel&)> evaluate;
    Sense sense = Sense::Minimize;
    bool vertex_optimal = false;
};

struct VertexEvaluation
{
    RationalVector weights; ///< full weight vector or orbit weights
    Scalar value;
};

struct PutResult
{
    Scalar value;
    PutMethod method = PutMethod::VertexEnumeration;
    Certificate certificate = Certificate::Exact;
    std::optional<WeightVector> weights;             ///< argmin over S_{X,ε}
    std::optional<OrbitWeightVector> orbit_weights;  ///< argmin over S^G
    std::optional<std::size_t> winning_orbit;        ///< closed-form path only
    std::vector<VertexEvaluation> table;             ///< every evaluated candidate

    /** The optimal channel: extremal or invariant-extremal form. */
    Channel channel() const;
};

/**
 * Scans every vertex of S_{X,ε}, or of S^G when `table` is given. The first
 * optimum in enumeration order wins ties.
 */
PutResult put_by_vertex_enumeration(const ChannelObjective& objective, const FiniteAlphabet& input,
                                    const PrivacyLevel& level,
                                    const std::shared_ptr<const OrbitTable>& table = nullptr,
                                    std::size_t cap = kDefaultAlphabetCap);

/** Exact simplex over c ≥ 0, cᵀS = 1ᵀ (orbit-collapsed when `table` is given). */
PutResult put_by_lp(const RationalVector& u, const FiniteAlphabet& input, const PrivacyLevel& level,
                    Sense sense = Sense::Minimize, const std::shared_ptr<const OrbitTable>& table = nullptr);

/**
 * Floating coefficients are converted exactly to rationals before the
 * simplex; the reported value is Σ c_y u_y in double.
 */
PutResult put_by_lp(const std::vector<double>& u, const FiniteAlphabet& input, const PrivacyLevel& level,
                    Sense sense = Sense::Minimize, const std::shared_ptr<const OrbitTable>& table = nullptr);

using OrbitObjective = std::function<Scalar(const OrbitTable&, std::size_t orbit)>;

/** Optimum over the single-orbit vertices of a transitive group. Throws NotTransitive. */
PutResult put_transitive_closed_form(const OrbitObjective& per_orbit, const std::shared_ptr<const OrbitTable>& table,
                                     Sense sense = Sense::Minimize);

/** Evaluates a channel objective at every transitive vertex. */
OrbitObjective orbit_objective(const ChannelObjective& objective);

ChannelObjective bayes_objective(const DecisionProblem& problem, const RationalVector& prior);
ChannelObjective minimax_objective(const DecisionProblem& problem);
ChannelObjective mi_objective(const RationalVector& prior);
ChannelObjective f_divergence_objective(FDivergence f, const RationalVector& p0, const RationalVector& p1);

/**
 * Minimax PUT. The vertex scan gives an upper bound; when the Bayes-PUT
 * channel for `prior` has an exact equalizer rule, the minimax PUT equals the
 * Bayes PUT and the result is promoted.
 */
PutResult put_minimax(const DecisionProblem& problem, const std::optional<RationalVector>& prior,
                      const FiniteAlphabet& input, const PrivacyLevel& level,
                      const std::shared_ptr<const OrbitTable>& table = nullptr,
                      std::size_t cap = kDefaultAlphabetCap);

struct AuditReport
{
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::optional<Scalar> min_gap;   ///< objective − PUT for minimization, PUT − objective otherwise
    std::optional<Channel> violator; ///< first channel that beat the PUT
};

/**
 * Samples LDP channels (extremal channels of random polytope points, random
 * post-processings of those, and uniform-plus-noise channels inside the
 * cone) and compares each against the PUT. Sample i draws from its own
 * generator seeded with (seed, i).
 */
AuditReport random_channel_audit(const ChannelObjective& objective, const Scalar& put, const FiniteAlphabet& input,
                                 const PrivacyLevel& level, std::size_t samples, std::uint64_t seed,
                                 double tolerance = 1e-9, std::size_t cap = kDefaultAlphabetCap);

/** Throws AuditFailure naming the violating channel. */
void require_clean(const AuditReport& report);

} // namespace ldpput
