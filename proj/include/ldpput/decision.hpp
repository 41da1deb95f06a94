#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ldpput/channels.hpp"
#include "ldpput/groups.hpp"
#include "ldpput/linalg.hpp"

namespace ldpput {

/**
 * (Θ, X, P_{X|θ}, A, l) with an optional prior. The model is indexed (x, θ)
 * and column-stochastic; the loss is indexed (θ, a).
 */
class DecisionProblem
{
public:
    DecisionProblem(FiniteAlphabet theta, FiniteAlphabet inputs, FiniteAlphabet actions, RationalMatrix model,
                    RationalMatrix loss, std::optional<RationalVector> prior = std::nullopt);

    const FiniteAlphabet& theta() const { return theta_; }
    const FiniteAlphabet& inputs() const { return inputs_; }
    const FiniteAlphabet& actions() const { return actions_; }
    const RationalMatrix& model() const { return model_; }
    const RationalMatrix& loss() const { return loss_; }
    const std::optional<RationalVector>& prior() const { return prior_; }

    /** M_{x,a} = Σ_θ λ_θ P(x|θ) l(θ,a). */
    RationalMatrix prior_weighted_loss(const RationalVector& prior) const;

private:
    FiniteAlphabet theta_, inputs_, actions_;
    RationalMatrix model_, loss_;
    std::optional<RationalVector> prior_;
};

/** Throws InvalidArgument unless λ is a probability vector of the given length. */
void validate_prior(const RationalVector& prior, std::size_t size);
RationalVector uniform_prior(std::size_t size);

/** P_{A|Y} indexed (a, y), column-stochastic. */
class DecisionRule
{
public:
    explicit DecisionRule(RationalMatrix rule);
    const RationalMatrix& matrix() const { return rule_; }
    const Rational& operator()(std::size_t a, std::size_t y) const { return rule_(a, y); }
    std::size_t actions() const { return rule_.rows(); }
    std::size_t outputs() const { return rule_.cols(); }

private:
    RationalMatrix rule_;
};

struct InvarianceDeclaration
{
    GroupAction on_theta;
    GroupAction on_inputs;
    GroupAction on_actions;
};

Rational risk(const DecisionProblem& problem, std::size_t theta, const Channel& q, const DecisionRule& rule);
RationalVector risk_profile(const DecisionProblem& problem, const Channel& q, const DecisionRule& rule);

struct RiskAndRule
{
    Rational value;
    DecisionRule rule;
};

/** Argmin action per output, ties to the lowest action index. */
RiskAndRule bayes_optimal_risk(const DecisionProblem& problem, const RationalVector& prior, const Channel& q);

/** Exact LP over rules; the returned rule is a basic optimal solution. */
RiskAndRule minimax_risk(const DecisionProblem& problem, const Channel& q);

/**
 * True when some Bayes-optimal rule has θ-risks within the tolerance of each
 * other. The lowest-index rule is tried first; with ties, the flattest rule on
 * the face of Bayes rules is found by LP.
 */
bool check_equalizer(const DecisionProblem& problem, const RationalVector& prior, const Channel& q,
                     const Rational& tolerance = Rational(0));

/** Exhaustive model and loss invariance check over every group element. */
bool verify_invariance(const DecisionProblem& problem, const InvarianceDeclaration& decl);

/** I(X;Y) in nats. */
double mutual_information(const Channel& q, const RationalVector& prior);

enum class FDivergence { KL, TV, Chi2, Hellinger2 };

/** Parses "kl", "tv", "chi2", "hellinger2". Throws UnsupportedF. */
FDivergence parse_f_divergence(const std::string& name);
std::string to_string(FDivergence f);

/**
 * D_f(Q·P0 ‖ Q·P1) with f(u) = u log u, |u − 1|/2, (u − 1)², (√u − 1)².
 * Terms with both masses zero vanish; divergent terms give +inf.
 */
double f_divergence_utility(const Channel& q, FDivergence f, const RationalVector& p0, const RationalVector& p1);

/** Bayes risk of the unnormalized single-row block v: min_a Σ_x v_x M_{x,a}. */
Rational bayes_row_value(const RationalMatrix& weighted_loss, const RationalVector& v);
/** Σ_x π_x v_x log(v_x / π·v), the MI contribution of row v. */
double mi_row_value(const RationalVector& prior, const RationalVector& v);
double f_divergence_row_value(FDivergence f, const RationalVector& p0, const RationalVector& p1,
                              const RationalVector& v);

enum class UtilityKind { BayesRisk, MinimaxRisk, MutualInformation, FDivergence };

/** Bayes-risk coefficients u_y over B(X), exact. */
RationalVector bayes_linear_coefficients(const DecisionProblem& problem, const RationalVector& prior,
                                         const PrivacyLevel& level);
std::vector<double> mi_linear_coefficients(const RationalVector& prior, const PrivacyLevel& level);
std::vector<double> f_divergence_linear_coefficients(FDivergence f, const RationalVector& p0,
                                                     const RationalVector& p1, const PrivacyLevel& level);
/** Throws NoDSAExtension for MinimaxRisk; dispatches nothing else. */
void require_dsa_extension(UtilityKind kind);

} // namespace ldpput
