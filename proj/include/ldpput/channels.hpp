#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ldpput/groups.hpp"
#include "ldpput/linalg.hpp"
#include "ldpput/rational.hpp"

namespace ldpput {

/** The privacy level stored as t = e^ε ≥ 1, so every LDP predicate stays rational. */
class PrivacyLevel
{
public:
    explicit PrivacyLevel(Rational t);
    const Rational& t() const { return t_; }

    friend bool operator==(const PrivacyLevel& a, const PrivacyLevel& b) { return a.t_ == b.t_; }

private:
    Rational t_;
};

/**
 * Column-stochastic rational matrix indexed (output letter, input letter).
 * Zero rows are allowed.
 */
class Channel
{
public:
    /** Throws NotStochastic unless entries ≥ 0 and every column sums to 1 exactly. */
    Channel(FiniteAlphabet input, FiniteAlphabet output, RationalMatrix entries);

    /** Output letters are labeled "0".."n-1". */
    static Channel from_rows(const FiniteAlphabet& input, const std::vector<RationalVector>& rows);

    const FiniteAlphabet& input() const { return input_; }
    const FiniteAlphabet& output() const { return output_; }
    std::size_t input_size() const { return input_.size(); }
    std::size_t output_size() const { return output_.size(); }

    const Rational& operator()(std::size_t y, std::size_t x) const { return entries_(y, x); }
    const RationalMatrix& matrix() const { return entries_; }
    RationalVector row(std::size_t y) const { return entries_.row(y); }

    friend bool operator==(const Channel& a, const Channel& b)
    {
        return a.input_ == b.input_ && a.output_ == b.output_ && a.entries_ == b.entries_;
    }

private:
    FiniteAlphabet input_;
    FiniteAlphabet output_;
    RationalMatrix entries_;
};

/** Post-processor W with Q2 = W·Q1 exactly. */
struct DominanceWitness
{
    Channel post_processor;
};

bool is_ldp(const Channel& q, const PrivacyLevel& level);

/** W·Q. Throws AlphabetMismatch unless |outputs of Q| = |inputs of W|. */
Channel compose(const Channel& w, const Channel& q);

/**
 * Blackwell dominance: a witness W with q2 = W·q1, decided by an exact
 * phase-1 feasibility LP. Absent when no such W exists.
 */
std::optional<DominanceWitness> dominates(const Channel& q1, const Channel& q2);

bool equivalent(const Channel& q1, const Channel& q2);

/**
 * ⊕_j p_j Q_j. Output letters are labeled "(j,letter)". Throws
 * WeightSumViolation for negative weights or a sum other than 1.
 */
Channel direct_sum(const RationalVector& weights, const std::vector<Channel>& channels);

/**
 * (g∘_σ Q)_{y,x} = Q_{σ_{g⁻¹}(y), g⁻¹x}; G acts on the inputs naturally and on
 * the outputs through `output_action`.
 */
Channel apply_group_element(std::size_t g, const GroupAction& output_action, const Channel& q);

bool is_invariant(const Channel& q, const GroupAction& output_action);

/**
 * ⊕_{g∈G} (1/|G|)(g∘Q) under the trivial output action. Block g occupies
 * output indices g·|Y| .. g·|Y|+|Y|-1.
 */
Channel symmetrize(const PermGroup& group, const Channel& q);

/** The action h·(g, y) = (hg, y) under which symmetrize(G, Q) is invariant. */
GroupAction symmetrized_output_action(const PermGroup& group, std::size_t output_size);

// Standard channels.
Channel identity_channel(const FiniteAlphabet& input);
Channel uniform_channel(const FiniteAlphabet& input, std::size_t outputs);
/** [[t,1],[1,t]]/(t+1) on a two-letter alphabet. */
Channel binary_randomized_response(const PrivacyLevel& level);

// Equivalence-preserving moves: relabeling, zero-padding, row splitting.
/** Output row y of the result is row perm[y] of q. */
Channel permute_outputs(const Channel& q, const Permutation& perm);
Channel append_zero_rows(const Channel& q, std::size_t count);
/** Replaces row y by λ·row and appends (1−λ)·row. */
Channel split_row(const Channel& q, std::size_t y, const Rational& lambda);

} // namespace ldpput
