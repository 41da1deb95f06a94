#include "ldpput/channels.hpp"

#include <algorithm>

#include "ldpput/errors.hpp"
#include "ldpput/simplex.hpp"

namespace ldpput {

PrivacyLevel::PrivacyLevel(Rational t) : t_(std::move(t))
{
    if (t_ < 1)
        throw InvalidArgument("privacy level t = e^eps must be >= 1, got " + to_string(t_));
}

Channel::Channel(FiniteAlphabet input, FiniteAlphabet output, RationalMatrix entries)
    : input_(std::move(input)), output_(std::move(output)), entries_(std::move(entries))
{
    if (entries_.rows() != output_.size() || entries_.cols() != input_.size())
        throw AlphabetMismatch("channel matrix shape does not match its alphabets");
    for (std::size_t x = 0; x < entries_.cols(); ++x) {
        Rational s = 0;
        for (std::size_t y = 0; y < entries_.rows(); ++y) {
            if (entries_(y, x) < 0)
                throw NotStochastic("negative channel entry at (" + std::to_string(y) + "," +
                                    std::to_string(x) + ")");
            s += entries_(y, x);
        }
        if (s != 1)
            throw NotStochastic("column " + std::to_string(x) + " sums to " + to_string(s));
    }
}

Channel Channel::from_rows(const FiniteAlphabet& input, const std::vector<RationalVector>& rows)
{
    RationalMatrix m(rows.size(), input.size());
    for (std::size_t y = 0; y < rows.size(); ++y)
        m.set_row(y, rows[y]);
    return Channel(input, FiniteAlphabet::range(rows.size()), std::move(m));
}

bool is_ldp(const Channel& q, const PrivacyLevel& level)
{
    const Rational& t = level.t();
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        Rational lo = q(y, 0), hi = q(y, 0);
        for (std::size_t x = 1; x < q.input_size(); ++x) {
            if (q(y, x) < lo)
                lo = q(y, x);
            if (q(y, x) > hi)
                hi = q(y, x);
        }
        // All pairwise constraints t·Q_{y,x} ≥ Q_{y,x'} reduce to t·min ≥ max.
        if (t * lo < hi)
            return false;
    }
    return true;
}

Channel compose(const Channel& w, const Channel& q)
{
    if (w.input_size() != q.output_size())
        throw AlphabetMismatch("post-processor input size " + std::to_string(w.input_size()) +
                               " != channel output size " + std::to_string(q.output_size()));
    return Channel(q.input(), w.output(), multiply(w.matrix(), q.matrix()));
}

std::optional<DominanceWitness> dominates(const Channel& q1, const Channel& q2)
{
    if (q1.input_size() != q2.input_size())
        throw AlphabetMismatch("dominance needs a common input alphabet");
    const std::size_t n1 = q1.output_size(), n2 = q2.output_size(), m = q1.input_size();

    // Variables W_{z,y} at z*n1 + y.
    RationalMatrix a(n2 * m + n1, n2 * n1);
    RationalVector b(n2 * m + n1);
    for (std::size_t z = 0; z < n2; ++z)
        for (std::size_t x = 0; x < m; ++x) {
            const std::size_t r = z * m + x;
            for (std::size_t y = 0; y < n1; ++y)
                a(r, z * n1 + y) = q1(y, x);
            b[r] = q2(z, x);
        }
    for (std::size_t y = 0; y < n1; ++y) {
        const std::size_t r = n2 * m + y;
        for (std::size_t z = 0; z < n2; ++z)
            a(r, z * n1 + y) = 1;
        b[r] = 1;
    }

    auto point = find_feasible_point(a, b);
    if (!point)
        return std::nullopt;
    RationalMatrix w(n2, n1);
    for (std::size_t z = 0; z < n2; ++z)
        for (std::size_t y = 0; y < n1; ++y)
            w(z, y) = (*point)[z * n1 + y];
    return DominanceWitness{Channel(q1.output(), q2.output(), std::move(w))};
}

bool equivalent(const Channel& q1, const Channel& q2)
{
    return dominates(q1, q2).has_value() && dominates(q2, q1).has_value();
}

Channel direct_sum(const RationalVector& weights, const std::vector<Channel>& channels)
{
    if (weights.size() != channels.size() || channels.empty())
        throw InvalidArgument("direct sum needs one weight per channel");
    for (const auto& p : weights)
        if (p < 0)
            throw WeightSumViolation("negative direct-sum weight " + to_string(p));
    if (sum(weights) != 1)
        throw WeightSumViolation("direct-sum weights sum to " + to_string(sum(weights)));

    const auto& input = channels.front().input();
    std::size_t rows = 0;
    for (const auto& q : channels) {
        if (q.input_size() != input.size())
            throw AlphabetMismatch("direct sum needs a common input alphabet");
        rows += q.output_size();
    }

    RationalMatrix m(rows, input.size());
    std::vector<std::string> labels;
    labels.reserve(rows);
    std::size_t offset = 0;
    for (std::size_t j = 0; j < channels.size(); ++j) {
        const auto& q = channels[j];
        for (std::size_t y = 0; y < q.output_size(); ++y) {
            for (std::size_t x = 0; x < input.size(); ++x)
                m(offset + y, x) = weights[j] * q(y, x);
            labels.push_back("(" + std::to_string(j) + "," + q.output().letter(y) + ")");
        }
        offset += q.output_size();
    }
    return Channel(input, FiniteAlphabet(std::move(labels)), std::move(m));
}

Channel apply_group_element(std::size_t g, const GroupAction& output_action, const Channel& q)
{
    const auto& group = output_action.group();
    if (group.degree() != q.input_size())
        throw AlphabetMismatch("group degree does not match the channel input");
    if (output_action.carrier_size() != q.output_size())
        throw AlphabetMismatch("output action carrier does not match the channel output");
    const std::size_t ginv = group.inverse_of(g);
    const auto& on_inputs = group.element(ginv);
    RationalMatrix m(q.output_size(), q.input_size());
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        const std::size_t src = output_action.apply(ginv, y);
        for (std::size_t x = 0; x < q.input_size(); ++x)
            m(y, x) = q(src, on_inputs[x]);
    }
    return Channel(q.input(), q.output(), std::move(m));
}

bool is_invariant(const Channel& q, const GroupAction& output_action)
{
    for (auto g : output_action.group().generator_indices())
        if (!(apply_group_element(g, output_action, q) == q))
            return false;
    return true;
}

Channel symmetrize(const PermGroup& group, const Channel& q)
{
    const auto trivial = GroupAction::trivial(group, q.output_size());
    std::vector<Channel> blocks;
    blocks.reserve(group.order());
    for (std::size_t g = 0; g < group.order(); ++g)
        blocks.push_back(apply_group_element(g, trivial, q));
    RationalVector weights(group.order(), Rational(1, group.order()));
    return direct_sum(weights, blocks);
}

GroupAction symmetrized_output_action(const PermGroup& group, std::size_t output_size)
{
    const std::size_t n = group.order() * output_size;
    std::vector<Permutation> table;
    table.reserve(group.order());
    for (std::size_t h = 0; h < group.order(); ++h) {
        Permutation row(n);
        for (std::size_t g = 0; g < group.order(); ++g) {
            const std::size_t hg = group.product(h, g);
            for (std::size_t y = 0; y < output_size; ++y)
                row[g * output_size + y] = hg * output_size + y;
        }
        table.push_back(std::move(row));
    }
    return GroupAction(group, n, std::move(table));
}

Channel identity_channel(const FiniteAlphabet& input)
{
    RationalMatrix m(input.size(), input.size());
    for (std::size_t x = 0; x < input.size(); ++x)
        m(x, x) = 1;
    return Channel(input, input, std::move(m));
}

Channel uniform_channel(const FiniteAlphabet& input, std::size_t outputs)
{
    RationalMatrix m(outputs, input.size());
    for (std::size_t y = 0; y < outputs; ++y)
        for (std::size_t x = 0; x < input.size(); ++x)
            m(y, x) = Rational(1, outputs);
    return Channel(input, FiniteAlphabet::range(outputs), std::move(m));
}

Channel binary_randomized_response(const PrivacyLevel& level)
{
    const Rational& t = level.t();
    Rational hi = t / (t + 1), lo = 1 / (t + 1);
    return Channel::from_rows(FiniteAlphabet::range(2), {{hi, lo}, {lo, hi}});
}

Channel permute_outputs(const Channel& q, const Permutation& perm)
{
    if (!is_bijection(perm, q.output_size()))
        throw NotBijective("output relabeling is not a permutation");
    RationalMatrix m(q.output_size(), q.input_size());
    std::vector<std::string> labels;
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        m.set_row(y, q.row(perm[y]));
        labels.push_back(q.output().letter(perm[y]));
    }
    return Channel(q.input(), FiniteAlphabet(std::move(labels)), std::move(m));
}

Channel append_zero_rows(const Channel& q, std::size_t count)
{
    RationalMatrix m = q.matrix();
    std::vector<std::string> labels = q.output().letters();
    for (std::size_t i = 0; i < count; ++i) {
        m.append_row(RationalVector(q.input_size()));
        std::string label = "zero" + std::to_string(i);
        while (std::find(labels.begin(), labels.end(), label) != labels.end())
            label += "'";
        labels.push_back(std::move(label));
    }
    return Channel(q.input(), FiniteAlphabet(std::move(labels)), std::move(m));
}

Channel split_row(const Channel& q, std::size_t y, const Rational& lambda)
{
    if (lambda < 0 || lambda > 1)
        throw InvalidArgument("split fraction must lie in [0,1]");
    RationalMatrix m = q.matrix();
    RationalVector rest(q.input_size());
    for (std::size_t x = 0; x < q.input_size(); ++x) {
        rest[x] = (1 - lambda) * q(y, x);
        m(y, x) = lambda * q(y, x);
    }
    m.append_row(rest);
    std::vector<std::string> labels = q.output().letters();
    std::string label = q.output().letter(y) + "'";
    while (std::find(labels.begin(), labels.end(), label) != labels.end())
        label += "'";
    labels.push_back(std::move(label));
    return Channel(q.input(), FiniteAlphabet(std::move(labels)), std::move(m));
}

} // namespace ldpput
