#include "ldpput/groups.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "ldpput/errors.hpp"

namespace ldpput {

FiniteAlphabet::FiniteAlphabet(std::vector<std::string> letters) : letters_(std::move(letters))
{
    if (letters_.empty())
        throw InvalidArgument("alphabet must contain at least one letter");
    std::unordered_set<std::string> seen;
    for (const auto& l : letters_)
        if (!seen.insert(l).second)
            throw InvalidArgument("duplicate alphabet letter '" + l + "'");
}

FiniteAlphabet FiniteAlphabet::range(std::size_t m)
{
    std::vector<std::string> letters;
    letters.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        letters.push_back(std::to_string(i));
    return FiniteAlphabet(std::move(letters));
}

std::size_t FiniteAlphabet::index_of(const std::string& letter) const
{
    auto it = std::find(letters_.begin(), letters_.end(), letter);
    if (it == letters_.end())
        throw InvalidArgument("unknown letter '" + letter + "'");
    return static_cast<std::size_t>(it - letters_.begin());
}

Permutation identity_permutation(std::size_t n)
{
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = i;
    return p;
}

Permutation compose(const Permutation& g, const Permutation& h)
{
    Permutation out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        out[i] = g[h[i]];
    return out;
}

Permutation inverse(const Permutation& p)
{
    Permutation out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[p[i]] = i;
    return out;
}

bool is_bijection(const Permutation& p, std::size_t n)
{
    if (p.size() != n)
        return false;
    std::vector<bool> hit(n, false);
    for (auto v : p) {
        if (v >= n || hit[v])
            return false;
        hit[v] = true;
    }
    return true;
}

std::size_t PermGroup::PermHash::operator()(const Permutation& p) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (auto v : p)
        h = (h ^ v) * 1099511628211ull;
    return h;
}

std::size_t PermGroup::index_of(const Permutation& p) const
{
    auto it = data_->index.find(p);
    if (it == data_->index.end())
        throw InvalidArgument("permutation is not a group element");
    return it->second;
}

std::size_t PermGroup::product(std::size_t g, std::size_t h) const
{
    return index_of(compose(element(g), element(h)));
}

PermGroup generate_group(const FiniteAlphabet& alphabet, const std::vector<Permutation>& generators,
                         std::size_t cap)
{
    const std::size_t n = alphabet.size();
    for (const auto& g : generators)
        if (!is_bijection(g, n))
            throw NotBijective("generator is not a permutation of the " + std::to_string(n) +
                               "-letter alphabet");

    auto data = std::make_shared<PermGroup::Data>();
    data->alphabet = alphabet;
    auto add = [&](Permutation p) {
        auto [it, inserted] = data->index.emplace(p, data->elements.size());
        if (inserted) {
            if (data->elements.size() >= cap)
                throw CapExceeded("group order exceeds cap " + std::to_string(cap));
            data->elements.push_back(std::move(p));
        }
        return it->second;
    };

    add(identity_permutation(n));
    for (const auto& g : generators)
        data->generators.push_back(add(g));

    // Breadth-first closure: every element times every generator.
    for (std::size_t i = 0; i < data->elements.size(); ++i)
        for (const auto& g : generators)
            add(compose(g, data->elements[i]));

    data->inverses.resize(data->elements.size());
    for (std::size_t i = 0; i < data->elements.size(); ++i)
        data->inverses[i] = data->index.at(inverse(data->elements[i]));

    PermGroup group;
    group.data_ = std::move(data);
    return group;
}

PermGroup trivial_group(const FiniteAlphabet& alphabet)
{
    return generate_group(alphabet, {});
}

PermGroup cyclic_group(const FiniteAlphabet& alphabet)
{
    const std::size_t m = alphabet.size();
    Permutation shift(m);
    for (std::size_t i = 0; i < m; ++i)
        shift[i] = (i + 1) % m;
    return generate_group(alphabet, {shift});
}

PermGroup symmetric_group(const FiniteAlphabet& alphabet, std::size_t cap)
{
    const std::size_t m = alphabet.size();
    if (m < 2)
        return trivial_group(alphabet);
    Permutation swap = identity_permutation(m);
    std::swap(swap[0], swap[1]);
    Permutation cycle(m);
    for (std::size_t i = 0; i < m; ++i)
        cycle[i] = (i + 1) % m;
    return generate_group(alphabet, {swap, cycle}, cap);
}

GroupAction::GroupAction(PermGroup group, std::size_t carrier_size, std::vector<Permutation> table)
    : group_(std::move(group)), carrier_size_(carrier_size), table_(std::move(table))
{
    if (table_.size() != group_.order())
        throw InvalidArgument("action table must have one row per group element");
    for (const auto& row : table_)
        if (!is_bijection(row, carrier_size_))
            throw NotBijective("action table row is not a permutation of the carrier");
}

GroupAction GroupAction::natural(const PermGroup& group)
{
    return GroupAction(group, group.degree(), group.elements());
}

GroupAction GroupAction::trivial(const PermGroup& group, std::size_t carrier_size)
{
    return GroupAction(group, carrier_size,
                       std::vector<Permutation>(group.order(), identity_permutation(carrier_size)));
}

bool GroupAction::satisfies_action_laws() const
{
    const auto e = group_.identity();
    for (std::size_t x = 0; x < carrier_size_; ++x)
        if (apply(e, x) != x)
            return false;
    for (std::size_t g = 0; g < group_.order(); ++g)
        for (std::size_t h = 0; h < group_.order(); ++h) {
            const auto gh = group_.product(g, h);
            for (std::size_t x = 0; x < carrier_size_; ++x)
                if (apply(g, apply(h, x)) != apply(gh, x))
                    return false;
        }
    return true;
}

std::vector<std::vector<std::size_t>> orbits(const GroupAction& action)
{
    const std::size_t n = action.carrier_size();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::size_t>> classes;
    const auto& gens = action.group().generator_indices();
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start])
            continue;
        std::vector<std::size_t> cls{start};
        seen[start] = true;
        std::deque<std::size_t> queue{start};
        while (!queue.empty()) {
            auto p = queue.front();
            queue.pop_front();
            for (auto g : gens) {
                auto q = action.apply(g, p);
                if (!seen[q]) {
                    seen[q] = true;
                    cls.push_back(q);
                    queue.push_back(q);
                }
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    // Scanning starts in ascending order, so classes are already ordered by
    // their smallest member.
    return classes;
}

bool is_transitive(const GroupAction& action)
{
    return orbits(action).size() == 1;
}

GroupAction subset_action(const PermGroup& group)
{
    const std::size_t m = group.degree();
    if (m < 2 || m > kMaxSubsetAlphabet)
        throw InvalidArgument("subset action needs 2 <= m <= " + std::to_string(kMaxSubsetAlphabet));
    const std::size_t n = subset_count(m);
    std::vector<Permutation> table;
    table.reserve(group.order());
    for (const auto& g : group.elements()) {
        Permutation row(n);
        for (std::size_t p = 0; p < n; ++p) {
            std::uint32_t mask = subset_mask(p), image = 0;
            for (std::size_t x = 0; x < m; ++x)
                if (mask & (1u << x))
                    image |= 1u << g[x];
            row[p] = subset_point(image);
        }
        table.push_back(std::move(row));
    }
    return GroupAction(group, n, std::move(table));
}

} // namespace ldpput
