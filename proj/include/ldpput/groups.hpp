#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace ldpput {

/** Ordered list of distinct opaque letter labels. */
class FiniteAlphabet
{
public:
    FiniteAlphabet() = default;
    explicit FiniteAlphabet(std::vector<std::string> letters);

    /** Letters "0", "1", ..., "m-1". */
    static FiniteAlphabet range(std::size_t m);

    std::size_t size() const { return letters_.size(); }
    const std::string& letter(std::size_t i) const { return letters_.at(i); }
    const std::vector<std::string>& letters() const { return letters_; }
    std::size_t index_of(const std::string& letter) const;

    friend bool operator==(const FiniteAlphabet& a, const FiniteAlphabet& b)
    {
        return a.letters_ == b.letters_;
    }

private:
    std::vector<std::string> letters_;
};

/** Permutation of {0..n-1} stored as its image list: p[i] is the image of i. */
using Permutation = std::vector<std::size_t>;

Permutation identity_permutation(std::size_t n);
/** (g∘h)(x) = g(h(x)). */
Permutation compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& p);
bool is_bijection(const Permutation& p, std::size_t n);

inline constexpr std::size_t kDefaultGroupCap = 10080;

/**
 * Finite permutation group on an alphabet, materialized as its full element
 * list. Copies share the immutable element storage.
 */
class PermGroup
{
public:
    const FiniteAlphabet& alphabet() const { return data_->alphabet; }
    std::size_t degree() const { return data_->alphabet.size(); }
    std::size_t order() const { return data_->elements.size(); }

    const Permutation& element(std::size_t g) const { return data_->elements.at(g); }
    const std::vector<Permutation>& elements() const { return data_->elements; }
    /** Element indices of the generators (in the order given). */
    const std::vector<std::size_t>& generator_indices() const { return data_->generators; }

    std::size_t identity() const { return 0; }
    std::size_t index_of(const Permutation& p) const;
    /** Index of gh (apply h first). */
    std::size_t product(std::size_t g, std::size_t h) const;
    std::size_t inverse_of(std::size_t g) const { return data_->inverses.at(g); }

private:
    struct PermHash
    {
        std::size_t operator()(const Permutation& p) const noexcept;
    };
    struct Data
    {
        FiniteAlphabet alphabet;
        std::vector<Permutation> elements;
        std::vector<std::size_t> generators;
        std::vector<std::size_t> inverses;
        std::unordered_map<Permutation, std::size_t, PermHash> index;
    };
    std::shared_ptr<const Data> data_;

    friend PermGroup generate_group(const FiniteAlphabet&, const std::vector<Permutation>&,
                                    std::size_t);
};

/**
 * Closure of the generators under composition. Element 0 is the identity;
 * the rest appear in breadth-first order over generator products.
 * Throws NotBijective for a malformed generator and CapExceeded when the
 * closure grows past `cap` elements.
 */
PermGroup generate_group(const FiniteAlphabet& alphabet, const std::vector<Permutation>& generators,
                         std::size_t cap = kDefaultGroupCap);

PermGroup trivial_group(const FiniteAlphabet& alphabet);
/** Generated by the shift x ↦ x+1 mod m. */
PermGroup cyclic_group(const FiniteAlphabet& alphabet);
/** Generated by the transposition (0 1) and the m-cycle. */
PermGroup symmetric_group(const FiniteAlphabet& alphabet, std::size_t cap = kDefaultGroupCap);

/** Action of a PermGroup on a finite carrier {0..n-1}, tabulated per element. */
class GroupAction
{
public:
    GroupAction(PermGroup group, std::size_t carrier_size, std::vector<Permutation> table);

    /** The group acting on its own alphabet. */
    static GroupAction natural(const PermGroup& group);
    /** Every element fixes every point. */
    static GroupAction trivial(const PermGroup& group, std::size_t carrier_size);

    const PermGroup& group() const { return group_; }
    std::size_t carrier_size() const { return carrier_size_; }
    std::size_t apply(std::size_t g, std::size_t point) const { return table_[g][point]; }
    const Permutation& image(std::size_t g) const { return table_[g]; }

    /** Exhaustive check of the identity and compatibility laws. */
    bool satisfies_action_laws() const;

private:
    PermGroup group_;
    std::size_t carrier_size_;
    std::vector<Permutation> table_;
};

/**
 * Orbit partition by breadth-first closure under the generators. Each class
 * is sorted ascending; classes are ordered by their smallest member.
 */
std::vector<std::vector<std::size_t>> orbits(const GroupAction& action);

bool is_transitive(const GroupAction& action);

/**
 * Nonempty proper subsets of an m-letter alphabet, encoded as bitmasks over
 * the letter order. Carrier point i of the subset action is mask i+1.
 */
inline std::uint32_t subset_mask(std::size_t point) { return static_cast<std::uint32_t>(point + 1); }
inline std::size_t subset_point(std::uint32_t mask) { return static_cast<std::size_t>(mask) - 1; }
inline std::size_t subset_count(std::size_t m) { return (std::size_t{1} << m) - 2; }

inline constexpr std::size_t kMaxSubsetAlphabet = 20;

/** Induced action gy = {gx : x ∈ y} on B(X). Requires 2 ≤ m ≤ 20. */
GroupAction subset_action(const PermGroup& group);

} // namespace ldpput
