#include "ldpput/invariant.hpp"

#include <bit>

#include "ldpput/errors.hpp"

namespace ldpput {

OrbitCoefficients orbit_coefficients(const std::vector<std::size_t>& input_orbit,
                                     const std::vector<std::uint32_t>& subset_orbit, const PrivacyLevel& level)
{
    if (input_orbit.empty() || subset_orbit.empty())
        throw InvalidArgument("orbits must be nonempty");
    OrbitCoefficients out;
    out.orbit_size = subset_orbit.size();
    out.k = static_cast<std::size_t>(std::popcount(subset_orbit.front()));
    for (auto y : subset_orbit)
        if (static_cast<std::size_t>(std::popcount(y)) != out.k)
            throw RepresentativeMismatch("subset orbit mixes subset sizes");

    auto count_at = [&](std::size_t x) {
        std::size_t r = 0;
        for (auto y : subset_orbit)
            if (y & (1u << x))
                ++r;
        return r;
    };
    std::size_t smallest = input_orbit.front();
    for (auto x : input_orbit)
        smallest = std::min(smallest, x);
    out.r = count_at(smallest);
    for (auto x : input_orbit)
        if (count_at(x) != out.r)
            throw RepresentativeMismatch("r differs between letters " + std::to_string(smallest) + " and " +
                                         std::to_string(x));
    out.r_tilde = level.t() * out.r + Rational(out.orbit_size - out.r);
    return out;
}

OrbitTable::OrbitTable(PermGroup group, PrivacyLevel level) : group_(std::move(group)), level_(std::move(level))
{
    const std::size_t m = group_.degree();
    if (m < 2 || m > kMaxSubsetAlphabet)
        throw InvalidArgument("orbit tables need 2 <= m <= " + std::to_string(kMaxSubsetAlphabet));
    input_orbits_ = orbits(GroupAction::natural(group_));
    orbit_of_.assign(subset_count(m), 0);
    for (const auto& cls : orbits(subset_action(group_))) {
        std::vector<std::uint32_t> masks;
        masks.reserve(cls.size());
        for (auto p : cls) {
            masks.push_back(subset_mask(p));
            orbit_of_[p] = subset_orbits_.size();
        }
        subset_orbits_.push_back(std::move(masks));
    }
    coefficients_.reserve(input_orbits_.size() * subset_orbits_.size());
    for (const auto& io : input_orbits_)
        for (const auto& so : subset_orbits_)
            coefficients_.push_back(orbit_coefficients(io, so, level_));
}

RationalMatrix OrbitTable::r_tilde_matrix() const
{
    RationalMatrix a(input_orbits_.size(), subset_orbits_.size());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t o = 0; o < a.cols(); ++o)
            a(i, o) = coefficients(i, o).r_tilde;
    return a;
}

OrbitWeightVector::OrbitWeightVector(RationalVector w, std::shared_ptr<const OrbitTable> table)
    : w_(std::move(w)), table_(std::move(table))
{
    if (!table_)
        throw InvalidArgument("orbit weight vector needs an orbit table");
    if (w_.size() != table_->subset_orbit_count())
        throw InvalidArgument("expected " + std::to_string(table_->subset_orbit_count()) + " orbit weights, got " +
                              std::to_string(w_.size()));
}

std::vector<std::size_t> OrbitWeightVector::support() const
{
    std::vector<std::size_t> out;
    for (std::size_t o = 0; o < w_.size(); ++o)
        if (w_[o] != 0)
            out.push_back(o);
    return out;
}

bool in_invariant_polytope(const OrbitWeightVector& w)
{
    const auto& table = w.table();
    for (const auto& x : w.weights())
        if (x < 0)
            return false;
    for (std::size_t i = 0; i < table.input_orbits().size(); ++i) {
        Rational s;
        for (std::size_t o = 0; o < table.subset_orbit_count(); ++o)
            s += w[o] * table.coefficients(i, o).r_tilde;
        if (s != 1)
            return false;
    }
    return true;
}

Channel invariant_extremal_channel(const OrbitWeightVector& w)
{
    if (!in_invariant_polytope(w))
        throw PolytopeViolation("orbit weights are not in the invariant polytope");
    const auto& table = w.table();
    const std::size_t m = table.alphabet_size();
    RationalMatrix rows(subset_count(m), m);
    std::vector<std::string> labels;
    std::size_t r = 0;
    for (std::size_t o = 0; o < table.subset_orbit_count(); ++o)
        for (auto mask : table.subset_orbits()[o]) {
            for (std::size_t x = 0; x < m; ++x)
                rows(r, x) = (mask & (1u << x)) ? Rational(w[o] * table.level().t()) : w[o];
            labels.push_back(subset_label(mask, table.input()));
            ++r;
        }
    return Channel(table.input(), FiniteAlphabet(std::move(labels)), std::move(rows));
}

GroupAction invariant_output_action(const OrbitTable& table)
{
    const std::size_t n = subset_count(table.alphabet_size());
    std::vector<std::size_t> row_of(n); // subset point -> row
    std::vector<std::uint32_t> mask_of_row;
    mask_of_row.reserve(n);
    for (const auto& orbit : table.subset_orbits())
        for (auto mask : orbit) {
            row_of[subset_point(mask)] = mask_of_row.size();
            mask_of_row.push_back(mask);
        }
    const auto sub = subset_action(table.group());
    std::vector<Permutation> perms;
    perms.reserve(table.group().order());
    for (std::size_t g = 0; g < table.group().order(); ++g) {
        Permutation p(n);
        for (std::size_t row = 0; row < n; ++row)
            p[row] = row_of[sub.apply(g, subset_point(mask_of_row[row]))];
        perms.push_back(std::move(p));
    }
    return GroupAction(table.group(), n, std::move(perms));
}

WeightVector lift_weights(const OrbitWeightVector& w)
{
    if (!in_invariant_polytope(w))
        throw PolytopeViolation("orbit weights are not in the invariant polytope");
    const auto& table = w.table();
    RationalVector c(subset_count(table.alphabet_size()));
    for (std::size_t o = 0; o < table.subset_orbit_count(); ++o)
        for (auto mask : table.subset_orbits()[o])
            c[subset_point(mask)] = w[o];
    return WeightVector(std::move(c), table.input(), table.level());
}

Rational transitive_vertex_weight(const OrbitTable& table, std::size_t subset_orbit)
{
    if (!table.transitive())
        throw NotTransitive("closed-form vertex weights need a transitive group");
    const auto& coeff = table.coefficients(0, subset_orbit);
    const Rational m(table.alphabet_size());
    const Rational k(coeff.k);
    return m / (Rational(coeff.orbit_size) * (k * table.level().t() + m - k));
}

OrbitWeightVector transitive_vertex(const std::shared_ptr<const OrbitTable>& table, std::size_t subset_orbit)
{
    RationalVector w(table->subset_orbit_count());
    w[subset_orbit] = transitive_vertex_weight(*table, subset_orbit);
    return OrbitWeightVector(std::move(w), table);
}

Channel ss_mechanism(const FiniteAlphabet& input, std::size_t k, const PrivacyLevel& level)
{
    const std::size_t m = input.size();
    if (m < 2 || m > kMaxSubsetAlphabet)
        throw InvalidArgument("subset selection needs 2 <= m <= " + std::to_string(kMaxSubsetAlphabet));
    if (k < 1 || k >= m)
        throw BadSubsetSize("subset size must lie in [1, m-1], got " + std::to_string(k));

    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 1; mask < (1u << m) - 1; ++mask)
        if (static_cast<std::size_t>(std::popcount(mask)) == k)
            masks.push_back(mask);
    const Rational mm(m), kk(k);
    const Rational w = mm / (Rational(masks.size()) * (kk * level.t() + mm - kk));

    RationalMatrix rows(masks.size(), m);
    std::vector<std::string> labels;
    for (std::size_t r = 0; r < masks.size(); ++r) {
        for (std::size_t x = 0; x < m; ++x)
            rows(r, x) = (masks[r] & (1u << x)) ? Rational(w * level.t()) : w;
        labels.push_back(subset_label(masks[r], input));
    }
    return Channel(input, FiniteAlphabet(std::move(labels)), std::move(rows));
}

std::vector<OrbitWeightVector> enumerate_invariant_vertices(const std::shared_ptr<const OrbitTable>& table,
                                                            std::size_t orbit_cap)
{
    if (table->subset_orbit_count() > orbit_cap)
        throw DimensionCap("invariant vertex enumeration capped at " + std::to_string(orbit_cap) +
                           " subset orbits, got " + std::to_string(table->subset_orbit_count()));
    const auto a = table->r_tilde_matrix();
    auto solutions = enumerate_basic_solutions(a, RationalVector(a.rows(), Rational(1)));
    std::vector<OrbitWeightVector> out;
    out.reserve(solutions.size());
    for (auto& s : solutions)
        out.emplace_back(std::move(s.values), table);
    return out;
}

} // namespace ldpput
