#include "ldpput/put_solver.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "ldpput/errors.hpp"
#include "ldpput/simplex.hpp"

namespace ldpput {

std::string Scalar::to_string() const
{
    if (exact_)
        return ldpput::to_string(*exact_);
    std::ostringstream os;
    os.precision(17);
    os << approx_;
    return os.str();
}

int compare(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact())
        return a.exact() < b.exact() ? -1 : (b.exact() < a.exact() ? 1 : 0);
    return a.approx() < b.approx() ? -1 : (b.approx() < a.approx() ? 1 : 0);
}

Scalar difference(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact())
        return Scalar(Rational(a.exact() - b.exact()));
    return Scalar(a.approx() - b.approx());
}

std::string to_string(PutMethod method)
{
    switch (method) {
    case PutMethod::VertexEnumeration:
        return "vertex_enum";
    case PutMethod::LinearProgram:
        return "lp";
    case PutMethod::TransitiveClosedForm:
        return "transitive_closed_form";
    }
    return "?";
}

std::string to_string(Certificate certificate)
{
    switch (certificate) {
    case Certificate::Exact:
        return "exact";
    case Certificate::BoundOnly:
        return "bound_only";
    case Certificate::EqualizerCertified:
        return "equalizer_certified";
    }
    return "?";
}

Channel PutResult::channel() const
{
    if (orbit_weights)
        return invariant_extremal_channel(*orbit_weights);
    if (weights)
        return extremal_channel(*weights);
    throw InvalidArgument("PUT result carries no weights");
}

namespace {

bool better(const Scalar& candidate, const Scalar& incumbent, Sense sense)
{
    const int c = compare(candidate, incumbent);
    return sense == Sense::Minimize ? c < 0 : c > 0;
}

} // namespace

PutResult put_by_vertex_enumeration(const ChannelObjective& objective, const FiniteAlphabet& input,
                                    const PrivacyLevel& level, const std::shared_ptr<const OrbitTable>& table,
                                    std::size_t cap)
{
    PutResult result;
    result.method = PutMethod::VertexEnumeration;
    result.certificate = objective.vertex_optimal ? Certificate::Exact : Certificate::BoundOnly;
    bool have = false;

    if (table) {
        if (!(table->input() == input) || !(table->level() == level))
            throw AlphabetMismatch("orbit table was built for a different alphabet or privacy level");
        for (auto& w : enumerate_invariant_vertices(table)) {
            Scalar v = objective.evaluate(invariant_extremal_channel(w));
            result.table.push_back({w.weights(), v});
            if (!have || better(v, result.value, objective.sense)) {
                result.value = v;
                result.orbit_weights = std::move(w);
                have = true;
            }
        }
    } else {
        for (auto& c : enumerate_polytope_vertices(input, level, cap)) {
            Scalar v = objective.evaluate(extremal_channel(c));
            result.table.push_back({c.weights(), v});
            if (!have || better(v, result.value, objective.sense)) {
                result.value = v;
                result.weights = std::move(c);
                have = true;
            }
        }
    }
    if (!have)
        throw InvalidArgument("polytope has no vertices");
    return result;
}

namespace {

PutResult solve_linear_put(const RationalVector& u, const FiniteAlphabet& input, const PrivacyLevel& level,
                           Sense sense, const std::shared_ptr<const OrbitTable>& table)
{
    const std::size_t m = input.size();
    if (u.size() != subset_count(m))
        throw AlphabetMismatch("coefficient vector must have one entry per nonempty proper subset");

    LinearProgram lp;
    if (table) {
        if (!(table->input() == input) || !(table->level() == level))
            throw AlphabetMismatch("orbit table was built for a different alphabet or privacy level");
        lp.constraints = table->r_tilde_matrix();
        lp.objective = RationalVector(table->subset_orbit_count());
        for (std::size_t o = 0; o < table->subset_orbit_count(); ++o)
            for (auto mask : table->subset_orbits()[o])
                lp.objective[o] += u[subset_point(mask)];
    } else {
        lp.constraints = StaircaseMatrix(input, level).matrix().transpose();
        lp.objective = u;
    }
    lp.rhs = RationalVector(lp.constraints.rows(), Rational(1));
    if (sense == Sense::Maximize)
        for (auto& c : lp.objective)
            c = -c;

    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw InvalidArgument("PUT linear program did not reach an optimum");

    PutResult result;
    result.method = PutMethod::LinearProgram;
    result.certificate = Certificate::Exact;
    result.value = Scalar(Rational(sense == Sense::Maximize ? Rational(-sol.value) : sol.value));
    if (table) {
        result.orbit_weights = OrbitWeightVector(sol.x, table);
        result.table.push_back({sol.x, result.value});
    } else {
        result.weights = WeightVector(sol.x, input, level);
        result.table.push_back({sol.x, result.value});
    }
    return result;
}

} // namespace

PutResult put_by_lp(const RationalVector& u, const FiniteAlphabet& input, const PrivacyLevel& level, Sense sense,
                    const std::shared_ptr<const OrbitTable>& table)
{
    return solve_linear_put(u, input, level, sense, table);
}

PutResult put_by_lp(const std::vector<double>& u, const FiniteAlphabet& input, const PrivacyLevel& level,
                    Sense sense, const std::shared_ptr<const OrbitTable>& table)
{
    RationalVector exact(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        exact[i] = from_double(u[i]);
    auto result = solve_linear_put(exact, input, level, sense, table);

    RationalVector c;
    if (result.orbit_weights)
        c = lift_weights(*result.orbit_weights).weights();
    else
        c = result.weights->weights();
    double value = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (c[i] != 0)
            value += to_double(c[i]) * u[i];
    result.value = Scalar(value);
    result.table.back().value = result.value;
    return result;
}

PutResult put_transitive_closed_form(const OrbitObjective& per_orbit, const std::shared_ptr<const OrbitTable>& table,
                                     Sense sense)
{
    if (!table->transitive())
        throw NotTransitive("closed-form PUT needs a transitive group");
    PutResult result;
    result.method = PutMethod::TransitiveClosedForm;
    result.certificate = Certificate::Exact;
    for (std::size_t o = 0; o < table->subset_orbit_count(); ++o) {
        auto w = transitive_vertex(table, o);
        Scalar v = per_orbit(*table, o);
        result.table.push_back({w.weights(), v});
        if (!result.winning_orbit || better(v, result.value, sense)) {
            result.value = v;
            result.winning_orbit = o;
            result.orbit_weights = std::move(w);
        }
    }
    return result;
}

OrbitObjective orbit_objective(const ChannelObjective& objective)
{
    return [objective](const OrbitTable& table, std::size_t orbit) {
        // Rebuild a non-owning handle so the vertex can reference the table.
        std::shared_ptr<const OrbitTable> handle(&table, [](const OrbitTable*) {});
        return objective.evaluate(invariant_extremal_channel(transitive_vertex(handle, orbit)));
    };
}

ChannelObjective bayes_objective(const DecisionProblem& problem, const RationalVector& prior)
{
    validate_prior(prior, problem.theta().size());
    return {"bayes_risk",
            [problem, prior](const Channel& q) { return Scalar(bayes_optimal_risk(problem, prior, q).value); },
            Sense::Minimize, true};
}

ChannelObjective minimax_objective(const DecisionProblem& problem)
{
    return {"minimax_risk", [problem](const Channel& q) { return Scalar(minimax_risk(problem, q).value); },
            Sense::Minimize, false};
}

ChannelObjective mi_objective(const RationalVector& prior)
{
    return {"mutual_information", [prior](const Channel& q) { return Scalar(mutual_information(q, prior)); },
            Sense::Maximize, true};
}

ChannelObjective f_divergence_objective(FDivergence f, const RationalVector& p0, const RationalVector& p1)
{
    return {"f_divergence_" + to_string(f),
            [f, p0, p1](const Channel& q) { return Scalar(f_divergence_utility(q, f, p0, p1)); }, Sense::Maximize,
            true};
}

PutResult put_minimax(const DecisionProblem& problem, const std::optional<RationalVector>& prior,
                      const FiniteAlphabet& input, const PrivacyLevel& level,
                      const std::shared_ptr<const OrbitTable>& table, std::size_t cap)
{
    auto scan = put_by_vertex_enumeration(minimax_objective(problem), input, level, table, cap);
    if (!prior)
        return scan;
    auto bayes = put_by_vertex_enumeration(bayes_objective(problem, *prior), input, level, table, cap);
    if (!check_equalizer(problem, *prior, bayes.channel()))
        return scan;
    // R_M(Q_B) = R_B(Q_B) = PUT_B ≤ PUT_M ≤ R_M(Q_B), and Q_B is itself a scanned vertex.
    if (compare(scan.value, bayes.value) != 0)
        throw MethodDisagreement("minimax vertex scan " + scan.value.to_string() +
                                 " differs from the equalizer-certified Bayes PUT " + bayes.value.to_string());
    scan.value = bayes.value;
    scan.weights = bayes.weights;
    scan.orbit_weights = bayes.orbit_weights;
    scan.certificate = Certificate::EqualizerCertified;
    return scan;
}

namespace {

Rational random_fraction(std::mt19937_64& rng, unsigned long denominator)
{
    std::uniform_int_distribution<unsigned long> d(0, denominator);
    Rational out(d(rng), denominator);
    out.canonicalize();
    return out;
}

RationalMatrix random_stochastic(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
    std::uniform_int_distribution<long> entry(0, 9);
    std::uniform_int_distribution<std::size_t> pick(0, rows - 1);
    RationalMatrix a(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        Rational s;
        for (std::size_t i = 0; i < rows; ++i) {
            a(i, j) = entry(rng);
            s += a(i, j);
        }
        if (s == 0) {
            a(pick(rng), j) = 1;
            s = 1;
        }
        for (std::size_t i = 0; i < rows; ++i)
            a(i, j) /= s;
    }
    return a;
}

std::vector<std::string> numbered_labels(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::to_string(i));
    return out;
}

Channel sample_polytope_channel(std::mt19937_64& rng, const std::vector<WeightVector>& vertices)
{
    const std::size_t m = vertices.front().input().size();
    std::uniform_int_distribution<std::size_t> pick(0, vertices.size() - 1);
    std::uniform_int_distribution<long> weight(1, 1000);
    const std::size_t terms = 1 + std::uniform_int_distribution<std::size_t>(0, m)(rng);
    RationalVector c(vertices.front().weights().size());
    Rational total;
    std::vector<std::pair<std::size_t, Rational>> mix;
    for (std::size_t i = 0; i < terms; ++i) {
        mix.emplace_back(pick(rng), Rational(weight(rng)));
        total += mix.back().second;
    }
    for (const auto& [v, w] : mix)
        for (std::size_t p = 0; p < c.size(); ++p)
            c[p] += w / total * vertices[v][p];
    Channel q = extremal_channel(WeightVector(std::move(c), vertices.front().input(), vertices.front().level()));
    // An equivalence move: split a random row.
    if (std::uniform_int_distribution<int>(0, 1)(rng)) {
        const std::size_t y = std::uniform_int_distribution<std::size_t>(0, q.output_size() - 1)(rng);
        q = split_row(q, y, random_fraction(rng, 16));
    }
    return q;
}

Channel sample_noisy_uniform(std::mt19937_64& rng, const FiniteAlphabet& input, const PrivacyLevel& level)
{
    const std::size_t n = 2 + std::uniform_int_distribution<std::size_t>(0, input.size())(rng);
    // Entries stay in [(1−α)/n, (1−α)/n + α], inside the cone when α ≤ (t−1)/(n+t−1).
    const Rational alpha_max = (level.t() - 1) / (Rational(n) + level.t() - 1);
    const Rational alpha = alpha_max * random_fraction(rng, 64);
    const auto noise = random_stochastic(rng, n, input.size());
    RationalMatrix a(n, input.size());
    const Rational base = (1 - alpha) / Rational(n);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < input.size(); ++x)
            a(y, x) = base + alpha * noise(y, x);
    return Channel(input, FiniteAlphabet(numbered_labels(n)), std::move(a));
}

} // namespace

AuditReport random_channel_audit(const ChannelObjective& objective, const Scalar& put, const FiniteAlphabet& input,
                                 const PrivacyLevel& level, std::size_t samples, std::uint64_t seed, double tolerance,
                                 std::size_t cap)
{
    AuditReport report;
    if (samples == 0)
        return report;
    const auto vertices = enumerate_polytope_vertices(input, level, cap);
    for (std::size_t i = 0; i < samples; ++i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
        std::mt19937_64 rng(seq);
        Channel q = [&] {
            switch (i % 3) {
            case 0:
                return sample_polytope_channel(rng, vertices);
            case 1: {
                Channel base = sample_polytope_channel(rng, vertices);
                const std::size_t n = 1 + std::uniform_int_distribution<std::size_t>(0, base.output_size())(rng);
                Channel w(base.output(), FiniteAlphabet(numbered_labels(n)),
                          random_stochastic(rng, n, base.output_size()));
                return compose(w, base);
            }
            default:
                return sample_noisy_uniform(rng, input, level);
            }
        }();
        if (!is_ldp(q, level))
            throw InvalidArgument("audit sampler produced a non-LDP channel");

        const Scalar value = objective.evaluate(q);
        const Scalar gap = objective.sense == Sense::Minimize ? difference(value, put) : difference(put, value);
        ++report.samples;
        if (!report.min_gap || compare(gap, *report.min_gap) < 0)
            report.min_gap = gap;
        const bool violated = gap.is_exact() ? gap.exact() < 0 : gap.approx() < -tolerance;
        if (violated) {
            ++report.violations;
            if (!report.violator)
                report.violator = q;
        }
    }
    return report;
}

void require_clean(const AuditReport& report)
{
    if (report.violations == 0)
        return;
    std::ostringstream os;
    os << report.violations << " sampled channel(s) beat the PUT; first violator rows:";
    const auto& q = *report.violator;
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        os << " [";
        for (std::size_t x = 0; x < q.input_size(); ++x)
            os << (x ? "," : "") << to_string(q(y, x));
        os << "]";
    }
    throw AuditFailure(os.str());
}

} // namespace ldpput
