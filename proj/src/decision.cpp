#include "ldpput/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldpput/errors.hpp"
#include "ldpput/ldp_geometry.hpp"
#include "ldpput/simplex.hpp"

namespace ldpput {

namespace {

bool column_stochastic(const RationalMatrix& a)
{
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Rational s;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (a(i, j) < 0)
                return false;
            s += a(i, j);
        }
        if (s != 1)
            return false;
    }
    return true;
}

void require_channel_fits(const DecisionProblem& problem, const Channel& q)
{
    if (q.input_size() != problem.inputs().size())
        throw AlphabetMismatch("channel has " + std::to_string(q.input_size()) + " inputs, problem has " +
                               std::to_string(problem.inputs().size()));
}

// (Q·P_θ)_y for every θ, indexed [θ][y].
std::vector<RationalVector> output_distributions(const DecisionProblem& problem, const Channel& q)
{
    const std::size_t nt = problem.theta().size(), nx = q.input_size(), ny = q.output_size();
    std::vector<RationalVector> out(nt, RationalVector(ny));
    for (std::size_t th = 0; th < nt; ++th)
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t x = 0; x < nx; ++x)
                if (problem.model()(x, th) != 0 && q(y, x) != 0)
                    out[th][y] += problem.model()(x, th) * q(y, x);
    return out;
}


double f_term(FDivergence f, double a, double b)
{
    // b·f(a/b) with its limits where b = 0.
    const double inf = std::numeric_limits<double>::infinity();
    switch (f) {
    case FDivergence::KL:
        if (a == 0)
            return 0.0;
        return b == 0 ? inf : a * std::log(a / b);
    case FDivergence::TV:
        return 0.5 * std::fabs(a - b);
    case FDivergence::Chi2:
        if (b == 0)
            return a == 0 ? 0.0 : inf;
        return (a - b) * (a - b) / b;
    case FDivergence::Hellinger2: {
        const double d = std::sqrt(a) - std::sqrt(b);
        return d * d;
    }
    }
    return 0.0;
}

} // namespace

DecisionProblem::DecisionProblem(FiniteAlphabet theta, FiniteAlphabet inputs, FiniteAlphabet actions,
                                 RationalMatrix model, RationalMatrix loss, std::optional<RationalVector> prior)
    : theta_(std::move(theta)), inputs_(std::move(inputs)), actions_(std::move(actions)), model_(std::move(model)),
      loss_(std::move(loss)), prior_(std::move(prior))
{
    if (model_.rows() != inputs_.size() || model_.cols() != theta_.size())
        throw AlphabetMismatch("model must be |X| x |Theta|");
    if (loss_.rows() != theta_.size() || loss_.cols() != actions_.size())
        throw AlphabetMismatch("loss must be |Theta| x |A|");
    if (!column_stochastic(model_))
        throw NotStochastic("model columns must be probability vectors");
    if (prior_)
        validate_prior(*prior_, theta_.size());
}

RationalMatrix DecisionProblem::prior_weighted_loss(const RationalVector& prior) const
{
    validate_prior(prior, theta_.size());
    RationalMatrix m(inputs_.size(), actions_.size());
    for (std::size_t th = 0; th < theta_.size(); ++th) {
        if (prior[th] == 0)
            continue;
        for (std::size_t x = 0; x < inputs_.size(); ++x) {
            if (model_(x, th) == 0)
                continue;
            const Rational w = prior[th] * model_(x, th);
            for (std::size_t a = 0; a < actions_.size(); ++a)
                m(x, a) += w * loss_(th, a);
        }
    }
    return m;
}

void validate_prior(const RationalVector& prior, std::size_t size)
{
    if (prior.size() != size)
        throw InvalidArgument("prior has length " + std::to_string(prior.size()) + ", expected " +
                              std::to_string(size));
    Rational s;
    for (const auto& p : prior) {
        if (p < 0)
            throw InvalidArgument("prior has a negative entry");
        s += p;
    }
    if (s != 1)
        throw InvalidArgument("prior sums to " + to_string(s));
}

RationalVector uniform_prior(std::size_t size)
{
    Rational p(1, static_cast<unsigned long>(size));
    p.canonicalize();
    return RationalVector(size, p);
}

DecisionRule::DecisionRule(RationalMatrix rule) : rule_(std::move(rule))
{
    if (!column_stochastic(rule_))
        throw NotStochastic("decision rule columns must be probability vectors");
}

Rational risk(const DecisionProblem& problem, std::size_t theta, const Channel& q, const DecisionRule& rule)
{
    require_channel_fits(problem, q);
    if (rule.actions() != problem.actions().size() || rule.outputs() != q.output_size())
        throw AlphabetMismatch("decision rule shape does not match actions x outputs");
    if (theta >= problem.theta().size())
        throw InvalidArgument("parameter index out of range");
    Rational total;
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        Rational py;
        for (std::size_t x = 0; x < q.input_size(); ++x)
            py += problem.model()(x, theta) * q(y, x);
        if (py == 0)
            continue;
        Rational expected_loss;
        for (std::size_t a = 0; a < rule.actions(); ++a)
            if (rule(a, y) != 0)
                expected_loss += rule(a, y) * problem.loss()(theta, a);
        total += py * expected_loss;
    }
    return total;
}

RationalVector risk_profile(const DecisionProblem& problem, const Channel& q, const DecisionRule& rule)
{
    RationalVector out(problem.theta().size());
    for (std::size_t th = 0; th < out.size(); ++th)
        out[th] = risk(problem, th, q, rule);
    return out;
}

Rational bayes_row_value(const RationalMatrix& weighted_loss, const RationalVector& v)
{
    if (v.size() != weighted_loss.rows())
        throw AlphabetMismatch("row length does not match the input alphabet");
    Rational best;
    for (std::size_t a = 0; a < weighted_loss.cols(); ++a) {
        Rational s;
        for (std::size_t x = 0; x < v.size(); ++x)
            if (v[x] != 0)
                s += v[x] * weighted_loss(x, a);
        if (a == 0 || s < best)
            best = s;
    }
    return best;
}

RiskAndRule bayes_optimal_risk(const DecisionProblem& problem, const RationalVector& prior, const Channel& q)
{
    require_channel_fits(problem, q);
    const auto m = problem.prior_weighted_loss(prior);
    const std::size_t na = problem.actions().size();
    RationalMatrix rule(na, q.output_size());
    Rational total;
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        Rational best;
        std::size_t best_a = 0;
        for (std::size_t a = 0; a < na; ++a) {
            Rational s;
            for (std::size_t x = 0; x < q.input_size(); ++x)
                if (q(y, x) != 0)
                    s += q(y, x) * m(x, a);
            if (a == 0 || s < best) {
                best = s;
                best_a = a;
            }
        }
        rule(best_a, y) = 1;
        total += best;
    }
    return {total, DecisionRule(std::move(rule))};
}

namespace {

// Minimax over rules whose support on output y is limited to allowed[y]
// (every action when `allowed` is empty).
RiskAndRule solve_minimax(const DecisionProblem& problem, const Channel& q,
                          const std::vector<std::vector<std::size_t>>& allowed)
{
    require_channel_fits(problem, q);
    const std::size_t nt = problem.theta().size(), na = problem.actions().size(), ny = q.output_size();
    const auto dist = output_distributions(problem, q);

    // Columns: one rule variable per allowed (a, y), then s+, s−, then one slack per θ.
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    for (std::size_t y = 0; y < ny; ++y) {
        if (allowed.empty())
            for (std::size_t a = 0; a < na; ++a)
                vars.emplace_back(a, y);
        else
            for (auto a : allowed[y])
                vars.emplace_back(a, y);
    }
    const std::size_t nr = vars.size(), sp = nr, sm = nr + 1, first_slack = nr + 2;
    LinearProgram lp;
    lp.constraints = RationalMatrix(nt + ny, first_slack + nt);
    lp.rhs = RationalVector(nt + ny);
    lp.objective = RationalVector(first_slack + nt);
    for (std::size_t v = 0; v < nr; ++v) {
        const auto [a, y] = vars[v];
        for (std::size_t th = 0; th < nt; ++th)
            if (dist[th][y] != 0 && problem.loss()(th, a) != 0)
                lp.constraints(th, v) = problem.loss()(th, a) * dist[th][y];
        lp.constraints(nt + y, v) = 1;
    }
    for (std::size_t th = 0; th < nt; ++th) {
        lp.constraints(th, sp) = -1;
        lp.constraints(th, sm) = 1;
        lp.constraints(th, first_slack + th) = 1;
    }
    for (std::size_t y = 0; y < ny; ++y)
        lp.rhs[nt + y] = 1;
    lp.objective[sp] = 1;
    lp.objective[sm] = -1;

    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw InvalidArgument("minimax LP did not reach an optimum");
    RationalMatrix rule(na, ny);
    for (std::size_t v = 0; v < nr; ++v)
        rule(vars[v].first, vars[v].second) = sol.x[v];
    DecisionRule r(std::move(rule));
    // The LP value is max_θ risk at the returned rule; recompute it directly.
    const auto profile = risk_profile(problem, q, r);
    Rational worst = profile.empty() ? Rational(0) : profile[0];
    for (const auto& v : profile)
        if (v > worst)
            worst = v;
    if (worst != sol.value)
        throw InvalidArgument("minimax LP value disagrees with the rule's worst-case risk");
    return {worst, std::move(r)};
}

Rational spread(const RationalVector& v)
{
    Rational lo = v[0], hi = v[0];
    for (const auto& x : v) {
        if (x < lo)
            lo = x;
        if (x > hi)
            hi = x;
    }
    return hi - lo;
}

} // namespace

RiskAndRule minimax_risk(const DecisionProblem& problem, const Channel& q)
{
    return solve_minimax(problem, q, {});
}

bool check_equalizer(const DecisionProblem& problem, const RationalVector& prior, const Channel& q,
                     const Rational& tolerance)
{
    const auto bayes = bayes_optimal_risk(problem, prior, q);
    if (spread(risk_profile(problem, q, bayes.rule)) <= tolerance)
        return true;

    // Ties leave a face of Bayes rules; look for the flattest one on it.
    const auto m = problem.prior_weighted_loss(prior);
    std::vector<std::vector<std::size_t>> allowed(q.output_size());
    bool tied = false;
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        RationalVector values(problem.actions().size());
        for (std::size_t a = 0; a < values.size(); ++a)
            for (std::size_t x = 0; x < q.input_size(); ++x)
                if (q(y, x) != 0)
                    values[a] += q(y, x) * m(x, a);
        const Rational best = *std::min_element(values.begin(), values.end());
        for (std::size_t a = 0; a < values.size(); ++a)
            if (values[a] == best)
                allowed[y].push_back(a);
        tied = tied || allowed[y].size() > 1;
    }
    if (!tied)
        return false;
    const auto flattest = solve_minimax(problem, q, allowed);
    return spread(risk_profile(problem, q, flattest.rule)) <= tolerance;
}

bool verify_invariance(const DecisionProblem& problem, const InvarianceDeclaration& decl)
{
    const std::size_t order = decl.on_theta.group().order();
    if (decl.on_inputs.group().order() != order || decl.on_actions.group().order() != order)
        throw InvalidArgument("invariance declaration mixes groups of different orders");
    if (decl.on_theta.carrier_size() != problem.theta().size() ||
        decl.on_inputs.carrier_size() != problem.inputs().size() ||
        decl.on_actions.carrier_size() != problem.actions().size())
        throw AlphabetMismatch("invariance declaration carriers do not match the problem");
    for (std::size_t g = 0; g < order; ++g) {
        for (std::size_t th = 0; th < problem.theta().size(); ++th) {
            const auto gth = decl.on_theta.apply(g, th);
            for (std::size_t x = 0; x < problem.inputs().size(); ++x)
                if (problem.model()(decl.on_inputs.apply(g, x), gth) != problem.model()(x, th))
                    return false;
            for (std::size_t a = 0; a < problem.actions().size(); ++a)
                if (problem.loss()(gth, decl.on_actions.apply(g, a)) != problem.loss()(th, a))
                    return false;
        }
    }
    return true;
}

double mi_row_value(const RationalVector& prior, const RationalVector& v)
{
    if (prior.size() != v.size())
        throw AlphabetMismatch("prior and row lengths differ");
    Rational mass_exact;
    for (std::size_t x = 0; x < v.size(); ++x)
        mass_exact += prior[x] * v[x];
    const double mass = to_double(mass_exact);
    double out = 0.0;
    for (std::size_t x = 0; x < v.size(); ++x) {
        if (prior[x] == 0 || v[x] == 0)
            continue;
        const double vx = to_double(v[x]);
        out += to_double(prior[x]) * vx * std::log(vx / mass);
    }
    return out;
}

double mutual_information(const Channel& q, const RationalVector& prior)
{
    validate_prior(prior, q.input_size());
    double out = 0.0;
    for (std::size_t y = 0; y < q.output_size(); ++y)
        out += mi_row_value(prior, q.row(y));
    return out;
}

FDivergence parse_f_divergence(const std::string& name)
{
    if (name == "kl")
        return FDivergence::KL;
    if (name == "tv")
        return FDivergence::TV;
    if (name == "chi2")
        return FDivergence::Chi2;
    if (name == "hellinger2")
        return FDivergence::Hellinger2;
    throw UnsupportedF("unknown f-divergence '" + name + "'");
}

std::string to_string(FDivergence f)
{
    switch (f) {
    case FDivergence::KL:
        return "kl";
    case FDivergence::TV:
        return "tv";
    case FDivergence::Chi2:
        return "chi2";
    case FDivergence::Hellinger2:
        return "hellinger2";
    }
    return "?";
}

double f_divergence_row_value(FDivergence f, const RationalVector& p0, const RationalVector& p1,
                              const RationalVector& v)
{
    if (p0.size() != v.size() || p1.size() != v.size())
        throw AlphabetMismatch("distribution and row lengths differ");
    Rational a, b;
    for (std::size_t x = 0; x < v.size(); ++x) {
        a += v[x] * p0[x];
        b += v[x] * p1[x];
    }
    return f_term(f, to_double(a), to_double(b));
}

double f_divergence_utility(const Channel& q, FDivergence f, const RationalVector& p0, const RationalVector& p1)
{
    validate_prior(p0, q.input_size());
    validate_prior(p1, q.input_size());
    double out = 0.0;
    for (std::size_t y = 0; y < q.output_size(); ++y)
        out += f_divergence_row_value(f, p0, p1, q.row(y));
    return out;
}

RationalVector bayes_linear_coefficients(const DecisionProblem& problem, const RationalVector& prior,
                                         const PrivacyLevel& level)
{
    const auto m = problem.prior_weighted_loss(prior);
    const auto s = StaircaseMatrix(problem.inputs(), level);
    RationalVector u(s.subset_rows());
    for (std::size_t p = 0; p < u.size(); ++p)
        u[p] = bayes_row_value(m, s.matrix().row(p));
    return u;
}

std::vector<double> mi_linear_coefficients(const RationalVector& prior, const PrivacyLevel& level)
{
    validate_prior(prior, prior.size());
    const auto s = StaircaseMatrix(FiniteAlphabet::range(prior.size()), level);
    std::vector<double> u(s.subset_rows());
    for (std::size_t p = 0; p < u.size(); ++p)
        u[p] = mi_row_value(prior, s.matrix().row(p));
    return u;
}

std::vector<double> f_divergence_linear_coefficients(FDivergence f, const RationalVector& p0,
                                                     const RationalVector& p1, const PrivacyLevel& level)
{
    validate_prior(p0, p0.size());
    validate_prior(p1, p0.size());
    const auto s = StaircaseMatrix(FiniteAlphabet::range(p0.size()), level);
    std::vector<double> u(s.subset_rows());
    for (std::size_t p = 0; p < u.size(); ++p)
        u[p] = f_divergence_row_value(f, p0, p1, s.matrix().row(p));
    return u;
}

void require_dsa_extension(UtilityKind kind)
{
    if (kind == UtilityKind::MinimaxRisk)
        throw NoDSAExtension("minimax risk is not additive over direct sums; use vertex enumeration");
}

} // namespace ldpput
