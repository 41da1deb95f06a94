// Command-line front end: channel certification, vertex enumeration, PUT
// computation and randomized audits.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ldpput/applications.hpp"
#include "ldpput/errors.hpp"
#include "ldpput/io.hpp"

using namespace ldpput;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kCap = 3, kDisagreement = 4, kAudit = 5 };

struct RunConfig
{
    std::string t_text;
    double epsilon = std::nan("");
    unsigned long max_denominator = 1000000;
    std::size_t m = 0;
    std::string gamma_text = "1";
    std::string group_spec;
    std::vector<std::string> methods;
    std::string task;
    std::string input_path;
    std::string config_path;
    std::string problem_path;
    std::string risk = "bayes";
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::string out_path;
    std::string format = "json";
};

std::size_t alphabet_cap()
{
    if (const char* env = std::getenv("LDPPUT_CAP_M")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
            throw ParseError(std::string("LDPPUT_CAP_M is not a number: ") + env);
        }
    }
    return kDefaultAlphabetCap;
}

PrivacyLevel resolve_level(const RunConfig& cfg)
{
    if (!cfg.t_text.empty()) {
        if (!std::isnan(cfg.epsilon))
            throw ParseError("give either --t or --epsilon, not both");
        return PrivacyLevel(parse_rational(cfg.t_text));
    }
    if (std::isnan(cfg.epsilon))
        throw ParseError("a privacy level is required: --t or --epsilon");
    if (cfg.epsilon < 0)
        throw ParseError("epsilon must be nonnegative");
    const double exact = std::exp(cfg.epsilon);
    const Rational t = rational_approximation(exact, cfg.max_denominator);
    std::cerr << "epsilon " << cfg.epsilon << " -> t = " << to_string(t) << " (|t - e^epsilon| <= "
              << std::fabs(to_double(t) - exact) << ")\n";
    return PrivacyLevel(t);
}

std::shared_ptr<const OrbitTable> resolve_group(const std::string& spec, std::size_t m, const PrivacyLevel& level)
{
    if (spec.empty())
        return nullptr;
    const auto x = FiniteAlphabet::range(m);
    if (spec == "sym")
        return std::make_shared<const OrbitTable>(symmetric_group(x), level);
    if (spec == "cyclic")
        return std::make_shared<const OrbitTable>(cyclic_group(x), level);
    if (spec.rfind("file:", 0) == 0) {
        auto g = group_from_json(read_json_file(spec.substr(5)));
        if (g.degree() != m)
            throw AlphabetMismatch("group acts on " + std::to_string(g.degree()) + " letters, expected " +
                                   std::to_string(m));
        return std::make_shared<const OrbitTable>(std::move(g), level);
    }
    throw ParseError("unknown group '" + spec + "' (use sym, cyclic or file:PATH)");
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path);
    if (!out)
        throw ParseError("cannot write '" + cfg.out_path + "'");
    out << text;
}

std::string join_support(const std::vector<std::uint32_t>& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? ";" : "") + std::to_string(s[i]);
    return out;
}

std::string join_rationals(const RationalVector& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ";" : "") + to_string(v[i]);
    return out;
}

int cmd_check_channel(const RunConfig& cfg)
{
    const auto level = resolve_level(cfg);
    const auto q = channel_from_json(read_json_file(cfg.input_path));
    const bool ldp = is_ldp(q, level);
    const auto cert = certify(q, level);
    Json out{{"ldp", ldp}, {"maximal", cert.verdict == "maximal"}, {"t", to_string(level.t())},
             {"certificate", certificate_to_json(q, cert)}};
    if (cert.verdict == "maximal") {
        const auto c = canonical_weight(q, level);
        out["canonical_weights"] = Json{{"support", c.support()}, {"weights", rational_vector_to_json(c.weights())}};
    }
    emit(cfg, out.dump(2) + "\n");
    return ldp ? kOk : kFailure;
}

int cmd_enumerate(const RunConfig& cfg)
{
    const auto level = resolve_level(cfg);
    const auto x = FiniteAlphabet::range(cfg.m);
    const auto table = resolve_group(cfg.group_spec, cfg.m, level);
    std::optional<DecisionProblem> problem;
    if (!cfg.problem_path.empty())
        problem = problem_from_json(read_json_file(cfg.problem_path));
    auto value_at = [&](const Channel& q) -> std::string {
        if (!problem)
            return "";
        if (!problem->prior())
            return to_string(minimax_risk(*problem, q).value);
        return to_string(bayes_optimal_risk(*problem, *problem->prior(), q).value);
    };

    std::ostringstream os;
    if (table) {
        const auto vertices = enumerate_invariant_vertices(table);
        if (cfg.format == "csv") {
            os << "orbit_support,weights" << (problem ? ",value" : "") << "\n";
            for (const auto& v : vertices) {
                std::vector<std::uint32_t> reps;
                for (auto o : v.support())
                    reps.push_back(table->representative(o));
                os << join_support(reps) << ',' << join_rationals(v.weights());
                if (problem)
                    os << ',' << value_at(invariant_extremal_channel(v));
                os << "\n";
            }
        } else {
            Json j{{"orbits", orbit_table_to_json(*table)}, {"vertices", orbit_vertices_to_json(vertices)}};
            if (problem)
                for (std::size_t i = 0; i < vertices.size(); ++i)
                    j["vertices"][i]["value"] = value_at(invariant_extremal_channel(vertices[i]));
            os << j.dump(2) << "\n";
        }
    } else {
        const auto vertices = enumerate_polytope_vertices(x, level, alphabet_cap());
        if (cfg.format == "csv") {
            os << "support,weights" << (problem ? ",value" : "") << "\n";
            for (const auto& v : vertices) {
                os << join_support(v.support()) << ',' << join_rationals(v.weights());
                if (problem)
                    os << ',' << value_at(extremal_channel(v));
                os << "\n";
            }
        } else {
            Json j = vertices_to_json(vertices);
            if (problem)
                for (std::size_t i = 0; i < vertices.size(); ++i)
                    j[i]["value"] = value_at(extremal_channel(vertices[i]));
            os << j.dump(2) << "\n";
        }
    }
    emit(cfg, os.str());
    return kOk;
}

std::string winner_of(const PutResult& r, const OrbitTable* table)
{
    if (r.winning_orbit && table)
        return "k=" + std::to_string(table->coefficients(0, *r.winning_orbit).k) + " rep=" +
               std::to_string(table->representative(*r.winning_orbit));
    if (r.orbit_weights) {
        std::string s;
        for (auto o : r.orbit_weights->support())
            s += (s.empty() ? "" : ";") + std::to_string(r.orbit_weights->table().representative(o));
        return "orbits=" + s;
    }
    if (r.weights)
        return "support=" + join_support(r.weights->support());
    return "";
}

bool wants(const std::vector<std::string>& methods, const std::string& m)
{
    return methods.empty() || std::find(methods.begin(), methods.end(), m) != methods.end() ||
           std::find(methods.begin(), methods.end(), "all") != methods.end();
}

void check_methods(const std::vector<std::string>& methods)
{
    for (const auto& m : methods)
        if (m != "vertex" && m != "lp" && m != "closed" && m != "all")
            throw ParseError("unknown method '" + m + "' (use vertex, lp, closed)");
}

struct Collected
{
    std::vector<ResultRow> rows;
    Json details = Json::array();
};

void add(Collected& c, ResultRow row, const PutResult* detail)
{
    if (detail) {
        Json d = put_result_to_json(*detail);
        d["label"] = row.method;
        c.details.push_back(std::move(d));
    }
    c.rows.push_back(std::move(row));
}

// Every pair of values must match: exactly when both are rational, within
// the tolerance otherwise.
void require_agreement(const Collected& c, const std::vector<Scalar>& values, double tolerance)
{
    for (std::size_t i = 1; i < values.size(); ++i) {
        const bool same = values[0].is_exact() && values[i].is_exact()
                              ? values[0].exact() == values[i].exact()
                              : std::fabs(values[0].approx() - values[i].approx()) <= tolerance;
        if (!same)
            throw MethodDisagreement("method " + c.rows[i].method + " gives " + values[i].to_string() + ", method " +
                                     c.rows[0].method + " gives " + values[0].to_string());
    }
}

Collected run_ht(const RunConfig& cfg, const HtSpec& spec, const std::vector<std::string>& methods)
{
    Collected c;
    std::vector<Scalar> values;
    const auto problem = ht_problem(spec);
    const auto& prior = *problem.prior();
    const auto x = problem.inputs();
    auto base = [&](std::string method, const Scalar& v, std::string winner, Certificate cert) {
        return ResultRow{"ht", spec.m, spec.gamma, spec.level.t(), std::move(method), v.to_string(),
                         std::move(winner), to_string(cert)};
    };
    const std::string group = cfg.group_spec.empty() ? "sym" : cfg.group_spec;
    const auto table = resolve_group(group, spec.m, spec.level);

    if (wants(methods, "closed")) {
        const Scalar v(ht_put_closed_form(spec));
        add(c, base("closed_form", v, "k=1", Certificate::Exact), nullptr);
        values.push_back(v);
        if (table->transitive()) {
            auto r = put_transitive_closed_form(orbit_objective(bayes_objective(problem, prior)), table);
            add(c, base("transitive_closed_form", r.value, winner_of(r, table.get()), r.certificate), &r);
            values.push_back(r.value);
        }
    }
    if (wants(methods, "vertex")) {
        auto g = put_by_vertex_enumeration(bayes_objective(problem, prior), x, spec.level, table);
        add(c, base("vertex_enum_group", g.value, winner_of(g, table.get()), g.certificate), &g);
        values.push_back(g.value);
        auto f = put_by_vertex_enumeration(bayes_objective(problem, prior), x, spec.level, nullptr, alphabet_cap());
        add(c, base("vertex_enum", f.value, winner_of(f, nullptr), f.certificate), &f);
        values.push_back(f.value);
    }
    if (wants(methods, "lp")) {
        auto r = put_by_lp(bayes_linear_coefficients(problem, prior, spec.level), x, spec.level);
        add(c, base("lp", r.value, winner_of(r, nullptr), r.certificate), &r);
        values.push_back(r.value);
    }
    require_agreement(c, values, cfg.tolerance);
    return c;
}

Collected run_cardioid(const RunConfig& cfg, const CardioidSpec& spec, const std::vector<std::string>& methods)
{
    for (const auto& m : methods)
        if (m != "closed" && m != "all")
            throw ParseError("cardioid estimation has a continuous parameter; only --method closed applies");
    Collected c;
    const auto closed = cardioid_put_closed_form(spec);
    auto orbit = cardioid_put_over_orbits(spec);
    add(c,
        ResultRow{"cardioid", spec.m, spec.gamma, spec.level.t(), "closed_form", Scalar(closed.value).to_string(),
                  "k=" + std::to_string(closed.k), to_string(Certificate::Exact)},
        nullptr);
    add(c,
        ResultRow{"cardioid", spec.m, spec.gamma, spec.level.t(), "transitive_closed_form", orbit.value.to_string(),
                  winner_of(orbit, &orbit.orbit_weights->table()), to_string(orbit.certificate)},
        &orbit);
    require_agreement(c, {Scalar(closed.value), orbit.value}, cfg.tolerance);
    return c;
}

Collected run_problem(const RunConfig& cfg, const PrivacyLevel& level)
{
    const auto problem = problem_from_json(read_json_file(cfg.problem_path));
    const auto& x = problem.inputs();
    const auto table = resolve_group(cfg.group_spec, x.size(), level);
    Collected c;
    std::vector<Scalar> values;
    auto row = [&](std::string method, const PutResult& r) {
        return ResultRow{"problem", x.size(), Rational(0), level.t(), std::move(method), r.value.to_string(),
                         winner_of(r, table.get()), to_string(r.certificate)};
    };
    if (cfg.risk == "minimax") {
        if (wants(cfg.methods, "lp") && !cfg.methods.empty())
            require_dsa_extension(UtilityKind::MinimaxRisk);
        auto r = put_minimax(problem, problem.prior(), x, level, table, alphabet_cap());
        add(c, row("vertex_enum", r), &r);
        return c;
    }
    if (cfg.risk != "bayes")
        throw ParseError("--risk must be bayes or minimax");
    if (!problem.prior())
        throw ParseError("Bayes risk needs a prior in the problem file");
    const auto& prior = *problem.prior();
    if (wants(cfg.methods, "vertex")) {
        auto r = put_by_vertex_enumeration(bayes_objective(problem, prior), x, level, table, alphabet_cap());
        add(c, row("vertex_enum", r), &r);
        values.push_back(r.value);
    }
    if (wants(cfg.methods, "lp")) {
        auto r = put_by_lp(bayes_linear_coefficients(problem, prior, level), x, level, Sense::Minimize, table);
        add(c, row("lp", r), &r);
        values.push_back(r.value);
    }
    if (wants(cfg.methods, "closed") && table && table->transitive()) {
        auto r = put_transitive_closed_form(orbit_objective(bayes_objective(problem, prior)), table);
        add(c, row("transitive_closed_form", r), &r);
        values.push_back(r.value);
    }
    require_agreement(c, values, cfg.tolerance);
    return c;
}

int cmd_put(RunConfig cfg)
{
    Collected c;
    if (!cfg.config_path.empty()) {
        const auto e = experiment_from_json(read_json_file(cfg.config_path));
        cfg.task = e.task;
        cfg.m = e.m;
        cfg.methods = e.methods;
        check_methods(cfg.methods);
        const PrivacyLevel level(e.t);
        if (e.task == "ht")
            c = run_ht(cfg, HtSpec{e.m, e.gamma, level}, e.methods);
        else
            c = run_cardioid(cfg, CardioidSpec{e.m, e.gamma, level}, e.methods);
    } else {
        check_methods(cfg.methods);
        const auto level = resolve_level(cfg);
        if (!cfg.problem_path.empty())
            c = run_problem(cfg, level);
        else if (cfg.task == "ht")
            c = run_ht(cfg, HtSpec{cfg.m, parse_rational(cfg.gamma_text), level}, cfg.methods);
        else if (cfg.task == "cardioid")
            c = run_cardioid(cfg, CardioidSpec{cfg.m, parse_rational(cfg.gamma_text), level}, cfg.methods);
        else
            throw ParseError("put needs --config, --problem or --task ht|cardioid");
    }

    std::ostringstream os;
    if (cfg.format == "csv") {
        os << results_csv_header() << "\n";
        for (const auto& r : c.rows)
            os << results_csv_row(r) << "\n";
    } else {
        Json rows = Json::array();
        for (const auto& r : c.rows)
            rows.push_back(result_row_to_json(r));
        os << Json{{"results", rows}, {"details", c.details}}.dump(2) << "\n";
    }
    emit(cfg, os.str());
    return kOk;
}

int cmd_audit(const RunConfig& cfg)
{
    const auto level = resolve_level(cfg);
    std::optional<DecisionProblem> problem;
    if (!cfg.problem_path.empty())
        problem = problem_from_json(read_json_file(cfg.problem_path));
    else if (cfg.task == "ht")
        problem = ht_problem(HtSpec{cfg.m, parse_rational(cfg.gamma_text), level});
    else
        throw ParseError("audit needs --problem or --task ht");
    if (!problem->prior())
        throw ParseError("audit needs a prior in the problem file");

    const auto& x = problem->inputs();
    const auto objective = bayes_objective(*problem, *problem->prior());
    const auto put = put_by_lp(bayes_linear_coefficients(*problem, *problem->prior(), level), x, level);
    const auto report =
        random_channel_audit(objective, put.value, x, level, cfg.samples, cfg.seed, cfg.tolerance, alphabet_cap());

    Json out{{"put", put.value.to_string()},
             {"samples", report.samples},
             {"violations", report.violations},
             {"seed", cfg.seed}};
    out["min_gap"] = report.min_gap ? Json(report.min_gap->to_string()) : Json(nullptr);
    if (report.violator)
        out["violator"] = channel_to_json(*report.violator);
    emit(cfg, out.dump(2) + "\n");
    require_clean(report);
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact privacy-utility trade-offs under local differential privacy"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_level = [&](CLI::App* sub) {
        sub->add_option("--t", cfg.t_text, "privacy level t = e^epsilon as a rational, e.g. 3 or 3/2");
        sub->add_option("--epsilon", cfg.epsilon, "privacy budget; converted to a rational t");
        sub->add_option("--max-denominator", cfg.max_denominator, "denominator bound for --epsilon");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "write output here instead of stdout");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tolerance", cfg.tolerance, "absolute tolerance for floating-point comparisons");
    };

    auto* check = app.add_subcommand("check-channel", "certify LDP and maximality of a channel file");
    check->add_option("channel", cfg.input_path, "channel JSON")->required();
    add_level(check);
    add_output(check);

    auto* enumerate = app.add_subcommand("enumerate", "list the vertices of the maximal-LDP polytope");
    enumerate->add_option("--m", cfg.m, "alphabet size")->required();
    enumerate->add_option("--group", cfg.group_spec, "sym, cyclic or file:PATH");
    enumerate->add_option("--problem", cfg.problem_path, "decision problem JSON for per-vertex risks");
    add_level(enumerate);
    add_output(enumerate);

    auto* put = app.add_subcommand("put", "compute the optimal privacy-utility trade-off");
    put->add_option("--config", cfg.config_path, "experiment config JSON");
    put->add_option("--task", cfg.task, "ht or cardioid")->check(CLI::IsMember({"ht", "cardioid"}));
    put->add_option("--problem", cfg.problem_path, "decision problem JSON");
    put->add_option("--risk", cfg.risk, "bayes or minimax (problem files only)");
    put->add_option("--m", cfg.m, "alphabet size");
    put->add_option("--gamma", cfg.gamma_text, "smoothing or concentration parameter");
    put->add_option("--group", cfg.group_spec, "sym, cyclic or file:PATH");
    put->add_option("--method", cfg.methods, "vertex, lp, closed (repeatable)")->delimiter(',');
    add_level(put);
    add_output(put);

    auto* audit = app.add_subcommand("audit", "compare random LDP channels against the PUT");
    audit->add_option("--task", cfg.task, "ht")->check(CLI::IsMember({"ht"}));
    audit->add_option("--problem", cfg.problem_path, "decision problem JSON with a prior");
    audit->add_option("--m", cfg.m, "alphabet size");
    audit->add_option("--gamma", cfg.gamma_text, "smoothing parameter");
    audit->add_option("--samples", cfg.samples, "number of random channels");
    audit->add_option("--seed", cfg.seed, "random seed");
    add_level(audit);
    add_output(audit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*check)
            return cmd_check_channel(cfg);
        if (*enumerate)
            return cmd_enumerate(cfg);
        if (*put)
            return cmd_put(cfg);
        if (*audit)
            return cmd_audit(cfg);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const DimensionCap& e) {
        std::cerr << e.what() << "\n";
        return kCap;
    } catch (const CapExceeded& e) {
        std::cerr << e.what() << "\n";
        return kCap;
    } catch (const MethodDisagreement& e) {
        std::cerr << e.what() << "\n";
        return kDisagreement;
    } catch (const AuditFailure& e) {
        std::cerr << e.what() << "\n";
        return kAudit;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
