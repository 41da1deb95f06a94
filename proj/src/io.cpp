#include "ldpput/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ldpput/errors.hpp"
#include "ldpput/ldp_geometry.hpp"

namespace ldpput {

namespace {

std::vector<std::string> string_list(const Json& j, const char* field)
{
    if (!j.contains(field) || !j[field].is_array())
        throw ParseError(std::string("missing array field '") + field + "'");
    std::vector<std::string> out;
    for (const auto& e : j[field]) {
        if (e.is_string())
            out.push_back(e.get<std::string>());
        else if (e.is_number_integer())
            out.push_back(std::to_string(e.get<long long>()));
        else
            throw ParseError(std::string("labels in '") + field + "' must be strings or integers");
    }
    return out;
}

Rational rational_from_json(const Json& e)
{
    if (e.is_string())
        return parse_rational(e.get<std::string>());
    if (e.is_number_integer())
        return Rational(std::to_string(e.get<long long>()));
    throw ParseError("rationals must be written as strings like \"p/q\" or as integers, got " + e.dump());
}

RationalMatrix matrix_from_json(const Json& j, const char* field)
{
    if (!j.contains(field) || !j[field].is_array())
        throw ParseError(std::string("missing matrix field '") + field + "'");
    const auto& rows = j[field];
    RationalMatrix out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!r.is_array())
            throw ParseError(std::string("rows of '") + field + "' must be arrays");
        RationalVector v;
        for (const auto& e : r)
            v.push_back(rational_from_json(e));
        if (i == 0)
            out = RationalMatrix(0, v.size());
        if (v.size() != out.cols())
            throw ParseError(std::string("ragged rows in '") + field + "'");
        out.append_row(v);
    }
    return out;
}

Json matrix_to_json(const RationalMatrix& a)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i)
        rows.push_back(rational_vector_to_json(a.row(i)));
    return rows;
}

} // namespace

Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

Json rational_vector_to_json(const RationalVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

RationalVector rational_vector_from_json(const Json& j)
{
    if (!j.is_array())
        throw ParseError("expected an array of rationals");
    RationalVector out;
    for (const auto& e : j)
        out.push_back(rational_from_json(e));
    return out;
}

Json channel_to_json(const Channel& q)
{
    return Json{{"input", q.input().letters()}, {"output", q.output().letters()}, {"rows", matrix_to_json(q.matrix())}};
}

Channel channel_from_json(const Json& j)
{
    if (!j.is_object())
        throw ParseError("channel must be a JSON object");
    FiniteAlphabet input(string_list(j, "input"));
    FiniteAlphabet output(string_list(j, "output"));
    auto rows = matrix_from_json(j, "rows");
    if (rows.rows() == 0)
        rows = RationalMatrix(0, input.size());
    return Channel(std::move(input), std::move(output), std::move(rows));
}

PermGroup group_from_json(const Json& j, std::size_t cap)
{
    if (!j.is_object())
        throw ParseError("group must be a JSON object");
    FiniteAlphabet alphabet(string_list(j, "alphabet"));
    if (!j.contains("generators") || !j["generators"].is_array())
        throw ParseError("missing array field 'generators'");
    std::vector<Permutation> gens;
    for (const auto& g : j["generators"]) {
        if (!g.is_array())
            throw ParseError("generators must be arrays of images");
        Permutation p;
        for (const auto& e : g) {
            if (e.is_number_unsigned())
                p.push_back(e.get<std::size_t>());
            else if (e.is_string())
                p.push_back(alphabet.index_of(e.get<std::string>()));
            else
                throw ParseError("generator images must be indices or letters");
        }
        gens.push_back(std::move(p));
    }
    return generate_group(alphabet, gens, cap);
}

Json problem_to_json(const DecisionProblem& problem)
{
    Json out{{"theta", problem.theta().letters()},
             {"inputs", problem.inputs().letters()},
             {"actions", problem.actions().letters()},
             {"model", matrix_to_json(problem.model())},
             {"loss", matrix_to_json(problem.loss())}};
    if (problem.prior())
        out["prior"] = rational_vector_to_json(*problem.prior());
    return out;
}

DecisionProblem problem_from_json(const Json& j)
{
    if (!j.is_object())
        throw ParseError("decision problem must be a JSON object");
    std::optional<RationalVector> prior;
    if (j.contains("prior") && !j["prior"].is_null())
        prior = rational_vector_from_json(j["prior"]);
    return DecisionProblem(FiniteAlphabet(string_list(j, "theta")), FiniteAlphabet(string_list(j, "inputs")),
                           FiniteAlphabet(string_list(j, "actions")), matrix_from_json(j, "model"),
                           matrix_from_json(j, "loss"), std::move(prior));
}

std::string channel_hash(const Channel& q)
{
    const std::string text = channel_to_json(q).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

MaximalityCertificate certify(const Channel& q, const PrivacyLevel& level)
{
    const auto& t = level.t();
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        const auto row = q.row(y);
        for (std::size_t x = 0; x < row.size(); ++x)
            for (std::size_t xp = 0; xp < row.size(); ++xp)
                if (t * row[x] < row[xp])
                    return {"not_ldp", y};
    }
    for (std::size_t y = 0; y < q.output_size(); ++y) {
        const auto row = q.row(y);
        if (!is_zero(row) && !is_extreme_direction(row, q.input(), level))
            return {"not_maximal", y};
    }
    return {"maximal", std::nullopt};
}

Json certificate_to_json(const Channel& q, const MaximalityCertificate& cert)
{
    Json out{{"channel_hash", channel_hash(q)}, {"verdict", cert.verdict}};
    if (cert.failing_row)
        out["failing_row"] = *cert.failing_row;
    return out;
}

Json vertices_to_json(const std::vector<WeightVector>& vertices)
{
    Json out = Json::array();
    for (const auto& v : vertices)
        out.push_back(Json{{"support", v.support()}, {"weights", rational_vector_to_json(v.weights())}});
    return out;
}

Json orbit_vertices_to_json(const std::vector<OrbitWeightVector>& vertices)
{
    Json out = Json::array();
    for (const auto& v : vertices)
        out.push_back(Json{{"support", v.support()}, {"weights", rational_vector_to_json(v.weights())}});
    return out;
}

Json orbit_table_to_json(const OrbitTable& table)
{
    Json out = Json::array();
    for (std::size_t o = 0; o < table.subset_orbit_count(); ++o) {
        Json r = Json::array(), rt = Json::array();
        for (std::size_t i = 0; i < table.input_orbits().size(); ++i) {
            r.push_back(table.coefficients(i, o).r);
            rt.push_back(to_string(table.coefficients(i, o).r_tilde));
        }
        out.push_back(Json{{"representative", table.representative(o)},
                           {"size", table.subset_orbits()[o].size()},
                           {"k", table.coefficients(0, o).k},
                           {"r", r},
                           {"r_tilde", rt}});
    }
    return out;
}

Json put_result_to_json(const PutResult& result)
{
    Json out{{"method", to_string(result.method)},
             {"certificate", to_string(result.certificate)},
             {"value", result.value.to_string()},
             {"value_float", result.value.approx()}};
    if (result.weights)
        out["weights"] = rational_vector_to_json(result.weights->weights());
    if (result.orbit_weights) {
        out["orbit_weights"] = rational_vector_to_json(result.orbit_weights->weights());
        out["orbit_representatives"] = Json::array();
        for (std::size_t o = 0; o < result.orbit_weights->table().subset_orbit_count(); ++o)
            out["orbit_representatives"].push_back(result.orbit_weights->table().representative(o));
    }
    if (result.winning_orbit)
        out["winning_orbit"] = *result.winning_orbit;
    Json table = Json::array();
    for (const auto& row : result.table)
        table.push_back(Json{{"weights", rational_vector_to_json(row.weights)}, {"value", row.value.to_string()}});
    out["evaluations"] = table;
    return out;
}

ExperimentConfig experiment_from_json(const Json& j)
{
    if (!j.is_object())
        throw ParseError("experiment config must be a JSON object");
    ExperimentConfig c;
    try {
        c.task = j.at("task").get<std::string>();
        c.m = j.at("m").get<std::size_t>();
    } catch (const Json::exception& e) {
        throw ParseError(e.what());
    }
    if (c.task != "ht" && c.task != "cardioid")
        throw ParseError("task must be \"ht\" or \"cardioid\"");
    if (!j.contains("gamma") || !j.contains("t"))
        throw ParseError("experiment config needs 'gamma' and 't'");
    c.gamma = rational_from_json(j["gamma"]);
    c.t = rational_from_json(j["t"]);
    if (j.contains("methods"))
        for (const auto& e : j["methods"])
            c.methods.push_back(e.get<std::string>());
    return c;
}

std::string results_csv_header()
{
    return "task,m,gamma,t,method,value,winning_k_or_orbit,certificate";
}

std::string results_csv_row(const ResultRow& row)
{
    std::ostringstream os;
    os << row.task << ',' << row.m << ',' << to_string(row.gamma) << ',' << to_string(row.t) << ',' << row.method
       << ',' << row.value << ',' << row.winner << ',' << row.certificate;
    return os.str();
}

Json result_row_to_json(const ResultRow& row)
{
    return Json{{"task", row.task},     {"m", row.m},
                {"gamma", to_string(row.gamma)}, {"t", to_string(row.t)},
                {"method", row.method}, {"value", row.value},
                {"winning_k_or_orbit", row.winner}, {"certificate", row.certificate}};
}

} // namespace ldpput
