#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldpput/channels.hpp"
#include "ldpput/decision.hpp"
#include "ldpput/groups.hpp"
#include "ldpput/invariant.hpp"
#include "ldpput/put_solver.hpp"

namespace ldpput {

using Json = nlohmann::json;

/** Throws ParseError with the offending text on malformed input. */
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

/** {"input": [...], "output": [...], "rows": [["p/q", ...], ...]} */
Json channel_to_json(const Channel& q);
Channel channel_from_json(const Json& j);

/** {"alphabet": [...], "generators": [[images of 0..m-1], ...]} */
PermGroup group_from_json(const Json& j, std::size_t cap = kDefaultGroupCap);

/** {"theta", "inputs", "actions", "model", "loss", "prior"?} */
Json problem_to_json(const DecisionProblem& problem);
DecisionProblem problem_from_json(const Json& j);

/** FNV-1a over the compact JSON text of the channel, as 16 hex digits. */
std::string channel_hash(const Channel& q);

struct MaximalityCertificate
{
    std::string verdict; ///< "maximal", "not_maximal" or "not_ldp"
    std::optional<std::size_t> failing_row;
};

MaximalityCertificate certify(const Channel& q, const PrivacyLevel& level);
Json certificate_to_json(const Channel& q, const MaximalityCertificate& cert);

/** [{"support": [masks], "weights": ["p/q", ...]}] */
Json vertices_to_json(const std::vector<WeightVector>& vertices);
/** [{"support": [orbit indices], "weights": ["p/q", ...]}] */
Json orbit_vertices_to_json(const std::vector<OrbitWeightVector>& vertices);

/** Per subset orbit: representative, size, k, r per input orbit, r̃ per input orbit. */
Json orbit_table_to_json(const OrbitTable& table);

Json rational_vector_to_json(const RationalVector& v);
RationalVector rational_vector_from_json(const Json& j);

Json put_result_to_json(const PutResult& result);

struct ExperimentConfig
{
    std::string task; ///< "ht" or "cardioid"
    std::size_t m = 0;
    Rational gamma;
    Rational t;
    std::vector<std::string> methods;
};

ExperimentConfig experiment_from_json(const Json& j);

struct ResultRow
{
    std::string task;
    std::size_t m = 0;
    Rational gamma;
    Rational t;
    std::string method;
    std::string value;
    std::string winner;
    std::string certificate;
};

std::string results_csv_header();
std::string results_csv_row(const ResultRow& row);
Json result_row_to_json(const ResultRow& row);

} // namespace ldpput
