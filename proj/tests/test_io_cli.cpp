#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "ldpput/applications.hpp"
#include "ldpput/errors.hpp"
#include "ldpput/io.hpp"
#include "test_support.hpp"

using namespace ldpput;
using testsupport::frac;
using testsupport::labels;

namespace {

struct Run
{
    int code;
    std::string out;
};

Run run_cli(const std::string& args, const std::string& env = "")
{
    const std::string out_path = std::string(TEST_TMP_DIR) + "/cli_out.txt";
    const std::string cmd = env + " " + std::string(LDPPUT_CLI) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

std::string write_temp(const std::string& name, const std::string& text)
{
    const std::string path = std::string(TEST_TMP_DIR) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("channel JSON round trip and certificates")
{
    const auto rr = binary_randomized_response(PrivacyLevel(3));
    const auto j = channel_to_json(rr);
    CHECK(j["rows"][0][0] == "3/4");
    CHECK(channel_from_json(j) == rr);
    CHECK(channel_hash(rr) == channel_hash(channel_from_json(j)));
    CHECK(channel_hash(rr).size() == 16);
    CHECK(certify(rr, PrivacyLevel(3)).verdict == "maximal");
    const auto u = certify(uniform_channel(labels(3), 2), PrivacyLevel(3));
    CHECK(u.verdict == "not_maximal");
    CHECK(u.failing_row == 0u);
    CHECK(certify(rr, PrivacyLevel(2)).verdict == "not_ldp");
    CHECK_THROWS_AS(channel_from_json(parse_json_text(R"({"input":["a"],"output":["y"],"rows":[["1/x"]]})")),
                    ParseError);
    CHECK_THROWS_AS(parse_json_text("{"), ParseError);
}

TEST_CASE("problem and group JSON")
{
    const auto p = ht_problem({3, frac(1, 2), PrivacyLevel(2)});
    const auto back = problem_from_json(problem_to_json(p));
    CHECK(back.model() == p.model());
    CHECK(back.loss() == p.loss());
    CHECK(*back.prior() == *p.prior());
    const auto g = group_from_json(parse_json_text(R"({"alphabet":["a","b","c"],"generators":[[1,2,0]]})"));
    CHECK(g.order() == 3);
    CHECK_THROWS_AS(group_from_json(parse_json_text(R"({"alphabet":["a","b"],"generators":[[0,0]]})")),
                    NotBijective);
}

TEST_CASE("vertex, orbit table and result exports")
{
    const PrivacyLevel t(2);
    const auto v = vertices_to_json(enumerate_polytope_vertices(labels(2), t));
    CHECK(v.size() == 1);
    CHECK(v[0]["support"] == Json::array({1, 2}));
    CHECK(v[0]["weights"] == Json::array({"1/3", "1/3"}));
    auto table = std::make_shared<const OrbitTable>(cyclic_group(labels(3)), t);
    const auto ot = orbit_table_to_json(*table);
    CHECK(ot.size() == 2);
    CHECK(ot[1]["representative"] == 3);
    CHECK(ot[1]["r_tilde"][0] == "5");
    const auto cfg = experiment_from_json(parse_json_text(R"({"task":"ht","m":3,"gamma":"1/2","t":"2","methods":["lp"]})"));
    CHECK(cfg.gamma == frac(1, 2));
    CHECK(cfg.methods == std::vector<std::string>{"lp"});
    CHECK(results_csv_row({"ht", 3, frac(1, 2), 2, "lp", "1/2", "k=1", "exact"}) == "ht,3,1/2,2,lp,1/2,k=1,exact");
}

TEST_CASE("cli: check-channel")
{
    const auto rr = write_temp("rr.json", channel_to_json(binary_randomized_response(PrivacyLevel(3))).dump());
    auto r = run_cli("check-channel " + rr + " --t 3");
    CHECK(r.code == 0);
    auto j = parse_json_text(r.out);
    CHECK(j["ldp"] == true);
    CHECK(j["maximal"] == true);
    const auto u = write_temp("u.json", channel_to_json(uniform_channel(labels(3), 2)).dump());
    r = run_cli("check-channel " + u + " --t 3");
    CHECK(r.code == 0);
    CHECK(parse_json_text(r.out)["maximal"] == false);
    const auto bad = write_temp("bad.json", R"({"input":["a","b"],"output":["0","1"],"rows":[["3/4","q"],["1/4","3/4"]]})");
    CHECK(run_cli("check-channel " + bad + " --t 3").code == 2);
    CHECK(run_cli("check-channel " + rr + " --t 2").code == 1);
}

TEST_CASE("cli: enumerate")
{
    auto r = run_cli("enumerate --m 2 --t 3");
    CHECK(r.code == 0);
    CHECK(parse_json_text(r.out).size() == 1);
    r = run_cli("enumerate --m 3 --t 2 --group sym");
    CHECK(r.code == 0);
    CHECK(parse_json_text(r.out)["vertices"].size() == 2);
    CHECK(run_cli("enumerate --m 6 --t 2").code == 3);
    CHECK(run_cli("enumerate --m 3 --t 2", "LDPPUT_CAP_M=2").code == 3);
}

TEST_CASE("cli: put and audit")
{
    auto r = run_cli("put --task ht --m 3 --gamma 1 --t 2 --format csv");
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == results_csv_header());
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.find(",1/2,") != std::string::npos);
    }
    CHECK(rows == 5);

    r = run_cli("put --task cardioid --m 4 --gamma 1 --t 3");
    CHECK(r.code == 0);
    CHECK(parse_json_text(r.out)["results"][0]["value"].get<std::string>().rfind("0.823223", 0) == 0);

    const auto cfg = write_temp("cfg.json", R"({"task":"ht","m":4,"gamma":"1/2","t":"2","methods":["vertex","lp","closed"]})");
    CHECK(run_cli("put --config " + cfg).code == 0);

    auto p = problem_to_json(ht_problem({3, 1, PrivacyLevel(2)}));
    p.erase("prior");
    const auto path = write_temp("noprior.json", p.dump());
    r = run_cli("put --problem " + path + " --risk minimax --t 2 --group sym");
    CHECK(r.code == 0);
    CHECK(parse_json_text(r.out)["results"][0]["certificate"] == "bound_only");

    r = run_cli("audit --task ht --m 3 --t 2 --samples 200 --seed 7");
    CHECK(r.code == 0);
    CHECK(parse_json_text(r.out)["violations"] == 0);
    const auto again = run_cli("audit --task ht --m 3 --t 2 --samples 200 --seed 7");
    CHECK(again.out == r.out);
    CHECK(parse_json_text(run_cli("audit --task ht --m 3 --t 2 --samples 0 --seed 7").out)["samples"] == 0);
    CHECK(run_cli("put --task ht --m 3 --t 2 --epsilon 1").code == 2);
    CHECK(run_cli("put --task ht --m 3 --epsilon 0.6931471805599453 --format csv").code == 0);
}
