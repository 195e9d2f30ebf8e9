#include <doctest.h>

#include <json.hpp>

#include <map>
#include <sstream>
#include <vector>

#include "g2glue/cli.hpp"
#include "g2glue/ring.hpp"

using namespace g2glue;
using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"g2glue"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("construct command, json report") {
    auto r = run_cli({"construct", "--field", "fp:5", "--e", "0,1,4", "--eprime",
                      "0,2,3", "--sigma", "2,1,3", "--verify", "--format",
                      "json"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["theta_smooth"] == true);
    CHECK(j["a"] == "1");
    CHECK(j["b"] == "3");
    CHECK(j["lambda"] == "4");
    REQUIRE(j.contains("sextic"));
    CHECK(j["sextic"] == std::vector<std::string>{"2", "0", "1", "0", "3", "0",
                                                  "4"});
    REQUIRE(j.contains("checks"));
    for (const auto& [name, val] : j["checks"].items()) {
        CAPTURE(name);
        CHECK(val == "pass");
    }
}

TEST_CASE("construct rejects a non-theta-smooth input with exit 3") {
    auto r = run_cli({"construct", "--field", "fp:5", "--e", "0,1,4", "--eprime",
                      "0,2,3", "--sigma", "1,2,3"});
    CHECK(r.code == 3);
    CHECK(r.out.find("theta-smooth: no") != std::string::npos);

    auto j = run_cli({"verify", "--field", "fp:5", "--e", "0,1,4", "--eprime",
                      "0,2,3", "--sigma", "1,2,3", "--format", "json"});
    CHECK(j.code == 3);
    CHECK(json::parse(j.out)["theta_smooth"] == false);
}

TEST_CASE("verify command equals construct --verify") {
    auto v = run_cli({"verify", "--field", "q", "--e", "0,1,-1", "--eprime",
                      "0,1,3"});
    CHECK(v.code == 0);
    CHECK(v.out.find("PASS") != std::string::npos);
    CHECK(v.out.find("FAIL") == std::string::npos);
}

TEST_CASE("census over F_3") {
    auto r = run_cli({"census", "--field", "fp:3"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "e1,e2,e3,ep1,ep2,ep3,sigma,j,jp,theta_smooth,sextic");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 6 * 6 * 6);  // (3*2*1)^2 ordered triples, 6 sigmas
}

TEST_CASE("census over F_5 has (5*4*3)^2 * 6 rows") {
    auto r = run_cli({"census", "--field", "fp:5", "--construct"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);  // header
    int rows = 0, smooth = 0;
    // CSV post-pass: whenever j != jp, all 6 sigmas of the pair must be
    // theta-smooth.
    std::map<std::string, std::pair<bool, int>> by_pair;  // j_differ, #smooth
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        // theta_smooth column is the second to last; smooth rows carry a
        // 7-coefficient sextic, others an empty field.
        auto cols = split_top(line, ',');
        REQUIRE(cols.size() == 11);
        if (cols[9] == "1") {
            ++smooth;
            CHECK(split_top(cols[10], ';').size() == 7);
        } else {
            CHECK(cols[10].empty());
        }
        std::string key;
        for (int i = 0; i < 6; ++i) key += cols[i] + "|";
        auto& entry = by_pair[key];
        entry.first = cols[7] != cols[8];
        if (cols[9] == "1") ++entry.second;
    }
    CHECK(rows == 21600);
    CHECK(smooth == 14400);
    CHECK(by_pair.size() == 3600);
    for (const auto& [key, entry] : by_pair) {
        if (entry.first) CHECK(entry.second == 6);
    }
}

TEST_CASE("moebius command") {
    auto r = run_cli({"moebius", "--ring", "z:15", "--from", "0,1,2", "--to",
                      "0,1,2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[[1,0],[0,1]]") != std::string::npos);

    auto q = run_cli({"moebius", "--ring", "fp:5", "--from", "0,1,4", "--to",
                      "2,0,3", "--format", "json"});
    CHECK(q.code == 0);
    json j = json::parse(q.out);
    CHECK(j["matrix"] == json::parse(R"([["1","4"],["1","2"]])"));

    // A colliding source pair is a precondition violation (0 = 5 mod 5).
    auto bad = run_cli({"moebius", "--ring", "z:15", "--from", "0,5,1", "--to",
                        "0,1,2"});
    CHECK(bad.code == 3);
    CHECK(bad.err.find("modulo 5") != std::string::npos);
}

TEST_CASE("family command") {
    auto r = run_cli({"family", "--p", "7", "--var", "s", "--e", "0,1,s",
                      "--eprime", "0,1,s+1", "--sigma", "1,2,3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bad locus:") != std::string::npos);
    CHECK(r.out.find("s0 = 0") != std::string::npos);
    CHECK(r.out.find("s0 = 1") != std::string::npos);
    CHECK(r.out.find("s0 = 6") != std::string::npos);

    auto j = run_cli({"family", "--p", "7", "--e", "0,1,s", "--eprime",
                      "0,1,s+1", "--format", "json"});
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["globally_bad"] == false);
    CHECK(doc["bad_locus"].size() == 3);
    CHECK(doc["specializations"].size() == 4);

    auto gb = run_cli({"family", "--p", "7", "--e", "0,1,s", "--eprime",
                       "0,1,s", "--sigma", "1,2,3"});
    CHECK(gb.code == 3);
    CHECK(gb.out.find("globally bad") != std::string::npos);
}

TEST_CASE("parse errors exit with code 2") {
    CHECK(run_cli({"construct", "--field", "fp:4", "--e", "0,1,2", "--eprime",
                   "0,1,3"})
              .code == 2);
    CHECK(run_cli({"construct", "--field", "fp:5", "--e", "0,1", "--eprime",
                   "0,1,3"})
              .code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"census", "--field", "q"}).code == 3);
}

TEST_CASE("run config round trips through its serialization") {
    RunConfig cfg;
    cfg.command = "construct";
    cfg.field = "fp:5";
    cfg.e_list = "0,1,4";
    cfg.eprime_list = "0,2,3";
    cfg.sigma = "2,1,3";
    cfg.format = "json";
    cfg.verify = true;

    auto args = cfg.to_args();
    std::vector<const char*> argv{"g2glue"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out1, err1;
    int code1 = cli_main(static_cast<int>(argv.size()), argv.data(), out1, err1);

    std::ostringstream out2, err2;
    int code2 = run(cfg, out2, err2);
    CHECK(code1 == code2);
    CHECK(out1.str() == out2.str());
}
