#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "crossint");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = crossint::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

void check_schema(const nlohmann::json& j) {
    for (const char* key : {"params", "regime", "values", "tuples", "classes", "checks", "failures", "runtime_ms"}) {
        CHECK(j.contains(key));
    }
}

}  // namespace

TEST_CASE("bound command") {
    auto r = invoke({"bound", "--n", "5", "--ks", "3,3,2"});
    REQUIRE(r.code == 0);
    auto j = parse(r);
    check_schema(j);
    CHECK(j["regime"] == "mixed");
    CHECK(j["values"]["bound"] == 19);
    CHECK(j["values"]["lambda1"] == 16);
    CHECK(j["values"]["lambda2"] == 19);
    CHECK(j["values"]["branch"] == "kernel");

    r = invoke({"bound", "--n", "6", "--ks", "3,3,2"});
    REQUIRE(r.code == 0);
    j = parse(r);
    CHECK(j["regime"] == "nonmixed");
    CHECK(j["values"]["bound"] == 25);
    CHECK(j["values"]["branch"] == "star");

    CHECK(invoke({"bound", "--n", "4", "--ks", "3,2"}).code == 2);
    CHECK(invoke({"bound", "--n", "4", "--ks", "5,2"}).code == 2);
    CHECK(invoke({"bound", "--n", "4"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
}

TEST_CASE("big values are exact strings") {
    std::string ks = "32";
    for (int i = 1; i < 30; ++i) {
        ks += ",32";
    }
    const auto r = invoke({"bound", "--n", "64", "--ks", ks});
    REQUIRE(r.code == 0);
    const auto j = parse(r);
    CHECK(j["values"]["bound"].is_string());
    CHECK(j["values"]["bound"].get<std::string>().size() > 19);
}

TEST_CASE("ks are sorted with a warning") {
    const auto r = invoke({"bound", "--n", "5", "--ks", "2,3,3"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(parse(r)["params"]["ks"] == nlohmann::json::array({3, 3, 2}));
}

TEST_CASE("oracle command") {
    auto r = invoke({"oracle", "--n", "5", "--ks", "3,3,2"});
    REQUIRE(r.code == 0);
    auto j = parse(r);
    check_schema(j);
    CHECK(j["values"]["oracle"] == 19);
    CHECK(j["values"]["match"] == true);
    CHECK(j["classes"] == nlohmann::json::array({"kernel"}));

    r = invoke({"oracle", "--n", "5", "--ks", "3,3,2,2"});
    REQUIRE(r.code == 0);
    j = parse(r);
    CHECK(j["values"]["oracle"] == 20);
    CHECK(j["classes"] == nlohmann::json::array({"exceptional"}));
    bool found = false;
    for (const auto& t : j["tuples"]) {
        found = found || t["ids"] == nlohmann::json::array({"{2,3,5}", "{2,3,5}", "{1,3}", "{1,3}"});
    }
    CHECK(found);

    r = invoke({"oracle", "--n", "4", "--ks", "2,2"});
    REQUIRE(r.code == 0);
    CHECK(parse(r)["values"]["oracle"] == 6);

    CHECK(invoke({"oracle", "--n", "8", "--ks", "5,4,3", "--budget-nodes", "5"}).code == 3);
    CHECK(invoke({"oracle", "--n", "8", "--ks", "5,4,3", "--budget-nodes", "0"}).code == 2);
    CHECK(invoke({"oracle", "--n", "30", "--ks", "3,3"}).code == 2);
}

TEST_CASE("oracle command outside the closed-form regimes") {
    const auto r = invoke({"oracle", "--n", "4", "--ks", "3,2"});
    REQUIRE(r.code == 0);
    const auto j = parse(r);
    CHECK(j["regime"] == "unsupported");
    CHECK(j["values"]["bound"].is_null());
}

TEST_CASE("profile command") {
    auto r = invoke({"profile", "--n", "5", "--ks", "3,3,2"});
    REQUIRE(r.code == 0);
    auto j = parse(r);
    CHECK(j["values"]["profile"] == nlohmann::json::array({16, 17, 18, 19}));
    CHECK(j["values"]["verdict"] == "endpoint-max");

    r = invoke({"profile", "--n", "5", "--ks", "3,3,2,2"});
    REQUIRE(r.code == 0);
    j = parse(r);
    CHECK(j["values"]["profile"] == nlohmann::json::array({20, 20, 20, 20}));
    CHECK(j["values"]["verdict"] == "exceptional-flat");

    r = invoke({"profile", "--n", "6", "--ks", "4,3,2"});
    REQUIRE(r.code == 0);
    j = parse(r);
    CHECK(j["values"]["profile"].front() == 25);
    CHECK(j["values"]["profile"].back() == 31);

    CHECK(invoke({"profile", "--n", "6", "--ks", "3,3,2"}).code == 2);
}

TEST_CASE("verify command") {
    auto r = invoke({"verify", "--suite", "partners", "--n-max", "8"});
    CHECK(r.code == 0);
    auto j = parse(r);
    CHECK(j["failures"] == 0);
    CHECK(j["checks"].get<std::uint64_t>() > 0);

    r = invoke({"verify", "--suite", "increments", "--n-max", "8"});
    CHECK(r.code == 0);

    r = invoke({"verify", "--suite", "kk", "--n-max", "6", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(parse(r)["values"]["seed"] == 7);

    CHECK(invoke({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("reports are deterministic without timings") {
    const std::vector<std::string> args{"verify", "--suite", "kk", "--n-max", "6", "--seed", "3", "--no-timing"};
    CHECK(invoke(args).out == invoke(args).out);
    const std::vector<std::string> sweep{"sweep", "--n-max", "6", "--format", "csv", "--no-timing"};
    CHECK(invoke(sweep).out == invoke(sweep).out);
}

TEST_CASE("sweep command") {
    const auto r = invoke({"sweep", "--n-max", "6", "--format", "csv", "--no-timing"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,t,ks,regime,lambda1,lambda2,bound,oracle,match,classes,elapsed_ms");
    int rows = 0;
    bool saw_example = false;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find(",false,") == std::string::npos);
        saw_example = saw_example || line == "5,3,\"3,3,2\",mixed,16,19,19,19,true,kernel,0.000";
    }
    CHECK(rows > 20);
    CHECK(saw_example);

    const auto j = parse(invoke({"sweep", "--n-max", "5"}));
    check_schema(j);
    CHECK(j["failures"] == 0);
}

TEST_CASE("reports can go to a file") {
    const std::string path = "crossint_cli_test_report.json";
    const auto r = invoke({"bound", "--n", "5", "--ks", "3,3,2", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["values"]["bound"] == 19);
    std::remove(path.c_str());
}
