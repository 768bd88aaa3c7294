#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI through /bin/sh; `prefix` can set environment variables.
RunResult run_cli(const std::string& args, const std::string& prefix = "") {
    const std::string cmd = prefix + " '" + CRSEXP_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("classify subcommand on an exponential input", "[cli]") {
    const auto r = run_cli("classify 11");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["n"] == 11);
    REQUIRE(j["status"] == "exponential");
    REQUIRE(j["witness"]["verified"] == true);
    REQUIRE(j["witness"]["sigma"] == json::array({10, 1, 9, 2, 4, 7, 11, 3, 8, 5, 6}));
}

TEST_CASE("classify subcommand on settled and undecided inputs", "[cli]") {
    const auto r10 = run_cli("classify 10");
    REQUIRE(r10.exit_code == 0);
    const json j10 = json::parse(r10.out);
    REQUIRE(j10["status"] == "not_exponential");
    REQUIRE(j10["witness"].is_null());
    REQUIRE_FALSE(j10["reason"].get<std::string>().empty());

    const auto r62 = run_cli("classify 62");
    REQUIRE(r62.exit_code == 0);
    const json j62 = json::parse(r62.out);
    REQUIRE(j62["status"] == "conjectural_gap");
}

TEST_CASE("classify output is byte-stable", "[cli]") {
    const auto a = run_cli("classify 23");
    const auto b = run_cli("classify 23");
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
    REQUIRE(run_cli("classify 1").exit_code == 2);
    REQUIRE(run_cli("classify").exit_code == 2);
    REQUIRE(run_cli("classify x").exit_code == 2);
    REQUIRE(run_cli("frobnicate 3").exit_code == 2);
    REQUIRE(run_cli("scan 9 5").exit_code == 2);
    REQUIRE(run_cli("density 99").exit_code == 2);
    REQUIRE(run_cli("--help").exit_code == 0);
}

TEST_CASE("search subcommand verdicts and exit codes", "[cli]") {
    const auto refuted = run_cli("search 10");
    REQUIRE(refuted.exit_code == 0);
    REQUIRE(json::parse(refuted.out)["verdict"] == "exhaustively_refuted");

    const auto found = run_cli("search 14");
    REQUIRE(found.exit_code == 0);
    const json jf = json::parse(found.out);
    REQUIRE(jf["verdict"] == "witness_found");
    REQUIRE(jf["witness"]["verified"] == true);

    const auto capped = run_cli("search 23 --budget-nodes 3");
    REQUIRE(capped.exit_code == 3);
    const json jc = json::parse(capped.out);
    REQUIRE(jc["verdict"] == "inconclusive");
    REQUIRE(jc["stats"]["node_budget_hit"] == true);
}

TEST_CASE("search counting mode", "[cli]") {
    const auto r = run_cli("search 6 --count");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["verdict"] == "counted");
    REQUIRE(j["count"] == 144);
}

TEST_CASE("stats omit wall-clock time unless asked", "[cli]") {
    const json plain = json::parse(run_cli("search 7").out);
    REQUIRE_FALSE(plain["stats"].contains("elapsed_secs"));
    const json timed = json::parse(run_cli("search 7 --timings").out);
    REQUIRE(timed["stats"].contains("elapsed_secs"));
}

TEST_CASE("scan emits one record per n and stays byte-stable", "[cli]") {
    const auto a = run_cli("scan 2 24");
    REQUIRE(a.exit_code == 0);
    const auto b = run_cli("scan 2 24");
    REQUIRE(a.out == b.out);

    const auto lines = lines_of(a.out);
    REQUIRE(lines.size() == 23);
    const std::vector<long long> exponential = {2, 3, 4, 5, 6, 7, 11, 14, 22, 23};
    long long expect_n = 2;
    for (const auto& line : lines) {
        const json j = json::parse(line);
        REQUIRE(j["n"] == expect_n);
        const bool is_exp = std::find(exponential.begin(), exponential.end(), expect_n) !=
                            exponential.end();
        REQUIRE(j["classification"]["status"] == (is_exp ? "exponential" : "not_exponential"));
        REQUIRE(j["oracle_verdict"] ==
                (is_exp ? "witness_found" : "exhaustively_refuted"));
        REQUIRE(j["timestamp"].is_null());
        REQUIRE(j["tool_version"] == "0.1.0");
        ++expect_n;
    }
}

TEST_CASE("scan skips the oracle beyond its cap", "[cli]") {
    const auto r = run_cli("scan 60 64 --oracle-max 24");
    REQUIRE(r.exit_code == 0);
    for (const auto& line : lines_of(r.out)) {
        const json j = json::parse(line);
        REQUIRE(j["oracle_verdict"].is_null());
        if (j["n"] == 62) REQUIRE(j["classification"]["status"] == "conjectural_gap");
    }
}

TEST_CASE("scan --out writes the same records to a file", "[cli]") {
    const std::string path = "/tmp/crsexp_cli_scan_test.jsonl";
    std::remove(path.c_str());
    const auto direct = run_cli("scan 2 12");
    const auto filed = run_cli("scan 2 12 --out " + path);
    REQUIRE(filed.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    REQUIRE(ss.str() == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("scan honours a parallel jobs flag deterministically", "[cli]") {
    const auto seq = run_cli("scan 2 24 --jobs 1");
    const auto par = run_cli("scan 2 24 --jobs 4");
    REQUIRE(par.exit_code == 0);
    REQUIRE(seq.out == par.out);
}

TEST_CASE("timestamp appears only under SOURCE_DATE_EPOCH", "[cli]") {
    const auto plain = run_cli("scan 5 5");
    REQUIRE(json::parse(lines_of(plain.out)[0])["timestamp"].is_null());
    const auto pinned = run_cli("scan 5 5", "SOURCE_DATE_EPOCH=1700000000");
    REQUIRE(json::parse(lines_of(pinned.out)[0])["timestamp"] == "2023-11-14T22:13:20Z");
}

TEST_CASE("density subcommand JSON and CSV", "[cli]") {
    const auto one = run_cli("density 1000");
    REQUIRE(one.exit_code == 0);
    const json j = json::parse(one.out);
    REQUIRE(j["X"] == 1000);
    REQUIRE(j["pi"] == 168);
    REQUIRE(j["sf"] == 68);
    REQUIRE(j["sophie_germain"] == 37);
    REQUIRE(j["sf_over_pi"] == 0.40476);

    const auto many = run_cli("density 100 1000");
    const json arr = json::parse(many.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    REQUIRE(arr[0]["X"] == 100);

    const std::string path = "/tmp/crsexp_cli_density_test.csv";
    std::remove(path.c_str());
    const auto csv = run_cli("density 1000 --csv " + path);
    REQUIRE(csv.exit_code == 0);
    std::ifstream in(path);
    std::string header, row;
    REQUIRE(std::getline(in, header));
    REQUIRE(header == "X,pi,sf,sophie_germain,gaps,sf_over_pi");
    REQUIRE(std::getline(in, row));
    REQUIRE(row == "1000,168,68,37,22,0.40476");
    std::remove(path.c_str());
}

TEST_CASE("verify-paper reports every harness group", "[cli]") {
    const auto r = run_cli("verify-paper");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 6);
    int ok_lines = 0;
    for (const auto& line : lines)
        if (line.rfind("ok   - ", 0) == 0) ++ok_lines;
    REQUIRE(ok_lines >= 6);
    REQUIRE(lines.back() == "all checks passed");
}
