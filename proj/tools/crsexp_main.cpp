// crsexp: decide whether n admits a permutation sigma of {1..n} such that
// 1^sigma(1), ..., n^sigma(n) covers every residue class mod n exactly once.
//
// Subcommands: classify, search, scan, density, verify-paper.
// Exit codes: 0 success, 2 usage error, 3 inconclusive search, 4 disagreement
// between the theory-based classification and the exhaustive search.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crsexp/appcli.hpp"

namespace {

using crsexp::modarith::i64;

constexpr i64 kMaxN = std::numeric_limits<i64>::max();

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complete residue systems at the exponent: classification, witnesses, search"};
    app.require_subcommand(1);
    app.set_version_flag("--version", crsexp::json_io::kToolVersion);

    // classify
    i64 classify_n = 0;
    auto* cmd_classify = app.add_subcommand("classify", "classify n and print the result as JSON");
    cmd_classify->add_option("n", classify_n, "modulus to classify")
        ->required()
        ->check(CLI::Range(static_cast<i64>(2), kMaxN));

    // search
    i64 search_n = 0;
    std::uint64_t budget_nodes = 0;
    double budget_secs = 0.0;
    int search_jobs = 1;
    bool count_mode = false;
    bool with_timings = false;
    auto* cmd_search = app.add_subcommand("search", "run the exhaustive search for n");
    cmd_search->add_option("n", search_n, "modulus to search")
        ->required()
        ->check(CLI::Range(static_cast<i64>(2), kMaxN));
    cmd_search->add_option("--budget-nodes", budget_nodes, "node budget (0 = unbounded)");
    cmd_search->add_option("--budget-secs", budget_secs, "time budget in seconds (0 = unbounded)");
    cmd_search->add_option("--jobs", search_jobs, "parallel width")->check(CLI::Range(1, 4096));
    cmd_search->add_flag("--count", count_mode, "count all witnesses instead of deciding existence");
    cmd_search->add_flag("--timings", with_timings,
                         "include elapsed time in the stats (not byte-stable)");

    // scan
    i64 scan_lo = 0, scan_hi = 0;
    i64 oracle_max = 24;
    int scan_jobs = 1;
    std::string scan_out;
    auto* cmd_scan = app.add_subcommand("scan", "classify a range, cross-checked by the search");
    cmd_scan->add_option("lo", scan_lo, "first n")->required()->check(
        CLI::Range(static_cast<i64>(2), kMaxN));
    cmd_scan->add_option("hi", scan_hi, "last n")->required()->check(
        CLI::Range(static_cast<i64>(2), kMaxN));
    cmd_scan->add_option("--oracle-max", oracle_max,
                         "run the exhaustive cross-check for n up to this bound (default 24)");
    cmd_scan->add_option("--jobs", scan_jobs, "worker threads")->check(CLI::Range(1, 4096));
    cmd_scan->add_option("--out", scan_out, "write JSONL here instead of stdout");

    // density
    std::vector<i64> density_xs;
    std::string density_csv;
    auto* cmd_density = app.add_subcommand("density", "prime/squarefree/Sophie Germain densities");
    cmd_density->add_option("X", density_xs, "checkpoints (each >= 100)")
        ->required()
        ->check(CLI::Range(static_cast<i64>(100), kMaxN));
    cmd_density->add_option("--csv", density_csv, "also write one CSV row per checkpoint");

    // verify-paper
    auto* cmd_verify = app.add_subcommand(
        "verify-paper", "re-run the reproduction harness and print a pass/fail summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; every parse problem is a usage error
    }

    try {
        if (cmd_classify->parsed()) return crsexp::appcli::cmd_classify(classify_n, std::cout);
        if (cmd_search->parsed()) {
            crsexp::oracle::SearchConfig cfg;
            cfg.node_budget = budget_nodes;
            cfg.time_budget_secs = budget_secs;
            cfg.parallel_width = search_jobs;
            return crsexp::appcli::cmd_search(search_n, cfg, count_mode, with_timings, std::cout);
        }
        if (cmd_scan->parsed()) {
            if (scan_lo > scan_hi) {
                std::cerr << "scan: lo must be <= hi\n";
                return 2;
            }
            if (!scan_out.empty()) {
                std::ofstream f(scan_out);
                if (!f) {
                    std::cerr << "cannot open " << scan_out << " for writing\n";
                    return 1;
                }
                return crsexp::appcli::cmd_scan(scan_lo, scan_hi, oracle_max, scan_jobs, f,
                                                std::cerr);
            }
            return crsexp::appcli::cmd_scan(scan_lo, scan_hi, oracle_max, scan_jobs, std::cout,
                                            std::cerr);
        }
        if (cmd_density->parsed())
            return crsexp::appcli::cmd_density(density_xs, density_csv, std::cout, std::cerr);
        if (cmd_verify->parsed()) return crsexp::appcli::cmd_verify_paper(std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
