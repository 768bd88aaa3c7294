#pragma once

// JSON serialization for every public result type.  Keys are emitted in
// sorted order (nlohmann::json's default object ordering), so identical
// inputs always produce identical bytes.
//
// Schemas:
//   Witness        {"n": int, "sigma": [int], "verified": bool}
//   Classification {"n": int, "status": "exponential"|"not_exponential"|
//                   "conjectural_gap", "reason": str, "witness": Witness|null}
//   SearchOutcome  {"n": int, "verdict": "witness_found"|"exhaustively_refuted"|
//                   "inconclusive", "witness": Witness|null, "stats": {...}}
//   CountOutcome   {"n": int, "verdict": "counted"|"inconclusive", "count": int,
//                   "stats": {...}}
//   LogRecord      {"n": int, "stage": "paper_recipe"|"repair", "outcome": str}
//   DensityReport  {"X", "pi", "sf", "sophie_germain", "gaps", "sf_over_pi",
//                   "sf_over_x_lnx", "sg_over_estimate", "alpha", "c2"}
//   ScanRecord     {"n", "classification", "oracle_verdict": str|null,
//                   "timestamp": str|null, "tool_version": str}
//
// Stats elapsed time is nondeterministic, so it is only included when
// explicitly requested (with_timings).

#include <cmath>
#include <optional>
#include <string>

#include <json.hpp>

#include "crsexp/analytics.hpp"
#include "crsexp/conditions.hpp"
#include "crsexp/constructor.hpp"
#include "crsexp/oracle.hpp"
#include "crsexp/residue.hpp"

namespace crsexp::json_io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

// Ratios are reported to 5 decimal places.
inline double round5(double x) { return std::round(x * 1e5) / 1e5; }

inline json witness_json(const residue::Witness& w) {
    return json{{"n", w.n()}, {"sigma", w.sigma()}, {"verified", w.verified()}};
}

inline std::string status_string(conditions::Status s) {
    switch (s) {
        case conditions::Status::ExponentialProven: return "exponential";
        case conditions::Status::NotExponentialProven: return "not_exponential";
        case conditions::Status::ConjecturalGap: return "conjectural_gap";
    }
    return "not_exponential";
}

inline std::string verdict_string(oracle::Verdict v) {
    switch (v) {
        case oracle::Verdict::witness_found: return "witness_found";
        case oracle::Verdict::exhaustively_refuted: return "exhaustively_refuted";
        case oracle::Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

inline json classification_json(const conditions::Classification& c) {
    json j{{"n", c.n}, {"status", status_string(c.status)}, {"reason", c.reason}};
    j["witness"] = c.witness ? witness_json(*c.witness) : json(nullptr);
    return j;
}

inline json stats_json(const oracle::SearchStats& s, bool with_timings = false) {
    json j{{"nodes", s.nodes},
           {"max_depth", s.max_depth},
           {"node_budget_hit", s.node_budget_hit},
           {"time_budget_hit", s.time_budget_hit}};
    if (with_timings) j["elapsed_secs"] = s.elapsed_secs;
    return j;
}

inline json search_outcome_json(const oracle::SearchOutcome& o, bool with_timings = false) {
    json j{{"n", o.n}, {"verdict", verdict_string(o.verdict)}};
    j["witness"] = o.witness ? witness_json(*o.witness) : json(nullptr);
    j["stats"] = stats_json(o.stats, with_timings);
    return j;
}

inline json count_outcome_json(const oracle::CountOutcome& o, bool with_timings = false) {
    json j{{"n", o.n}, {"verdict", o.inconclusive ? "inconclusive" : "counted"}};
    if (!o.inconclusive) j["count"] = o.count;
    j["stats"] = stats_json(o.stats, with_timings);
    return j;
}

inline json log_record_json(const constructor::LogRecord& r) {
    return json{{"n", r.n}, {"stage", r.stage}, {"outcome", r.outcome}};
}

inline json density_report_json(const analytics::DensityReport& r) {
    return json{{"X", r.X},
                {"pi", r.pi},
                {"sf", r.sf},
                {"sophie_germain", r.sophie_germain},
                {"gaps", r.gaps},
                {"sf_over_pi", round5(r.sf_over_pi)},
                {"sf_over_x_lnx", round5(r.sf_over_x_lnx)},
                {"sg_over_estimate", round5(r.sg_over_estimate)},
                {"alpha", analytics::kArtinAlpha},
                {"c2", analytics::kTwinPrimeC2}};
}

inline json bound_check_json(const analytics::BoundCheckResult& r) {
    return json{{"X", r.X},
                {"holds", r.holds},
                {"gap_count", r.gap_count},
                {"sf_half_count", r.sf_half_count},
                {"gap_coefficient", round5(r.gap_coefficient)}};
}

}  // namespace crsexp::json_io
