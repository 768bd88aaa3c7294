#pragma once

// Density bookkeeping over [1, X]: prime counts, primes with squarefree
// shift p-1, Sophie Germain counts against the Hardy-Littlewood style
// estimate 2*C2*X/ln(X)^2, and enumeration of conjectural-gap candidates.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "crsexp/conditions.hpp"
#include "crsexp/modarith.hpp"

namespace crsexp::analytics {

using modarith::i64;

inline constexpr double kArtinAlpha = 0.37395;   // density of primes with squarefree shift
inline constexpr double kTwinPrimeC2 = 0.66016;  // Hardy-Littlewood twin-prime constant

struct DensityReport {
    i64 X = 0;
    i64 pi = 0;              // primes <= X
    i64 sf = 0;              // primes p <= X with p-1 squarefree
    i64 sophie_germain = 0;  // s <= X with s and 2s+1 prime
    std::vector<i64> gaps;   // conjectural-gap candidates <= X, ascending
    double sf_over_pi = 0.0;
    double sf_over_x_lnx = 0.0;  // sf / (X / ln X)
    double sg_over_estimate = 0.0;  // sophie_germain / (2*C2*X/ln(X)^2)
};

struct BoundCheckResult {
    i64 X = 0;
    bool holds = false;       // |gaps <= X| <= |{p <= X/2 prime, p-1 squarefree}|
    i64 gap_count = 0;
    i64 sf_half_count = 0;
    double gap_coefficient = 0.0;  // |gaps <= X| * ln(X) / X, reported only
};

namespace detail {

// prime[i] = 1 iff i prime, for i in [0, limit]
inline std::vector<std::uint8_t> prime_sieve(i64 limit) {
    std::vector<std::uint8_t> is_p(static_cast<std::size_t>(limit) + 1, 1);
    is_p[0] = 0;
    if (limit >= 1) is_p[1] = 0;
    for (i64 i = 2; i * i <= limit; ++i)
        if (is_p[static_cast<std::size_t>(i)])
            for (i64 j = i * i; j <= limit; j += i) is_p[static_cast<std::size_t>(j)] = 0;
    return is_p;
}

// sf[i] = 1 iff i squarefree, for i in [0, limit]; 0 is marked non-squarefree
inline std::vector<std::uint8_t> squarefree_sieve(i64 limit) {
    std::vector<std::uint8_t> sf(static_cast<std::size_t>(limit) + 1, 1);
    sf[0] = 0;
    for (i64 d = 2; d * d <= limit; ++d)
        for (i64 j = d * d; j <= limit; j += d * d) sf[static_cast<std::size_t>(j)] = 0;
    return sf;
}

}  // namespace detail

// Every n <= X whose classification is the conjectural gap, ascending.  Gap
// status requires n = 2p with p prime, so only those n are run through the
// full classifier.
inline std::vector<i64> gap_candidates(i64 X) {
    if (X < 2) throw std::invalid_argument("gap_candidates: X must be >= 2");
    std::vector<i64> out;
    for (i64 n = 8; n <= X; n += 2) {
        if (!modarith::is_prime(n / 2)) continue;
        if (conditions::classify_status(n) == conditions::Status::ConjecturalGap)
            out.push_back(n);
    }
    return out;
}

// Counts over [1, X] plus the gap list; X >= 100.
inline DensityReport density_report(i64 X) {
    if (X < 100) throw std::invalid_argument("density_report: X must be >= 100");
    DensityReport r;
    r.X = X;
    const auto is_p = detail::prime_sieve(2 * X + 1);  // 2s+1 reaches 2X+1
    const auto sf = detail::squarefree_sieve(X);
    for (i64 i = 2; i <= X; ++i) {
        if (!is_p[static_cast<std::size_t>(i)]) continue;
        ++r.pi;
        if (sf[static_cast<std::size_t>(i - 1)]) ++r.sf;
        if (is_p[static_cast<std::size_t>(2 * i + 1)]) ++r.sophie_germain;
    }
    r.gaps = gap_candidates(X);
    const double lx = std::log(static_cast<double>(X));
    r.sf_over_pi = static_cast<double>(r.sf) / static_cast<double>(r.pi);
    r.sf_over_x_lnx = static_cast<double>(r.sf) / (static_cast<double>(X) / lx);
    r.sg_over_estimate =
        static_cast<double>(r.sophie_germain) / (2.0 * kTwinPrimeC2 * static_cast<double>(X) / (lx * lx));
    return r;
}

// Containment of the gap candidates inside the doubled squarefree-shift
// primes: |gaps <= X| <= |{p <= X/2 : p prime, p-1 squarefree}|.  The
// coefficient |gaps|*ln(X)/X is reported, never asserted (it is an asymptotic
// claim with no effective finite range).
inline BoundCheckResult bound_check(i64 X) {
    if (X < 124) throw std::invalid_argument("bound_check: X must be >= 124");
    BoundCheckResult r;
    r.X = X;
    r.gap_count = static_cast<i64>(gap_candidates(X).size());
    const i64 half = X / 2;
    const auto is_p = detail::prime_sieve(half);
    const auto sf = detail::squarefree_sieve(half);
    for (i64 p = 2; p <= half; ++p)
        if (is_p[static_cast<std::size_t>(p)] && sf[static_cast<std::size_t>(p - 1)]) ++r.sf_half_count;
    r.holds = r.gap_count <= r.sf_half_count;
    r.gap_coefficient =
        static_cast<double>(r.gap_count) * std::log(static_cast<double>(X)) / static_cast<double>(X);
    return r;
}

// One row per report; ratios printed to 5 decimal places.
inline void write_density_csv(std::ostream& os, const std::vector<DensityReport>& rows) {
    os << "X,pi,sf,sophie_germain,gaps,sf_over_pi\n";
    char buf[32];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.5f", r.sf_over_pi);
        os << r.X << ',' << r.pi << ',' << r.sf << ',' << r.sophie_germain << ','
           << r.gaps.size() << ',' << buf << '\n';
    }
}

}  // namespace crsexp::analytics
