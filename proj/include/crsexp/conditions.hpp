#pragma once

// Necessary-condition filters and the three-way classification:
//   ExponentialProven      - a verified witness is attached
//   NotExponentialProven   - some necessary condition fails
//   ConjecturalGap         - n = 2p survives every filter but (p-1)/2 is not
//                            a Sophie Germain prime, so no theorem applies
//                            in either direction.
//
// Filters run in a fixed order and stop at the first reject, so a rejected n
// always names the same check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crsexp/constructor.hpp"
#include "crsexp/counts.hpp"
#include "crsexp/modarith.hpp"
#include "crsexp/residue.hpp"

namespace crsexp::conditions {

using modarith::i64;

enum class Shape { small_table, odd_r, two_r, four_r, other };

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ConditionReport {
    i64 n = 0;
    Shape shape = Shape::other;
    std::vector<Check> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    // Name of the first rejecting check, or empty.
    std::string rejecting_check() const {
        for (const auto& c : checks)
            if (!c.passed) return c.name;
        return {};
    }
};

enum class Status { ExponentialProven, NotExponentialProven, ConjecturalGap };

struct Classification {
    i64 n = 0;
    Status status = Status::NotExponentialProven;
    std::string reason;
    std::optional<residue::Witness> witness;  // present and verified iff ExponentialProven
    ConditionReport report;
};

namespace detail {

inline Shape shape_of(i64 n) {
    if (n >= 2 && n <= 7) return Shape::small_table;
    const i64 v2 = modarith::valuation(2, n).value;
    i64 odd = n;
    while (odd % 2 == 0) odd /= 2;
    const bool sf = (odd == 1) || modarith::is_squarefree(odd);
    if (!sf) return Shape::other;
    if (v2 == 0) return Shape::odd_r;
    if (v2 == 1) return Shape::two_r;
    if (v2 == 2) return Shape::four_r;
    return Shape::other;
}

inline std::string shape_name(Shape s) {
    switch (s) {
        case Shape::small_table: return "small_table";
        case Shape::odd_r: return "odd_r";
        case Shape::two_r: return "two_r";
        case Shape::four_r: return "four_r";
        case Shape::other: return "other";
    }
    return "other";
}

}  // namespace detail

// Multiples of rad(n) below n must take exponents e with rad(n)^e != 0 mod n,
// and there are only max_p v_p(n) - 1 such exponents.  Checked by direct
// enumeration of rad(n)^e, then restated as the shape condition: survivors
// are exactly n = r, 2r, 4r with r odd squarefree.
inline ConditionReport radical_filter(i64 n) {
    if (n < 8) throw std::invalid_argument("radical_filter: n must be >= 8");
    ConditionReport rep;
    rep.n = n;
    rep.shape = detail::shape_of(n);

    const i64 rad = modarith::radical(n);
    const i64 needed = n / rad - 1;  // bases rad, 2*rad, ..., n - rad
    i64 usable = 0;                  // exponents e in [1, n] with n not dividing rad^e
    i64 acc = rad % n;
    for (i64 e = 1; e <= n && acc != 0; ++e) {
        ++usable;
        acc = static_cast<i64>(modarith::mul_mod(static_cast<modarith::u64>(acc),
                                                 static_cast<modarith::u64>(rad % n),
                                                 static_cast<modarith::u64>(n)));
    }
    const bool enough = usable >= needed;
    rep.checks.push_back({"radical_exponents", enough,
                          std::to_string(needed) + " bases need nonzero powers of rad(n)=" +
                              std::to_string(rad) + ", " + std::to_string(usable) +
                              " exponents available"});
    if (!enough) return rep;

    const bool shape_ok = rep.shape == Shape::odd_r || rep.shape == Shape::two_r ||
                          rep.shape == Shape::four_r;
    rep.checks.push_back({"radical_shape", shape_ok,
                          "shape " + detail::shape_name(rep.shape) +
                              (shape_ok ? " is r/2r/4r with r odd squarefree" : " is not r/2r/4r")});
    return rep;
}

// The covered classes contain all squares, so n needs at least floor(n/2)
// distinct squares mod n.  Eliminates every 4r and every r/2r with omega(r) >= 2;
// survivors are exactly primes and doubled primes.
inline ConditionReport qr_filter(i64 n) {
    if (n < 8) throw std::invalid_argument("qr_filter: n must be >= 8");
    ConditionReport rep;
    rep.n = n;
    rep.shape = detail::shape_of(n);
    const i64 q = counts::qr_count(n).value;
    const i64 bound = n / 2;
    const bool ok = q >= bound;
    rep.checks.push_back({"qr_lower_bound", ok,
                          "squares mod n: " + std::to_string(q) + ", required >= " +
                              std::to_string(bound)});
    return rep;
}

// For odd prime survivors p: p-1 must be squarefree with exactly two prime
// factors, which together say (p-1)/2 is a Sophie Germain prime.
inline ConditionReport odd_filters(i64 p) {
    if (!modarith::is_prime(p) || p < 11 || p % 2 == 0)
        throw std::invalid_argument("odd_filters: input must be an odd prime >= 11");
    ConditionReport rep;
    rep.n = p;
    rep.shape = detail::shape_of(p);
    const bool sf = modarith::is_squarefree(p - 1);
    rep.checks.push_back({"odd_shifted_squarefree", sf,
                          "p-1 = " + std::to_string(p - 1) + (sf ? " is squarefree" : " has a square factor")});
    if (!sf) return rep;
    const int om = modarith::omega(p - 1);
    const bool two = om == 2;
    rep.checks.push_back({"odd_shifted_two_prime_factors", two,
                          "omega(p-1) = " + std::to_string(om) + ", required 2"});
    return rep;
}

// For even survivors n = 2p: p-1 must have 2-adic valuation exactly 1 and be
// squarefree.
inline ConditionReport even_filters(i64 n) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("even_filters: n must be even and >= 8");
    const i64 p = n / 2;
    if (!modarith::is_prime(p)) throw std::invalid_argument("even_filters: n/2 must be prime");
    ConditionReport rep;
    rep.n = n;
    rep.shape = detail::shape_of(n);
    const i64 v2 = modarith::valuation(2, p - 1).value;
    const bool v_ok = v2 == 1;
    rep.checks.push_back({"even_shifted_valuation", v_ok,
                          "v_2(p-1) = " + std::to_string(v2) + ", required 1"});
    if (!v_ok) return rep;
    const bool sf = modarith::is_squarefree(p - 1);
    rep.checks.push_back({"even_shifted_squarefree", sf,
                          "p-1 = " + std::to_string(p - 1) + (sf ? " is squarefree" : " has a square factor")});
    return rep;
}

namespace detail {

inline void append_checks(ConditionReport& into, const ConditionReport& from) {
    for (const auto& c : from.checks) into.checks.push_back(c);
}

// Shared classification pipeline; witness construction is skipped when
// want_witness is false (used by bulk status queries).
inline Classification classify_core(i64 n, bool want_witness) {
    if (n < 2) throw std::invalid_argument("classify: n must be >= 2");
    Classification cl;
    cl.n = n;
    cl.report.n = n;
    cl.report.shape = shape_of(n);

    if (n <= 7) {
        cl.status = Status::ExponentialProven;
        cl.reason = "fixed table row, verified";
        cl.report.checks.push_back({"small_table", true, "n in [2, 7] has a tabulated witness"});
        if (want_witness) {
            auto cr = constructor::table_witness(n);
            cl.witness = std::move(cr.witness);
        }
        return cl;
    }

    const auto rad_rep = radical_filter(n);
    append_checks(cl.report, rad_rep);
    if (!rad_rep.passed()) {
        cl.status = Status::NotExponentialProven;
        cl.reason = rad_rep.rejecting_check() + ": " + rad_rep.checks.back().detail;
        return cl;
    }

    const auto qr_rep = qr_filter(n);
    append_checks(cl.report, qr_rep);
    if (!qr_rep.passed()) {
        cl.status = Status::NotExponentialProven;
        cl.reason = qr_rep.rejecting_check() + ": " + qr_rep.checks.back().detail;
        return cl;
    }

    if (n % 2 == 1) {
        // odd survivors of the square-count bound are prime
        if (!modarith::is_prime(n))
            throw std::logic_error("classify: odd composite survived the square-count bound");
        const auto of = odd_filters(n);
        append_checks(cl.report, of);
        if (!of.passed()) {
            cl.status = Status::NotExponentialProven;
            cl.reason = of.rejecting_check() + ": " + of.checks.back().detail;
            return cl;
        }
        cl.status = Status::ExponentialProven;
        cl.reason = "safe-prime construction: (n-1)/2 is a Sophie Germain prime";
        if (want_witness) {
            auto cr = constructor::construct_odd(n);
            if (!cr.ok())
                throw std::logic_error("classify: odd construction failed for n = " + std::to_string(n) +
                                       ": " + cr.error);
            cl.witness = std::move(cr.witness);
        }
        return cl;
    }

    const i64 p = n / 2;
    if (!modarith::is_prime(p))
        throw std::logic_error("classify: even survivor of the square-count bound is not 2*prime");
    const auto ef = even_filters(n);
    append_checks(cl.report, ef);
    if (!ef.passed()) {
        cl.status = Status::NotExponentialProven;
        cl.reason = ef.rejecting_check() + ": " + ef.checks.back().detail;
        return cl;
    }
    if (modarith::is_sophie_germain((p - 1) / 2)) {
        cl.status = Status::ExponentialProven;
        cl.reason = "doubled safe-prime construction: (n/2-1)/2 is a Sophie Germain prime";
        if (want_witness) {
            auto cr = constructor::construct_even(n);
            if (!cr.ok())
                throw std::logic_error("classify: even construction failed for n = " + std::to_string(n) +
                                       ": " + cr.error);
            cl.witness = std::move(cr.witness);
        }
        return cl;
    }
    cl.status = Status::ConjecturalGap;
    cl.reason = "passes every necessary filter, but (n/2-1)/2 = " + std::to_string((p - 1) / 2) +
                " is not a Sophie Germain prime, so neither direction is proven";
    return cl;
}

}  // namespace detail

// Full classification; an ExponentialProven result carries a verified witness.
inline Classification classify(i64 n) { return detail::classify_core(n, true); }

// Status-only classification (no witness construction); same decision path.
inline Status classify_status(i64 n) { return detail::classify_core(n, false).status; }

}  // namespace crsexp::conditions
