#pragma once

// Exact counts of distinguished residue classes mod n: quadratic residues,
// m-th power residues, and multiples of m.  Each count arrives with the route
// that produced it (closed formula vs. exhaustive enumeration) so the two can
// be cross-checked without collapsing them.

#include <cstdint>
#include <numeric>
#include <vector>

#include "crsexp/modarith.hpp"

namespace crsexp::counts {

using modarith::i64;
using modarith::u64;

enum class CountMethod { formula, brute_force };

struct ResidueCount {
    i64 value = 0;
    CountMethod method = CountMethod::formula;
};

namespace detail {

// |{z^2 mod q : z in [0, q)}| by direct enumeration, q >= 1.
inline i64 qr_count_direct(i64 q) {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(q), 0);
    i64 cnt = 0;
    for (i64 z = 0; z < q; ++z) {
        const auto c = static_cast<std::size_t>(modarith::mul_mod(
            static_cast<u64>(z), static_cast<u64>(z), static_cast<u64>(q)));
        if (!seen[c]) { seen[c] = 1; ++cnt; }
    }
    return cnt;
}

// |{z^m mod q : z in [0, q)}| by direct enumeration, q >= 1, m >= 1.
inline i64 power_count_direct(i64 q, i64 m) {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(q), 0);
    i64 cnt = 0;
    for (i64 z = 0; z < q; ++z) {
        const auto c = static_cast<std::size_t>(modarith::pow_mod(z, static_cast<u64>(m), q));
        if (!seen[c]) { seen[c] = 1; ++cnt; }
    }
    return cnt;
}

}  // namespace detail

// Count of distinct squares mod n, by full enumeration of z^2 mod n.
inline ResidueCount qr_count_brute(i64 n) {
    if (n < 1) throw std::invalid_argument("qr_count_brute: n must be >= 1");
    return {detail::qr_count_direct(n), CountMethod::brute_force};
}

// Count of distinct squares mod n via multiplicativity over prime powers.
// Odd prime p contributes (p+1)/2; 2 and 4 contribute 2; other prime powers
// are enumerated directly (still the multiplicative route).
inline ResidueCount qr_count(i64 n) {
    if (n < 1) throw std::invalid_argument("qr_count: n must be >= 1");
    i64 total = 1;
    for (const auto& [p, k] : modarith::factorize(n)) {
        i64 pk = 1;
        for (int j = 0; j < k; ++j) pk *= p;
        i64 part;
        if (p == 2) {
            part = (k <= 2) ? 2 : detail::qr_count_direct(pk);
        } else {
            part = (k == 1) ? (p + 1) / 2 : detail::qr_count_direct(pk);
        }
        total *= part;
    }
    return {total, CountMethod::formula};
}

// Count of distinct m-th powers mod n, by full enumeration.
inline ResidueCount power_count_brute(i64 n, i64 m) {
    if (n < 2) throw std::invalid_argument("power_count_brute: n must be >= 2");
    if (m < 1) throw std::invalid_argument("power_count_brute: m must be >= 1");
    return {detail::power_count_direct(n, m), CountMethod::brute_force};
}

// Count of distinct m-th powers mod n.  Closed forms exist for prime n
// ((n-1)/gcd(n-1, m) + 1) and for n = 2p with p an odd prime (twice the
// count mod p); every other modulus falls back to enumeration.
inline ResidueCount power_count(i64 n, i64 m) {
    if (n < 2) throw std::invalid_argument("power_count: n must be >= 2");
    if (m < 1) throw std::invalid_argument("power_count: m must be >= 1");
    if (modarith::is_prime(n))
        return {(n - 1) / std::gcd(n - 1, m) + 1, CountMethod::formula};
    if (n % 2 == 0 && n / 2 > 2 && modarith::is_prime(n / 2)) {
        const i64 p = n / 2;
        return {2 * ((p - 1) / std::gcd(p - 1, m) + 1), CountMethod::formula};
    }
    return {detail::power_count_direct(n, m), CountMethod::brute_force};
}

// Count of nonzero multiples of m in [1, n-1]: floor((n-1)/m).
inline ResidueCount multiples_count(i64 n, i64 m) {
    if (n < 2) throw std::invalid_argument("multiples_count: n must be >= 2");
    if (m < 1) throw std::invalid_argument("multiples_count: m must be >= 1");
    return {(n - 1) / m, CountMethod::formula};
}

inline ResidueCount multiples_count_brute(i64 n, i64 m) {
    if (n < 2) throw std::invalid_argument("multiples_count_brute: n must be >= 2");
    if (m < 1) throw std::invalid_argument("multiples_count_brute: m must be >= 1");
    i64 cnt = 0;
    for (i64 z = 1; z < n; ++z)
        if (z % m == 0) ++cnt;
    return {cnt, CountMethod::brute_force};
}

}  // namespace crsexp::counts
