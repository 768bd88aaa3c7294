#pragma once

// Modular arithmetic and multiplicative number theory primitives.
// All functions are pure and deterministic; contract violations throw
// std::invalid_argument.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crsexp::modarith {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

// b^e mod m for m >= 1; negative bases are reduced into [0, m).
inline i64 pow_mod(i64 base, u64 exp, i64 mod) {
    if (mod < 1) throw std::invalid_argument("pow_mod: modulus must be >= 1");
    const u64 m = static_cast<u64>(mod);
    u64 b = static_cast<u64>(((base % mod) + mod) % mod);
    u64 r = 1 % m;
    while (exp != 0) {
        if (exp & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    return static_cast<i64>(r);
}

// Deterministic primality for the full unsigned 64-bit range:
// Miller-Rabin with the fixed witness set {2,3,...,37} (no probabilistic error
// below 3.3 * 10^24, which covers every u64).
inline bool is_prime(i64 n) {
    if (n < 0) throw std::invalid_argument("is_prime: negative input");
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    const u64 u = static_cast<u64>(n);
    u64 d = u - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = static_cast<u64>(pow_mod(static_cast<i64>(a % u), d, n));
        if (x == 1 || x == u - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, u);
            if (x == u - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Ascending primes <= limit (sieve of Eratosthenes).
inline std::vector<i64> primes_up_to(i64 limit) {
    if (limit < 0) throw std::invalid_argument("primes_up_to: negative limit");
    std::vector<i64> out;
    if (limit < 2) return out;
    std::vector<std::uint8_t> composite(static_cast<std::size_t>(limit) + 1, 0);
    for (i64 i = 2; i * i <= limit; ++i)
        if (!composite[static_cast<std::size_t>(i)])
            for (i64 j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = 1;
    for (i64 i = 2; i <= limit; ++i)
        if (!composite[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

namespace detail {
// Small primes for trial-division factorization; covers cofactors up to 2^32,
// anything larger is finished off by is_prime / extended stepping.
inline const std::vector<i64>& small_primes() {
    static const std::vector<i64> sp = primes_up_to(65536);
    return sp;
}
}  // namespace detail

// Prime factorization (p, multiplicity), p ascending.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) throw std::invalid_argument("factorize: input must be >= 1");
    std::vector<std::pair<i64, int>> out;
    for (i64 p : detail::small_primes()) {
        if (p * p > n) break;
        if (n % p == 0) {
            int k = 0;
            while (n % p == 0) { n /= p; ++k; }
            out.emplace_back(p, k);
        }
    }
    if (n > 1) {
        if (is_prime(n)) {
            out.emplace_back(n, 1);
        } else {
            // cofactor beyond the small-prime table: continue odd stepping
            for (i64 d = 65537; d * d <= n; d += 2) {
                if (n % d == 0) {
                    int k = 0;
                    while (n % d == 0) { n /= d; ++k; }
                    out.emplace_back(d, k);
                }
            }
            if (n > 1) out.emplace_back(n, 1);
        }
    }
    return out;
}

// p-adic valuation; v_p(0) is infinite.
struct Valuation {
    bool infinite = false;
    i64 value = 0;
};

inline Valuation valuation(i64 p, i64 n) {
    if (!is_prime(p)) throw std::invalid_argument("valuation: p must be prime");
    if (n < 0) throw std::invalid_argument("valuation: n must be >= 0");
    if (n == 0) return {true, 0};
    i64 v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return {false, v};
}

inline i64 radical(i64 n) {
    if (n < 1) throw std::invalid_argument("radical: input must be >= 1");
    i64 r = 1;
    for (const auto& [p, k] : factorize(n)) r *= p;
    return r;
}

inline int omega(i64 n) {
    if (n < 1) throw std::invalid_argument("omega: input must be >= 1");
    return static_cast<int>(factorize(n).size());
}

inline bool is_squarefree(i64 n) {
    if (n < 1) throw std::invalid_argument("is_squarefree: input must be >= 1");
    for (const auto& [p, k] : factorize(n))
        if (k > 1) return false;
    return true;
}

inline int mobius(i64 n) {
    if (n < 1) throw std::invalid_argument("mobius: input must be >= 1");
    auto f = factorize(n);
    for (const auto& [p, k] : f)
        if (k > 1) return 0;
    return (f.size() % 2 == 0) ? 1 : -1;
}

inline i64 totient(i64 n) {
    if (n < 1) throw std::invalid_argument("totient: input must be >= 1");
    i64 t = n;
    for (const auto& [p, k] : factorize(n)) t -= t / p;
    return t;
}

// Smallest primitive root mod n, or nullopt when the unit group is not cyclic
// (cyclic moduli: 1, 2, 4, p^k and 2p^k for odd primes p).
inline std::optional<i64> primitive_root(i64 n) {
    if (n < 2) throw std::invalid_argument("primitive_root: input must be >= 2");
    auto cyclic = [](i64 m) {
        if (m == 2 || m == 4) return true;
        if (m % 4 == 0) return false;
        if (m % 2 == 0) m /= 2;
        auto f = factorize(m);
        return f.size() == 1 && f[0].first != 2;
    };
    if (!cyclic(n)) return std::nullopt;
    const i64 phi = totient(n);
    std::vector<i64> phi_primes;
    for (const auto& [p, k] : factorize(phi)) phi_primes.push_back(p);
    for (i64 g = 1; g < n; ++g) {
        if (std::gcd(g, n) != 1) continue;
        bool ok = true;
        for (i64 q : phi_primes)
            if (pow_mod(g, static_cast<u64>(phi / q), n) == 1) { ok = false; break; }
        if (ok) return g;
    }
    return std::nullopt;  // unreachable for cyclic moduli
}

// Legendre symbol via the Euler criterion; p must be an odd prime.
inline int legendre(i64 z, i64 p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
    const i64 r = pow_mod(z, static_cast<u64>((p - 1) / 2), p);
    if (r == 0) return 0;
    if (r == 1) return 1;
    if (r == p - 1) return -1;
    throw std::logic_error("legendre: Euler criterion returned a non-root");
}

// s is a Sophie Germain prime: s and 2s+1 both prime.
inline bool is_sophie_germain(i64 s) {
    if (s < 1) throw std::invalid_argument("is_sophie_germain: input must be >= 1");
    return is_prime(s) && is_prime(2 * s + 1);
}

}  // namespace crsexp::modarith
