#pragma once

// Complete residue systems, witness permutations, and the cached power table.
//
// A witness for n is a permutation sigma of {1..n} such that
// {1^sigma(1), 2^sigma(2), ..., n^sigma(n)} covers every class mod n exactly
// once.  Witness.verified() can only be flipped to true by verify_witness,
// so downstream code may trust the flag.

#include <cstdlib>
#include <cstdint>
#include <string>
#include <vector>

#include "crsexp/modarith.hpp"

namespace crsexp::residue {

using modarith::i64;
using modarith::u64;

// values is interpreted mod n; true iff every class 0..n-1 appears exactly once.
inline bool is_crs(const std::vector<i64>& values, i64 n) {
    if (n < 1) throw std::invalid_argument("is_crs: n must be >= 1");
    if (static_cast<i64>(values.size()) != n)
        throw std::invalid_argument("is_crs: expected exactly n values");
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    for (i64 v : values) {
        const i64 c = ((v % n) + n) % n;
        if (seen[static_cast<std::size_t>(c)]) return false;
        seen[static_cast<std::size_t>(c)] = 1;
    }
    return true;
}

// Multiset congruence: A and B cover the classes mod m with equal multiplicity.
inline bool check_sim(const std::vector<i64>& a, const std::vector<i64>& b, i64 m) {
    if (m < 1) throw std::invalid_argument("check_sim: modulus must be >= 1");
    if (a.size() != b.size())
        throw std::invalid_argument("check_sim: lists must have equal length");
    std::vector<i64> count(static_cast<std::size_t>(m), 0);
    for (i64 v : a) ++count[static_cast<std::size_t>(((v % m) + m) % m)];
    for (i64 v : b) --count[static_cast<std::size_t>(((v % m) + m) % m)];
    for (i64 c : count)
        if (c != 0) return false;
    return true;
}

class Witness;
struct VerifyResult;
inline VerifyResult verify_witness(Witness& w);

class Witness {
 public:
    Witness() = default;
    Witness(i64 n, std::vector<i64> sigma) : n_(n), sigma_(std::move(sigma)) {}

    i64 n() const { return n_; }
    const std::vector<i64>& sigma() const { return sigma_; }  // 1-indexed: sigma()[i-1] = sigma(i)
    bool verified() const { return verified_; }

 private:
    i64 n_ = 0;
    std::vector<i64> sigma_;
    bool verified_ = false;

    friend VerifyResult verify_witness(Witness& w);
};

struct VerifyResult {
    enum class Status { ok, not_a_permutation, not_a_crs };
    Status status = Status::ok;
    i64 duplicate_class = -1;  // smallest repeated class mod n when not_a_crs
    std::string detail;

    bool ok() const { return status == Status::ok; }
};

// Recomputes every i^sigma(i) mod n and checks the two witness properties.
// On success the witness's verified flag is set; any failure leaves it false.
inline VerifyResult verify_witness(Witness& w) {
    w.verified_ = false;
    const i64 n = w.n();
    if (n < 1) return {VerifyResult::Status::not_a_permutation, -1, "n must be >= 1"};
    const auto& sigma = w.sigma();
    if (static_cast<i64>(sigma.size()) != n)
        return {VerifyResult::Status::not_a_permutation, -1,
                "sigma has " + std::to_string(sigma.size()) + " entries, expected " + std::to_string(n)};
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n + 1), 0);
    for (i64 v : sigma) {
        if (v < 1 || v > n)
            return {VerifyResult::Status::not_a_permutation, -1,
                    "entry " + std::to_string(v) + " outside [1, n]"};
        if (seen[static_cast<std::size_t>(v)])
            return {VerifyResult::Status::not_a_permutation, -1,
                    "entry " + std::to_string(v) + " repeats"};
        seen[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<i64> classes(static_cast<std::size_t>(n), 0);
    for (i64 i = 1; i <= n; ++i)
        ++classes[static_cast<std::size_t>(
            modarith::pow_mod(i, static_cast<u64>(sigma[static_cast<std::size_t>(i - 1)]), n))];
    for (i64 c = 0; c < n; ++c) {
        if (classes[static_cast<std::size_t>(c)] > 1)
            return {VerifyResult::Status::not_a_crs, c,
                    "class " + std::to_string(c) + " mod " + std::to_string(n) + " is covered twice"};
    }
    // n values, no class twice => every class exactly once
    w.verified_ = true;
    return {VerifyResult::Status::ok, -1, ""};
}

struct TableCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline i64 max_table_n() {
    if (const char* s = std::getenv("CRS_MAX_TABLE_N")) {
        char* end = nullptr;
        const long long v = std::strtoll(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return static_cast<i64>(v);
    }
    return 4096;
}
}  // namespace detail

// Dense table of i^e mod n for i, e in [1, n].  Memory is n^2 * 4 bytes, so
// the size is capped by the CRS_MAX_TABLE_N environment variable (default 4096).
class PowerTable {
 public:
    explicit PowerTable(i64 n) : n_(n) {
        if (n < 1) throw std::invalid_argument("PowerTable: n must be >= 1");
        const i64 cap = detail::max_table_n();
        if (n > cap)
            throw TableCapExceeded("PowerTable: n = " + std::to_string(n) +
                                   " exceeds CRS_MAX_TABLE_N = " + std::to_string(cap));
        vals_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (i64 i = 1; i <= n; ++i) {
            const u64 base = static_cast<u64>(i % n);
            u64 acc = 1 % static_cast<u64>(n);
            for (i64 e = 1; e <= n; ++e) {
                acc = (acc * base) % static_cast<u64>(n);
                vals_[idx(i, e)] = static_cast<std::uint32_t>(acc);
            }
        }
    }

    i64 n() const { return n_; }

    // i^e mod n for 1 <= i, e <= n
    std::uint32_t at(i64 i, i64 e) const {
        if (i < 1 || i > n_ || e < 1 || e > n_)
            throw std::invalid_argument("PowerTable::at: index outside [1, n]");
        return vals_[idx(i, e)];
    }

 private:
    std::size_t idx(i64 i, i64 e) const {
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(e - 1);
    }

    i64 n_;
    std::vector<std::uint32_t> vals_;
};

inline PowerTable power_table(i64 n) { return PowerTable(n); }

}  // namespace crsexp::residue
