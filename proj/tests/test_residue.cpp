#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#include <crsexp/modarith.hpp>
#include <crsexp/residue.hpp>

using namespace crsexp;
using modarith::i64;

namespace {

// The six hand-checkable rows that seed everything else.
const std::vector<std::pair<i64, std::vector<i64>>> kSmallRows = {
    {2, {1, 2}},
    {3, {2, 1, 3}},
    {4, {2, 1, 3, 4}},
    {5, {2, 5, 1, 3, 4}},
    {6, {2, 1, 4, 5, 3, 6}},
    {7, {6, 2, 1, 5, 7, 3, 4}},
};

}  // namespace

TEST_CASE("is_crs basic examples", "[residue]") {
    REQUIRE(residue::is_crs({0, 1, 2}, 3));
    REQUIRE(residue::is_crs({3, 7, 11}, 3));    // 0,1,2 after reduction
    REQUIRE(residue::is_crs({-1, 0, 1}, 3));
    REQUIRE_FALSE(residue::is_crs({0, 1, 4}, 3));
    REQUIRE(residue::is_crs({5}, 1));
    REQUIRE_THROWS_AS(residue::is_crs({0, 1}, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(residue::is_crs({0}, 0), std::invalid_argument);
}

TEST_CASE("check_sim examples and counterexamples", "[residue]") {
    REQUIRE(residue::check_sim({2, 5, 9}, {14, 17, 21}, 12));   // same residues, shifted
    REQUIRE(residue::check_sim({0, 1, 2}, {9, 4, 2}, 3));       // {0,1,2} both sides
    REQUIRE(residue::check_sim({-1, -2}, {5, 4}, 3));           // negative inputs reduce
    REQUIRE(residue::check_sim({1, 1, 4}, {4, 1, 1}, 3));       // multiset, order-free
    REQUIRE_FALSE(residue::check_sim({1, 2, 3}, {7, 11, 15}, 2));  // {1,0,1} vs {1,1,1}
    REQUIRE_FALSE(residue::check_sim({1, 1, 2}, {1, 2, 2}, 5));
    REQUIRE(residue::check_sim({3, 8, 13}, {1, 2, 3}, 1));      // mod 1: always
    REQUIRE_THROWS_AS(residue::check_sim({1, 2}, {1, 2, 3}, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(residue::check_sim({1}, {1}, 0), std::invalid_argument);
}

TEST_CASE("check_sim agrees with multiset-of-residues equality", "[residue]") {
    std::mt19937_64 rng(0x5eed0001ULL);
    std::uniform_int_distribution<i64> val(-50, 50);
    std::uniform_int_distribution<i64> mm(1, 12);
    std::uniform_int_distribution<std::size_t> sz(1, 6);
    for (int trial = 0; trial < 20000; ++trial) {
        const i64 m = mm(rng);
        const std::size_t k = sz(rng);
        std::vector<i64> a(k), b(k);
        for (auto& x : a) x = val(rng);
        for (auto& x : b) x = val(rng);
        auto residues = [m](std::vector<i64> v) {
            for (auto& x : v) x = ((x % m) + m) % m;
            std::sort(v.begin(), v.end());
            return v;
        };
        REQUIRE(residue::check_sim(a, b, m) == (residues(a) == residues(b)));
    }
}

TEST_CASE("check_sim equivalence-relation laws", "[residue]") {
    std::mt19937_64 rng(0x5eed0002ULL);
    std::uniform_int_distribution<i64> val(-100, 100);
    std::uniform_int_distribution<i64> mm(1, 20);
    std::uniform_int_distribution<i64> mult(-3, 3);
    std::uniform_int_distribution<std::size_t> sz(1, 8);
    for (int trial = 0; trial < 2000; ++trial) {
        const i64 m = mm(rng);
        const std::size_t k = sz(rng);
        std::vector<i64> a(k);
        for (auto& x : a) x = val(rng);

        // reflexivity
        REQUIRE(residue::check_sim(a, a, m));

        // build b ~ a by permuting and shifting by multiples of m
        std::vector<i64> b = a;
        std::shuffle(b.begin(), b.end(), rng);
        for (auto& x : b) x += m * mult(rng);
        REQUIRE(residue::check_sim(a, b, m));
        // symmetry
        REQUIRE(residue::check_sim(b, a, m));

        // transitivity via c ~ b
        std::vector<i64> c = b;
        std::shuffle(c.begin(), c.end(), rng);
        for (auto& x : c) x += m * mult(rng);
        REQUIRE(residue::check_sim(b, c, m));
        REQUIRE(residue::check_sim(a, c, m));
    }
}

TEST_CASE("equivalent sets have congruent sums", "[residue][property]") {
    std::mt19937_64 rng(0x5eed0003ULL);
    std::uniform_int_distribution<i64> val(-1000, 1000);
    std::uniform_int_distribution<i64> mm(1, 50);
    std::uniform_int_distribution<i64> mult(-4, 4);
    std::uniform_int_distribution<std::size_t> sz(1, 12);
    for (int trial = 0; trial < 10000; ++trial) {
        const i64 m = mm(rng);
        const std::size_t k = sz(rng);
        std::vector<i64> a(k);
        for (auto& x : a) x = val(rng);
        std::vector<i64> b = a;
        std::shuffle(b.begin(), b.end(), rng);
        for (auto& x : b) x += m * mult(rng);

        REQUIRE(residue::check_sim(a, b, m));
        const i64 sa = std::accumulate(a.begin(), a.end(), i64{0});
        const i64 sb = std::accumulate(b.begin(), b.end(), i64{0});
        REQUIRE(((sa - sb) % m + m) % m == 0);

        // and a one-element perturbation by a non-multiple of m breaks it
        if (m > 1) {
            std::vector<i64> bad = b;
            bad[0] += 1 + static_cast<i64>(trial % (m - 1));
            REQUIRE_FALSE(residue::check_sim(a, bad, m));
        }
    }
}

TEST_CASE("the small witness rows verify", "[residue]") {
    for (const auto& [n, sigma] : kSmallRows) {
        residue::Witness w(n, sigma);
        REQUIRE_FALSE(w.verified());
        const auto res = residue::verify_witness(w);
        INFO("n = " << n);
        REQUIRE(res.ok());
        REQUIRE(w.verified());
    }
}

TEST_CASE("verify_witness rejects non-permutations", "[residue]") {
    residue::Witness w(3, {1, 1, 2});
    const auto res = residue::verify_witness(w);
    REQUIRE_FALSE(res.ok());
    REQUIRE(res.status == residue::VerifyResult::Status::not_a_permutation);
    REQUIRE_FALSE(w.verified());

    residue::Witness wrong_len(3, {1, 2});
    REQUIRE_FALSE(residue::verify_witness(wrong_len).ok());

    residue::Witness out_of_range(3, {0, 2, 4});
    REQUIRE_FALSE(residue::verify_witness(out_of_range).ok());
}

TEST_CASE("verify_witness reports the smallest doubled class", "[residue]") {
    // n = 4, sigma = identity: 1^1=1, 2^2=0, 3^3=3, 4^4=0 -> class 0 twice
    residue::Witness w(4, {1, 2, 3, 4});
    const auto res = residue::verify_witness(w);
    REQUIRE_FALSE(res.ok());
    REQUIRE(res.status == residue::VerifyResult::Status::not_a_crs);
    REQUIRE(res.duplicate_class == 0);

    // n = 5, sigma = (1,2,3,4,5): 1,4,2,1,0 -> class 1 twice
    residue::Witness w5(5, {1, 2, 3, 4, 5});
    const auto res5 = residue::verify_witness(w5);
    REQUIRE_FALSE(res5.ok());
    REQUIRE(res5.duplicate_class == 1);
}

TEST_CASE("power_table matches pow_mod", "[residue]") {
    for (i64 n : {1, 2, 3, 7, 16, 30, 64}) {
        const auto tab = residue::power_table(n);
        for (i64 i = 1; i <= n; ++i)
            for (i64 e = 1; e <= n; ++e)
                REQUIRE(tab.at(i, e) ==
                        static_cast<std::uint32_t>(modarith::pow_mod(i, static_cast<modarith::u64>(e), n)));
        REQUIRE_THROWS_AS(tab.at(0, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(tab.at(1, n + 1), std::invalid_argument);
    }
}

TEST_CASE("power_table honours the size cap", "[residue]") {
    REQUIRE(setenv("CRS_MAX_TABLE_N", "16", 1) == 0);
    REQUIRE_NOTHROW(residue::power_table(16));
    REQUIRE_THROWS_AS(residue::power_table(17), residue::TableCapExceeded);
    REQUIRE(setenv("CRS_MAX_TABLE_N", "not-a-number", 1) == 0);
    REQUIRE_NOTHROW(residue::power_table(100));  // malformed -> default 4096
    REQUIRE(unsetenv("CRS_MAX_TABLE_N") == 0);
    REQUIRE_NOTHROW(residue::power_table(100));
    REQUIRE_THROWS_AS(residue::power_table(5000), residue::TableCapExceeded);
}
