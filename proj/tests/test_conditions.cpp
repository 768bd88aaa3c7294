#include <catch2/catch_amalgamated.hpp>

#include <set>

#include <crsexp/conditions.hpp>
#include <crsexp/modarith.hpp>
#include <crsexp/residue.hpp>

using namespace crsexp;
using modarith::i64;
using conditions::Status;

TEST_CASE("radical filter examples", "[conditions]") {
    // 8 = 2^3: one base must hit a nonzero power of rad = 2, but three bases
    // are multiples of rad and only two exponents keep 2^e nonzero mod 8.
    const auto r8 = conditions::radical_filter(8);
    REQUIRE_FALSE(r8.passed());
    REQUIRE(r8.rejecting_check() == "radical_exponents");

    const auto r9 = conditions::radical_filter(9);
    REQUIRE_FALSE(r9.passed());

    const auto r30 = conditions::radical_filter(30);  // 2 * (odd squarefree)
    REQUIRE(r30.passed());

    const auto r44 = conditions::radical_filter(44);  // 4 * 11
    REQUIRE(r44.passed());

    REQUIRE_FALSE(conditions::radical_filter(16).passed());
    REQUIRE_FALSE(conditions::radical_filter(24).passed());
    REQUIRE_FALSE(conditions::radical_filter(100).passed());

    REQUIRE_THROWS_AS(conditions::radical_filter(7), std::invalid_argument);
}

TEST_CASE("the two radical checks always agree", "[conditions]") {
    // exponent-counting and the r / 2r / 4r shape test are equivalent
    for (i64 n = 8; n <= 5000; ++n) {
        const auto rep = conditions::radical_filter(n);
        REQUIRE(rep.checks.size() >= 1);
        if (rep.checks.size() == 2)
            REQUIRE(rep.checks[0].passed == rep.checks[1].passed);
        const bool shape_ok = conditions::detail::shape_of(n) != conditions::Shape::other;
        REQUIRE(rep.passed() == shape_ok);
    }
}

TEST_CASE("square-count filter examples", "[conditions]") {
    REQUIRE_FALSE(conditions::qr_filter(12).passed());
    REQUIRE_FALSE(conditions::qr_filter(15).passed());
    REQUIRE(conditions::qr_filter(22).passed());
    REQUIRE(conditions::qr_filter(11).passed());
    REQUIRE(conditions::qr_filter(10).passed());
    REQUIRE_THROWS_AS(conditions::qr_filter(5), std::invalid_argument);
}

TEST_CASE("square-count filter survivors are primes and doubled primes", "[conditions]") {
    for (i64 n = 8; n <= 2000; ++n) {
        if (!conditions::radical_filter(n).passed()) continue;
        const bool survived = conditions::qr_filter(n).passed();
        const bool expected =
            modarith::is_prime(n) || (n % 2 == 0 && modarith::is_prime(n / 2));
        INFO("n = " << n);
        REQUIRE(survived == expected);
    }
}

TEST_CASE("odd prime filter examples", "[conditions]") {
    const auto f23 = conditions::odd_filters(23);  // 22 = 2*11 squarefree, two factors
    REQUIRE(f23.passed());

    const auto f13 = conditions::odd_filters(13);  // 12 = 2^2*3 not squarefree
    REQUIRE_FALSE(f13.passed());
    REQUIRE(f13.rejecting_check() == "odd_shifted_squarefree");

    const auto f31 = conditions::odd_filters(31);  // 30 = 2*3*5: three prime factors
    REQUIRE_FALSE(f31.passed());
    REQUIRE(f31.rejecting_check() == "odd_shifted_two_prime_factors");

    REQUIRE_THROWS_AS(conditions::odd_filters(9), std::invalid_argument);
    REQUIRE_THROWS_AS(conditions::odd_filters(14), std::invalid_argument);
    REQUIRE_THROWS_AS(conditions::odd_filters(7), std::invalid_argument);
}

TEST_CASE("odd prime filter passes exactly the safe primes", "[conditions]") {
    for (i64 p : modarith::primes_up_to(2000)) {
        if (p < 11) continue;
        REQUIRE(conditions::odd_filters(p).passed() ==
                modarith::is_sophie_germain((p - 1) / 2));
    }
}

TEST_CASE("even filter examples", "[conditions]") {
    const auto f10 = conditions::even_filters(10);  // p = 5, p-1 = 4: 2-adic valuation 2
    REQUIRE_FALSE(f10.passed());
    REQUIRE(f10.rejecting_check() == "even_shifted_valuation");

    const auto f26 = conditions::even_filters(26);  // p = 13, p-1 = 12: valuation 2
    REQUIRE_FALSE(f26.passed());

    const auto f62 = conditions::even_filters(62);  // p = 31, p-1 = 30: passes both
    REQUIRE(f62.passed());

    const auto f14 = conditions::even_filters(14);  // p = 7, p-1 = 6 = 2*3
    REQUIRE(f14.passed());

    REQUIRE_THROWS_AS(conditions::even_filters(9), std::invalid_argument);
    REQUIRE_THROWS_AS(conditions::even_filters(16), std::invalid_argument);  // 8 not prime
}

TEST_CASE("classification statuses over [2, 24]", "[conditions]") {
    const std::set<i64> exponential = {2, 3, 4, 5, 6, 7, 11, 14, 22, 23};
    for (i64 n = 2; n <= 24; ++n) {
        const auto c = conditions::classify(n);
        INFO("n = " << n);
        if (exponential.count(n)) {
            REQUIRE(c.status == Status::ExponentialProven);
            REQUIRE(c.witness.has_value());
            REQUIRE(c.witness->verified());
            residue::Witness copy(c.witness->n(), c.witness->sigma());
            REQUIRE(residue::verify_witness(copy).ok());
        } else {
            REQUIRE(c.status == Status::NotExponentialProven);
            REQUIRE_FALSE(c.witness.has_value());
            REQUIRE_FALSE(c.reason.empty());
        }
    }
}

TEST_CASE("classification of the first undecided even number", "[conditions]") {
    const auto c = conditions::classify(62);
    REQUIRE(c.status == Status::ConjecturalGap);
    REQUIRE_FALSE(c.witness.has_value());
    REQUIRE(c.reason.find("15") != std::string::npos);  // (62/2 - 1)/2 = 15

    // 58 = 2*29: 28 = 2^2 * 7 fails the valuation check, so 58 is settled
    REQUIRE(conditions::classify(58).status == Status::NotExponentialProven);
}

TEST_CASE("small inputs classify from the fixed table", "[conditions]") {
    for (i64 n = 2; n <= 7; ++n) {
        const auto c = conditions::classify(n);
        REQUIRE(c.status == Status::ExponentialProven);
        REQUIRE(c.report.checks.size() == 1);
        REQUIRE(c.report.checks[0].name == "small_table");
    }
    REQUIRE_THROWS_AS(conditions::classify(1), std::invalid_argument);
    REQUIRE_THROWS_AS(conditions::classify(0), std::invalid_argument);
}

TEST_CASE("a rejecting check is always the last check recorded", "[conditions]") {
    for (i64 n = 8; n <= 400; ++n) {
        const auto c = conditions::classify(n);
        for (std::size_t i = 0; i + 1 < c.report.checks.size(); ++i)
            REQUIRE(c.report.checks[i].passed);
        if (c.status == Status::NotExponentialProven)
            REQUIRE_FALSE(c.report.checks.back().passed);
        else
            REQUIRE(c.report.passed());
    }
}

TEST_CASE("odd numbers are never conjectural", "[conditions]") {
    for (i64 n = 3; n <= 1001; n += 2)
        REQUIRE(conditions::classify_status(n) != Status::ConjecturalGap);
}

TEST_CASE("status-only classification agrees with the full one", "[conditions]") {
    for (i64 n = 2; n <= 400; ++n)
        REQUIRE(conditions::classify_status(n) == conditions::classify(n).status);
}

TEST_CASE("classification is deterministic", "[conditions]") {
    for (i64 n : {11, 14, 62, 100, 2048, 4093}) {
        const auto a = conditions::classify(n);
        const auto b = conditions::classify(n);
        REQUIRE(a.status == b.status);
        REQUIRE(a.reason == b.reason);
        REQUIRE(a.report.checks.size() == b.report.checks.size());
        for (std::size_t i = 0; i < a.report.checks.size(); ++i) {
            REQUIRE(a.report.checks[i].name == b.report.checks[i].name);
            REQUIRE(a.report.checks[i].passed == b.report.checks[i].passed);
        }
        if (a.witness.has_value()) {
            REQUIRE(b.witness.has_value());
            REQUIRE(a.witness->sigma() == b.witness->sigma());
        }
    }
}
