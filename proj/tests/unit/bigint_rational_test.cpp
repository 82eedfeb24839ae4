#include <doctest.h>

#include <cstdint>
#include <string>

#include "primeinfo/bigint.hpp"
#include "primeinfo/math_util.hpp"
#include "primeinfo/rational.hpp"

using namespace primeinfo;

TEST_CASE("BigUint basics") {
    CHECK(BigUint().to_string() == "0");
    CHECK(BigUint(0).is_zero());
    CHECK(BigUint(1).to_string() == "1");
    CHECK(BigUint(UINT64_MAX).to_string() == "18446744073709551615");

    SUBCASE("round-trips u64 values through decimal rendering") {
        SplitMix64 rng(42);
        for (int i = 0; i < 2000; ++i) {
            uint64_t v = rng.next();
            CHECK(BigUint(v).to_string() == std::to_string(v));
            CHECK(BigUint(v).to_u64() == v);
        }
    }

    SUBCASE("mul_u64 agrees with native multiplication in range") {
        SplitMix64 rng(7);
        for (int i = 0; i < 2000; ++i) {
            uint64_t a = rng.next() >> 33;
            uint64_t b = rng.next() >> 33;
            BigUint x(a);
            x.mul_u64(b);
            CHECK(x.to_u64() == a * b);
        }
    }

    SUBCASE("known big values") {
        CHECK(BigUint::pow(2, 100).to_string() == "1267650600228229401496703205376");
        CHECK(BigUint::pow(10, 30).to_string() == "1000000000000000000000000000000");
        BigUint x(UINT64_MAX);
        CHECK((x * BigUint(UINT64_MAX)).to_string() == "340282366920938463426481119284349108225");
    }

    SUBCASE("comparison") {
        CHECK(BigUint(5) < BigUint(7));
        CHECK(BigUint::pow(2, 64) > BigUint(UINT64_MAX));
        CHECK(BigUint(123) == BigUint(123));
    }
}

TEST_CASE("Rational is exact and normalized") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(0, -5).den() == 1);

    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 3) == Rational(3, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));

    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    SUBCASE("sums that must cancel exactly do") {
        Rational sum(0);
        for (int k = 1; k <= 100; ++k) sum += Rational(1, 100);
        CHECK(sum == Rational(1));
    }

    SUBCASE("error paths") {
        CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
        CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
        // products outside the 64-bit envelope must error, never wrap
        Rational big(INT64_MAX - 1, 1);
        CHECK_THROWS_AS(big * big, std::overflow_error);
    }

    SUBCASE("random arithmetic cross-checked in __int128") {
        SplitMix64 rng(99);
        for (int i = 0; i < 2000; ++i) {
            auto draw = [&]() {
                int64_t num = static_cast<int64_t>(rng.next() % 2000) - 1000;
                int64_t den = static_cast<int64_t>(rng.next() % 999) + 1;
                return Rational(num, den);
            };
            Rational a = draw(), b = draw();
            Rational s = a + b;
            __int128 lhs = static_cast<__int128>(s.num()) * a.den() * b.den();
            __int128 rhs = static_cast<__int128>(a.num()) * b.den() * s.den() +
                           static_cast<__int128>(b.num()) * a.den() * s.den();
            CHECK(lhs == rhs);
        }
    }
}
