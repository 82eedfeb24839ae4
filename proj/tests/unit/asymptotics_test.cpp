#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "primeinfo/asymptotics.hpp"
#include "primeinfo/prime_table.hpp"
#include "test_support.hpp"

using namespace primeinfo;

TEST_CASE("mertens_sum") {
    const auto table = sieve_primes(1000000);

    CHECK(mertens_sum(1, table) == 0.0);

    SUBCASE("N=10 against direct evaluation") {
        double ideal = 0, empirical = 0;
        for (uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
            ideal += std::log(static_cast<double>(p)) / static_cast<double>(p);
            empirical += static_cast<double>(10 / p) / 10.0 * std::log(static_cast<double>(p));
        }
        CHECK(mertens_sum(10, table) == doctest::Approx(ideal).epsilon(1e-12));
        CHECK(mertens_sum(10, table, LogBase::e, WeightMode::empirical) ==
              doctest::Approx(empirical).epsilon(1e-12));
        CHECK(ideal == doctest::Approx(1.3126524).epsilon(1e-6));
        CHECK(empirical == doctest::Approx(1.1926359).epsilon(1e-6));
    }

    SUBCASE("empirical never exceeds ideal, difference below theta(N)/N") {
        for (uint64_t n : {2ull, 10ull, 97ull, 1000ull, 10000ull, 1000000ull}) {
            CAPTURE(n);
            const double ideal = mertens_sum(n, table);
            const double empirical = mertens_sum(n, table, LogBase::e, WeightMode::empirical);
            CHECK(empirical <= ideal + 1e-12);
            CHECK(ideal - empirical <=
                  table.chebyshev_theta(n) / static_cast<double>(n) + 1e-12);
        }
    }

    SUBCASE("base-2 value is the nats value over ln 2") {
        for (uint64_t n : {10ull, 10000ull, 1000000ull}) {
            CHECK(mertens_sum(n, table, LogBase::two) * kLn2 ==
                  doctest::Approx(mertens_sum(n, table, LogBase::e)).epsilon(1e-10));
        }
    }

    CHECK_THROWS_AS(mertens_sum(1000001, table), std::out_of_range);
}

TEST_CASE("chebyshev_gap") {
    const auto table = sieve_primes(1000000);
    CHECK(chebyshev_gap(2, table) ==
          doctest::Approx(std::log(2.0) - std::log(2.0) / 2).epsilon(1e-12));
    CHECK(chebyshev_gap(10, table) == doctest::Approx(0.9899326).epsilon(1e-6));
    const double g6 = chebyshev_gap(1000000, table);
    CHECK(g6 >= 0.0);
    CHECK(g6 <= 2.0);
    CHECK_THROWS_AS(chebyshev_gap(1, table), std::invalid_argument);
}

TEST_CASE("gap in [0,2] for every integer N <= 10^4, via trial-division oracle") {
    const auto primes = testsupport::primes_by_trial_division(10000);
    size_t idx = 0;
    double running = 0; // plain double is fine for the oracle at this scale
    for (uint64_t n = 2; n <= 10000; ++n) {
        while (idx < primes.size() && primes[idx] <= n) {
            running += std::log(static_cast<double>(primes[idx])) / static_cast<double>(primes[idx]);
            ++idx;
        }
        const double gap = std::log(static_cast<double>(n)) - running;
        if (!(gap >= 0.0 && gap <= 2.0)) {
            CAPTURE(n);
            CHECK(gap >= 0.0);
            CHECK(gap <= 2.0);
        }
    }
    const auto table = sieve_primes(10000);
    CHECK(chebyshev_gap(10000, table) ==
          doctest::Approx(std::log(10000.0) - running).epsilon(1e-10));
}

TEST_CASE("info_per_prime") {
    const auto table = sieve_primes(1000);
    const auto at2 = info_per_prime(2, table);
    CHECK(at2.value == 2.0);
    CHECK(at2.ratio == doctest::Approx(2.0 / std::log(2.0)).epsilon(1e-12));

    const auto at10 = info_per_prime(10, table);
    CHECK(at10.value == 2.5);
    CHECK(at10.ratio == doctest::Approx(2.5 / std::log(10.0)).epsilon(1e-12));

    const auto at100 = info_per_prime(100, table);
    CHECK(at100.value == 4.0);
    CHECK(at100.ratio == doctest::Approx(0.86859).epsilon(1e-4));

    CHECK_THROWS_AS(info_per_prime(1, table), std::invalid_argument);
}

TEST_CASE("algorithmic_probability_proxy") {
    CHECK(algorithmic_probability_proxy(2) == Rational(1, 2));
    CHECK(algorithmic_probability_proxy(7) == Rational(1, 7));
    for (uint64_t p : {2ull, 3ull, 997ull}) {
        const Rational proxy = algorithmic_probability_proxy(p);
        CHECK(proxy + (Rational(1) - proxy) == Rational(1));
    }
    CHECK_THROWS_AS(algorithmic_probability_proxy(1), std::invalid_argument);
}

TEST_CASE("geometric_schedule") {
    CHECK(geometric_schedule(10, 10) == std::vector<uint64_t>{10});
    CHECK(geometric_schedule(2, 2) == std::vector<uint64_t>{2});

    const auto s = geometric_schedule(100, 10000, 10);
    CHECK(s.front() == 100);
    CHECK(s.back() == 10000);
    CHECK(std::find(s.begin(), s.end(), 1000) != s.end()); // decade points hit exactly
    for (size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
    CHECK(s.size() == 21);

    // coarse grids deduplicate and stay increasing
    const auto tight = geometric_schedule(2, 20, 30);
    for (size_t i = 1; i < tight.size(); ++i) CHECK(tight[i] > tight[i - 1]);

    CHECK_THROWS_AS(geometric_schedule(1, 10), std::invalid_argument);
    CHECK_THROWS_AS(geometric_schedule(10, 2), std::invalid_argument);
    CHECK_THROWS_AS(geometric_schedule(2, 10, 0), std::invalid_argument);
}

TEST_CASE("run_sweep") {
    const auto table = sieve_primes(1000000);

    SUBCASE("single point matches the standalone operations bit for bit") {
        const std::vector<uint64_t> schedule{10};
        const auto rows = run_sweep(schedule, table);
        REQUIRE(rows.size() == 1);
        const auto& r = rows[0];
        CHECK(r.n == 10);
        CHECK(r.pi_n == 4);
        CHECK(r.theta_n == table.chebyshev_theta(10));
        CHECK(r.mertens_sum == mertens_sum(10, table));
        CHECK(r.mertens_sum == doctest::Approx(1.3126524).epsilon(1e-6));
        CHECK(r.info_per_prime == 2.5);
    }

    SUBCASE("prefix-incremental sums equal one-shot sums at every point") {
        const auto schedule = geometric_schedule(100, 100000, 4);
        const auto rows = run_sweep(schedule, table);
        REQUIRE(rows.size() == schedule.size());
        for (const auto& r : rows) {
            CHECK(r.theta_n == table.chebyshev_theta(r.n));
            CHECK(r.mertens_sum == mertens_sum(r.n, table));
            CHECK(r.pi_n == table.prime_count(r.n));
        }
    }

    SUBCASE("row-internal consistency") {
        const auto schedule = geometric_schedule(100, 1000000, 2);
        const auto rows = run_sweep(schedule, table);
        for (const auto& r : rows) {
            CAPTURE(r.n);
            CHECK(r.chebyshev_gap + r.mertens_sum == doctest::Approx(r.log_n).epsilon(1e-12));
            CHECK(r.entropy_decomp_gap ==
                  doctest::Approx(r.entropy_decomp_sum - r.log_n).epsilon(1e-9));
            CHECK(r.info_per_prime_ratio_bits ==
                  doctest::Approx(r.info_per_prime_ratio_nats * kLn2).epsilon(1e-10));
            CHECK(std::isfinite(r.theta_n));
        }
    }

    SUBCASE("ratio trend: below one from N >= 3, increasing across decades") {
        const auto schedule = geometric_schedule(1000, 1000000, 10);
        const auto rows = run_sweep(schedule, table);
        double prev_decade_ratio = 0;
        for (const auto& r : rows) {
            const double ratio = r.mertens_sum / r.log_n;
            CHECK(ratio < 1.0);
            if (r.n == 1000 || r.n == 10000 || r.n == 100000 || r.n == 1000000) {
                CHECK(ratio > prev_decade_ratio);
                prev_decade_ratio = ratio;
            }
        }
    }

    SUBCASE("empirical weight mode recomputes per point") {
        const std::vector<uint64_t> schedule{10, 100};
        const auto rows = run_sweep(schedule, table, LogBase::e, WeightMode::empirical);
        CHECK(rows[0].mertens_sum ==
              doctest::Approx(mertens_sum(10, table, LogBase::e, WeightMode::empirical))
                  .epsilon(1e-12));
        CHECK(rows[1].mertens_sum ==
              doctest::Approx(mertens_sum(100, table, LogBase::e, WeightMode::empirical))
                  .epsilon(1e-12));
    }

    SUBCASE("schedule validation") {
        const std::vector<uint64_t> empty;
        CHECK_THROWS_AS(run_sweep(empty, table), std::invalid_argument);
        const std::vector<uint64_t> non_increasing{10, 10};
        CHECK_THROWS_AS(run_sweep(non_increasing, table), std::invalid_argument);
        const std::vector<uint64_t> too_small{1, 10};
        CHECK_THROWS_AS(run_sweep(too_small, table), std::invalid_argument);
        const std::vector<uint64_t> beyond{10, 2000000};
        CHECK_THROWS_AS(run_sweep(beyond, table), std::out_of_range);
    }
}
