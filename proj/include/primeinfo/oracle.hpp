#pragma once
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "primeinfo/errors.hpp"
#include "primeinfo/math_util.hpp"
#include "primeinfo/prime_table.hpp"
#include "primeinfo/valuation.hpp"

namespace primeinfo {

struct OracleReport {
    bool passed = false;
    uint64_t n_max = 0;
    uint64_t valuation_cells_checked = 0;
    uint64_t divisibility_checks = 0;
    double legendre_relative_error = 0;
    std::string first_failure; // empty when passed

    std::string summary() const {
        std::ostringstream os;
        os << "oracle N=" << n_max << ": valuation cells " << valuation_cells_checked
           << ", divisibility checks " << divisibility_checks << ", log-factorial rel err "
           << legendre_relative_error << " -> " << (passed ? "PASS" : "FAIL " + first_failure);
        return os.str();
    }
};

// Brute-force backstop. Factorizes every Z in [1, n_max] by direct trial
// division (independent of the sieve and codec paths) and checks, exactly:
//   - per-prime exponent counts equal N * pmf of the exact distribution,
//   - divisibility counts equal floor(N/p),
//   - sum over Z of ln Z reconciles with sum over p of S_p ln p (the
//     factorial-valuation identity), to 1e-8 relative in floating point.
inline OracleReport oracle_check(uint64_t n_max, const PrimeTable& table) {
    if (n_max > 10000) {
        throw capacity_error("oracle_check: budgeted to N <= 10000, got " + std::to_string(n_max));
    }
    if (table.limit() < n_max) throw std::out_of_range("oracle_check: table limit below N");

    OracleReport report;
    report.n_max = n_max;
    auto fail = [&](std::string what) {
        report.first_failure = std::move(what);
        return report;
    };

    // counts[i][k]: integers in [1, n_max] whose i-th prime divides them
    // exactly k times. Row 0 of each prime (exponent zero) is implicit.
    auto primes = table.primes();
    size_t prime_count = 0;
    while (prime_count < primes.size() && primes[prime_count] <= n_max) ++prime_count;
    std::vector<std::vector<uint64_t>> counts(prime_count);
    for (size_t i = 0; i < prime_count; ++i) {
        counts[i].assign(max_power_exponent(primes[i], n_max) + 1, 0);
    }

    KahanSum<double> log_z_sum;
    for (uint64_t z = 1; z <= n_max; ++z) {
        uint64_t rest = z;
        for (uint64_t d = 2; d * d <= rest; ++d) {
            if (rest % d != 0) continue;
            uint32_t e = 0;
            while (rest % d == 0) {
                rest /= d;
                ++e;
            }
            uint64_t idx = table.prime_count(d) - 1;
            ++counts[idx][e];
        }
        if (rest > 1) ++counts[table.prime_count(rest) - 1][1];
        log_z_sum.add(std::log(static_cast<double>(z)));
    }
    // The loop above only tallies nonzero exponents; fill exponent-zero rows.
    for (size_t i = 0; i < prime_count; ++i) {
        uint64_t nonzero = 0;
        for (size_t k = 1; k < counts[i].size(); ++k) nonzero += counts[i][k];
        counts[i][0] = n_max - nonzero;
    }

    KahanSum<double> weighted_log_sum; // sum over p of S_p * ln p
    for (size_t i = 0; i < prime_count; ++i) {
        const uint64_t p = primes[i];
        const ValuationDist dist = exact_valuation_dist(p, n_max);
        if (dist.kmax + 1 != counts[i].size()) {
            return fail("kmax mismatch at p=" + std::to_string(p));
        }
        uint64_t divisible = 0;
        uint64_t s_p = 0;
        for (uint32_t k = 0; k <= dist.kmax; ++k) {
            // pmf[k] * N is an exact integer: denominators divide N
            const Rational& pr = dist.pmf[k];
            const uint64_t expected =
                static_cast<uint64_t>(pr.num()) * (n_max / static_cast<uint64_t>(pr.den()));
            if (counts[i][k] != expected) {
                return fail("count mismatch at p=" + std::to_string(p) + " k=" + std::to_string(k) +
                            ": brute " + std::to_string(counts[i][k]) + " vs pmf*N " +
                            std::to_string(expected));
            }
            ++report.valuation_cells_checked;
            if (k >= 1) {
                divisible += counts[i][k];
                s_p += static_cast<uint64_t>(k) * counts[i][k];
            }
        }
        if (divisible != n_max / p) {
            return fail("divisibility mismatch at p=" + std::to_string(p));
        }
        ++report.divisibility_checks;
        // Total valuation mass must equal the tail-sum form exactly.
        uint64_t tail_form = 0;
        for (uint64_t pk = p; pk <= n_max; pk *= p) {
            tail_form += n_max / pk;
            if (pk > n_max / p) break;
        }
        if (s_p != tail_form) {
            return fail("valuation mass mismatch at p=" + std::to_string(p));
        }
        weighted_log_sum.add(static_cast<double>(s_p) * std::log(static_cast<double>(p)));
    }

    if (n_max >= 2) {
        report.legendre_relative_error =
            std::abs(log_z_sum.value() - weighted_log_sum.value()) / log_z_sum.value();
        if (report.legendre_relative_error > 1e-8) {
            return fail("log-factorial identity off by " +
                        std::to_string(report.legendre_relative_error));
        }
    }

    report.passed = true;
    return report;
}

} // namespace primeinfo
