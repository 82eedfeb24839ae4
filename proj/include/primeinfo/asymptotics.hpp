#pragma once
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "primeinfo/info_measures.hpp"
#include "primeinfo/math_util.hpp"
#include "primeinfo/prime_table.hpp"
#include "primeinfo/rational.hpp"

namespace primeinfo {

// Weight on log p in the prime sum: `ideal` uses 1/p, `empirical` uses the
// exact divisibility probability floor(N/p)/N.
enum class WeightMode { ideal, empirical };

inline double mertens_sum(uint64_t n, const PrimeTable& table, LogBase base = LogBase::e,
                          WeightMode mode = WeightMode::ideal) {
    if (n < 1) throw std::invalid_argument("mertens_sum: N must be >= 1");
    if (table.limit() < n) throw std::out_of_range("mertens_sum: table limit below N");
    KahanSum<double> acc;
    for (uint32_t p : table.primes()) {
        if (p > n) break;
        const double lp = std::log(static_cast<double>(p));
        if (mode == WeightMode::ideal) {
            acc.add(lp / static_cast<double>(p));
        } else {
            acc.add(static_cast<double>(n / p) / static_cast<double>(n) * lp);
        }
    }
    return from_nats(acc.value(), base);
}

// log N minus the ideal-weight prime sum; positive at every tested scale.
inline double chebyshev_gap(uint64_t n, const PrimeTable& table, LogBase base = LogBase::e) {
    if (n < 2) throw std::invalid_argument("chebyshev_gap: N must be >= 2");
    double log_n = std::log(static_cast<double>(n));
    double sum = mertens_sum(n, table, LogBase::e, WeightMode::ideal);
    return from_nats(log_n - sum, base);
}

struct InfoPerPrime {
    double value = 0; // N / pi(N)
    double ratio = 0; // value / ln N
};

inline InfoPerPrime info_per_prime(uint64_t n, const PrimeTable& table) {
    if (n < 2) throw std::invalid_argument("info_per_prime: N must be >= 2");
    if (table.limit() < n) throw std::out_of_range("info_per_prime: table limit below N");
    double value = static_cast<double>(n) / static_cast<double>(table.prime_count(n));
    return {value, value / std::log(static_cast<double>(n))};
}

// 1/p, the computable stand-in for the coding probability of a prime.
// Its complement makes a Bernoulli pair that sums to 1 exactly.
inline Rational algorithmic_probability_proxy(uint64_t p) {
    if (p < 2) throw std::invalid_argument("algorithmic_probability_proxy: p must be >= 2");
    return Rational(1, static_cast<int64_t>(p));
}

// One sweep point. log_N and theta_N are always in nats; mertens_sum,
// chebyshev_gap and the entropy-decomposition columns follow the requested
// base; the info-per-prime ratio is emitted in both conventions.
struct InfoSummary {
    uint64_t n = 0;
    double log_n = 0;
    uint64_t pi_n = 0;
    double theta_n = 0;
    double mertens_sum = 0;
    double chebyshev_gap = 0;
    double entropy_decomp_sum = 0;
    double entropy_decomp_gap = 0;
    double info_per_prime = 0;
    double info_per_prime_ratio_nats = 0;
    double info_per_prime_ratio_bits = 0;
};

// Geometric grid from n_min to n_max with the given resolution, rounded to
// integers, deduplicated, endpoints always included.
inline std::vector<uint64_t> geometric_schedule(uint64_t n_min, uint64_t n_max,
                                                unsigned points_per_decade = 10) {
    if (n_min < 2 || n_min > n_max) {
        throw std::invalid_argument("geometric_schedule: need 2 <= n_min <= n_max");
    }
    if (points_per_decade < 1) {
        throw std::invalid_argument("geometric_schedule: points_per_decade must be >= 1");
    }
    std::vector<uint64_t> schedule;
    const double e0 = std::log10(static_cast<double>(n_min));
    for (unsigned j = 0;; ++j) {
        double e = e0 + static_cast<double>(j) / points_per_decade;
        auto v = static_cast<uint64_t>(std::llround(std::pow(10.0, e)));
        if (v >= n_max) break;
        if (schedule.empty() || v > schedule.back()) schedule.push_back(v);
    }
    schedule.push_back(n_max);
    return schedule;
}

// Evaluates every summary column at each schedule point. The running prime
// sums (theta, ideal Mertens) extend incrementally across points, which by
// the prefix property of compensated summation matches the one-shot values.
inline std::vector<InfoSummary> run_sweep(std::span<const uint64_t> schedule,
                                          const PrimeTable& table, LogBase base = LogBase::e,
                                          WeightMode mode = WeightMode::ideal,
                                          unsigned thread_hint = 0) {
    if (schedule.empty()) throw std::invalid_argument("run_sweep: empty schedule");
    for (size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 2) throw std::invalid_argument("run_sweep: schedule values must be >= 2");
        if (i > 0 && schedule[i] <= schedule[i - 1]) {
            throw std::invalid_argument("run_sweep: schedule must be strictly increasing");
        }
    }
    if (schedule.back() > table.limit()) throw std::out_of_range("run_sweep: table limit below max N");

    auto primes = table.primes();
    std::vector<double> log_p; // lazily extended cache of log p
    log_p.reserve(table.prime_count(schedule.back()));

    std::vector<InfoSummary> out;
    out.reserve(schedule.size());
    KahanSum<double> theta_nats;
    KahanSum<double> mertens_ideal_nats;
    size_t idx = 0;
    for (uint64_t n : schedule) {
        while (idx < primes.size() && primes[idx] <= n) {
            double lp = std::log(static_cast<double>(primes[idx]));
            log_p.push_back(lp);
            theta_nats.add(lp);
            mertens_ideal_nats.add(lp / static_cast<double>(primes[idx]));
            ++idx;
        }
        double sum_nats;
        if (mode == WeightMode::ideal) {
            sum_nats = mertens_ideal_nats.value();
        } else {
            KahanSum<double> acc; // empirical weights depend on n; no prefix reuse
            for (size_t i = 0; i < idx; ++i) {
                acc.add(static_cast<double>(n / primes[i]) / static_cast<double>(n) * log_p[i]);
            }
            sum_nats = acc.value();
        }

        InfoSummary row;
        row.n = n;
        row.log_n = std::log(static_cast<double>(n));
        row.pi_n = idx;
        row.theta_n = theta_nats.value();
        row.mertens_sum = from_nats(sum_nats, base);
        row.chebyshev_gap = from_nats(row.log_n - sum_nats, base);
        auto decomp = entropy_decomposition_sum(n, table, base, thread_hint);
        row.entropy_decomp_sum = decomp.sum;
        row.entropy_decomp_gap = decomp.gap;
        row.info_per_prime = static_cast<double>(n) / static_cast<double>(row.pi_n);
        row.info_per_prime_ratio_nats = row.info_per_prime / row.log_n;
        row.info_per_prime_ratio_bits = row.info_per_prime / (row.log_n / kLn2);
        out.push_back(row);
    }
    return out;
}

} // namespace primeinfo
