#pragma once
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "primeinfo/math_util.hpp"
#include "primeinfo/rational.hpp"

namespace primeinfo {

// Exact distribution of the exponent of prime p in a uniform draw from
// [1, n]. tail[k] = floor(n / p^k) / n for k = 1..kmax (tail[0] = 1), and
// pmf[k] = tail[k] - tail[k+1]. Everything is an exact rational with
// denominator dividing n, so the pmf sums to 1 exactly.
struct ValuationDist {
    uint64_t p = 0;
    uint64_t n = 0;
    uint32_t kmax = 0;
    std::vector<Rational> tail; // index k = 0..kmax, tail[0] == 1
    std::vector<Rational> pmf;  // index k = 0..kmax
};

inline ValuationDist exact_valuation_dist(uint64_t p, uint64_t n) {
    if (p < 2) throw std::invalid_argument("exact_valuation_dist: p must be >= 2");
    if (n < 1) throw std::invalid_argument("exact_valuation_dist: N must be >= 1");
    ValuationDist d;
    d.p = p;
    d.n = n;
    d.kmax = max_power_exponent(p, n);
    d.tail.reserve(d.kmax + 1);
    d.pmf.reserve(d.kmax + 1);
    d.tail.emplace_back(1);
    uint64_t pk = 1;
    for (uint32_t k = 1; k <= d.kmax; ++k) {
        pk *= p;
        d.tail.emplace_back(static_cast<int64_t>(n / pk), static_cast<int64_t>(n));
    }
    for (uint32_t k = 0; k <= d.kmax; ++k) {
        Rational next = (k + 1 <= d.kmax) ? d.tail[k + 1] : Rational(0);
        d.pmf.push_back(d.tail[k] - next);
    }
    return d;
}

// E[X_p] = sum of the tail probabilities, exactly.
inline Rational mean_valuation(const ValuationDist& d) {
    Rational sum(0);
    for (uint32_t k = 1; k <= d.kmax; ++k) sum += d.tail[k];
    return sum;
}

// P(p divides Z) together with its complement; the pair sums to 1 exactly.
inline std::pair<Rational, Rational> divisibility_prob(uint64_t p, uint64_t n) {
    if (p < 2) throw std::invalid_argument("divisibility_prob: p must be >= 2");
    if (n < 1) throw std::invalid_argument("divisibility_prob: N must be >= 1");
    Rational prob(static_cast<int64_t>(n / p), static_cast<int64_t>(n));
    return {prob, Rational(1) - prob};
}

struct ValuationSampleCounts {
    uint64_t prime = 0;
    std::vector<uint64_t> counts; // counts[k] = samples with exponent exactly k
};

// Seeded Monte Carlo cross-check: draws sample_count integers uniformly from
// [1, n] and tallies the observed exponent of each requested prime.
// Bit-for-bit reproducible for identical inputs including the seed.
inline std::vector<ValuationSampleCounts> sample_uniform_valuations(
    uint64_t n, std::span<const uint64_t> primes, uint64_t sample_count, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_uniform_valuations: N must be >= 1");
    if (sample_count == 0) {
        throw std::invalid_argument("sample_uniform_valuations: sample_count must be >= 1");
    }
    std::vector<ValuationSampleCounts> out;
    out.reserve(primes.size());
    for (uint64_t p : primes) {
        if (p < 2) throw std::invalid_argument("sample_uniform_valuations: p must be >= 2");
        out.push_back({p, std::vector<uint64_t>(max_power_exponent(p, n) + 1, 0)});
    }
    SplitMix64 rng(seed);
    for (uint64_t i = 0; i < sample_count; ++i) {
        uint64_t z = rng.uniform_1_to(n);
        for (auto& row : out) {
            uint32_t k = 0;
            uint64_t v = z;
            while (v % row.prime == 0) {
                v /= row.prime;
                ++k;
            }
            ++row.counts[k];
        }
    }
    return out;
}

} // namespace primeinfo
