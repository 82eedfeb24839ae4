#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "primeinfo/errors.hpp"
#include "primeinfo/math_util.hpp"

namespace primeinfo {

struct SieveConfig {
    uint64_t memory_budget_bytes = 2ull << 30; // 2 GiB default, hard limit
    uint32_t segment_numbers = 1u << 18;       // numbers per segment, cache-sized
};

// All primes up to a fixed limit, sieved segment by segment over an odd-only
// bitmap (2 is appended specially). Immutable once built; concurrent reads
// are safe. Counting queries binary-search the packed prime array.
class PrimeTable {
public:
    static PrimeTable sieve(uint64_t limit, const SieveConfig& cfg = {}) {
        if (limit > UINT32_MAX) {
            throw capacity_error("sieve_primes: limit " + std::to_string(limit) +
                                 " exceeds the 32-bit prime storage ceiling");
        }
        uint64_t need = estimate_bytes(limit, cfg);
        if (need > cfg.memory_budget_bytes) {
            throw capacity_error("sieve_primes: limit " + std::to_string(limit) + " needs ~" +
                                 std::to_string(need) + " bytes, budget is " +
                                 std::to_string(cfg.memory_budget_bytes));
        }

        PrimeTable table;
        table.limit_ = limit;
        if (limit < 2) return table;
        table.primes_.reserve(estimate_prime_count(limit));
        table.primes_.push_back(2);

        // Base primes up to sqrt(limit), odd-only flat sieve.
        const uint64_t root = isqrt_u64(limit);
        std::vector<uint8_t> base_odd((root >= 3 ? (root - 1) / 2 : 0), 1); // index i <-> 2i+3
        std::vector<uint32_t> base_primes;
        for (uint64_t i = 0; i < base_odd.size(); ++i) {
            if (!base_odd[i]) continue;
            uint64_t p = 2 * i + 3;
            base_primes.push_back(static_cast<uint32_t>(p));
            for (uint64_t m = p * p; m <= root; m += 2 * p) base_odd[(m - 3) / 2] = 0;
        }

        // Segments of cfg.segment_numbers integers, odd values only.
        const uint64_t seg_numbers = std::max<uint64_t>(cfg.segment_numbers, 64);
        std::vector<uint8_t> seg(seg_numbers / 2 + 1);
        for (uint64_t lo = 3; lo <= limit; lo += seg_numbers) {
            const uint64_t hi = std::min(limit, lo + seg_numbers - 1);
            const uint64_t odd_count = (hi - lo) / 2 + 1; // lo always odd
            std::fill_n(seg.begin(), odd_count, uint8_t{1});
            for (uint32_t p : base_primes) {
                uint64_t start = std::max<uint64_t>(static_cast<uint64_t>(p) * p,
                                                    ((lo + p - 1) / p) * p);
                if (start > hi) continue;
                if (start % 2 == 0) start += p;
                for (uint64_t m = start; m <= hi; m += 2ull * p) seg[(m - lo) / 2] = 0;
            }
            for (uint64_t i = 0; i < odd_count; ++i) {
                if (seg[i]) table.primes_.push_back(static_cast<uint32_t>(lo + 2 * i));
            }
        }
        return table;
    }

    uint64_t limit() const { return limit_; }
    size_t size() const { return primes_.size(); }
    std::span<const uint32_t> primes() const { return primes_; }
    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }

    // pi(n): number of primes <= n.
    uint64_t prime_count(uint64_t n) const {
        check_range(n, "prime_count");
        auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
        return static_cast<uint64_t>(it - primes_.begin());
    }

    // theta(n) = sum of log p over primes p <= n, compensated summation.
    double chebyshev_theta(uint64_t n, LogBase base = LogBase::e) const {
        check_range(n, "chebyshev_theta");
        KahanSum<double> acc;
        for (uint32_t p : primes_) {
            if (p > n) break;
            acc.add(std::log(static_cast<double>(p)));
        }
        return from_nats(acc.value(), base);
    }

private:
    void check_range(uint64_t n, const char* op) const {
        if (n > limit_) {
            throw std::out_of_range(std::string(op) + ": N " + std::to_string(n) +
                                    " exceeds table limit " + std::to_string(limit_));
        }
    }

    static size_t estimate_prime_count(uint64_t limit) {
        if (limit < 17) return 8;
        double x = static_cast<double>(limit);
        return static_cast<size_t>(1.03 * x / (std::log(x) - 1.1)) + 64;
    }

    static uint64_t estimate_bytes(uint64_t limit, const SieveConfig& cfg) {
        uint64_t root = isqrt_u64(limit);
        return estimate_prime_count(limit) * sizeof(uint32_t) // packed primes
               + root / 2 + root / 2 * sizeof(uint32_t)       // base sieve + base primes
               + cfg.segment_numbers / 2 + 64;                // segment bitmap
    }

    uint64_t limit_ = 0;
    std::vector<uint32_t> primes_;
};

inline PrimeTable sieve_primes(uint64_t limit, const SieveConfig& cfg = {}) {
    return PrimeTable::sieve(limit, cfg);
}

} // namespace primeinfo
