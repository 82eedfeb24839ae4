#pragma once
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace primeinfo {

// Log base for reported quantities. All internal accumulation happens in
// nats; conversion to bits divides by ln 2 once at the boundary, so the
// base-2 value of any quantity is its nats value / ln 2 to within 1 ulp.
enum class LogBase { e, two };

inline constexpr double kLn2 = 0.6931471805599453094;
inline constexpr long double kLn2l = 0.69314718055994530941723L;

inline double from_nats(double nats, LogBase base) {
    return base == LogBase::e ? nats : nats / kLn2;
}

inline long double from_nats(long double nats, LogBase base) {
    return base == LogBase::e ? nats : nats / kLn2l;
}

// Compensated (Kahan) accumulator. Prefix sums of a running accumulator
// equal one-shot sums over the same prefix, which run_sweep relies on.
template <typename Real = double>
class KahanSum {
public:
    void add(Real x) {
        Real y = x - carry_;
        Real t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    Real value() const { return sum_; }

private:
    Real sum_ = 0;
    Real carry_ = 0;
};

inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// Largest k with p^k <= n, decided by exact integer arithmetic.
inline uint32_t max_power_exponent(uint64_t p, uint64_t n) {
    if (p < 2) throw std::invalid_argument("max_power_exponent: p must be >= 2");
    uint32_t k = 0;
    uint64_t pk = 1;
    while (pk <= n / p) {
        pk *= p;
        ++k;
    }
    return k;
}

// splitmix64; fixed algorithm so seeded runs are reproducible everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw from [1, n] by rejection; no modulo bias.
    uint64_t uniform_1_to(uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_1_to: empty range");
        const uint64_t threshold = (0 - n) % n; // 2^64 mod n
        for (;;) {
            uint64_t x = next();
            if (x >= threshold) return 1 + x % n;
        }
    }

private:
    uint64_t state_;
};

} // namespace primeinfo
