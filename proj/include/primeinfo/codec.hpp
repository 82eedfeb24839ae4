#pragma once
#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "primeinfo/bigint.hpp"
#include "primeinfo/bitio.hpp"
#include "primeinfo/coder.hpp"
#include "primeinfo/errors.hpp"
#include "primeinfo/math_util.hpp"
#include "primeinfo/parallel.hpp"
#include "primeinfo/prime_table.hpp"

namespace primeinfo {

// Bitstream format contract (version 1):
//  - one arithmetic-coded symbol per scheduled prime, in increasing prime
//    order; a prime p is scheduled iff p * R <= N where R is the running
//    product of already-decoded factors (R starts at 1);
//  - the per-prime model is the scaled geometric below (total 2^31), with
//    an escape bucket of weight 1 covering all exponents past the scaled
//    tail, followed by 6 coder-interleaved raw bits of exponent remainder;
//  - big-endian bit order within bytes, final partial byte zero-padded,
//    no header: N and the prime table are out-of-band context.
inline constexpr uint32_t kBitstreamFormatVersion = 1;

struct PrimePower {
    uint64_t prime = 0;
    uint32_t exponent = 0;
    bool operator==(const PrimePower&) const = default;
};

// Sparse factorization: (prime, exponent >= 1) pairs, strictly increasing
// in prime. The empty vector is 1.
struct ExponentVector {
    std::vector<PrimePower> entries;
    bool operator==(const ExponentVector&) const = default;
};

inline ExponentVector factorize(uint64_t z, const PrimeTable& table) {
    if (z < 1) throw std::invalid_argument("factorize: Z must be >= 1");
    const uint64_t limit = table.limit();
    const bool covered = limit >= z || (limit > 0 && static_cast<unsigned __int128>(limit) * limit >= z);
    if (!covered) {
        throw std::invalid_argument("factorize: table limit " + std::to_string(limit) +
                                    " cannot certify factors of " + std::to_string(z));
    }
    ExponentVector out;
    uint64_t rest = z;
    for (uint32_t p : table.primes()) {
        if (static_cast<uint64_t>(p) * p > rest) break;
        if (rest % p != 0) continue;
        uint32_t e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        out.entries.push_back({p, e});
    }
    if (rest > 1) out.entries.push_back({rest, 1}); // prime: no factor <= sqrt survived
    return out;
}

inline BigUint compose(const ExponentVector& v) {
    BigUint out(1);
    uint64_t prev = 0;
    for (const auto& [prime, exponent] : v.entries) {
        if (prime <= prev) throw std::invalid_argument("compose: primes must strictly increase");
        if (exponent == 0) throw std::invalid_argument("compose: exponents must be >= 1");
        for (uint32_t i = 0; i < exponent; ++i) out.mul_u64(prime);
        prev = prime;
    }
    return out;
}

// Shared coding schedule. Visits primes in increasing order while
// p * product <= n; visit(p, product) returns the exponent of p, which is
// multiplied into the product. Returns the final product. The visited set
// is always a prefix of the prime sequence.
template <typename Fn>
uint64_t walk_coding_schedule(uint64_t n, const PrimeTable& table, Fn&& visit) {
    uint64_t product = 1;
    for (uint32_t p : table.primes()) {
        if (p > n / product) break;
        uint32_t e = visit(static_cast<uint64_t>(p), product);
        for (uint32_t i = 0; i < e; ++i) product *= p;
    }
    return product;
}

// S = sum over k >= 1 of floor(n / p^k); the exact mean of X_p times n.
inline uint64_t valuation_tail_sum(uint64_t p, uint64_t n) {
    uint64_t s = 0;
    for (uint64_t pk = p; pk <= n; pk *= p) {
        s += n / pk;
        if (pk > n / p) break; // next power would overflow past n
    }
    return s;
}

// Geometric model for one prime's exponent, scaled to total 2^31. The
// parameter is q = S/(S+N), matching the exact mean S/N. Scaled tails
// descend by t -> max(1, t*S/(S+N)) until they reach 1; that final unit of
// mass is the escape bucket for all larger exponents, which are then spelt
// out in 6 raw bits. Valid messages never hit the escape at N <= 10^9:
// it exists so the model covers untruncated support and so that decoding
// one can be flagged against capacity.
struct SymbolModel {
    static constexpr uint32_t kTotalLog2 = 31;
    static constexpr uint32_t kTotal = 1u << kTotalLog2;
    static constexpr uint32_t kEscapeRawBits = 6;

    std::vector<uint32_t> cum; // cum[s] for s = 0..count; cum.back() == kTotal

    uint32_t escape_exponent() const { return static_cast<uint32_t>(cum.size()) - 2; }

    static SymbolModel build(uint64_t tail_num, uint64_t n) {
        assert(tail_num >= 1 && n >= 1);
        SymbolModel m;
        std::vector<uint64_t> tails{kTotal};
        while (tails.back() > 1) {
            unsigned __int128 t = static_cast<unsigned __int128>(tails.back()) * tail_num / (tail_num + n);
            tails.push_back(std::max<uint64_t>(1, static_cast<uint64_t>(t)));
        }
        m.cum.resize(tails.size() + 1);
        m.cum[0] = 0;
        for (size_t k = 0; k + 1 < tails.size(); ++k) {
            m.cum[k + 1] = m.cum[k] + static_cast<uint32_t>(tails[k] - tails[k + 1]);
        }
        m.cum.back() = kTotal;
        return m;
    }

    void encode_exponent(ArithmeticEncoder& enc, uint32_t x) const {
        const uint32_t esc = escape_exponent();
        if (x < esc) {
            enc.encode(cum[x], cum[x + 1] - cum[x], kTotalLog2);
            return;
        }
        enc.encode(cum[esc], kTotal - cum[esc], kTotalLog2);
        const uint32_t rem = x - esc;
        assert(rem < (1u << kEscapeRawBits));
        for (int i = kEscapeRawBits - 1; i >= 0; --i) enc.encode((rem >> i) & 1u, 1, 1);
    }

    uint32_t decode_exponent(ArithmeticDecoder& dec) const {
        const uint64_t dv = dec.decode_target(kTotalLog2);
        auto it = std::upper_bound(cum.begin(), cum.end(), static_cast<uint32_t>(dv));
        const auto s = static_cast<uint32_t>(it - cum.begin()) - 1;
        dec.update(cum[s], cum[s + 1] - cum[s], kTotalLog2);
        if (s < escape_exponent()) return s;
        uint32_t rem = 0;
        for (uint32_t i = 0; i < kEscapeRawBits; ++i) {
            const auto bit = static_cast<uint32_t>(dec.decode_target(1));
            dec.update(bit, 1, 1);
            rem = (rem << 1) | bit;
        }
        return escape_exponent() + rem;
    }
};

namespace detail {

inline void check_message_range(uint64_t z, uint64_t n, const PrimeTable& table, const char* op) {
    if (z < 1 || z > n) {
        throw std::out_of_range(std::string(op) + ": Z " + std::to_string(z) +
                                " outside [1, " + std::to_string(n) + "]");
    }
    if (n > table.limit()) throw std::out_of_range(std::string(op) + ": table limit below N");
}

// Validates a decoded exponent against remaining capacity: p^e * product
// must stay <= n. Throws corruption_error otherwise.
inline void check_capacity(uint64_t p, uint32_t e, uint64_t product, uint64_t n) {
    const uint64_t cap = n / product;
    uint64_t pw = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (pw > cap / p) {
            throw corruption_error("decode: exponent " + std::to_string(e) + " of prime " +
                                   std::to_string(p) + " exceeds remaining capacity");
        }
        pw *= p;
    }
}

} // namespace detail

inline BitString encode(uint64_t z, uint64_t n, const PrimeTable& table) {
    detail::check_message_range(z, n, table, "encode");
    const ExponentVector ev = factorize(z, table);
    BitString bits;
    ArithmeticEncoder enc(bits);
    size_t fi = 0;
    walk_coding_schedule(n, table, [&](uint64_t p, uint64_t) -> uint32_t {
        uint32_t x = 0;
        if (fi < ev.entries.size() && ev.entries[fi].prime == p) x = ev.entries[fi++].exponent;
        SymbolModel::build(valuation_tail_sum(p, n), n).encode_exponent(enc, x);
        return x;
    });
    assert(fi == ev.entries.size());
    enc.finish();
    return bits;
}

inline uint64_t decode(const BitString& bits, uint64_t n, const PrimeTable& table) {
    if (n < 1) throw std::invalid_argument("decode: N must be >= 1");
    if (n > table.limit()) throw std::out_of_range("decode: table limit below N");
    ArithmeticDecoder dec(bits);
    return walk_coding_schedule(n, table, [&](uint64_t p, uint64_t product) -> uint32_t {
        const SymbolModel m = SymbolModel::build(valuation_tail_sum(p, n), n);
        const uint32_t x = m.decode_exponent(dec);
        detail::check_capacity(p, x, product, n);
        return x;
    });
}

// -log Q of the message under the per-prime geometric models, summed over
// exactly the primes the coding schedule visits. Q_p(x) = (1-q) q^x with
// q = S/(S+N): -log Q_p(x) = [log(S+N) - log N] + x [log(S+N) - log S].
inline double ideal_codelength(uint64_t z, uint64_t n, const PrimeTable& table,
                               LogBase base = LogBase::two) {
    detail::check_message_range(z, n, table, "ideal_codelength");
    const ExponentVector ev = factorize(z, table);
    KahanSum<double> nats;
    const double log_n = std::log(static_cast<double>(n));
    size_t fi = 0;
    walk_coding_schedule(n, table, [&](uint64_t p, uint64_t) -> uint32_t {
        uint32_t x = 0;
        if (fi < ev.entries.size() && ev.entries[fi].prime == p) x = ev.entries[fi++].exponent;
        const uint64_t s = valuation_tail_sum(p, n);
        const double log_sn = std::log(static_cast<double>(s + n));
        double term = log_sn - log_n;
        if (x > 0) term += x * (log_sn - std::log(static_cast<double>(s)));
        nats.add(term);
        return x;
    });
    return from_nats(nats.value(), base);
}

struct CodecBenchMode {
    enum class Kind { exhaustive, monte_carlo };
    Kind kind = Kind::exhaustive;
    uint64_t seed = 0;
    uint64_t sample_count = 0;

    static CodecBenchMode exhaustive() { return {}; }
    static CodecBenchMode monte_carlo(uint64_t seed, uint64_t sample_count) {
        return {Kind::monte_carlo, seed, sample_count};
    }

    std::string to_string() const {
        if (kind == Kind::exhaustive) return "exhaustive";
        return "monte-carlo:seed=" + std::to_string(seed) +
               ":count=" + std::to_string(sample_count);
    }
};

struct CodeLengthReport {
    uint64_t n = 0;
    uint64_t message_count = 0;
    double mean_actual_bits = 0;
    double mean_ideal_bits = 0;
    double entropy_floor_bits = 0; // log2 N
    double redundancy_ideal = 0;   // mean_ideal - floor
    double redundancy_actual = 0;  // mean_actual - floor
    CodecBenchMode mode;
};

inline constexpr uint64_t kExhaustiveBenchLimit = 1000000;

// Measures actual and ideal codelengths over all of [1, N] (exhaustive) or
// over seeded uniform samples. Message work is parallelized over fixed
// blocks; block partials combine in block order, so the report is
// identical for every thread count.
inline CodeLengthReport average_codelength(uint64_t n, const PrimeTable& table,
                                           const CodecBenchMode& mode, unsigned thread_hint = 0) {
    if (n < 1) throw std::invalid_argument("average_codelength: N must be >= 1");
    if (n > table.limit()) throw std::out_of_range("average_codelength: table limit below N");
    if (mode.kind == CodecBenchMode::Kind::exhaustive && n > kExhaustiveBenchLimit) {
        throw capacity_error("average_codelength: exhaustive mode is budgeted to N <= " +
                             std::to_string(kExhaustiveBenchLimit));
    }
    if (mode.kind == CodecBenchMode::Kind::monte_carlo && mode.sample_count == 0) {
        throw std::invalid_argument("average_codelength: sample_count must be >= 1");
    }

    // Per-prime models and ideal-codelength coefficients, cached once.
    const size_t prime_count = table.prime_count(n);
    auto primes = table.primes();
    struct PerPrime {
        SymbolModel model;
        double l0_bits; // -log2 Q(0)
        double lq_bits; // -log2 q, the per-unit exponent cost
    };
    std::vector<PerPrime> cache = parallel_map<PerPrime>(prime_count, thread_hint, [&](size_t i) {
        const uint64_t p = primes[i];
        const uint64_t s = valuation_tail_sum(p, n);
        const double log_sn = std::log(static_cast<double>(s + n));
        return PerPrime{SymbolModel::build(s, n),
                        (log_sn - std::log(static_cast<double>(n))) / kLn2,
                        (log_sn - std::log(static_cast<double>(s))) / kLn2};
    });

    std::vector<uint64_t> messages;
    if (mode.kind == CodecBenchMode::Kind::monte_carlo) {
        messages.reserve(mode.sample_count);
        SplitMix64 rng(mode.seed);
        for (uint64_t i = 0; i < mode.sample_count; ++i) messages.push_back(rng.uniform_1_to(n));
    }
    const uint64_t count = mode.kind == CodecBenchMode::Kind::exhaustive ? n : mode.sample_count;

    struct BlockSums {
        uint64_t actual_bits = 0;
        double ideal_bits = 0;
    };
    constexpr uint64_t kBlock = 4096;
    const size_t blocks = static_cast<size_t>((count + kBlock - 1) / kBlock);
    std::vector<BlockSums> partials = parallel_map<BlockSums>(blocks, thread_hint, [&](size_t b) {
        BlockSums sums;
        KahanSum<double> ideal;
        const uint64_t begin = b * kBlock;
        const uint64_t end = std::min<uint64_t>(begin + kBlock, count);
        BitString bits;
        for (uint64_t i = begin; i < end; ++i) {
            const uint64_t z = mode.kind == CodecBenchMode::Kind::exhaustive ? i + 1 : messages[i];
            const ExponentVector ev = factorize(z, table);
            bits = BitString{};
            ArithmeticEncoder enc(bits);
            KahanSum<double> msg_ideal;
            size_t fi = 0, pi = 0;
            walk_coding_schedule(n, table, [&](uint64_t p, uint64_t) -> uint32_t {
                uint32_t x = 0;
                if (fi < ev.entries.size() && ev.entries[fi].prime == p) x = ev.entries[fi++].exponent;
                const PerPrime& pp = cache[pi++];
                pp.model.encode_exponent(enc, x);
                msg_ideal.add(pp.l0_bits + x * pp.lq_bits);
                return x;
            });
            enc.finish();
            sums.actual_bits += bits.bit_size();
            ideal.add(msg_ideal.value());
        }
        sums.ideal_bits = ideal.value();
        return sums;
    });

    uint64_t actual_total = 0;
    KahanSum<double> ideal_total;
    for (const auto& part : partials) {
        actual_total += part.actual_bits;
        ideal_total.add(part.ideal_bits);
    }

    CodeLengthReport report;
    report.n = n;
    report.message_count = count;
    report.mean_actual_bits = static_cast<double>(actual_total) / static_cast<double>(count);
    report.mean_ideal_bits = ideal_total.value() / static_cast<double>(count);
    report.entropy_floor_bits = std::log2(static_cast<double>(n));
    report.redundancy_ideal = report.mean_ideal_bits - report.entropy_floor_bits;
    report.redundancy_actual = report.mean_actual_bits - report.entropy_floor_bits;
    report.mode = mode;
    return report;
}

} // namespace primeinfo
