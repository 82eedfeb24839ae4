#pragma once
#include <cstdint>

#include "primeinfo/bitio.hpp"

namespace primeinfo {

// Integer arithmetic coder over a 64-bit active range, renormalized bit by
// bit. Symbol totals must be powers of two (the scaled models use 2^31, raw
// bits use 2), so the range split is a shift. The straddle case (interval
// crossing the midpoint while narrower than half) is resolved by counting
// pending bits that are emitted, inverted, after the next settled bit;
// this is what keeps carries from ever propagating into written output.
//
// The flush is minimal: it appends the fewest bits (at least one, when any
// symbol was coded) whose zero-padded continuation lands inside the final
// interval. Decoders therefore read past the end as zeros.
class ArithmeticEncoder {
public:
    explicit ArithmeticEncoder(BitString& out) : out_(&out) {}

    void encode(uint32_t cum, uint32_t freq, uint32_t total_log2) {
        const uint64_t r = span_shifted(total_log2);
        const uint64_t lo_add = r * cum;
        if (static_cast<uint64_t>(cum) + freq < (uint64_t{1} << total_log2)) {
            high_ = low_ + lo_add + r * freq - 1;
        } // else: top symbol keeps the split remainder
        low_ += lo_add;
        ++symbols_;
        for (;;) {
            if (high_ < kHalf) {
                emit(false);
            } else if (low_ >= kHalf) {
                emit(true);
                low_ -= kHalf;
                high_ -= kHalf;
            } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
                ++pending_;
                low_ -= kQuarter;
                high_ -= kQuarter;
            } else {
                break;
            }
            low_ <<= 1;
            high_ = (high_ << 1) | 1;
        }
    }

    void finish() {
        if (symbols_ == 0) return; // empty schedule encodes as the empty stream
        // Smallest k >= 1 such that a multiple of 2^(64-k) lies in [low, high].
        for (uint32_t k = 1;; ++k) {
            const unsigned __int128 g = static_cast<unsigned __int128>(1) << (64 - k);
            const unsigned __int128 v = (static_cast<unsigned __int128>(low_) + g - 1) / g * g;
            if (v <= high_) {
                const uint64_t value = static_cast<uint64_t>(v);
                for (uint32_t i = 0; i < k; ++i) emit((value >> (63 - i)) & 1u);
                return;
            }
        }
    }

private:
    static constexpr uint64_t kHalf = 1ull << 63;
    static constexpr uint64_t kQuarter = 1ull << 62;
    static constexpr uint64_t kThreeQuarters = kHalf + kQuarter;

    uint64_t span_shifted(uint32_t total_log2) const {
        const unsigned __int128 span = static_cast<unsigned __int128>(high_ - low_) + 1;
        return static_cast<uint64_t>(span >> total_log2);
    }

    void emit(bool b) {
        out_->push_bit(b);
        for (; pending_; --pending_) out_->push_bit(!b);
    }

    uint64_t low_ = 0;
    uint64_t high_ = ~0ull;
    uint64_t pending_ = 0;
    uint64_t symbols_ = 0;
    BitString* out_;
};

class ArithmeticDecoder {
public:
    explicit ArithmeticDecoder(const BitString& in) : in_(in) {
        for (int i = 0; i < 64; ++i) code_ = (code_ << 1) | static_cast<uint64_t>(in_.next());
    }

    // Returns a scaled value in [0, 2^total_log2); the caller maps it to a
    // symbol via its cumulative table and confirms with update().
    uint64_t decode_target(uint32_t total_log2) {
        r_ = span_shifted(total_log2);
        uint64_t dv = (code_ - low_) / r_;
        const uint64_t total = uint64_t{1} << total_log2;
        return dv < total ? dv : total - 1;
    }

    void update(uint32_t cum, uint32_t freq, uint32_t total_log2) {
        const uint64_t lo_add = r_ * cum;
        if (static_cast<uint64_t>(cum) + freq < (uint64_t{1} << total_log2)) {
            high_ = low_ + lo_add + r_ * freq - 1;
        }
        low_ += lo_add;
        for (;;) {
            if (high_ < kHalf) {
                // nothing settled to subtract
            } else if (low_ >= kHalf) {
                low_ -= kHalf;
                high_ -= kHalf;
                code_ -= kHalf;
            } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
                low_ -= kQuarter;
                high_ -= kQuarter;
                code_ -= kQuarter;
            } else {
                break;
            }
            low_ <<= 1;
            high_ = (high_ << 1) | 1;
            code_ = (code_ << 1) | static_cast<uint64_t>(in_.next());
        }
    }

private:
    static constexpr uint64_t kHalf = 1ull << 63;
    static constexpr uint64_t kQuarter = 1ull << 62;
    static constexpr uint64_t kThreeQuarters = kHalf + kQuarter;

    uint64_t span_shifted(uint32_t total_log2) const {
        const unsigned __int128 span = static_cast<unsigned __int128>(high_ - low_) + 1;
        return static_cast<uint64_t>(span >> total_log2);
    }

    uint64_t low_ = 0;
    uint64_t high_ = ~0ull;
    uint64_t code_ = 0;
    uint64_t r_ = 1;
    BitReader in_;
};

} // namespace primeinfo
