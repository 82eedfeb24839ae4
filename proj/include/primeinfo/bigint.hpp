#pragma once
#include <cstdint>
#include <compare>
#include <string>
#include <vector>

namespace primeinfo {

// Arbitrary-precision unsigned integer, base 2^32 limbs, little-endian.
// Covers what exact factorization products need: construction, multiply,
// compare, decimal rendering. Zero is the empty limb vector.
class BigUint {
public:
    BigUint() = default;
    BigUint(uint64_t v) { // NOLINT(google-explicit-constructor)
        while (v) {
            limbs_.push_back(static_cast<uint32_t>(v));
            v >>= 32;
        }
    }

    bool is_zero() const { return limbs_.empty(); }

    BigUint& mul_u64(uint64_t m) {
        if (m == 0 || limbs_.empty()) {
            limbs_.clear();
            return *this;
        }
        unsigned __int128 carry = 0;
        for (auto& limb : limbs_) {
            unsigned __int128 cur = static_cast<unsigned __int128>(limb) * m + carry;
            limb = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry) {
            limbs_.push_back(static_cast<uint32_t>(carry));
            carry >>= 32;
        }
        return *this;
    }

    BigUint operator*(const BigUint& rhs) const {
        if (limbs_.empty() || rhs.limbs_.empty()) return {};
        BigUint out;
        out.limbs_.assign(limbs_.size() + rhs.limbs_.size(), 0);
        for (size_t i = 0; i < limbs_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < rhs.limbs_.size(); ++j) {
                unsigned __int128 cur = static_cast<unsigned __int128>(limbs_[i]) * rhs.limbs_[j]
                                        + out.limbs_[i + j] + carry;
                out.limbs_[i + j] = static_cast<uint32_t>(cur);
                carry = static_cast<uint64_t>(cur >> 32);
            }
            size_t k = i + rhs.limbs_.size();
            while (carry) {
                unsigned __int128 cur = static_cast<unsigned __int128>(out.limbs_[k]) + carry;
                out.limbs_[k] = static_cast<uint32_t>(cur);
                carry = static_cast<uint64_t>(cur >> 32);
                ++k;
            }
        }
        out.trim();
        return out;
    }

    static BigUint pow(uint64_t base, uint32_t exponent) {
        BigUint out(1);
        for (uint32_t i = 0; i < exponent; ++i) out.mul_u64(base);
        return out;
    }

    bool fits_u64() const { return limbs_.size() <= 2; }
    uint64_t to_u64() const {
        uint64_t v = 0;
        for (size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
        return v;
    }

    std::strong_ordering operator<=>(const BigUint& rhs) const {
        if (limbs_.size() != rhs.limbs_.size()) return limbs_.size() <=> rhs.limbs_.size();
        for (size_t i = limbs_.size(); i-- > 0;) {
            if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
        }
        return std::strong_ordering::equal;
    }
    bool operator==(const BigUint& rhs) const = default;

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::vector<uint32_t> work = limbs_;
        std::string digits; // little-endian decimal, 9 digits per division
        while (!work.empty()) {
            uint64_t rem = 0;
            for (size_t i = work.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            for (int d = 0; d < 9; ++d) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        return {digits.rbegin(), digits.rend()};
    }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<uint32_t> limbs_;
};

} // namespace primeinfo
