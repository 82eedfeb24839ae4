#pragma once
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace primeinfo {

// Bit sequence, big-endian bit order within bytes, final partial byte
// zero-padded. Equality compares length and padded bytes.
class BitString {
public:
    void push_bit(bool b) {
        if (nbits_ % 8 == 0) bytes_.push_back(0);
        if (b) bytes_.back() |= static_cast<uint8_t>(0x80u >> (nbits_ % 8));
        ++nbits_;
    }

    size_t bit_size() const { return nbits_; }
    const std::vector<uint8_t>& bytes() const { return bytes_; }

    bool bit(size_t i) const {
        return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
    }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        s.reserve(bytes_.size() * 2);
        for (uint8_t b : bytes_) {
            s.push_back(digits[b >> 4]);
            s.push_back(digits[b & 0xF]);
        }
        return s;
    }

    // "bitcount:hex", the pinned text form used for golden vectors.
    std::string to_string() const { return std::to_string(nbits_) + ":" + to_hex(); }

    bool operator==(const BitString&) const = default;

private:
    std::vector<uint8_t> bytes_;
    size_t nbits_ = 0;
};

// Reads bits in order; positions past the end read as 0, matching the
// zero-padded byte form the encoder commits to.
class BitReader {
public:
    explicit BitReader(const BitString& s) : s_(&s) {}
    bool next() {
        if (pos_ >= s_->bit_size()) return false;
        return s_->bit(pos_++);
    }

private:
    const BitString* s_;
    size_t pos_ = 0;
};

} // namespace primeinfo
