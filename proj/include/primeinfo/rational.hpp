#pragma once
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace primeinfo {

namespace detail {

inline unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b) {
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace detail

// Exact rational with 64-bit numerator/denominator and 128-bit intermediates.
// Always normalized: den > 0, gcd(|num|, den) = 1. Every operation is exact
// or throws overflow_error; a result is never silently rounded. All values
// this library produces (probabilities, tails, means with denominators
// dividing the interval size) stay far inside the 64-bit envelope.
class Rational {
public:
    constexpr Rational() = default;
    Rational(int64_t num, int64_t den = 1) {
        *this = normalize(static_cast<__int128>(num), static_cast<__int128>(den));
    }

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return normalize(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return normalize(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return normalize(static_cast<__int128>(a.num_) * b.num_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return normalize(static_cast<__int128>(a.num_) * b.den_,
                         static_cast<__int128>(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator==(const Rational& a, const Rational& b) = default;

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    std::string to_string() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static Rational normalize(__int128 num, __int128 den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (num == 0) den = 1;
        unsigned __int128 a = num < 0 ? static_cast<unsigned __int128>(-num)
                                      : static_cast<unsigned __int128>(num);
        unsigned __int128 g = detail::gcd_u128(a, static_cast<unsigned __int128>(den));
        if (g > 1) {
            num /= static_cast<__int128>(g);
            den /= static_cast<__int128>(g);
        }
        constexpr __int128 kMax = static_cast<__int128>(INT64_MAX);
        if (num > kMax || num < -kMax || den > kMax) {
            throw std::overflow_error("Rational: value exceeds the 64-bit exact range");
        }
        Rational r;
        r.num_ = static_cast<int64_t>(num);
        r.den_ = static_cast<int64_t>(den);
        return r;
    }

    int64_t num_ = 0;
    int64_t den_ = 1;
};

} // namespace primeinfo
