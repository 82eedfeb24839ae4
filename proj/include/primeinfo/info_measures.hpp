#pragma once
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "primeinfo/math_util.hpp"
#include "primeinfo/parallel.hpp"
#include "primeinfo/prime_table.hpp"
#include "primeinfo/rational.hpp"
#include "primeinfo/valuation.hpp"

namespace primeinfo {

// Finite distribution on {0, 1, ..., size-1} with exact probabilities.
struct FinitePmf {
    std::vector<Rational> probs;

    void validate() const {
        Rational sum(0);
        for (const auto& p : probs) {
            if (p < Rational(0)) throw std::invalid_argument("FinitePmf: negative probability");
            sum += p;
        }
        if (sum != Rational(1)) throw std::invalid_argument("FinitePmf: probabilities must sum to 1");
    }
};

// Geometric law pmf(k) = (1-q) q^k on k >= 0, with exact parameter q in [0, 1).
struct GeometricDist {
    Rational q;

    explicit GeometricDist(Rational q_) : q(q_) {
        if (q < Rational(0) || q >= Rational(1)) {
            throw std::invalid_argument("GeometricDist: q must lie in [0, 1)");
        }
    }
    Rational mean() const { return q / (Rational(1) - q); }
};

using DiscreteDist = std::variant<FinitePmf, GeometricDist>;

inline FinitePmf to_pmf(const ValuationDist& d) { return FinitePmf{d.pmf}; }

namespace detail {

// Accumulation in 80-bit extended precision; 0 log 0 := 0 throughout.
inline long double entropy_nats(const FinitePmf& pmf) {
    KahanSum<long double> acc;
    for (const auto& pr : pmf.probs) {
        if (pr.is_zero()) continue;
        long double p = pr.to_long_double();
        acc.add(-p * std::log(p));
    }
    return acc.value();
}

// Closed form H = (1+mu) log(1+mu) - mu log(mu), mu = q/(1-q); H(mu=0) = 0.
inline long double entropy_nats(const GeometricDist& g) {
    if (g.q.is_zero()) return 0.0L;
    long double mu = g.mean().to_long_double();
    return (1.0L + mu) * std::log(1.0L + mu) - mu * std::log(mu);
}

} // namespace detail

inline double entropy(const DiscreteDist& dist, LogBase base = LogBase::e) {
    long double nats = std::visit([](const auto& d) { return detail::entropy_nats(d); }, dist);
    return static_cast<double>(from_nats(nats, base));
}

// Geometric law with the given mean: q = mean / (1 + mean), exactly.
inline GeometricDist geometric_from_mean(const Rational& mean) {
    if (mean < Rational(0)) throw std::invalid_argument("geometric_from_mean: mean must be >= 0");
    return GeometricDist(mean / (Rational(1) + mean));
}

// -sum exact(k) log model(k); the ideal codelength of `exact` under `model`.
inline double cross_entropy(const FinitePmf& exact, const GeometricDist& model, LogBase base = LogBase::e) {
    const bool degenerate = model.q.is_zero();
    long double log_q = 0.0L, log_1mq = 0.0L;
    if (!degenerate) {
        log_q = std::log(model.q.to_long_double());
        log_1mq = std::log((Rational(1) - model.q).to_long_double());
    }
    KahanSum<long double> acc;
    for (size_t k = 0; k < exact.probs.size(); ++k) {
        if (exact.probs[k].is_zero()) continue;
        if (degenerate && k > 0) {
            throw std::invalid_argument("cross_entropy: model q = 0 cannot cover mass above 0");
        }
        long double p = exact.probs[k].to_long_double();
        acc.add(-p * (log_1mq + static_cast<long double>(k) * log_q));
    }
    return static_cast<double>(from_nats(acc.value(), base));
}

// KL(exact || model) >= 0, zero iff the distributions coincide.
inline double kl_divergence(const FinitePmf& exact, const GeometricDist& model, LogBase base = LogBase::e) {
    const bool degenerate = model.q.is_zero();
    long double log_q = 0.0L, log_1mq = 0.0L;
    if (!degenerate) {
        log_q = std::log(model.q.to_long_double());
        log_1mq = std::log((Rational(1) - model.q).to_long_double());
    }
    KahanSum<long double> acc;
    for (size_t k = 0; k < exact.probs.size(); ++k) {
        if (exact.probs[k].is_zero()) continue;
        if (degenerate && k > 0) {
            throw std::invalid_argument("kl_divergence: model q = 0 cannot cover mass above 0");
        }
        long double p = exact.probs[k].to_long_double();
        long double log_m = log_1mq + static_cast<long double>(k) * log_q;
        acc.add(p * (std::log(p) - log_m));
    }
    long double kl = acc.value();
    if (kl < 0.0L) kl = 0.0L; // Gibbs' inequality; clip rounding residue
    return static_cast<double>(from_nats(kl, base));
}

inline double entropy_of_valuation(uint64_t p, uint64_t n, LogBase base = LogBase::e) {
    return entropy(DiscreteDist{to_pmf(exact_valuation_dist(p, n))}, base);
}

struct EntropyDecomposition {
    double sum = 0; // sum over p <= N of H(X_p), requested base
    double gap = 0; // sum - log N, same base; nonnegative up to rounding
};

// Per-prime entropies evaluate in parallel (each one a pure function of
// (p, N)); the reduction is a single sequential compensated pass in
// increasing-prime order, so output is identical for every thread count.
inline EntropyDecomposition entropy_decomposition_sum(uint64_t n, const PrimeTable& table,
                                                      LogBase base = LogBase::e,
                                                      unsigned thread_hint = 0) {
    if (n < 1) throw std::invalid_argument("entropy_decomposition_sum: N must be >= 1");
    if (table.limit() < n) {
        throw std::out_of_range("entropy_decomposition_sum: table limit below N");
    }
    const size_t count = table.prime_count(n);
    auto primes = table.primes();
    std::vector<long double> terms = parallel_map<long double>(
        count, thread_hint,
        [&](size_t i) { return detail::entropy_nats(to_pmf(exact_valuation_dist(primes[i], n))); });
    KahanSum<long double> acc;
    for (long double h : terms) acc.add(h);
    long double sum_nats = acc.value();
    long double gap_nats = sum_nats - std::log(static_cast<long double>(n));
    return {static_cast<double>(from_nats(sum_nats, base)),
            static_cast<double>(from_nats(gap_nats, base))};
}

} // namespace primeinfo
