#pragma once
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "primeinfo/asymptotics.hpp"
#include "primeinfo/codec.hpp"
#include "primeinfo/valuation.hpp"

namespace primeinfo {

enum class OutputFormat { csv, json };

// 12 significant digits, trailing zeros trimmed. This is the pinned real
// rendering for every emitted file; 12 digits sit below the 1e-10 relative
// accuracy contract and above accumulation noise.
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace detail {

// Flat record = ordered (name, already-rendered value, quote-in-json) triples.
struct Field {
    const char* name;
    std::string value;
    bool quoted = false;
};

template <typename Series, typename RowFn>
void emit_records(const Series& series, OutputFormat format, std::ostream& os, RowFn&& row_fn) {
    if (series.empty()) throw std::invalid_argument("emit_report: empty series");
    if (format == OutputFormat::csv) {
        const auto header = row_fn(series.front());
        for (size_t i = 0; i < header.size(); ++i) {
            os << (i ? "," : "") << header[i].name;
        }
        os << "\n";
        for (const auto& rec : series) {
            const auto row = row_fn(rec);
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].value;
            os << "\n";
        }
    } else {
        os << "[\n";
        bool first_rec = true;
        for (const auto& rec : series) {
            if (!first_rec) os << ",\n";
            first_rec = false;
            os << "{";
            const auto row = row_fn(rec);
            for (size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << "\"" << row[i].name << "\":";
                if (row[i].quoted) {
                    os << "\"" << row[i].value << "\"";
                } else {
                    os << row[i].value;
                }
            }
            os << "}";
        }
        os << "\n]\n";
    }
    if (!os) throw std::runtime_error("emit_report: write failed");
}

} // namespace detail

// Pinned schema: changing any column name or order is a breaking change.
inline void emit_report(std::span<const InfoSummary> series, OutputFormat format, std::ostream& os) {
    detail::emit_records(series, format, os, [](const InfoSummary& s) {
        return std::vector<detail::Field>{
            {"N", std::to_string(s.n)},
            {"log_N", format_real(s.log_n)},
            {"pi_N", std::to_string(s.pi_n)},
            {"theta_N", format_real(s.theta_n)},
            {"mertens_sum", format_real(s.mertens_sum)},
            {"chebyshev_gap", format_real(s.chebyshev_gap)},
            {"entropy_decomp_sum", format_real(s.entropy_decomp_sum)},
            {"entropy_decomp_gap", format_real(s.entropy_decomp_gap)},
            {"info_per_prime", format_real(s.info_per_prime)},
            {"info_per_prime_ratio_nats", format_real(s.info_per_prime_ratio_nats)},
            {"info_per_prime_ratio_bits", format_real(s.info_per_prime_ratio_bits)},
        };
    });
}

inline void emit_report(std::span<const CodeLengthReport> series, OutputFormat format,
                        std::ostream& os) {
    detail::emit_records(series, format, os, [](const CodeLengthReport& r) {
        return std::vector<detail::Field>{
            {"N", std::to_string(r.n)},
            {"message_count", std::to_string(r.message_count)},
            {"mean_actual_bits", format_real(r.mean_actual_bits)},
            {"mean_ideal_bits", format_real(r.mean_ideal_bits)},
            {"entropy_floor_bits", format_real(r.entropy_floor_bits)},
            {"redundancy_ideal", format_real(r.redundancy_ideal)},
            {"redundancy_actual", format_real(r.redundancy_actual)},
            {"mode", r.mode.to_string(), true},
        };
    });
}

inline void emit_primes(std::span<const uint32_t> primes, OutputFormat format, std::ostream& os) {
    struct Row {
        uint32_t p;
    };
    std::vector<Row> rows(primes.begin(), primes.end());
    detail::emit_records(rows, format, os, [](const Row& r) {
        return std::vector<detail::Field>{{"p", std::to_string(r.p)}};
    });
}

// One row per exponent value; `count` is the exact number of integers in
// [1, N] with that exponent (pmf numerator over denominator N).
inline void emit_report(const ValuationDist& dist, OutputFormat format, std::ostream& os) {
    struct Row {
        const ValuationDist* d;
        uint32_t k;
    };
    std::vector<Row> rows;
    rows.reserve(dist.kmax + 1);
    for (uint32_t k = 0; k <= dist.kmax; ++k) rows.push_back({&dist, k});
    detail::emit_records(rows, format, os, [](const Row& r) {
        const auto& d = *r.d;
        const Rational& pmf = d.pmf[r.k];
        // exact count = pmf * N; denominators divide N by construction
        const int64_t count = pmf.num() * (static_cast<int64_t>(d.n) / pmf.den());
        return std::vector<detail::Field>{
            {"p", std::to_string(d.p)},
            {"N", std::to_string(d.n)},
            {"k", std::to_string(r.k)},
            {"count", std::to_string(count)},
            {"pmf", format_real(pmf.to_double())},
            {"tail", format_real(d.tail[r.k].to_double())},
        };
    });
}

// Per-prime entropy comparison at one N: exact H(X_p), the matched-mean
// geometric entropy, and the divergence between them.
struct PrimeEntropyRow {
    uint64_t n = 0;
    uint64_t p = 0;
    double mean = 0;
    double h_exact = 0;
    double h_geometric = 0;
    double kl = 0;
};

inline void emit_report(std::span<const PrimeEntropyRow> series, OutputFormat format,
                        std::ostream& os) {
    detail::emit_records(series, format, os, [](const PrimeEntropyRow& r) {
        return std::vector<detail::Field>{
            {"N", std::to_string(r.n)},
            {"p", std::to_string(r.p)},
            {"mean", format_real(r.mean)},
            {"h_exact", format_real(r.h_exact)},
            {"h_geometric", format_real(r.h_geometric)},
            {"kl", format_real(r.kl)},
        };
    });
}

} // namespace primeinfo
