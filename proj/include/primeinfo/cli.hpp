#pragma once
#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "primeinfo/asymptotics.hpp"
#include "primeinfo/codec.hpp"
#include "primeinfo/info_measures.hpp"
#include "primeinfo/oracle.hpp"
#include "primeinfo/prime_table.hpp"
#include "primeinfo/report.hpp"
#include "primeinfo/valuation.hpp"

namespace primeinfo {

// Overrides the default 2 GiB sieve budget, in bytes.
inline constexpr const char* kMemoryBudgetEnvVar = "PRIMEINFO_MEMORY_BUDGET";

namespace detail {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline SieveConfig sieve_config_from_env() {
    SieveConfig cfg;
    if (const char* env = std::getenv(kMemoryBudgetEnvVar)) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || parsed == 0) {
            throw std::runtime_error(std::string(kMemoryBudgetEnvVar) + ": not a byte count: " + env);
        }
        cfg.memory_budget_bytes = parsed;
    }
    return cfg;
}

// Writes through to --out when given, else to the process output stream.
class OutputSink {
public:
    OutputSink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os_ = &fallback;
            return;
        }
        file_.open(path, std::ios::binary);
        if (!file_) throw std::runtime_error("cannot open output file: " + path);
        path_ = path;
        os_ = &file_;
    }
    std::ostream& stream() { return *os_; }
    void finish() {
        os_->flush();
        if (!*os_) {
            throw std::runtime_error(path_.empty() ? "write to output stream failed"
                                                   : "write failed: " + path_);
        }
    }

private:
    std::ofstream file_;
    std::string path_;
    std::ostream* os_ = nullptr;
};

} // namespace detail

// Entry point behind the binary; takes argv-style arguments (program name
// excluded). Exit codes: 0 success, 1 runtime error, 2 usage error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"prime number information measures: sieve, valuation distributions,\n"
                 "entropy decompositions, weighted prime sums, factorization codec",
                 "primeinfo"};
    app.require_subcommand(1);

    const std::map<std::string, LogBase> base_names{{"e", LogBase::e}, {"2", LogBase::two}};
    const std::map<std::string, WeightMode> weight_names{{"ideal", WeightMode::ideal},
                                                         {"empirical", WeightMode::empirical}};
    const std::map<std::string, OutputFormat> format_names{{"csv", OutputFormat::csv},
                                                           {"json", OutputFormat::json}};
    const std::map<std::string, CodecBenchMode::Kind> mode_names{
        {"exhaustive", CodecBenchMode::Kind::exhaustive},
        {"monte-carlo", CodecBenchMode::Kind::monte_carlo}};

    struct {
        uint64_t limit = 0;
        uint64_t prime = 0;
        uint64_t n_min = 0;
        uint64_t n_max = 0;
        unsigned points_per_decade = 10;
        LogBase base = LogBase::e;
        WeightMode weight_mode = WeightMode::ideal;
        OutputFormat format = OutputFormat::csv;
        std::string out_path;
        unsigned threads = 0;
        uint64_t seed = 0;
        uint64_t samples = 0;
        CodecBenchMode::Kind bench_kind = CodecBenchMode::Kind::exhaustive;
    } opt;

    auto add_common = [&](CLI::App* sub, bool with_base) {
        sub->add_option("--format", opt.format, "output format")
            ->transform(CLI::CheckedTransformer(format_names))
            ->default_str("csv");
        sub->add_option("--out", opt.out_path, "output file (default: standard output)");
        sub->add_option("--threads", opt.threads, "worker thread hint, 0 = auto")->default_val(0);
        if (with_base) {
            sub->add_option("--base", opt.base, "log base for reported quantities")
                ->transform(CLI::CheckedTransformer(base_names))
                ->default_str("e");
        }
    };

    CLI::App* primes_cmd = app.add_subcommand("primes", "list all primes up to a limit");
    primes_cmd->add_option("--limit,-n", opt.limit, "upper bound")->required();
    add_common(primes_cmd, false);

    CLI::App* valuation_cmd =
        app.add_subcommand("valuation", "exact exponent distribution of one prime on [1, N]");
    valuation_cmd->add_option("--prime,-p", opt.prime, "prime to analyse")->required();
    valuation_cmd->add_option("--limit,-n", opt.limit, "interval size N")->required();
    add_common(valuation_cmd, false);

    CLI::App* entropy_cmd = app.add_subcommand(
        "entropy", "per-prime entropies, geometric comparison and divergence at one N");
    entropy_cmd->add_option("--limit,-n", opt.limit, "interval size N")->required();
    add_common(entropy_cmd, true);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "summary panel over a geometric schedule of N values");
    sweep_cmd->add_option("--min", opt.n_min, "smallest N (>= 2)")->required();
    sweep_cmd->add_option("--max", opt.n_max, "largest N")->required();
    sweep_cmd->add_option("--points-per-decade", opt.points_per_decade, "schedule resolution")
        ->default_val(10);
    sweep_cmd->add_option("--weight-mode", opt.weight_mode, "prime-sum weights")
        ->transform(CLI::CheckedTransformer(weight_names))
        ->default_str("ideal");
    add_common(sweep_cmd, true);

    CLI::App* codec_cmd =
        app.add_subcommand("codec-bench", "average codelength of the factorization code at N");
    codec_cmd->add_option("--limit,-n", opt.limit, "interval size N")->required();
    auto* mode_opt = codec_cmd->add_option("--mode", opt.bench_kind, "measurement mode")
                         ->transform(CLI::CheckedTransformer(mode_names))
                         ->default_str("exhaustive");
    auto* seed_opt = codec_cmd->add_option("--seed", opt.seed, "Monte Carlo seed");
    auto* samples_opt = codec_cmd->add_option("--samples", opt.samples, "Monte Carlo sample count");
    add_common(codec_cmd, false);

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "brute-force verification of the exact distributions");
    oracle_cmd->add_option("--limit,-n", opt.limit, "interval size N (<= 10000)")->required();
    add_common(oracle_cmd, false);

    try {
        std::reverse(args.begin(), args.end()); // CLI11 vector parse order
        app.parse(args);

        const SieveConfig sieve_cfg = detail::sieve_config_from_env();

        if (app.got_subcommand(primes_cmd)) {
            const PrimeTable table = sieve_primes(opt.limit, sieve_cfg);
            detail::OutputSink sink(opt.out_path, out);
            emit_primes(table.primes(), opt.format, sink.stream());
            sink.finish();
            err << "primes: " << table.size() << " primes <= " << opt.limit << "\n";
            return 0;
        }

        if (app.got_subcommand(valuation_cmd)) {
            if (opt.limit < 1) throw detail::usage_error("--limit must be >= 1");
            const PrimeTable table = sieve_primes(std::max(opt.prime, opt.limit), sieve_cfg);
            const auto primes = table.primes();
            if (!std::binary_search(primes.begin(), primes.end(), opt.prime)) {
                throw detail::usage_error("--prime " + std::to_string(opt.prime) + " is not prime");
            }
            const ValuationDist dist = exact_valuation_dist(opt.prime, opt.limit);
            detail::OutputSink sink(opt.out_path, out);
            emit_report(dist, opt.format, sink.stream());
            sink.finish();
            const Rational mean = mean_valuation(dist);
            err << "valuation: p=" << opt.prime << " N=" << opt.limit << " kmax=" << dist.kmax
                << " mean=" << mean.to_string() << " (~" << format_real(mean.to_double())
                << "); reference 1/p=" << format_real(1.0 / static_cast<double>(opt.prime))
                << ", 1/(p-1)=" << format_real(1.0 / static_cast<double>(opt.prime - 1)) << "\n";
            return 0;
        }

        if (app.got_subcommand(entropy_cmd)) {
            if (opt.limit < 1) throw detail::usage_error("--limit must be >= 1");
            const PrimeTable table = sieve_primes(opt.limit, sieve_cfg);
            std::vector<PrimeEntropyRow> rows;
            rows.reserve(table.size());
            for (uint32_t p : table.primes()) {
                const ValuationDist dist = exact_valuation_dist(p, opt.limit);
                const FinitePmf pmf = to_pmf(dist);
                const GeometricDist geom = geometric_from_mean(mean_valuation(dist));
                rows.push_back({opt.limit, p, mean_valuation(dist).to_double(),
                                entropy(DiscreteDist{pmf}, opt.base),
                                entropy(DiscreteDist{geom}, opt.base),
                                kl_divergence(pmf, geom, opt.base)});
            }
            if (rows.empty()) throw std::runtime_error("entropy: no primes <= N, nothing to report");
            detail::OutputSink sink(opt.out_path, out);
            emit_report(std::span<const PrimeEntropyRow>(rows), opt.format, sink.stream());
            sink.finish();
            const auto decomp = entropy_decomposition_sum(opt.limit, table, opt.base, opt.threads);
            err << "entropy: N=" << opt.limit << " decomposition sum=" << format_real(decomp.sum)
                << " gap=" << format_real(decomp.gap)
                << (opt.base == LogBase::e ? " nats" : " bits") << "\n";
            return 0;
        }

        if (app.got_subcommand(sweep_cmd)) {
            if (opt.n_min < 2 || opt.n_min > opt.n_max) {
                throw detail::usage_error("--min/--max must satisfy 2 <= min <= max");
            }
            if (opt.points_per_decade < 1) {
                throw detail::usage_error("--points-per-decade must be >= 1");
            }
            const PrimeTable table = sieve_primes(opt.n_max, sieve_cfg);
            const auto schedule = geometric_schedule(opt.n_min, opt.n_max, opt.points_per_decade);
            const auto rows = run_sweep(schedule, table, opt.base, opt.weight_mode, opt.threads);
            detail::OutputSink sink(opt.out_path, out);
            emit_report(std::span<const InfoSummary>(rows), opt.format, sink.stream());
            sink.finish();
            err << "sweep: " << rows.size() << " points over [" << opt.n_min << ", " << opt.n_max
                << "]\n";
            return 0;
        }

        if (app.got_subcommand(codec_cmd)) {
            if (opt.limit < 1) throw detail::usage_error("--limit must be >= 1");
            CodecBenchMode mode;
            if (opt.bench_kind == CodecBenchMode::Kind::monte_carlo) {
                if (samples_opt->count() == 0) {
                    throw detail::usage_error("--samples is required with --mode monte-carlo");
                }
                mode = CodecBenchMode::monte_carlo(opt.seed, opt.samples);
            } else {
                if (seed_opt->count() || samples_opt->count()) {
                    throw detail::usage_error("--seed/--samples only apply to --mode monte-carlo");
                }
                (void)mode_opt;
                mode = CodecBenchMode::exhaustive();
            }
            const PrimeTable table = sieve_primes(opt.limit, sieve_cfg);
            const CodeLengthReport report = average_codelength(opt.limit, table, mode, opt.threads);
            detail::OutputSink sink(opt.out_path, out);
            emit_report(std::span<const CodeLengthReport>(&report, 1), opt.format, sink.stream());
            sink.finish();
            err << "codec-bench: N=" << report.n << " mean actual "
                << format_real(report.mean_actual_bits) << " bits, mean ideal "
                << format_real(report.mean_ideal_bits) << " bits, floor "
                << format_real(report.entropy_floor_bits) << " bits\n";
            return 0;
        }

        if (app.got_subcommand(oracle_cmd)) {
            if (opt.limit > 10000) {
                throw detail::usage_error("--limit must be <= 10000 for the oracle");
            }
            const PrimeTable table = sieve_primes(opt.limit, sieve_cfg);
            const OracleReport report = oracle_check(opt.limit, table);
            detail::OutputSink sink(opt.out_path, out);
            sink.stream() << report.summary() << "\n";
            sink.finish();
            return report.passed ? 0 : 1;
        }

        err << "usage error: no subcommand selected\n";
        return 2;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const detail::usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace primeinfo
