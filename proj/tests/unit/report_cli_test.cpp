#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "primeinfo/cli.hpp"
#include "primeinfo/report.hpp"

using namespace primeinfo;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("format_real renders 12 significant digits, trimmed") {
    CHECK(format_real(2.302585092994046) == "2.30258509299");
    CHECK(format_real(2.5) == "2.5");
    CHECK(format_real(0.0) == "0");
    CHECK(format_real(13.287712379549449) == "13.2877123795");
}

TEST_CASE("emit_report for InfoSummary") {
    const auto table = sieve_primes(100);
    const std::vector<uint64_t> schedule{10};
    const auto rows = run_sweep(schedule, table);

    SUBCASE("pinned CSV header and first cells") {
        std::ostringstream os;
        emit_report(std::span<const InfoSummary>(rows), OutputFormat::csv, os);
        const std::string text = os.str();
        CHECK(text.starts_with(
            "N,log_N,pi_N,theta_N,mertens_sum,chebyshev_gap,entropy_decomp_sum,"
            "entropy_decomp_gap,info_per_prime,info_per_prime_ratio_nats,"
            "info_per_prime_ratio_bits\n"));
        CHECK(text.find("\n10,2.30258509299,4,") != std::string::npos);
    }

    SUBCASE("JSON mirrors the field names") {
        std::ostringstream os;
        emit_report(std::span<const InfoSummary>(rows), OutputFormat::json, os);
        const std::string text = os.str();
        CHECK(text.find("\"N\":10") != std::string::npos);
        CHECK(text.find("\"log_N\":2.30258509299") != std::string::npos);
        CHECK(text.find("\"info_per_prime_ratio_bits\":") != std::string::npos);
    }

    SUBCASE("identical input produces byte-identical output") {
        std::ostringstream a, b;
        emit_report(std::span<const InfoSummary>(rows), OutputFormat::csv, a);
        emit_report(std::span<const InfoSummary>(rows), OutputFormat::csv, b);
        CHECK(a.str() == b.str());
    }

    SUBCASE("empty series is an error and writes nothing") {
        std::ostringstream os;
        std::vector<InfoSummary> empty;
        CHECK_THROWS_AS(emit_report(std::span<const InfoSummary>(empty), OutputFormat::csv, os),
                        std::invalid_argument);
        CHECK(os.str().empty());
    }
}

TEST_CASE("cli: primes") {
    const auto r = cli({"primes", "--limit", "10", "--format", "csv"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "p\n2\n3\n5\n7\n");

    const auto json = cli({"primes", "-n", "10", "--format", "json"});
    CHECK(json.exit_code == 0);
    CHECK(json.out.find("{\"p\":7}") != std::string::npos);
}

TEST_CASE("cli: valuation") {
    const auto r = cli({"valuation", "--prime", "3", "--limit", "10"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "p,N,k,count,pmf,tail\n"
                   "3,10,0,7,0.7,1\n"
                   "3,10,1,2,0.2,0.3\n"
                   "3,10,2,1,0.1,0.1\n");
    CHECK(r.err.find("mean=") != std::string::npos);

    CHECK(cli({"valuation", "--prime", "4", "--limit", "10"}).exit_code == 2);
    // p > N is legal: degenerate distribution
    const auto degen = cli({"valuation", "--prime", "11", "--limit", "10"});
    CHECK(degen.exit_code == 0);
    CHECK(degen.out.find("11,10,0,10,1,1\n") != std::string::npos);
}

TEST_CASE("cli: sweep usage and determinism") {
    CHECK(cli({"sweep", "--min", "10", "--max", "2"}).exit_code == 2);
    CHECK(cli({"sweep", "--min", "1", "--max", "10"}).exit_code == 2);
    CHECK(cli({"sweep"}).exit_code == 2);
    CHECK(cli({"bogus-subcommand"}).exit_code == 2);
    CHECK(cli({"sweep", "--min", "10", "--max", "100", "--bogus-flag"}).exit_code == 2);

    const auto a = cli({"sweep", "--min", "10", "--max", "1000", "--threads", "1"});
    const auto b = cli({"sweep", "--min", "10", "--max", "1000", "--threads", "4"});
    const auto c = cli({"sweep", "--min", "10", "--max", "1000", "--threads", "1"});
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    const auto base2 = cli({"sweep", "--min", "10", "--max", "10", "--base", "2"});
    CHECK(base2.exit_code == 0);
    // log_N column stays in nats; mertens_sum converts to bits
    CHECK(base2.out.find("\n10,2.30258509299,4,") != std::string::npos);
    CHECK(base2.out.find(",1.8937571557,") != std::string::npos); // 1.31265243314 / ln 2
}

TEST_CASE("cli: sweep --out writes a file with identical bytes") {
    const std::string path = "/tmp/primeinfo_cli_test_sweep.csv";
    std::remove(path.c_str());
    const auto direct = cli({"sweep", "--min", "10", "--max", "100"});
    const auto filed = cli({"sweep", "--min", "10", "--max", "100", "--out", path});
    CHECK(filed.exit_code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path, std::ios::binary);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == direct.out);
    std::remove(path.c_str());

    CHECK(cli({"sweep", "--min", "10", "--max", "100", "--out", "/nonexistent-dir/x.csv"}).exit_code ==
          1);
}

TEST_CASE("cli: entropy") {
    const auto r = cli({"entropy", "--limit", "10"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.starts_with("N,p,mean,h_exact,h_geometric,kl\n"));
    CHECK(r.out.find("10,2,0.8,") != std::string::npos);
    CHECK(r.err.find("decomposition sum=") != std::string::npos);
}

TEST_CASE("cli: codec-bench") {
    const auto r = cli({"codec-bench", "--limit", "100"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.starts_with("N,message_count,mean_actual_bits,mean_ideal_bits,entropy_floor_bits,"
                            "redundancy_ideal,redundancy_actual,mode\n"));
    CHECK(r.out.find("100,100,") != std::string::npos);
    CHECK(r.out.find(",exhaustive\n") != std::string::npos);

    const auto mc = cli({"codec-bench", "--limit", "100", "--mode", "monte-carlo", "--seed", "7",
                         "--samples", "500", "--format", "json"});
    CHECK(mc.exit_code == 0);
    CHECK(mc.out.find("\"mode\":\"monte-carlo:seed=7:count=500\"") != std::string::npos);

    CHECK(cli({"codec-bench", "--limit", "100", "--samples", "10"}).exit_code == 2);
    CHECK(cli({"codec-bench", "--limit", "100", "--mode", "monte-carlo"}).exit_code == 2);
}

TEST_CASE("cli: oracle") {
    const auto r = cli({"oracle", "--limit", "100"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(cli({"oracle", "--limit", "20000"}).exit_code == 2);
}

TEST_CASE("oracle_check edge cases") {
    const auto table = sieve_primes(10000);
    CHECK(oracle_check(1, table).passed); // vacuous
    CHECK(oracle_check(0, table).passed);
    const auto at10 = oracle_check(10, table);
    CHECK(at10.passed);
    CHECK(at10.valuation_cells_checked > 0);
    CHECK_THROWS_AS(oracle_check(10001, table), capacity_error);
    const auto small = sieve_primes(10);
    CHECK_THROWS_AS(oracle_check(100, small), std::out_of_range);
}

TEST_CASE("cli: empty series is a runtime error, not silent output") {
    const auto r = cli({"primes", "--limit", "1"});
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("empty series") != std::string::npos);
    CHECK(cli({"entropy", "--limit", "1"}).exit_code == 1);
}

TEST_CASE("cli: help and runtime error mapping") {
    const auto help = cli({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("primes") != std::string::npos);

    // memory budget too small for the request: runtime error, module named
    setenv(kMemoryBudgetEnvVar, "1024", 1);
    const auto oom = cli({"primes", "--limit", "10000000"});
    CHECK(oom.exit_code == 1);
    CHECK(oom.err.find("sieve_primes") != std::string::npos);
    setenv(kMemoryBudgetEnvVar, "not-a-number", 1);
    CHECK(cli({"primes", "--limit", "10"}).exit_code == 1);
    unsetenv(kMemoryBudgetEnvVar);
    CHECK(cli({"primes", "--limit", "10"}).exit_code == 0);
}
