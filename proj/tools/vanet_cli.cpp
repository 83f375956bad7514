// Command-line front end: scenario runs, tamper fuzzing, phase benchmarks and
// the built-in arithmetic self test.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "vanet/crypto/chebyshev.hpp"
#include "vanet/crypto/rng.hpp"
#include "vanet/error.hpp"
#include "vanet/oracle/chebyshev_oracle.hpp"
#include "vanet/sim/bench.hpp"
#include "vanet/sim/fuzz.hpp"
#include "vanet/sim/world.hpp"

namespace {

using namespace vanet;

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

const std::map<std::string, sim::PrimeChoice> kPrimes{{"test", sim::PrimeChoice::Test},
                                                      {"default", sim::PrimeChoice::Standard}};

void print_summary(const sim::ScenarioReport& r) {
    std::printf("first-login: %llu/%llu completed, consequent: %llu/%llu completed\n",
                static_cast<unsigned long long>(r.first_login.completed),
                static_cast<unsigned long long>(r.first_login.attempted),
                static_cast<unsigned long long>(r.consequent.completed),
                static_cast<unsigned long long>(r.consequent.attempted));
    std::printf("addresses: %llu assigned, %llu duplicates, %llu overlapping leases\n",
                static_cast<unsigned long long>(r.addresses.assigned),
                static_cast<unsigned long long>(r.addresses.duplicates),
                static_cast<unsigned long long>(r.addresses.overlapping_leases));
    for (const auto& a : r.adversaries) {
        std::printf("adversary %-22s attempts=%llu blocked=%llu succeeded=%llu\n", a.label.c_str(),
                    static_cast<unsigned long long>(a.attempts), static_cast<unsigned long long>(a.blocked),
                    static_cast<unsigned long long>(a.succeeded));
    }
}

int cmd_run(const std::string& scenario, std::optional<std::uint64_t> seed, const std::string& report_path,
            const std::string& format, bool costs) {
    auto config = sim::load_config(scenario);
    if (seed) config.seed = *seed;
    const auto report = sim::run_scenario(config);
    const std::string body = format == "csv" ? sim::to_csv(report) : sim::to_json(report).dump(2) + "\n";
    if (report_path.empty() || report_path == "-") {
        std::cout << body;
    } else {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + report_path);
        out << body;
        print_summary(report);
    }
    if (costs) {
        std::map<sim::Phase, std::uint64_t> sessions{{sim::Phase::FirstLogin, report.first_login.attempted},
                                                     {sim::Phase::Consequent, report.consequent.attempted},
                                                     {sim::Phase::Address, report.addresses.requested}};
        std::cerr << sim::render_cost_report(report.counters, sessions);
    }
    std::fprintf(stderr, "%s\n", report.passed() ? "PASS" : "FAIL");
    return report.passed() ? 0 : kExitFailed;
}

int cmd_fuzz(std::uint64_t trials, std::uint64_t seed, sim::PrimeChoice prime) {
    const auto report = sim::run_fuzz(sim::FuzzConfig{trials, seed, prime});
    std::cout << sim::to_json(report).dump(2) << "\n";
    return report.passed() ? 0 : kExitFailed;
}

int cmd_bench(const std::string& phase, std::uint64_t iters, std::uint64_t seed, sim::PrimeChoice prime) {
    const std::map<std::string, sim::Phase> phases{{"first-login", sim::Phase::FirstLogin},
                                                   {"consequent", sim::Phase::Consequent},
                                                   {"address", sim::Phase::Address}};
    std::cout << sim::render_bench(sim::run_bench(phases.at(phase), iters, seed, prime));
    return 0;
}

bool report_check(const char* name, bool ok, double seconds) {
    std::printf("%-44s %s (%.2fs)\n", name, ok ? "ok" : "FAILED", seconds);
    return ok;
}

int cmd_selftest() {
    using clock = std::chrono::steady_clock;
    bool ok = true;

    auto start = clock::now();
    const auto semigroup = oracle::check_semigroup(251, 300);
    ok &= report_check("semigroup p=251, n,m <= 300, all y", semigroup.mismatches == 0 && semigroup.checked > 0,
                       std::chrono::duration<double>(clock::now() - start).count());

    start = clock::now();
    bool fast_ok = true;
    crypto::Rng rng(251);
    for (const auto& params : {crypto::ChebyParams::test(), crypto::ChebyParams::standard()}) {
        for (int k = 0; k < 200; ++k) {
            const auto n = rng.next_u64() % 20'001;
            const auto y = rng.uniform(0, params.modulus() - 1);
            fast_ok &= crypto::cheby_eval(crypto::BigInt(static_cast<unsigned long>(n)), y, params) ==
                       oracle::chebyshev_naive(n, y, params.modulus());
        }
    }
    ok &= report_check("ladder vs recurrence, both primes", fast_ok,
                       std::chrono::duration<double>(clock::now() - start).count());

    start = clock::now();
    ok &= report_check("T_5(2) mod 251 == 111", crypto::cheby_eval(5, 2, 251) == 111,
                       std::chrono::duration<double>(clock::now() - start).count());

    std::printf("%s\n", ok ? "selftest passed" : "selftest FAILED");
    return ok ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev-map key establishment and RSU address configuration simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a scenario file");
    std::string scenario;
    std::optional<std::uint64_t> seed_override;
    std::string report_path;
    std::string format = "json";
    bool costs = false;
    run->add_option("--scenario", scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed_override, "Override the scenario seed");
    run->add_option("--report", report_path, "Write the report here (default: stdout)");
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    run->add_flag("--costs", costs, "Print the operation-count table to stderr");

    auto* fuzz = app.add_subcommand("fuzz", "Single-bit tamper trials over every message type");
    std::uint64_t trials = 10'000;
    std::uint64_t fuzz_seed = 1;
    std::string prime = "default";
    fuzz->add_option("--trials", trials, "Number of trials");
    fuzz->add_option("--seed", fuzz_seed, "Trial seed");
    fuzz->add_option("--prime", prime, "test or default")->check(CLI::IsMember({"test", "default"}));

    auto* bench = app.add_subcommand("bench", "Time one protocol phase");
    std::string phase = "first-login";
    std::uint64_t iters = 100;
    std::uint64_t bench_seed = 1;
    std::string bench_prime = "default";
    bench->add_option("--phase", phase, "Phase to time")
        ->check(CLI::IsMember({"first-login", "consequent", "address"}));
    bench->add_option("--iters", iters, "Iterations");
    bench->add_option("--seed", bench_seed, "Seed");
    bench->add_option("--prime", bench_prime, "test or default")->check(CLI::IsMember({"test", "default"}));

    auto* selftest = app.add_subcommand("selftest", "Chebyshev arithmetic checks on p=251 and the default prime");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(scenario, seed_override, report_path, format, costs);
        if (*fuzz) return cmd_fuzz(trials, fuzz_seed, kPrimes.at(prime));
        if (*bench) return cmd_bench(phase, iters, bench_seed, kPrimes.at(bench_prime));
        if (*selftest) return cmd_selftest();
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.kind() == ErrorKind::ConfigError ? kExitUsage : kExitFailed;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailed;
    }
    return kExitUsage;
}
