#include "vanet/sim/bench.hpp"

#include <chrono>
#include <cstdio>

#include "vanet/error.hpp"
#include "vanet/sim/testbed.hpp"

namespace vanet::sim {

BenchResult run_bench(Phase phase, std::uint64_t iters, std::uint64_t seed, PrimeChoice prime) {
    if (phase != Phase::FirstLogin && phase != Phase::Consequent && phase != Phase::Address)
        fail(ErrorKind::ConfigError, "bench phase must be first-login, consequent or address");
    Testbed bed(prime == PrimeChoice::Test ? crypto::ChebyParams::test() : crypto::ChebyParams::standard(), seed);
    auto vehicle = bed.enroll("bench-vehicle");
    auto session = bed.first_login(vehicle);
    bed.counters()[phase] = {};

    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    for (std::uint64_t k = 0; k < iters; ++k) {
        bed.advance(1);
        switch (phase) {
            case Phase::FirstLogin: bed.first_login(vehicle); break;
            case Phase::Consequent: bed.consequent_login(vehicle); break;
            default: bed.request_address(vehicle, session); break;
        }
    }
    const std::chrono::duration<double> elapsed = clock::now() - start;
    return BenchResult{phase, iters, elapsed.count(), bed.counters()[phase]};
}

std::string render_bench(const BenchResult& r) {
    const auto total = r.counters.total();
    const double n = r.iters ? double(r.iters) : 1.0;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "phase=%s iters=%llu total=%.3fs per_iter=%.1fus hash/iter=%.2f cheby/iter=%.2f sym/iter=%.2f "
                  "rng/iter=%.2f\n",
                  std::string(to_string(r.phase)).c_str(), static_cast<unsigned long long>(r.iters), r.seconds,
                  r.micros_per_iter(), total.hash_ops / n, total.cheby_evals / n, total.sym_ops / n,
                  total.rng_draws / n);
    return buf;
}

}  // namespace vanet::sim
