#pragma once

#include <cstdint>
#include <string>

#include "vanet/sim/config.hpp"
#include "vanet/sim/report.hpp"

namespace vanet::sim {

struct BenchResult {
    Phase phase = Phase::FirstLogin;
    std::uint64_t iters = 0;
    double seconds = 0.0;
    PhaseCounters counters;  // summed over all iterations

    [[nodiscard]] double micros_per_iter() const noexcept { return iters ? seconds * 1e6 / double(iters) : 0.0; }
};

// Phase must be FirstLogin, Consequent or Address. Timing covers only the
// repeated phase; setup and the logins it depends on are excluded.
BenchResult run_bench(Phase phase, std::uint64_t iters, std::uint64_t seed = 1,
                      PrimeChoice prime = PrimeChoice::Standard);

std::string render_bench(const BenchResult& result);

}  // namespace vanet::sim
