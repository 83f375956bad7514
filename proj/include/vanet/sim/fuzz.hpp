#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "vanet/sim/config.hpp"

namespace vanet::sim {

struct FuzzConfig {
    std::uint64_t trials = 10'000;
    std::uint64_t seed = 1;
    PrimeChoice prime = PrimeChoice::Standard;
};

struct FuzzReport {
    std::uint64_t trials = 0;
    std::uint64_t completed = 0;      // tampered exchange still finished (target 0)
    std::uint64_t typed_errors = 0;   // ended in a vanet::Error
    std::uint64_t other_errors = 0;   // ended in anything else
    std::map<std::string, std::uint64_t> by_message;
    std::map<std::string, std::uint64_t> by_error;

    [[nodiscard]] bool passed() const noexcept {
        return completed == 0 && other_errors == 0 && typed_errors == trials;
    }
};

// Each trial runs first-time login, address configuration and a consequent
// login with a single bit flipped in one uniformly chosen message type.
FuzzReport run_fuzz(const FuzzConfig& config);

nlohmann::json to_json(const FuzzReport& report);

}  // namespace vanet::sim
