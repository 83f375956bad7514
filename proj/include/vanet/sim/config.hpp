#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vanet/crypto/chebyshev.hpp"
#include "vanet/protocol/messages.hpp"

namespace vanet::sim {

enum class PrimeChoice { Test, Standard };

enum class AdversaryKind { Replay, ForgeAddress, Exhaustion, FakeConflict, BitFlip };

std::string_view to_string(AdversaryKind kind) noexcept;
std::string_view to_string(PrimeChoice prime) noexcept;

struct AdversarySpec {
    AdversaryKind kind = AdversaryKind::Replay;
    // Replay: which message to capture and how long to hold it.
    protocol::MessageType target = protocol::MessageType::M1;
    std::uint64_t delay_secs = 61;
    // Replay: messages captured; ForgeAddress / FakeConflict / Exhaustion: messages
    // sent; BitFlip: frames flipped.
    std::uint64_t count = 1;
    // Exhaustion: also push garbage onto honest flows that hold a session key.
    bool spoof_flows = false;
    // ForgeAddress: an insider vehicle additionally beacons its own address.
    bool control = false;
    // BitFlip: per-frame flip probability.
    double rate = 0.05;
};

struct ScenarioConfig {
    std::uint32_t num_vehicles = 10;
    std::uint32_t num_rsus = 2;
    unsigned split_i = 64;
    PrimeChoice prime = PrimeChoice::Standard;
    std::uint64_t delta_window_secs = 60;
    std::uint64_t seed = 1;
    // Consequent handshakes each vehicle runs after its first-time login.
    std::uint32_t sessions_per_vehicle = 1;
    std::uint64_t lease_secs = 300;
    // Vehicle v starts its first-time login at 1 + v * arrival_spacing_secs.
    std::uint64_t arrival_spacing_secs = 0;
    std::uint64_t link_latency_secs = 1;
    std::vector<AdversarySpec> adversaries;

    // Throws ConfigError.
    void validate() const;
    [[nodiscard]] crypto::ChebyParams params() const;
};

// Missing keys take the defaults above. Throws ConfigError on bad values.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ScenarioConfig& config);

}  // namespace vanet::sim
