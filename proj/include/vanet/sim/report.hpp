#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "vanet/crypto/counters.hpp"
#include "vanet/sim/config.hpp"

namespace vanet::sim {

using crypto::OpCounters;

enum class Phase { Setup, Registration, FirstLogin, Consequent, Address };
enum class Role { User, Rsu, Server };

std::string_view to_string(Phase phase) noexcept;

struct PhaseCounters {
    OpCounters user;
    OpCounters rsu;
    OpCounters server;

    [[nodiscard]] OpCounters total() const noexcept { return user + rsu + server; }
    OpCounters& operator[](Role role) noexcept;
};

using CounterTable = std::map<Phase, PhaseCounters>;

struct SessionStats {
    std::uint64_t attempted = 0;
    std::uint64_t completed = 0;
    std::uint64_t key_agreement = 0;
    std::uint64_t identity_recovered = 0;  // first-time login only
};

struct SessionRecord {
    std::uint64_t flow = 0;
    std::uint32_t vehicle = 0;
    std::uint32_t rsu = 0;
    Phase phase = Phase::FirstLogin;
    std::uint64_t started = 0;
    std::uint64_t finished = 0;
    std::string outcome = "Open";          // "Completed" or a rejection kind
    bool key_agreement = false;
    bool identity_recovered = false;
    bool tampered = false;
    std::string address_outcome = "None";  // "Assigned" or a rejection kind
    std::string address;
};

struct AdversaryOutcome {
    AdversaryKind kind = AdversaryKind::Replay;
    std::string label;
    std::uint64_t attempts = 0;
    std::uint64_t blocked = 0;
    std::uint64_t succeeded = 0;
    std::map<std::string, std::uint64_t> rejections;
    std::map<std::string, std::uint64_t> notes;
};

struct LeaseEntry {
    std::uint32_t rsu = 0;
    std::string address;
    std::string cid;
    std::uint64_t expiry = 0;
};

struct AddressStats {
    std::uint64_t requested = 0;
    std::uint64_t assigned = 0;
    std::uint64_t new_leases = 0;
    std::uint64_t renewals = 0;
    std::map<std::string, std::uint64_t> failures;
    std::uint64_t duplicates = 0;          // among active pool leases
    std::uint64_t vehicle_duplicates = 0;  // among addresses vehicles hold
    std::uint64_t overlapping_leases = 0;  // same id, overlapping lease intervals
    std::uint64_t reused_ids = 0;          // grants of an id that an earlier, expired lease held
    std::vector<LeaseEntry> leases;
};

struct ScenarioReport {
    ScenarioConfig config;
    std::uint64_t final_time = 0;
    SessionStats first_login;
    SessionStats consequent;
    std::map<std::string, std::uint64_t> rejections;  // honest sessions, by kind
    std::uint64_t tampered_sessions = 0;
    AddressStats addresses;
    std::vector<AdversaryOutcome> adversaries;
    CounterTable counters;
    std::vector<SessionRecord> sessions;

    // Every adversary blocked, every untampered honest session and address
    // exchange completed, no duplicate or overlapping leases.
    [[nodiscard]] bool passed() const;
};

nlohmann::json to_json(const OpCounters& counters);
nlohmann::json to_json(const ScenarioReport& report);
std::string to_csv(const ScenarioReport& report);

// Published cost-comparison rows, carried as static reference data only.
struct ReferenceCostRow {
    std::string scheme;
    std::string authorization_phase;
    std::string access_phase;
    std::string computational_cost;
    std::string computational_time_s;
};

const std::vector<ReferenceCostRow>& reference_cost_rows();

// Per-phase counter table (optionally normalized per session) followed by the
// reference rows, labeled as not reproduced.
std::string render_cost_report(const CounterTable& counters, const std::map<Phase, std::uint64_t>& sessions_per_phase);

}  // namespace vanet::sim
