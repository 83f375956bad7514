#include "vanet/sim/config.hpp"

#include <array>
#include <fstream>
#include <utility>

#include "vanet/addr/ipv6.hpp"
#include "vanet/error.hpp"

namespace vanet::sim {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<AdversaryKind, std::string_view>, 5> kKindNames{{
    {AdversaryKind::Replay, "replay"},
    {AdversaryKind::ForgeAddress, "forge_address"},
    {AdversaryKind::Exhaustion, "exhaustion"},
    {AdversaryKind::FakeConflict, "fake_conflict"},
    {AdversaryKind::BitFlip, "bitflip"},
}};

constexpr std::array<protocol::MessageType, 10> kReplayable{
    protocol::MessageType::M1, protocol::MessageType::M2, protocol::MessageType::M3,
    protocol::MessageType::M4, protocol::MessageType::M5, protocol::MessageType::C1,
    protocol::MessageType::C2, protocol::MessageType::C3, protocol::MessageType::AddrReq,
    protocol::MessageType::AddrResp,
};

AdversaryKind parse_kind(const std::string& name) {
    for (const auto& [kind, text] : kKindNames)
        if (text == name) return kind;
    fail(ErrorKind::ConfigError, "unknown adversary kind '" + name + "'");
}

protocol::MessageType parse_target(const std::string& name) {
    for (auto type : kReplayable)
        if (protocol::to_string(type) == name) return type;
    fail(ErrorKind::ConfigError, "unknown replay target '" + name + "'");
}

template <class T>
void read(const json& doc, const char* key, T& out) {
    const auto it = doc.find(key);
    if (it == doc.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        fail(ErrorKind::ConfigError, std::string("bad value for '") + key + "'");
    }
}

void reject_unknown_keys(const json& doc, std::initializer_list<std::string_view> known, const char* where) {
    for (const auto& [key, value] : doc.items()) {
        bool found = false;
        for (auto k : known) found = found || k == key;
        if (!found) fail(ErrorKind::ConfigError, std::string("unknown key '") + key + "' in " + where);
    }
}

AdversarySpec parse_adversary(const json& doc) {
    if (!doc.is_object()) fail(ErrorKind::ConfigError, "adversary entry must be an object");
    reject_unknown_keys(doc, {"kind", "target", "delay_secs", "count", "spoof_flows", "control", "rate"},
                        "adversary");
    AdversarySpec spec;
    std::string kind;
    read(doc, "kind", kind);
    if (kind.empty()) fail(ErrorKind::ConfigError, "adversary needs a kind");
    spec.kind = parse_kind(kind);
    if (doc.contains("target")) {
        std::string target;
        read(doc, "target", target);
        spec.target = parse_target(target);
    }
    read(doc, "delay_secs", spec.delay_secs);
    read(doc, "count", spec.count);
    read(doc, "spoof_flows", spec.spoof_flows);
    read(doc, "control", spec.control);
    read(doc, "rate", spec.rate);
    return spec;
}

}  // namespace

std::string_view to_string(AdversaryKind kind) noexcept {
    for (const auto& [k, text] : kKindNames)
        if (k == kind) return text;
    return "?";
}

std::string_view to_string(PrimeChoice prime) noexcept { return prime == PrimeChoice::Test ? "test" : "default"; }

void ScenarioConfig::validate() const {
    if (num_rsus == 0) fail(ErrorKind::ConfigError, "num_rsus must be at least 1");
    if (num_vehicles == 0) fail(ErrorKind::ConfigError, "num_vehicles must be at least 1");
    if (split_i < addr::AddressSplit::kMinVehicleBits || split_i > addr::AddressSplit::kMaxVehicleBits)
        fail(ErrorKind::ConfigError, "split_i must lie in [8, 64]");
    if (delta_window_secs == 0) fail(ErrorKind::ConfigError, "delta_window_secs must be positive");
    if (lease_secs == 0) fail(ErrorKind::ConfigError, "lease_secs must be positive");
    if (link_latency_secs == 0 || link_latency_secs * 4 > delta_window_secs)
        fail(ErrorKind::ConfigError, "link_latency_secs must be positive and well inside the freshness window");
    for (const auto& adversary : adversaries) {
        if (adversary.rate < 0.0 || adversary.rate > 1.0)
            fail(ErrorKind::ConfigError, "adversary rate must lie in [0, 1]");
        if (adversary.kind == AdversaryKind::Replay) {
            using protocol::MessageType;
            const auto t = adversary.target;
            if (t != MessageType::M1 && t != MessageType::C1 && t != MessageType::AddrReq &&
                t != MessageType::AddrResp)
                fail(ErrorKind::ConfigError, "replay target must be M1, C1, AddrReq or AddrResp");
        }
    }
}

crypto::ChebyParams ScenarioConfig::params() const {
    return prime == PrimeChoice::Test ? crypto::ChebyParams::test() : crypto::ChebyParams::standard();
}

ScenarioConfig parse_config(const json& doc) {
    if (!doc.is_object()) fail(ErrorKind::ConfigError, "scenario must be a JSON object");
    reject_unknown_keys(doc,
                        {"num_vehicles", "num_rsus", "split_i", "prime", "delta_window_secs", "seed",
                         "sessions_per_vehicle", "lease_secs", "arrival_spacing_secs", "link_latency_secs",
                         "adversaries"},
                        "scenario");
    ScenarioConfig config;
    read(doc, "num_vehicles", config.num_vehicles);
    read(doc, "num_rsus", config.num_rsus);
    read(doc, "split_i", config.split_i);
    read(doc, "delta_window_secs", config.delta_window_secs);
    read(doc, "seed", config.seed);
    read(doc, "sessions_per_vehicle", config.sessions_per_vehicle);
    read(doc, "lease_secs", config.lease_secs);
    read(doc, "arrival_spacing_secs", config.arrival_spacing_secs);
    read(doc, "link_latency_secs", config.link_latency_secs);
    if (doc.contains("prime")) {
        std::string prime;
        read(doc, "prime", prime);
        if (prime == "test") {
            config.prime = PrimeChoice::Test;
        } else if (prime == "default") {
            config.prime = PrimeChoice::Standard;
        } else {
            fail(ErrorKind::ConfigError, "prime must be 'test' or 'default'");
        }
    }
    if (const auto it = doc.find("adversaries"); it != doc.end()) {
        if (!it->is_array()) fail(ErrorKind::ConfigError, "adversaries must be an array");
        for (const auto& entry : *it) config.adversaries.push_back(parse_adversary(entry));
    }
    config.validate();
    return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ConfigError, "cannot open scenario file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ConfigError, "scenario file is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

json to_json(const ScenarioConfig& config) {
    json adversaries = json::array();
    for (const auto& a : config.adversaries) {
        json entry{{"kind", to_string(a.kind)}, {"count", a.count}};
        switch (a.kind) {
            case AdversaryKind::Replay:
                entry["target"] = protocol::to_string(a.target);
                entry["delay_secs"] = a.delay_secs;
                break;
            case AdversaryKind::ForgeAddress:
                entry["control"] = a.control;
                break;
            case AdversaryKind::Exhaustion:
                entry["spoof_flows"] = a.spoof_flows;
                break;
            case AdversaryKind::BitFlip:
                entry["rate"] = a.rate;
                break;
            case AdversaryKind::FakeConflict:
                break;
        }
        adversaries.push_back(std::move(entry));
    }
    return json{
        {"num_vehicles", config.num_vehicles},
        {"num_rsus", config.num_rsus},
        {"split_i", config.split_i},
        {"prime", to_string(config.prime)},
        {"delta_window_secs", config.delta_window_secs},
        {"seed", config.seed},
        {"sessions_per_vehicle", config.sessions_per_vehicle},
        {"lease_secs", config.lease_secs},
        {"arrival_spacing_secs", config.arrival_spacing_secs},
        {"link_latency_secs", config.link_latency_secs},
        {"adversaries", std::move(adversaries)},
    };
}

}  // namespace vanet::sim
