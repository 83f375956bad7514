#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "vanet/addr/exchange.hpp"
#include "vanet/crypto/rng.hpp"
#include "vanet/protocol/engine.hpp"
#include "vanet/sim/config.hpp"
#include "vanet/sim/frame.hpp"
#include "vanet/sim/report.hpp"

namespace vanet::sim {

class Adversary;

// Single-threaded discrete-event loop ordered by (simulated time, insertion).
class EventLoop {
public:
    using Action = std::function<void()>;

    void schedule(crypto::Timestamp at, Action action);
    // Runs until no events remain.
    void run();
    [[nodiscard]] crypto::Timestamp now() const noexcept { return now_; }

private:
    struct Event {
        crypto::Timestamp at;
        std::uint64_t seq;
        Action action;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const noexcept {
            return a.at != b.at ? a.at > b.at : a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    crypto::Timestamp now_{};
    std::uint64_t next_seq_ = 0;
};

struct RsuNode {
    NodeId node = 0;
    protocol::RsuState state;
    addr::AddressPool pool;

    struct AwaitM3 {
        protocol::RsuFirstSession session;
        NodeId peer;
    };
    struct AwaitM5 {
        protocol::RsuFirstPending pending;
        NodeId peer;
    };
    struct AwaitC3 {
        protocol::RsuConsequentPending pending;
        NodeId peer;
    };
    struct Established {
        protocol::SessionKey key;
        protocol::Cid cid;
    };

    std::map<FlowId, AwaitM3> await_m3;
    std::map<FlowId, AwaitM5> await_m5;
    std::map<FlowId, AwaitC3> await_c3;
    std::map<FlowId, Established> keys;
    std::map<protocol::Cid, protocol::SessionKey> key_by_cid;
};

struct VehicleNode {
    NodeId node = 0;
    std::uint32_t index = 0;
    std::string id;
    std::string password;
    protocol::SmartCard card;
    std::uint32_t rsu = 0;

    std::optional<protocol::UserFirstSession> first;
    std::optional<protocol::UserConsequentSession> consequent;
    std::map<FlowId, protocol::SessionKey> keys;
    FlowId last_keyed_flow = 0;
    FlowId active_flow = 0;
    FlowId pending_address_flow = 0;
    std::optional<addr::AssignedAddress> address;
    std::uint32_t consequent_done = 0;
    bool halted = false;
};

// Vehicles, RSUs and the mix-zone server on one simulated channel, with
// adversaries observing every transmission.
class World {
public:
    explicit World(const ScenarioConfig& config);
    ~World();

    World(const World&) = delete;
    World& operator=(const World&) = delete;

    void add_adversary(std::unique_ptr<Adversary> adversary);

    // Registers every vehicle, drives all handshakes and address exchanges,
    // then gives adversaries a post-traffic turn. Returns the final report.
    ScenarioReport run();

    // ---- channel access for adversaries -----------------------------------
    void transmit(Frame frame);
    void inject(Frame frame, crypto::Timestamp at);
    void at(crypto::Timestamp when, EventLoop::Action action) { loop_.schedule(when, std::move(action)); }
    [[nodiscard]] crypto::Timestamp now() const noexcept { return loop_.now(); }
    FlowId open_adversary_flow() noexcept { return next_adversary_flow_++; }

    [[nodiscard]] const crypto::ChebyParams& params() const noexcept { return params_; }
    [[nodiscard]] const ScenarioConfig& config() const noexcept { return config_; }
    [[nodiscard]] NodeId server_node() const noexcept { return 0; }
    [[nodiscard]] NodeId rsu_node(std::uint32_t index) const noexcept { return 1 + index; }
    [[nodiscard]] NodeId vehicle_node(std::uint32_t index) const noexcept {
        return 1 + config_.num_rsus + index;
    }
    [[nodiscard]] NodeId adversary_node() const noexcept { return 1 + config_.num_rsus + config_.num_vehicles; }

    [[nodiscard]] const std::vector<RsuNode>& rsus() const noexcept { return rsus_; }
    [[nodiscard]] const std::vector<VehicleNode>& vehicles() const noexcept { return vehicles_; }
    [[nodiscard]] bool is_honest_flow(FlowId flow) const noexcept { return sessions_.contains(flow); }

    AdversaryOutcome& outcome(std::size_t injector);
    // Marks the attack carried by `frame` (or its flow) as having succeeded.
    void adversary_success(const Frame& frame);
    [[nodiscard]] const SessionRecord* session(FlowId flow) const;

private:
    void deliver(const Frame& frame);
    void deliver_to_server(const Frame& frame);
    void deliver_to_rsu(RsuNode& rsu, const Frame& frame);
    void deliver_to_vehicle(VehicleNode& vehicle, const Frame& frame);
    void rsu_application(RsuNode& rsu, const Frame& frame);

    void register_all();
    void start_first_login(VehicleNode& vehicle);
    void start_consequent(VehicleNode& vehicle);
    void request_address(VehicleNode& vehicle, FlowId flow);
    void after_address(VehicleNode& vehicle);

    void send(NodeId src, NodeId dst, FlowId flow, const protocol::WireMessage& message);
    SessionRecord& open_session(VehicleNode& vehicle, FlowId flow, Phase phase);
    void reject(const Frame& frame, const std::string& label, bool address_step);
    bool address_step(const Frame& frame, bool decoded_address) const;
    void complete_handshake(RsuNode& rsu, const Frame& frame, const protocol::SessionKey& rsu_key,
                            const protocol::Cid& cid);
    std::uint32_t vehicle_index(NodeId node) const noexcept { return node - vehicle_node(0); }

    ScenarioReport finalize();

    ScenarioConfig config_;
    crypto::ChebyParams params_;
    crypto::Rng rng_;
    EventLoop loop_;
    CounterTable counters_;
    protocol::MixZoneServer server_;
    std::vector<RsuNode> rsus_;
    std::vector<VehicleNode> vehicles_;
    std::vector<std::unique_ptr<Adversary>> adversaries_;
    std::vector<AdversaryOutcome> outcomes_;
    std::map<FlowId, SessionRecord> sessions_;
    std::map<FlowId, std::size_t> adversary_flows_;  // flow -> injector
    AddressStats addresses_;
    FlowId next_flow_ = 1;
    FlowId next_adversary_flow_ = FlowId{1} << 62;
};

ScenarioReport run_scenario(const ScenarioConfig& config);

}  // namespace vanet::sim
