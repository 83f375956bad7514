#include "vanet/sim/world.hpp"

#include <algorithm>
#include <cstdio>

#include "vanet/error.hpp"
#include "vanet/sim/adversary.hpp"
#include "vanet/sim/beacon.hpp"

namespace vanet::sim {

using crypto::CountingScope;
using crypto::Timestamp;
using protocol::MessageType;

// ---- event loop ---------------------------------------------------------------

void EventLoop::schedule(Timestamp at, Action action) {
    if (at < now_) at = now_;
    queue_.push(Event{at, next_seq_++, std::move(action)});
}

void EventLoop::run() {
    while (!queue_.empty()) {
        // priority_queue::top is const; the action is moved out through a copy of the handle.
        Event event = queue_.top();
        queue_.pop();
        now_ = event.at;
        event.action();
    }
}

// ---- helpers -------------------------------------------------------------------

namespace {

constexpr std::uint64_t kDocumentationPrefix = 0x20010db8;
constexpr std::uint64_t kAdversarySeedSalt = 0x9E3779B97F4A7C15ULL;

std::string label_of(const Error& error) {
    std::string label(to_string(error.kind()));
    if (error.party() != Party::None) {
        label += '{';
        label += to_string(error.party());
        label += '}';
    }
    return label;
}

addr::u128 rsu_prefix(std::uint32_t index, const addr::AddressSplit& split) {
    return (addr::u128{kDocumentationPrefix} << (split.rsu_bits() - 32)) | index;
}

std::string vehicle_id(std::uint32_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "veh-%06u", index);
    return buf;
}

std::string rsu_id(std::uint32_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "rsu-%04u", index);
    return buf;
}

Frame bare_frame(NodeId src, NodeId dst, FlowId flow) {
    Frame frame;
    frame.src = src;
    frame.dst = dst;
    frame.flow = flow;
    return frame;
}

template <class Map>
auto take(Map& map, FlowId flow) -> std::optional<typename Map::mapped_type> {
    auto it = map.find(flow);
    if (it == map.end()) return std::nullopt;
    auto value = std::move(it->second);
    map.erase(it);
    return value;
}

}  // namespace

// ---- construction --------------------------------------------------------------

World::World(const ScenarioConfig& config)
    : config_((config.validate(), config)),
      params_(config.params()),
      rng_(config.seed),
      server_([this] {
          CountingScope scope(counters_[Phase::Setup].server);
          return protocol::make_server(params_, rng_);
      }()) {
    const addr::AddressSplit split(config_.split_i);
    rsus_.reserve(config_.num_rsus);
    for (std::uint32_t r = 0; r < config_.num_rsus; ++r) {
        CountingScope scope(counters_[Phase::Setup].server);
        rsus_.push_back(RsuNode{rsu_node(r),
                                protocol::provision_rsu(server_, rsu_id(r), config_.delta_window_secs),
                                addr::AddressPool(rsu_prefix(r, split), split, config_.lease_secs),
                                {}, {}, {}, {}, {}});
    }
    for (std::size_t i = 0; i < config_.adversaries.size(); ++i) {
        const auto seed = config_.seed * kAdversarySeedSalt + i + 1;
        add_adversary(make_adversary(config_.adversaries[i], i, seed));
    }
}

World::~World() = default;

void World::add_adversary(std::unique_ptr<Adversary> adversary) {
    AdversaryOutcome outcome;
    outcome.kind = adversary->spec().kind;
    outcome.label = std::string(to_string(outcome.kind));
    if (outcome.kind == AdversaryKind::Replay) {
        outcome.label += ':';
        outcome.label += protocol::to_string(adversary->spec().target);
    }
    outcomes_.push_back(std::move(outcome));
    adversaries_.push_back(std::move(adversary));
}

AdversaryOutcome& World::outcome(std::size_t injector) { return outcomes_.at(injector); }

const SessionRecord* World::session(FlowId flow) const {
    const auto it = sessions_.find(flow);
    return it == sessions_.end() ? nullptr : &it->second;
}

// ---- driving -------------------------------------------------------------------

ScenarioReport World::run() {
    register_all();
    for (auto& adversary : adversaries_) adversary->start(*this);
    for (auto& vehicle : vehicles_) {
        const Timestamp start{1 + vehicle.index * config_.arrival_spacing_secs};
        loop_.schedule(start, [this, &vehicle] { start_first_login(vehicle); });
    }
    loop_.run();
    for (auto& adversary : adversaries_) adversary->after_traffic(*this);
    loop_.run();
    for (auto& adversary : adversaries_) adversary->finish(*this);
    return finalize();
}

void World::register_all() {
    vehicles_.reserve(config_.num_vehicles);
    for (std::uint32_t v = 0; v < config_.num_vehicles; ++v) {
        auto& user = counters_[Phase::Registration].user;
        const auto id = vehicle_id(v);
        const auto password = "pw-" + crypto::to_hex(rng_.bytes(6));
        protocol::RegistrationStart start = [&] {
            CountingScope scope(user);
            return protocol::user_begin_registration(id, password, protocol::IrisTemplate{rng_.bytes(64)}, rng_);
        }();
        protocol::RegResp response = [&] {
            CountingScope scope(counters_[Phase::Registration].server);
            return protocol::server_complete_registration(server_, start.request, rng_);
        }();
        CountingScope scope(user);
        auto card = protocol::user_finalize_registration(response, id, password, start.nonce);
        VehicleNode vehicle{vehicle_node(v), v, id, password, std::move(card), v % config_.num_rsus, {}, {}, {}, 0, 0, 0, {}, 0, false};
        vehicles_.push_back(std::move(vehicle));
    }
}

SessionRecord& World::open_session(VehicleNode& vehicle, FlowId flow, Phase phase) {
    SessionRecord record;
    record.flow = flow;
    record.vehicle = vehicle.index;
    record.rsu = vehicle.rsu;
    record.phase = phase;
    record.started = now().seconds;
    return sessions_[flow] = std::move(record);
}

void World::send(NodeId src, NodeId dst, FlowId flow, const protocol::WireMessage& message) {
    transmit(Frame{src, dst, flow, FrameKind::Protocol, protocol::encode(message, params_)});
}

void World::transmit(Frame frame) {
    {
        // Adversary bookkeeping is not part of any entity's cost.
        crypto::OpCounters muted;
        CountingScope scope(muted);
        for (auto& adversary : adversaries_) adversary->observe(frame, *this);
    }
    if (frame.tampered) {
        if (auto it = sessions_.find(frame.flow); it != sessions_.end()) it->second.tampered = true;
    }
    loop_.schedule(Timestamp{now().seconds + config_.link_latency_secs},
                   [this, f = std::move(frame)] { deliver(f); });
}

void World::inject(Frame frame, Timestamp at) {
    frame.injected = true;
    if (!is_honest_flow(frame.flow)) adversary_flows_.emplace(frame.flow, frame.injector);
    loop_.schedule(at, [this, f = std::move(frame)] { deliver(f); });
}

void World::start_first_login(VehicleNode& vehicle) {
    const FlowId flow = next_flow_++;
    open_session(vehicle, flow, Phase::FirstLogin);
    vehicle.active_flow = flow;
    const auto& rsu = rsus_[vehicle.rsu];
    try {
        CountingScope scope(counters_[Phase::FirstLogin].user);
        auto step = protocol::user_first_login(vehicle.card, vehicle.password, rsu.state.rsuid, now(), rng_);
        vehicle.first = std::move(step.state);
        send(vehicle.node, rsu.node, flow, step.message);
    } catch (const Error& e) {
        reject(bare_frame(vehicle.node, rsu.node, flow), label_of(e), false);
    }
}

void World::start_consequent(VehicleNode& vehicle) {
    if (vehicle.halted) return;
    ++vehicle.consequent_done;
    const FlowId flow = next_flow_++;
    open_session(vehicle, flow, Phase::Consequent);
    vehicle.active_flow = flow;
    const auto& rsu = rsus_[vehicle.rsu];
    try {
        CountingScope scope(counters_[Phase::Consequent].user);
        auto step = protocol::user_consequent_login(vehicle.card, vehicle.password, rsu.state.rsuid, now(), rng_);
        vehicle.consequent = std::move(step.state);
        send(vehicle.node, rsu.node, flow, step.message);
    } catch (const Error& e) {
        reject(bare_frame(vehicle.node, rsu.node, flow), label_of(e), false);
    }
}

void World::request_address(VehicleNode& vehicle, FlowId flow) {
    auto& record = sessions_.at(flow);
    record.address_outcome = "Pending";
    ++addresses_.requested;
    const auto& rsu = rsus_[vehicle.rsu];
    const auto& entry = vehicle.card.entries.at(rsu.state.rsuid);
    CountingScope scope(counters_[Phase::Address].user);
    vehicle.pending_address_flow = flow;
    auto request = addr::vehicle_request_address(vehicle.keys.at(flow), entry.cid, now(), rng_);
    send(vehicle.node, rsu.node, flow, request);
}

void World::after_address(VehicleNode& vehicle) {
    if (vehicle.halted || vehicle.consequent_done >= config_.sessions_per_vehicle) return;
    loop_.schedule(Timestamp{now().seconds + 1}, [this, &vehicle] { start_consequent(vehicle); });
}

// ---- delivery ------------------------------------------------------------------

void World::deliver(const Frame& frame) {
    if (frame.dst == server_node()) {
        deliver_to_server(frame);
    } else if (frame.dst >= rsu_node(0) && frame.dst < rsu_node(config_.num_rsus)) {
        deliver_to_rsu(rsus_[frame.dst - rsu_node(0)], frame);
    } else if (frame.dst >= vehicle_node(0) && frame.dst < adversary_node()) {
        deliver_to_vehicle(vehicles_[vehicle_index(frame.dst)], frame);
    } else if (auto it = adversary_flows_.find(frame.flow); it != adversary_flows_.end()) {
        // A reply to the attacker. Without the ephemeral secret it cannot continue.
        const auto tag = frame.payload.size() >= 2 ? protocol::to_string(static_cast<MessageType>(frame.payload[1]))
                                                   : std::string_view("?");
        ++outcome(it->second).notes["received_" + std::string(tag)];
    }
}

bool World::address_step(const Frame& frame, bool decoded_address) const {
    if (decoded_address) return true;
    const auto it = sessions_.find(frame.flow);
    return it != sessions_.end() && it->second.outcome != "Open";
}

void World::reject(const Frame& frame, const std::string& label, bool address_step) {
    if (frame.injected) {
        if (frame.control) {
            ++outcome(frame.injector).notes["control_rejected"];
        } else {
            ++outcome(frame.injector).rejections[label];
        }
        return;
    }
    if (auto it = adversary_flows_.find(frame.flow); it != adversary_flows_.end()) {
        ++outcome(it->second).rejections[label];
        return;
    }
    auto it = sessions_.find(frame.flow);
    if (it == sessions_.end()) return;
    auto& record = it->second;
    auto& vehicle = vehicles_[record.vehicle];
    if (address_step) {
        if (record.address_outcome != "Pending") return;
        record.address_outcome = label;
        ++addresses_.failures[label];
    } else {
        if (record.outcome != "Open") return;
        record.outcome = label;
        record.finished = now().seconds;
    }
    vehicle.halted = true;
    vehicle.first.reset();
    vehicle.consequent.reset();
}

void World::adversary_success(const Frame& frame) {
    if (frame.injected) {
        ++outcome(frame.injector).succeeded;
    } else if (auto it = adversary_flows_.find(frame.flow); it != adversary_flows_.end()) {
        ++outcome(it->second).succeeded;
    }
}

void World::deliver_to_server(const Frame& frame) {
    CountingScope scope(counters_[Phase::FirstLogin].server);
    try {
        const auto m2 = protocol::decode_as<protocol::M2>(frame.payload, params_);
        auto verdict = protocol::server_process_m2(server_, m2);
        if (auto it = sessions_.find(frame.flow); it != sessions_.end() && !frame.injected) {
            const auto& vehicle = vehicles_[it->second.vehicle];
            it->second.identity_recovered =
                verdict.user_id == vehicle.id && verdict.rsuid == rsus_[vehicle.rsu].state.rsuid;
        }
        send(server_node(), frame.src, frame.flow, verdict.reply);
    } catch (const Error& e) {
        reject(frame, label_of(e), false);
    }
}

void World::complete_handshake(RsuNode& rsu, const Frame& frame, const protocol::SessionKey& rsu_key,
                               const protocol::Cid& cid) {
    rsu.keys[frame.flow] = RsuNode::Established{rsu_key, cid};
    rsu.key_by_cid[cid] = rsu_key;
    if (frame.injected || adversary_flows_.contains(frame.flow)) {
        adversary_success(frame);
        return;
    }
    auto it = sessions_.find(frame.flow);
    if (it == sessions_.end()) return;
    auto& record = it->second;
    if (record.outcome != "Open") return;
    const auto& vehicle = vehicles_[record.vehicle];
    const auto user_key = vehicle.keys.find(frame.flow);
    record.outcome = "Completed";
    record.finished = now().seconds;
    record.key_agreement = user_key != vehicle.keys.end() && user_key->second == rsu_key;
}

void World::deliver_to_rsu(RsuNode& rsu, const Frame& frame) {
    if (frame.kind != FrameKind::Protocol) {
        rsu_application(rsu, frame);
        return;
    }
    protocol::WireMessage message;
    try {
        message = protocol::decode(frame.payload, params_);
    } catch (const Error& e) {
        reject(frame, label_of(e), address_step(frame, false));
        return;
    }
    const auto type = protocol::type_of(message);
    const bool addressing = type == MessageType::AddrReq;
    const auto expire_at = Timestamp{now().seconds + 2 * config_.delta_window_secs};
    try {
        switch (type) {
            case MessageType::M1: {
                CountingScope scope(counters_[Phase::FirstLogin].rsu);
                auto step = protocol::rsu_process_m1(rsu.state, std::get<protocol::M1>(message), now(), rng_);
                rsu.await_m3.insert_or_assign(frame.flow, RsuNode::AwaitM3{std::move(step.state), frame.src});
                send(rsu.node, server_node(), frame.flow, step.message);
                loop_.schedule(expire_at, [this, &rsu, flow = frame.flow] {
                    rsu.await_m3.erase(flow);
                    if (auto pending = take(rsu.await_m5, flow)) protocol::revoke_cid(rsu.state, pending->pending.cid);
                    auto it = sessions_.find(flow);
                    if (it != sessions_.end() && it->second.outcome == "Open")
                        reject(bare_frame(0, rsu.node, flow), "Timeout", false);
                });
                break;
            }
            case MessageType::M3: {
                CountingScope scope(counters_[Phase::FirstLogin].rsu);
                auto waiting = take(rsu.await_m3, frame.flow);
                if (!waiting) fail(ErrorKind::DecodeError, "no session awaiting M3 on this flow");
                auto step = protocol::rsu_process_m3(rsu.state, std::move(waiting->session),
                                                     std::get<protocol::M3>(message), now(), rng_);
                const NodeId peer = waiting->peer;
                rsu.await_m5.insert_or_assign(frame.flow, RsuNode::AwaitM5{std::move(step.state), peer});
                send(rsu.node, peer, frame.flow, step.message);
                break;
            }
            case MessageType::M5: {
                CountingScope scope(counters_[Phase::FirstLogin].rsu);
                auto waiting = take(rsu.await_m5, frame.flow);
                if (!waiting) fail(ErrorKind::DecodeError, "no session awaiting M5 on this flow");
                const auto cid = waiting->pending.cid;
                const auto key =
                    protocol::rsu_process_m5(rsu.state, std::move(waiting->pending), std::get<protocol::M5>(message));
                complete_handshake(rsu, frame, key, cid);
                break;
            }
            case MessageType::C1: {
                CountingScope scope(counters_[Phase::Consequent].rsu);
                auto step = protocol::rsu_process_c1(rsu.state, std::get<protocol::C1>(message), now(), rng_);
                rsu.await_c3.insert_or_assign(frame.flow, RsuNode::AwaitC3{std::move(step.state), frame.src});
                send(rsu.node, frame.src, frame.flow, step.message);
                loop_.schedule(expire_at, [this, &rsu, flow = frame.flow] {
                    rsu.await_c3.erase(flow);
                    auto it = sessions_.find(flow);
                    if (it != sessions_.end() && it->second.outcome == "Open")
                        reject(bare_frame(0, rsu.node, flow), "Timeout", false);
                });
                break;
            }
            case MessageType::C3: {
                CountingScope scope(counters_[Phase::Consequent].rsu);
                auto waiting = take(rsu.await_c3, frame.flow);
                if (!waiting) fail(ErrorKind::DecodeError, "no session awaiting C3 on this flow");
                const auto cid = waiting->pending.cid;
                const auto key =
                    protocol::rsu_process_c3(rsu.state, std::move(waiting->pending), std::get<protocol::C3>(message));
                complete_handshake(rsu, frame, key, cid);
                break;
            }
            case MessageType::AddrReq: {
                CountingScope scope(counters_[Phase::Address].rsu);
                const auto established = rsu.keys.find(frame.flow);
                if (established == rsu.keys.end()) fail(ErrorKind::AuthFailure, "no session key on this flow");
                const auto leases_before = rsu.pool.history().size();
                auto grant = addr::rsu_handle_addr_request(rsu.state, rsu.pool, established->second.key,
                                                           std::get<protocol::AddrReq>(message), now(), rng_);
                const bool fresh_lease = rsu.pool.history().size() != leases_before;
                if (frame.injected || adversary_flows_.contains(frame.flow)) {
                    if (fresh_lease) adversary_success(frame);
                } else {
                    ++(fresh_lease ? addresses_.new_leases : addresses_.renewals);
                }
                send(rsu.node, frame.src, frame.flow, grant.response);
                break;
            }
            default:
                fail(ErrorKind::DecodeError, "message type not accepted by an RSU");
        }
    } catch (const Error& e) {
        reject(frame, label_of(e), addressing);
    }
}

void World::rsu_application(RsuNode& rsu, const Frame& frame) {
    if (frame.kind == FrameKind::Conflict) {
        // Addresses are unique by construction, so a conflict notice is never legitimate.
        reject(frame, "ConflictIgnored", false);
        return;
    }
    try {
        const auto claim = beacon_claim(frame.payload);
        const auto* lease = rsu.pool.find_active(claim, now());
        if (lease == nullptr) fail(ErrorKind::AuthFailure, "no active lease for claimed address");
        const auto key = rsu.key_by_cid.find(lease->holder);
        if (key == rsu.key_by_cid.end()) fail(ErrorKind::AuthFailure, "lease holder has no session key");
        open_beacon(frame.payload, key->second, now(), config_.delta_window_secs);
        if (frame.control) {
            ++outcome(frame.injector).notes["control_accepted"];
        } else {
            adversary_success(frame);
        }
    } catch (const Error& e) {
        reject(frame, label_of(e), false);
    }
}

void World::deliver_to_vehicle(VehicleNode& vehicle, const Frame& frame) {
    if (frame.kind == FrameKind::Conflict) {
        reject(frame, "ConflictIgnored", false);
        return;
    }
    if (frame.kind != FrameKind::Protocol) return;
    protocol::WireMessage message;
    try {
        message = protocol::decode(frame.payload, params_);
    } catch (const Error& e) {
        reject(frame, label_of(e), address_step(frame, false));
        return;
    }
    const auto type = protocol::type_of(message);
    const auto& rsu = rsus_[vehicle.rsu];
    try {
        switch (type) {
            case MessageType::M4: {
                CountingScope scope(counters_[Phase::FirstLogin].user);
                if (!vehicle.first || frame.flow != vehicle.active_flow)
                    fail(ErrorKind::DecodeError, "no first-time login awaiting M4");
                auto session = std::move(*vehicle.first);
                vehicle.first.reset();
                auto step = protocol::card_process_m4(vehicle.card, vehicle.password, std::move(session),
                                                      std::get<protocol::M4>(message));
                vehicle.keys[frame.flow] = step.state;
                vehicle.last_keyed_flow = frame.flow;
                send(vehicle.node, rsu.node, frame.flow, step.message);
                request_address(vehicle, frame.flow);
                break;
            }
            case MessageType::C2: {
                CountingScope scope(counters_[Phase::Consequent].user);
                if (!vehicle.consequent || frame.flow != vehicle.active_flow)
                    fail(ErrorKind::DecodeError, "no consequent login awaiting C2");
                auto session = std::move(*vehicle.consequent);
                vehicle.consequent.reset();
                auto step = protocol::card_process_c2(std::move(session), std::get<protocol::C2>(message));
                vehicle.keys[frame.flow] = step.state;
                vehicle.last_keyed_flow = frame.flow;
                send(vehicle.node, rsu.node, frame.flow, step.message);
                request_address(vehicle, frame.flow);
                break;
            }
            case MessageType::AddrResp: {
                CountingScope scope(counters_[Phase::Address].user);
                const auto key = vehicle.keys.find(frame.flow);
                if (key == vehicle.keys.end()) fail(ErrorKind::AuthFailure, "no session key on this flow");
                auto assigned = addr::vehicle_handle_addr_response(key->second, std::get<protocol::AddrResp>(message),
                                                                   now(), config_.delta_window_secs);
                if (frame.injected) {
                    adversary_success(frame);
                    break;
                }
                if (vehicle.pending_address_flow != frame.flow) break;  // unsolicited duplicate
                vehicle.pending_address_flow = 0;
                auto& record = sessions_.at(frame.flow);
                record.address_outcome = "Assigned";
                record.address = assigned.address.to_string();
                ++addresses_.assigned;
                vehicle.address = assigned;
                after_address(vehicle);
                break;
            }
            default:
                fail(ErrorKind::DecodeError, "message type not accepted by a vehicle");
        }
    } catch (const Error& e) {
        reject(frame, label_of(e), type == MessageType::AddrResp);
    }
}

// ---- report ---------------------------------------------------------------------

ScenarioReport World::finalize() {
    ScenarioReport report;
    report.config = config_;
    report.final_time = now().seconds;
    const Timestamp end = now();

    for (auto& [flow, record] : sessions_) {
        if (record.outcome == "Open") {
            record.outcome = "Timeout";
            record.finished = end.seconds;
        }
        if (record.address_outcome == "Pending") {
            record.address_outcome = "Timeout";
            ++addresses_.failures["Timeout"];
        }
        auto& stats = record.phase == Phase::FirstLogin ? report.first_login : report.consequent;
        ++stats.attempted;
        if (record.outcome == "Completed") {
            ++stats.completed;
            if (record.key_agreement) ++stats.key_agreement;
        } else {
            ++report.rejections[record.outcome];
        }
        if (record.identity_recovered) ++stats.identity_recovered;
        if (record.tampered) ++report.tampered_sessions;
        report.sessions.push_back(record);
    }

    std::map<addr::Ipv6Address, std::uint64_t> active;
    for (const auto& rsu : rsus_) {
        for (const auto& lease : rsu.pool.dump(end)) {
            ++active[lease.address];
            addresses_.leases.push_back(
                LeaseEntry{rsu.node - rsu_node(0), lease.address.to_string(), crypto::to_hex(lease.holder), lease.expiry.seconds});
        }
        std::map<std::uint64_t, std::vector<const addr::Lease*>> by_id;
        for (const auto& lease : rsu.pool.history()) by_id[lease.vehicle_id].push_back(&lease);
        for (auto& [id, grants] : by_id) {
            std::sort(grants.begin(), grants.end(),
                      [](const addr::Lease* a, const addr::Lease* b) { return a->granted < b->granted; });
            for (std::size_t k = 1; k < grants.size(); ++k) {
                if (grants[k]->granted < grants[k - 1]->expiry) ++addresses_.overlapping_leases;
                ++addresses_.reused_ids;
            }
        }
    }
    for (const auto& [address, count] : active) addresses_.duplicates += count - 1;

    std::map<addr::Ipv6Address, std::uint64_t> held;
    for (const auto& vehicle : vehicles_)
        if (vehicle.address && end < vehicle.address->lease_expiry) ++held[vehicle.address->address];
    for (const auto& [address, count] : held) addresses_.vehicle_duplicates += count - 1;

    report.addresses = addresses_;
    for (auto& outcome : outcomes_) outcome.blocked = outcome.attempts - std::min(outcome.attempts, outcome.succeeded);
    report.adversaries = outcomes_;
    report.counters = counters_;
    return report;
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
    World world(config);
    return world.run();
}

}  // namespace vanet::sim
