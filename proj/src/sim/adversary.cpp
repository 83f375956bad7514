#include "vanet/sim/adversary.hpp"

#include <limits>
#include <vector>

#include "vanet/crypto/aead.hpp"
#include "vanet/protocol/messages.hpp"
#include "vanet/sim/beacon.hpp"
#include "vanet/sim/world.hpp"

namespace vanet::sim {

using protocol::MessageType;

Frame Adversary::forge(World& world, NodeId dst, FlowId flow, FrameKind kind, crypto::Bytes payload) const {
    Frame frame;
    frame.src = world.adversary_node();
    frame.dst = dst;
    frame.flow = flow;
    frame.kind = kind;
    frame.payload = std::move(payload);
    frame.injected = true;
    frame.injector = index_;
    return frame;
}

namespace {

MessageType tag_of(const Frame& frame) {
    return frame.payload.size() >= 2 ? static_cast<MessageType>(frame.payload[1]) : MessageType{};
}

bool is_address_type(MessageType type) { return type == MessageType::AddrReq || type == MessageType::AddrResp; }

// Vehicles that currently hold an unexpired address, in index order.
std::vector<const VehicleNode*> addressed_vehicles(const World& world) {
    std::vector<const VehicleNode*> out;
    for (const auto& v : world.vehicles())
        if (v.address && world.now() < v.address->lease_expiry) out.push_back(&v);
    return out;
}

// Captures honest frames of one type and re-sends them after a delay.
class ReplayAdversary final : public Adversary {
public:
    using Adversary::Adversary;

    void observe(Frame& frame, World& world) override {
        if (frame.kind != FrameKind::Protocol || tag_of(frame) != spec_.target || captured_ >= spec_.count) return;
        ++captured_;
        const auto at = crypto::Timestamp{world.now().seconds + spec_.delay_secs};
        world.at(at, [this, &world, original = frame] { replay(world, original); });
    }

private:
    void replay(World& world, const Frame& original) {
        Frame frame = forge(world, original.dst, original.flow, FrameKind::Protocol, original.payload);
        switch (spec_.target) {
            case MessageType::M1:
            case MessageType::C1:
                // A fresh flow from the attacker's own position.
                frame.flow = world.open_adversary_flow();
                break;
            case MessageType::AddrReq:
                // Same flow, spoofing the original sender.
                frame.src = original.src;
                break;
            case MessageType::AddrResp: {
                // Deliver to some other vehicle on its keyed flow.
                const VehicleNode* other = nullptr;
                for (const auto& v : world.vehicles()) {
                    if (v.node != original.dst && v.last_keyed_flow != 0) {
                        other = &v;
                        break;
                    }
                }
                if (other == nullptr) return;
                frame.src = original.src;
                frame.dst = other->node;
                frame.flow = other->last_keyed_flow;
                break;
            }
            default:
                return;
        }
        ++world.outcome(index_).attempts;
        world.inject(std::move(frame), world.now());
    }

    std::uint64_t captured_ = 0;
};

// Claims other vehicles' addresses in application beacons.
class ForgeAddressAdversary final : public Adversary {
public:
    using Adversary::Adversary;

    void observe(Frame&, World&) override {}

    void after_traffic(World& world) override {
        const auto victims = addressed_vehicles(world);
        if (victims.empty()) return;
        auto& outcome = world.outcome(index_);
        const auto at = crypto::Timestamp{world.now().seconds + 1};
        for (std::uint64_t k = 0; k < spec_.count; ++k) {
            const auto& victim = *victims[k % victims.size()];
            const auto rsu = world.rsu_node(victim.rsu);
            ++outcome.attempts;
            world.inject(forge(world, rsu, world.open_adversary_flow(), FrameKind::Beacon,
                               forge_beacon(victim.address->address, rng_)),
                         at);
        }
        if (!spec_.control) return;

        // An insider with a legitimate session: its own address must be accepted,
        // a neighbour's must not.
        const auto& insider = *victims.front();
        const auto& key = insider.keys.at(insider.last_keyed_flow);
        const auto home = world.rsu_node(insider.rsu);
        const crypto::Bytes body{'h', 'e', 'l', 'l', 'o'};
        Frame own = forge(world, home, world.open_adversary_flow(), FrameKind::Beacon,
                          seal_beacon(insider.address->address, key, body, at, rng_));
        own.src = insider.node;
        own.control = true;
        world.inject(std::move(own), at);
        for (const auto* victim : victims) {
            if (victim == &insider || victim->rsu != insider.rsu) continue;
            Frame stolen = forge(world, home, world.open_adversary_flow(), FrameKind::Beacon,
                                 seal_beacon(victim->address->address, key, body, at, rng_));
            stolen.src = insider.node;
            ++outcome.attempts;
            world.inject(std::move(stolen), at);
            break;
        }
    }
};

// Floods RSUs with address requests it cannot seal under any session key.
class ExhaustionAdversary final : public Adversary {
public:
    using Adversary::Adversary;

    void observe(Frame&, World&) override {}

    void start(World& world) override {
        constexpr std::uint64_t kSpreadSecs = 20;
        for (std::uint64_t k = 0; k < spec_.count; ++k) {
            const auto at = crypto::Timestamp{1 + k * kSpreadSecs / std::max<std::uint64_t>(spec_.count, 1)};
            world.at(at, [this, &world, k] { send(world, k); });
        }
    }

private:
    void send(World& world, std::uint64_t k) {
        protocol::AddrReq request{rng_.bytes(crypto::kSymOverhead + 40)};
        auto payload = protocol::encode(request, world.params());
        const auto num_rsus = world.config().num_rsus;
        Frame frame = forge(world, world.rsu_node(static_cast<std::uint32_t>(k % num_rsus)),
                            world.open_adversary_flow(), FrameKind::Protocol, std::move(payload));
        if (spec_.spoof_flows && k % 2 == 1) {
            // Ride on an honest flow that already holds a session key.
            const auto& vehicles = world.vehicles();
            for (std::size_t n = 0; n < vehicles.size(); ++n) {
                const auto& v = vehicles[(k / 2 + n) % vehicles.size()];
                if (v.last_keyed_flow == 0) continue;
                frame.src = v.node;
                frame.dst = world.rsu_node(v.rsu);
                frame.flow = v.last_keyed_flow;
                break;
            }
        }
        ++world.outcome(index_).attempts;
        world.inject(std::move(frame), world.now());
    }
};

// Announces address conflicts to make holders give up their addresses.
class FakeConflictAdversary final : public Adversary {
public:
    using Adversary::Adversary;

    void observe(Frame&, World&) override {}

    void after_traffic(World& world) override {
        const auto victims = addressed_vehicles(world);
        if (victims.empty()) return;
        const auto at = crypto::Timestamp{world.now().seconds + 1};
        for (std::uint64_t k = 0; k < spec_.count; ++k) {
            const auto& victim = *victims[k % victims.size()];
            const auto notice = conflict_notice(victim.address->address);
            ++world.outcome(index_).attempts;
            world.inject(forge(world, world.rsu_node(victim.rsu), world.open_adversary_flow(), FrameKind::Conflict,
                               notice),
                         at);
            ++world.outcome(index_).attempts;
            world.inject(forge(world, victim.node, world.open_adversary_flow(), FrameKind::Conflict, notice), at);
            targets_.push_back(Target{victim.rsu, victim.address->address, victim.card.entries.at(
                                          world.rsus()[victim.rsu].state.rsuid).cid, at});
        }
    }

    void finish(World& world) override {
        // Each notice pair succeeded if the victim no longer held its lease right after it.
        for (const auto& t : targets_) {
            const auto* lease = world.rsus()[t.rsu].pool.find_active(t.address, crypto::Timestamp{t.at.seconds + 1});
            if (lease == nullptr || lease->holder != t.holder) ++world.outcome(index_).succeeded;
        }
    }

private:
    struct Target {
        std::uint32_t rsu;
        addr::Ipv6Address address;
        protocol::Cid holder;
        crypto::Timestamp at;
    };
    std::vector<Target> targets_;
};

// Flips one uniformly chosen bit in honest frames at a fixed rate.
class BitFlipAdversary final : public Adversary {
public:
    using Adversary::Adversary;

    void observe(Frame& frame, World& world) override {
        if (frame.kind != FrameKind::Protocol || frame.payload.empty() || flipped_.size() >= spec_.count) return;
        constexpr double kScale = 1.0 / 18446744073709551616.0;  // 2^-64
        if (static_cast<double>(rng_.next_u64()) * kScale >= spec_.rate) return;
        const auto bit = rng_.next_u64() % (frame.payload.size() * 8);
        const auto type = tag_of(frame);
        frame.payload[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
        frame.tampered = true;
        ++world.outcome(index_).attempts;
        ++world.outcome(index_).notes[std::string("flipped_") + std::string(protocol::to_string(type))];
        flipped_.push_back(Flip{frame.flow, is_address_type(type)});
    }

    void finish(World& world) override {
        auto& outcome = world.outcome(index_);
        for (const auto& flip : flipped_) {
            const auto* record = world.session(flip.flow);
            if (record == nullptr) continue;
            const bool completed =
                flip.address ? record->address_outcome == "Assigned" : record->outcome == "Completed";
            if (completed) ++outcome.succeeded;
        }
    }

private:
    struct Flip {
        FlowId flow;
        bool address;
    };
    std::vector<Flip> flipped_;
};

}  // namespace

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, std::size_t index, std::uint64_t seed) {
    switch (spec.kind) {
        case AdversaryKind::Replay: return std::make_unique<ReplayAdversary>(spec, index, seed);
        case AdversaryKind::ForgeAddress: return std::make_unique<ForgeAddressAdversary>(spec, index, seed);
        case AdversaryKind::Exhaustion: return std::make_unique<ExhaustionAdversary>(spec, index, seed);
        case AdversaryKind::FakeConflict: return std::make_unique<FakeConflictAdversary>(spec, index, seed);
        case AdversaryKind::BitFlip: return std::make_unique<BitFlipAdversary>(spec, index, seed);
    }
    return nullptr;
}

}  // namespace vanet::sim
