#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "vanet/crypto/rng.hpp"
#include "vanet/sim/config.hpp"
#include "vanet/sim/frame.hpp"

namespace vanet::sim {

class World;

// Dolev-Yao attacker on the simulated channel: it sees and may rewrite every
// frame in flight and can inject frames with any header, but holds no card,
// password or server secret.
class Adversary {
public:
    explicit Adversary(AdversarySpec spec, std::size_t index, std::uint64_t seed)
        : spec_(spec), index_(index), rng_(seed) {}
    virtual ~Adversary() = default;

    // Called before honest traffic starts.
    virtual void start(World&) {}
    // Called on every non-injected transmission; may modify `frame`.
    virtual void observe(Frame& frame, World& world) = 0;
    // Called once honest traffic has drained; may schedule more injections.
    virtual void after_traffic(World&) {}
    // Called before the report is built; settles attempts that can only be
    // judged after the run.
    virtual void finish(World&) {}

    [[nodiscard]] const AdversarySpec& spec() const noexcept { return spec_; }
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

protected:
    Frame forge(World& world, NodeId dst, FlowId flow, FrameKind kind, crypto::Bytes payload) const;

    AdversarySpec spec_;
    std::size_t index_;
    crypto::Rng rng_;
};

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, std::size_t index, std::uint64_t seed);

}  // namespace vanet::sim
