#pragma once

#include <functional>
#include <string>

#include "vanet/addr/exchange.hpp"
#include "vanet/crypto/rng.hpp"
#include "vanet/protocol/engine.hpp"
#include "vanet/sim/report.hpp"

namespace vanet::sim {

// One server, one RSU and its address pool driven step by step without the
// event loop. Every message goes through encode -> hook -> decode.
class Testbed {
public:
    using WireHook = std::function<void(protocol::MessageType, crypto::Bytes&)>;

    struct Vehicle {
        std::string id;
        std::string password;
        protocol::SmartCard card;
    };

    struct Handshake {
        protocol::SessionKey user_key;
        protocol::SessionKey rsu_key;
        protocol::Cid cid{};
        std::string recovered_id;     // first-time login only
        std::string recovered_rsuid;  // first-time login only
    };

    Testbed(crypto::ChebyParams params, std::uint64_t seed, unsigned split_i = 64,
            std::uint64_t lease_secs = addr::kDefaultLeaseSeconds);

    Vehicle enroll(const std::string& id);
    Handshake first_login(Vehicle& vehicle);
    Handshake consequent_login(Vehicle& vehicle);
    addr::AssignedAddress request_address(const Vehicle& vehicle, const Handshake& session);

    void advance(std::uint64_t seconds) noexcept { clock_.seconds += seconds; }
    [[nodiscard]] crypto::Timestamp now() const noexcept { return clock_; }

    void set_hook(WireHook hook) { hook_ = std::move(hook); }

    crypto::Rng& rng() noexcept { return rng_; }
    protocol::MixZoneServer& server() noexcept { return server_; }
    protocol::RsuState& rsu() noexcept { return rsu_; }
    addr::AddressPool& pool() noexcept { return pool_; }
    CounterTable& counters() noexcept { return counters_; }

private:
    template <class T>
    T transit(const T& message);

    crypto::Rng rng_;
    crypto::ChebyParams params_;
    CounterTable counters_;
    protocol::MixZoneServer server_;
    protocol::RsuState rsu_;
    addr::AddressPool pool_;
    crypto::Timestamp clock_{1'700'000'000};
    WireHook hook_;
};

}  // namespace vanet::sim
