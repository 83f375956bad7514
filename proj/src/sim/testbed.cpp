#include "vanet/sim/testbed.hpp"

#include "vanet/crypto/counters.hpp"

namespace vanet::sim {

using crypto::CountingScope;

namespace {

constexpr addr::u128 kTestbedRsuId = 0x20010db800010001ULL;

}  // namespace

Testbed::Testbed(crypto::ChebyParams params, std::uint64_t seed, unsigned split_i, std::uint64_t lease_secs)
    : rng_(seed),
      params_(std::move(params)),
      server_([&] {
          CountingScope scope(counters_[Phase::Setup].server);
          return protocol::make_server(params_, rng_);
      }()),
      rsu_(protocol::provision_rsu(server_, "rsu-0001")),
      pool_(kTestbedRsuId, addr::AddressSplit(split_i), lease_secs) {}

template <class T>
T Testbed::transit(const T& message) {
    auto wire = protocol::encode(message, params_);
    if (hook_) hook_(protocol::type_of(message), wire);
    return protocol::decode_as<T>(wire, params_);
}

Testbed::Vehicle Testbed::enroll(const std::string& id) {
    auto& c = counters_[Phase::Registration];
    const auto password = "pw-" + crypto::to_hex(rng_.bytes(6));
    protocol::RegistrationStart start = [&] {
        CountingScope scope(c.user);
        return protocol::user_begin_registration(id, password, protocol::IrisTemplate{rng_.bytes(64)}, rng_);
    }();
    protocol::RegResp response = [&] {
        CountingScope scope(c.server);
        return protocol::server_complete_registration(server_, start.request, rng_);
    }();
    CountingScope scope(c.user);
    return Vehicle{id, password, protocol::user_finalize_registration(response, id, password, start.nonce)};
}

Testbed::Handshake Testbed::first_login(Vehicle& vehicle) {
    auto& c = counters_[Phase::FirstLogin];
    Handshake out;

    auto user = [&] {
        CountingScope scope(c.user);
        return protocol::user_first_login(vehicle.card, vehicle.password, rsu_.rsuid, clock_, rng_);
    }();
    const auto m1 = transit(user.message);
    auto rsu = [&] {
        CountingScope scope(c.rsu);
        return protocol::rsu_process_m1(rsu_, m1, clock_, rng_);
    }();
    const auto m2 = transit(rsu.message);
    auto verdict = [&] {
        CountingScope scope(c.server);
        return protocol::server_process_m2(server_, m2);
    }();
    out.recovered_id = verdict.user_id;
    out.recovered_rsuid = verdict.rsuid;
    const auto m3 = transit(verdict.reply);
    auto pending = [&] {
        CountingScope scope(c.rsu);
        return protocol::rsu_process_m3(rsu_, std::move(rsu.state), m3, clock_, rng_);
    }();
    out.cid = pending.state.cid;
    const auto m4 = transit(pending.message);
    auto finished = [&] {
        CountingScope scope(c.user);
        return protocol::card_process_m4(vehicle.card, vehicle.password, std::move(user.state), m4);
    }();
    out.user_key = finished.state;
    const auto m5 = transit(finished.message);
    CountingScope scope(c.rsu);
    out.rsu_key = protocol::rsu_process_m5(rsu_, std::move(pending.state), m5);
    return out;
}

Testbed::Handshake Testbed::consequent_login(Vehicle& vehicle) {
    auto& c = counters_[Phase::Consequent];
    Handshake out;

    auto user = [&] {
        CountingScope scope(c.user);
        return protocol::user_consequent_login(vehicle.card, vehicle.password, rsu_.rsuid, clock_, rng_);
    }();
    const auto c1 = transit(user.message);
    auto rsu = [&] {
        CountingScope scope(c.rsu);
        return protocol::rsu_process_c1(rsu_, c1, clock_, rng_);
    }();
    out.cid = rsu.state.cid;
    const auto c2 = transit(rsu.message);
    auto finished = [&] {
        CountingScope scope(c.user);
        return protocol::card_process_c2(std::move(user.state), c2);
    }();
    out.user_key = finished.state;
    const auto c3 = transit(finished.message);
    CountingScope scope(c.rsu);
    out.rsu_key = protocol::rsu_process_c3(rsu_, std::move(rsu.state), c3);
    return out;
}

addr::AssignedAddress Testbed::request_address(const Vehicle& vehicle, const Handshake& session) {
    auto& c = counters_[Phase::Address];
    const auto& entry = vehicle.card.entries.at(rsu_.rsuid);
    auto request = [&] {
        CountingScope scope(c.user);
        return addr::vehicle_request_address(session.user_key, entry.cid, clock_, rng_);
    }();
    const auto req = transit(request);
    auto grant = [&] {
        CountingScope scope(c.rsu);
        return addr::rsu_handle_addr_request(rsu_, pool_, session.rsu_key, req, clock_, rng_);
    }();
    const auto resp = transit(grant.response);
    CountingScope scope(c.user);
    return addr::vehicle_handle_addr_response(session.user_key, resp, clock_, rsu_.freshness_window);
}

}  // namespace vanet::sim
