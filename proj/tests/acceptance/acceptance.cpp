// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vanet/addr/ipv6.hpp"
#include "vanet/addr/pool.hpp"
#include "vanet/crypto/aead.hpp"
#include "vanet/crypto/chebyshev.hpp"
#include "vanet/crypto/rng.hpp"
#include "vanet/error.hpp"
#include "vanet/oracle/chebyshev_oracle.hpp"
#include "vanet/protocol/engine.hpp"
#include "vanet/sim/fuzz.hpp"
#include "vanet/sim/testbed.hpp"
#include "vanet/sim/world.hpp"

namespace {

using namespace vanet;
using crypto::BigInt;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

int failures = 0;

void criterion(int number, const char* name, const std::function<Verdict()>& body) {
    const auto start = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.ok = false;
        v.detail = std::string("unexpected exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("criterion %2d %-28s %s  (%.1fs)%s%s\n", number, name, v.ok ? "PASS" : "FAIL", secs,
                v.detail.empty() ? "" : "  ", v.detail.c_str());
    std::fflush(stdout);
    if (!v.ok) ++failures;
}

std::string num(std::uint64_t v) { return std::to_string(v); }

// ---- 1 --------------------------------------------------------------------------

Verdict semigroup() {
    Verdict v;
    const auto start = Clock::now();
    const auto result = oracle::check_semigroup(251, 300);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    v.require(result.checked == 301ULL * 301ULL * 251ULL, "checked " + num(result.checked) + " triples");
    v.require(result.mismatches == 0, num(result.mismatches) + " mismatches");
    v.require(secs < 60.0, "suite took " + std::to_string(secs) + "s");
    // Spot values from the plain recurrence.
    v.require(crypto::cheby_eval(5, 2, 251) == 111, "T_5(2) mod 251 != 111");
    v.require(crypto::cheby_eval(2, crypto::cheby_eval(3, 2, 251), 251) == 96, "T_2(T_3(2)) mod 251 != 96");
    return v;
}

// ---- 2 --------------------------------------------------------------------------

Verdict fast_eval() {
    Verdict v;
    crypto::Rng rng(2);
    const auto small = crypto::ChebyParams::test();
    const auto big = crypto::ChebyParams::standard();
    std::uint64_t bad_small = 0;
    std::uint64_t bad_big = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto n = rng.next_u64() % 100'001;
        const auto y = static_cast<std::uint32_t>(rng.next_u64() % 251);
        const auto seq = oracle::chebyshev_sequence(y, 251, static_cast<std::uint32_t>(n));
        if (crypto::cheby_eval(n, y, 251) != seq[n]) ++bad_small;
        if (crypto::cheby_eval(BigInt(static_cast<unsigned long>(n)), BigInt(y), small) != seq[n]) ++bad_small;
    }
    for (int k = 0; k < 1000; ++k) {
        const auto n = rng.next_u64() % 100'001;
        const auto y = rng.uniform(0, big.modulus() - 1);
        if (crypto::cheby_eval(BigInt(static_cast<unsigned long>(n)), y, big) !=
            oracle::chebyshev_naive(n, y, big.modulus()))
            ++bad_big;
    }
    v.require(bad_small == 0, num(bad_small) + " mismatches at p=251");
    v.require(bad_big == 0, num(bad_big) + " mismatches at the 256-bit prime");
    return v;
}

// ---- 3 --------------------------------------------------------------------------

Verdict key_agreement() {
    Verdict v;
    sim::Testbed bed(crypto::ChebyParams::standard(), 3);
    std::vector<sim::Testbed::Vehicle> vehicles;
    std::uint64_t first_ok = 0;
    std::uint64_t identities_ok = 0;
    for (int k = 0; k < 1000; ++k) {
        vehicles.push_back(bed.enroll("veh-" + std::to_string(k)));
        const auto hs = bed.first_login(vehicles.back());
        if (hs.user_key == hs.rsu_key) ++first_ok;
        if (hs.recovered_id == vehicles.back().id && hs.recovered_rsuid == bed.rsu().rsuid) ++identities_ok;
    }
    bed.advance(5);
    std::uint64_t consequent_ok = 0;
    std::set<crypto::Digest> keys;
    for (auto& vehicle : vehicles) {
        const auto hs = bed.consequent_login(vehicle);
        if (hs.user_key == hs.rsu_key) ++consequent_ok;
        keys.insert(hs.user_key.sk);
    }
    v.require(first_ok == 1000, num(first_ok) + "/1000 first-time sessions agreed");
    v.require(identities_ok == 1000, num(identities_ok) + "/1000 identities recovered");
    v.require(consequent_ok == 1000, num(consequent_ok) + "/1000 consequent sessions agreed");
    v.require(keys.size() == 1000, "session keys repeat");

    // Same property through the simulated network.
    sim::ScenarioConfig config;
    config.num_vehicles = 100;
    config.num_rsus = 4;
    config.sessions_per_vehicle = 3;
    config.seed = 33;
    const auto report = sim::run_scenario(config);
    v.require(report.first_login.completed == 100 && report.first_login.key_agreement == 100 &&
                  report.first_login.identity_recovered == 100,
              "network first-time sessions incomplete");
    v.require(report.consequent.completed == 300 && report.consequent.key_agreement == 300,
              "network consequent sessions incomplete");
    return v;
}

// ---- 4 --------------------------------------------------------------------------

Verdict tamper() {
    Verdict v;
    const auto report = sim::run_fuzz(sim::FuzzConfig{10'000, 4, sim::PrimeChoice::Standard});
    v.require(report.trials == 10'000, "ran " + num(report.trials) + " trials");
    v.require(report.completed == 0, num(report.completed) + " tampered exchanges completed");
    v.require(report.typed_errors == report.trials, num(report.typed_errors) + " typed errors");
    v.require(report.other_errors == 0, num(report.other_errors) + " untyped failures");
    v.require(report.by_message.size() == 10, "only " + num(report.by_message.size()) + " message types hit");

    // Rate-driven flips inside full scenarios.
    sim::ScenarioConfig config;
    config.num_vehicles = 40;
    config.sessions_per_vehicle = 2;
    config.seed = 44;
    config.adversaries.push_back({sim::AdversaryKind::BitFlip, protocol::MessageType::M1, 0, 60, false, false, 0.1});
    const auto run = sim::run_scenario(config);
    const auto& flips = run.adversaries.front();
    v.require(flips.attempts > 0 && flips.succeeded == 0, "in-network flips: " + num(flips.succeeded) + " succeeded");
    v.require(run.passed(), "untampered sessions disturbed by flips");
    return v;
}

// ---- 5 --------------------------------------------------------------------------

Verdict replay() {
    Verdict v;
    using protocol::MessageType;
    sim::ScenarioConfig config;
    config.num_vehicles = 50;
    config.num_rsus = 2;
    config.sessions_per_vehicle = 2;
    config.seed = 55;
    const std::uint64_t window = config.delta_window_secs;
    auto replay = [](MessageType type, std::uint64_t delay) {
        sim::AdversarySpec spec;
        spec.kind = sim::AdversaryKind::Replay;
        spec.target = type;
        spec.delay_secs = delay;
        spec.count = 50;
        return spec;
    };
    config.adversaries = {replay(MessageType::M1, window + 1), replay(MessageType::C1, window + 1),
                          replay(MessageType::AddrReq, window + 1), replay(MessageType::AddrResp, 2),
                          replay(MessageType::C1, 5)};
    const auto report = sim::run_scenario(config);
    const auto& a = report.adversaries;
    auto rejected_as = [&](std::size_t i, const std::string& kind) {
        const auto it = a[i].rejections.find(kind);
        return a[i].attempts == 50 && a[i].succeeded == 0 && it != a[i].rejections.end() && it->second == 50;
    };
    v.require(rejected_as(0, "StaleTimestamp"), "stale M1 not rejected 100%");
    v.require(rejected_as(1, "StaleTimestamp"), "stale C1 not rejected 100%");
    v.require(rejected_as(2, "StaleTimestamp"), "stale AddrReq not rejected 100%");
    v.require(rejected_as(3, "AuthFailure"), "AddrResp under another key not rejected 100%");
    const auto c2 = a[4].notes.find("received_C2");
    v.require(a[4].attempts == 50 && c2 != a[4].notes.end() && c2->second == 50, "fresh C1 replay did not draw C2");
    v.require(a[4].succeeded == 0, "fresh C1 replay completed a session");
    v.require(report.passed(), "honest traffic disturbed by replays");
    return v;
}

// ---- 6 --------------------------------------------------------------------------

Verdict addresses() {
    Verdict v;
    sim::ScenarioConfig config;
    config.num_vehicles = 10'000;
    config.num_rsus = 16;
    config.split_i = 64;
    config.sessions_per_vehicle = 0;
    config.seed = 6;
    const auto big = sim::run_scenario(config);
    std::set<std::string> unique;
    for (const auto& lease : big.addresses.leases) unique.insert(lease.address);
    v.require(big.addresses.assigned == 10'000, num(big.addresses.assigned) + " addresses assigned");
    v.require(big.addresses.leases.size() == 10'000 && unique.size() == 10'000,
              num(unique.size()) + " distinct among " + num(big.addresses.leases.size()) + " active leases");
    v.require(big.addresses.duplicates == 0 && big.addresses.vehicle_duplicates == 0, "duplicates reported");

    // Lease cycling at i = 8: more vehicles than ids, leases expire and ids come back.
    sim::ScenarioConfig cycling;
    cycling.num_vehicles = 600;
    cycling.num_rsus = 1;
    cycling.split_i = 8;
    cycling.prime = sim::PrimeChoice::Test;
    cycling.sessions_per_vehicle = 0;
    cycling.lease_secs = 100;
    cycling.arrival_spacing_secs = 1;
    cycling.seed = 66;
    const auto cyc = sim::run_scenario(cycling);
    v.require(cyc.addresses.assigned == 600, "cycling assigned " + num(cyc.addresses.assigned));
    v.require(cyc.addresses.reused_ids > 0, "no id was reused");
    v.require(cyc.addresses.overlapping_leases == 0, num(cyc.addresses.overlapping_leases) + " overlapping leases");

    // Same property against an interval oracle, straight on the pool.
    addr::AddressPool pool(0x20010db8, addr::AddressSplit(8), 100);
    crypto::Rng rng(61);
    for (std::uint64_t t = 0; t < 2000; ++t) {
        protocol::Cid cid{};
        const auto raw = rng.bytes(cid.size());
        std::copy(raw.begin(), raw.end(), cid.begin());
        pool.allocate(crypto::Timestamp{t}, cid);
    }
    std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> by_id;
    for (const auto& lease : pool.history())
        by_id[lease.vehicle_id].emplace_back(lease.granted.seconds, lease.expiry.seconds);
    std::uint64_t overlaps = 0;
    std::uint64_t reuse = 0;
    for (const auto& [id, spans] : by_id) {
        reuse += spans.size() - 1;
        for (std::size_t i = 0; i < spans.size(); ++i)
            for (std::size_t j = i + 1; j < spans.size(); ++j)
                if (spans[i].first < spans[j].second && spans[j].first < spans[i].second) ++overlaps;
    }
    v.require(reuse > 0 && overlaps == 0, "pool oracle: reuse=" + num(reuse) + " overlaps=" + num(overlaps));

    // compose/decompose on random triples, checked against shift-and-or.
    std::uint64_t bad = 0;
    for (int k = 0; k < 10'000; ++k) {
        const unsigned i = 8 + rng.next_u64() % 57;
        const addr::AddressSplit split(i);
        const addr::u128 rsu_mask = (addr::u128{1} << (128 - i)) - 1;
        const addr::u128 rsu_id = ((addr::u128{rng.next_u64()} << 64) | rng.next_u64()) & rsu_mask;
        const std::uint64_t vid = i == 64 ? rng.next_u64() : rng.next_u64() & ((std::uint64_t{1} << i) - 1);
        const auto address = addr::compose_address(rsu_id, vid, split);
        const auto parts = addr::decompose_address(address, split);
        if (address.bits() != ((rsu_id << i) | vid)) ++bad;
        if (parts.rsu_id != rsu_id || parts.vehicle_id != vid) ++bad;
        if (addr::Ipv6Address::parse(address.to_string()) != address) ++bad;
    }
    v.require(bad == 0, num(bad) + " round-trip failures");
    return v;
}

// ---- 7 --------------------------------------------------------------------------

Verdict exhaustion() {
    Verdict v;
    sim::Testbed bed(crypto::ChebyParams::standard(), 7);
    auto vehicle = bed.enroll("veh-honest");
    const auto session = bed.first_login(vehicle);
    bed.request_address(vehicle, session);
    const auto before = bed.pool().occupancy(bed.now());
    const auto history_before = bed.pool().history().size();
    crypto::Rng attacker(70);
    std::uint64_t declined = 0;
    const auto& cid = vehicle.card.entries.at(bed.rsu().rsuid).cid;
    for (int k = 0; k < 10'000; ++k) {
        // Half garbage, half well-formed requests sealed under a key the attacker made up.
        protocol::AddrReq request{};
        if (k % 2 == 0) {
            request.sealed = attacker.bytes(crypto::kSymOverhead + 28);
        } else {
            protocol::SessionKey guess;
            const auto raw = attacker.bytes(guess.sk.size());
            std::copy(raw.begin(), raw.end(), guess.sk.begin());
            request = addr::vehicle_request_address(guess, cid, bed.now(), attacker);
        }
        try {
            addr::rsu_handle_addr_request(bed.rsu(), bed.pool(), session.rsu_key, request, bed.now(), attacker);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::AuthFailure) ++declined;
        }
    }
    v.require(declined == 10'000, num(declined) + "/10000 requests declined");
    v.require(bed.pool().occupancy(bed.now()) == before, "pool occupancy changed");
    v.require(bed.pool().history().size() == history_before, "allocations happened");

    // In-network: honest allocations identical with and without the flood.
    sim::ScenarioConfig config;
    config.num_vehicles = 30;
    config.num_rsus = 2;
    config.sessions_per_vehicle = 1;
    config.seed = 77;
    const auto clean = sim::run_scenario(config);
    sim::AdversarySpec flood;
    flood.kind = sim::AdversaryKind::Exhaustion;
    flood.count = 10'000;
    flood.spoof_flows = true;
    config.adversaries.push_back(flood);
    const auto attacked = sim::run_scenario(config);
    const auto& out = attacked.adversaries.front();
    v.require(out.attempts == 10'000 && out.succeeded == 0, "flood allocated " + num(out.succeeded));
    bool same = clean.sessions.size() == attacked.sessions.size();
    for (std::size_t k = 0; same && k < clean.sessions.size(); ++k)
        same = clean.sessions[k].address == attacked.sessions[k].address &&
               clean.sessions[k].outcome == attacked.sessions[k].outcome;
    v.require(same, "honest allocations differ under attack");
    v.require(attacked.passed(), "attacked run did not pass");
    return v;
}

// ---- 8 --------------------------------------------------------------------------

Verdict password_change() {
    Verdict v;
    sim::Testbed bed(crypto::ChebyParams::standard(), 8);
    crypto::Rng rng(80);
    std::uint64_t ok = 0;
    for (int k = 0; k < 100; ++k) {
        auto vehicle = bed.enroll("card-" + std::to_string(k));
        bed.first_login(vehicle);
        const auto a_i = protocol::card_unlock(vehicle.card, vehicle.password);
        const auto old_pw = vehicle.password;
        const auto new_pw = "new-" + crypto::to_hex(rng.bytes(1 + rng.next_u64() % 16));
        protocol::change_password(vehicle.card, old_pw, new_pw);

        bool old_rejected = false;
        try {
            protocol::card_unlock(vehicle.card, old_pw);
        } catch (const Error& e) {
            old_rejected = e.kind() == ErrorKind::PasswordMismatch;
        }
        bool old_login_rejected = false;
        try {
            protocol::user_consequent_login(vehicle.card, old_pw, bed.rsu().rsuid, bed.now(), rng);
        } catch (const Error& e) {
            old_login_rejected = e.kind() == ErrorKind::PasswordMismatch;
        }
        const bool same_a = protocol::card_unlock(vehicle.card, new_pw) == a_i;
        vehicle.password = new_pw;
        const auto hs = bed.consequent_login(vehicle);
        if (old_rejected && old_login_rejected && same_a && hs.user_key == hs.rsu_key) ++ok;
    }
    v.require(ok == 100, num(ok) + "/100 cards");
    return v;
}

// ---- 9 --------------------------------------------------------------------------

Verdict costs() {
    Verdict v;
    sim::Testbed bed(crypto::ChebyParams::standard(), 9);
    auto vehicle = bed.enroll("veh-cost");
    bed.first_login(vehicle);
    bed.advance(1);
    bed.consequent_login(vehicle);
    auto& c = bed.counters();
    const auto& first = c[sim::Phase::FirstLogin];
    const auto& again = c[sim::Phase::Consequent];
    // Evaluations per the message definitions: user Q_i1, Q_i2, DH; RSU Q_j1, Q_j2, DH;
    // server two unmaskings. Consequent: user Q_i and its DH; RSU Q_j1 and its DH.
    v.require(first.user.cheby_evals == 3 && first.rsu.cheby_evals == 3 && first.server.cheby_evals == 2,
              "first-time cheby split " + num(first.user.cheby_evals) + "/" + num(first.rsu.cheby_evals) + "/" +
                  num(first.server.cheby_evals));
    v.require(first.total().cheby_evals == 8, "first-time cheby total " + num(first.total().cheby_evals));
    v.require(again.user.cheby_evals == 2 && again.rsu.cheby_evals == 2 && again.server.cheby_evals == 0,
              "consequent cheby split");
    v.require(again.total().cheby_evals == 4, "consequent cheby total " + num(again.total().cheby_evals));
    v.require(first.total().hash_ops > 0 && again.total().hash_ops > 0 && first.total().rng_draws > 0,
              "hash/rng counts missing");

    // Scenario report: linear scaling with session count and the rendered table.
    sim::ScenarioConfig one;
    one.num_vehicles = 1;
    one.num_rsus = 1;
    one.seed = 90;
    sim::ScenarioConfig many = one;
    many.num_vehicles = 20;
    const auto r1 = sim::run_scenario(one);
    const auto r20 = sim::run_scenario(many);
    for (auto phase : {sim::Phase::FirstLogin, sim::Phase::Consequent, sim::Phase::Address}) {
        const auto a = r1.counters.at(phase).total();
        const auto b = r20.counters.at(phase).total();
        v.require(b.cheby_evals == 20 * a.cheby_evals && b.hash_ops == 20 * a.hash_ops && b.sym_ops == 20 * a.sym_ops &&
                      b.rng_draws == 20 * a.rng_draws,
                  std::string("counters do not scale in ") + std::string(sim::to_string(phase)));
    }
    const auto text = sim::render_cost_report(r20.counters, {{sim::Phase::FirstLogin, 20}});
    for (const char* needle : {"≈ 500 T_sym", "≈ 1028 T_sym", "≈ 602 T_sym", "not reproduced", "cheby", "hash", "sym",
                               "rng"})
        v.require(text.find(needle) != std::string::npos, std::string("cost report lacks '") + needle + "'");
    const auto doc = sim::to_json(r20);
    v.require(doc["counters"]["first_login"]["total"]["cheby_evals"] == 160, "JSON first_login cheby total != 160");
    return v;
}

// ---- 10 -------------------------------------------------------------------------

Verdict determinism() {
    Verdict v;
    sim::ScenarioConfig config;
    config.num_vehicles = 25;
    config.num_rsus = 3;
    config.sessions_per_vehicle = 2;
    config.seed = 1010;
    using K = sim::AdversaryKind;
    using protocol::MessageType;
    config.adversaries = {
        {K::Replay, MessageType::M1, 61, 5, false, false, 0.0},   {K::Replay, MessageType::C1, 4, 5, false, false, 0.0},
        {K::ForgeAddress, MessageType::M1, 0, 10, false, true, 0.0}, {K::Exhaustion, MessageType::M1, 0, 200, true, false, 0.0},
        {K::FakeConflict, MessageType::M1, 0, 5, false, false, 0.0}, {K::BitFlip, MessageType::M1, 0, 6, false, false, 0.05},
    };
    const auto a = sim::to_json(sim::run_scenario(config)).dump();
    const auto b = sim::to_json(sim::run_scenario(config)).dump();
    const auto csv_a = sim::to_csv(sim::run_scenario(config));
    const auto csv_b = sim::to_csv(sim::run_scenario(config));
    v.require(a == b, "JSON reports differ");
    v.require(csv_a == csv_b, "CSV reports differ");
    config.seed = 1011;
    v.require(sim::to_json(sim::run_scenario(config)).dump() != a, "seed has no effect");
    return v;
}

}  // namespace

int main() {
    criterion(1, "chebyshev-semigroup", semigroup);
    criterion(2, "fast-eval-equivalence", fast_eval);
    criterion(3, "key-agreement", key_agreement);
    criterion(4, "tamper-soundness", tamper);
    criterion(5, "replay-containment", replay);
    criterion(6, "address-uniqueness", addresses);
    criterion(7, "unauthenticated-exhaustion", exhaustion);
    criterion(8, "password-change", password_change);
    criterion(9, "cost-accounting", costs);
    criterion(10, "determinism", determinism);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
