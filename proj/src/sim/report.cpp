#include "vanet/sim/report.hpp"

#include <cstdio>
#include <sstream>

namespace vanet::sim {

using nlohmann::json;

std::string_view to_string(Phase phase) noexcept {
    switch (phase) {
        case Phase::Setup: return "setup";
        case Phase::Registration: return "registration";
        case Phase::FirstLogin: return "first_login";
        case Phase::Consequent: return "consequent";
        case Phase::Address: return "address";
    }
    return "?";
}

OpCounters& PhaseCounters::operator[](Role role) noexcept {
    switch (role) {
        case Role::User: return user;
        case Role::Rsu: return rsu;
        case Role::Server: return server;
    }
    return user;
}

bool ScenarioReport::passed() const {
    for (const auto& adversary : adversaries)
        if (adversary.succeeded != 0) return false;
    for (const auto& session : sessions) {
        if (session.tampered) continue;
        if (session.outcome != "Completed" || !session.key_agreement) return false;
        if (session.phase == Phase::FirstLogin && !session.identity_recovered) return false;
        if (session.address_outcome != "Assigned") return false;
    }
    return addresses.duplicates == 0 && addresses.vehicle_duplicates == 0 && addresses.overlapping_leases == 0;
}

json to_json(const OpCounters& c) {
    return json{{"hash_ops", c.hash_ops}, {"cheby_evals", c.cheby_evals}, {"sym_ops", c.sym_ops},
                {"rng_draws", c.rng_draws}};
}

namespace {

json to_json(const SessionStats& s) {
    return json{{"attempted", s.attempted},
                {"completed", s.completed},
                {"key_agreement", s.key_agreement},
                {"identity_recovered", s.identity_recovered}};
}

json to_json(const SessionRecord& r) {
    return json{{"flow", r.flow},
                {"vehicle", r.vehicle},
                {"rsu", r.rsu},
                {"phase", to_string(r.phase)},
                {"started", r.started},
                {"finished", r.finished},
                {"outcome", r.outcome},
                {"key_agreement", r.key_agreement},
                {"identity_recovered", r.identity_recovered},
                {"tampered", r.tampered},
                {"address_outcome", r.address_outcome},
                {"address", r.address}};
}

json to_json(const AddressStats& a) {
    json leases = json::array();
    for (const auto& l : a.leases)
        leases.push_back(json{{"rsu", l.rsu}, {"address", l.address}, {"cid", l.cid}, {"expiry", l.expiry}});
    return json{{"requested", a.requested},
                {"assigned", a.assigned},
                {"new_leases", a.new_leases},
                {"renewals", a.renewals},
                {"failures", a.failures},
                {"duplicates", a.duplicates},
                {"vehicle_duplicates", a.vehicle_duplicates},
                {"overlapping_leases", a.overlapping_leases},
                {"reused_ids", a.reused_ids},
                {"leases", std::move(leases)}};
}

json to_json(const AdversaryOutcome& o) {
    return json{{"kind", to_string(o.kind)}, {"label", o.label},         {"attempts", o.attempts},
                {"blocked", o.blocked},      {"succeeded", o.succeeded}, {"rejections", o.rejections},
                {"notes", o.notes}};
}

}  // namespace

json to_json(const ScenarioReport& report) {
    json counters = json::object();
    for (const auto& [phase, c] : report.counters) {
        counters[std::string(to_string(phase))] = json{{"user", to_json(c.user)},
                                                       {"rsu", to_json(c.rsu)},
                                                       {"server", to_json(c.server)},
                                                       {"total", to_json(c.total())}};
    }
    json adversaries = json::array();
    for (const auto& a : report.adversaries) adversaries.push_back(to_json(a));
    json sessions = json::array();
    for (const auto& s : report.sessions) sessions.push_back(to_json(s));

    return json{{"config", to_json(report.config)},
                {"final_time", report.final_time},
                {"first_login", to_json(report.first_login)},
                {"consequent", to_json(report.consequent)},
                {"rejections", report.rejections},
                {"tampered_sessions", report.tampered_sessions},
                {"addresses", to_json(report.addresses)},
                {"adversaries", std::move(adversaries)},
                {"counters", std::move(counters)},
                {"sessions", std::move(sessions)},
                {"passed", report.passed()}};
}

std::string to_csv(const ScenarioReport& report) {
    std::ostringstream out;
    out << "flow,vehicle,rsu,phase,started,finished,outcome,key_agreement,identity_recovered,tampered,"
           "address_outcome,address\n";
    for (const auto& r : report.sessions) {
        out << r.flow << ',' << r.vehicle << ',' << r.rsu << ',' << to_string(r.phase) << ',' << r.started << ','
            << r.finished << ',' << r.outcome << ',' << r.key_agreement << ',' << r.identity_recovered << ','
            << r.tampered << ',' << r.address_outcome << ',' << r.address << '\n';
    }
    return out.str();
}

const std::vector<ReferenceCostRow>& reference_cost_rows() {
    static const std::vector<ReferenceCostRow> rows{
        {"this scheme", "4Tenc+3Thash+2Tsym+2 random number", "5Tenc+6Thash+3Tsym+3 random number",
         "≈ 500 T_sym", "4.35"},
        {"X. Wang et al.", "4Tenc+4Tsym+13Tmp+6 random number", "4Tenc+4Tsym+4 random numbers",
         "≈ 1028 T_sym", "6.42"},
        {"Y.-S. Chen et al.", "2Tsym+1Thash+2 random numbers", "4Tsym+4Thash+2Tsym+6 random numbers",
         "≈ 602 T_sym", "5.7"},
    };
    return rows;
}

std::string render_cost_report(const CounterTable& counters, const std::map<Phase, std::uint64_t>& sessions_per_phase) {
    std::ostringstream out;
    char line[160];
    out << "Measured operation counts\n";
    std::snprintf(line, sizeof line, "%-14s %-7s %10s %12s %10s %10s\n", "phase", "party", "hash", "cheby", "sym",
                  "rng");
    out << line;
    for (const auto& [phase, c] : counters) {
        const auto it = sessions_per_phase.find(phase);
        const double per = it == sessions_per_phase.end() || it->second == 0 ? 1.0 : double(it->second);
        const std::pair<const char*, OpCounters> rows[] = {
            {"user", c.user}, {"rsu", c.rsu}, {"server", c.server}, {"total", c.total()}};
        for (const auto& [party, oc] : rows) {
            std::snprintf(line, sizeof line, "%-14s %-7s %10.2f %12.2f %10.2f %10.2f\n",
                          std::string(to_string(phase)).c_str(), party, oc.hash_ops / per, oc.cheby_evals / per,
                          oc.sym_ops / per, oc.rng_draws / per);
            out << line;
        }
        if (it != sessions_per_phase.end()) out << "  (per session, " << it->second << " sessions)\n";
    }
    out << "\nPublished comparison (reference data, not reproduced here)\n";
    for (const auto& row : reference_cost_rows()) {
        out << "  " << row.scheme << "\n"
            << "    authorization phase:  " << row.authorization_phase << "\n"
            << "    access service phase: " << row.access_phase << "\n"
            << "    computational cost:   " << row.computational_cost << "\n"
            << "    computational time s: " << row.computational_time_s << "\n";
    }
    return out.str();
}

}  // namespace vanet::sim
