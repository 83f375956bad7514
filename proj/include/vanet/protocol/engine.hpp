#pragma once

#include <string>
#include <string_view>

#include "vanet/crypto/rng.hpp"
#include "vanet/protocol/messages.hpp"
#include "vanet/protocol/types.hpp"

namespace vanet::protocol {

using crypto::Rng;

// A protocol step's outgoing message plus the state the sender keeps for the
// next step.
template <class Message, class State>
struct Step {
    Message message;
    State state;
};

// ---- setup ---------------------------------------------------------------

MixZoneServer make_server(ChebyParams params, Rng& rng);

// Issues B_j = h(RSUID_j || r) for a roadside unit.
RsuState provision_rsu(const MixZoneServer& server, std::string rsuid,
                       std::uint64_t freshness_window = crypto::kDefaultFreshnessWindow);

// ---- registration --------------------------------------------------------

struct RegistrationStart {
    RegReq request;
    Digest nonce{};  // N, kept by the user until the card arrives
};

RegistrationStart user_begin_registration(std::string_view id, std::string_view pw, const IrisTemplate& st, Rng& rng);
RegResp server_complete_registration(MixZoneServer& server, const RegReq& request, Rng& rng);
SmartCard user_finalize_registration(const RegResp& response, std::string_view id, std::string_view pw,
                                     const Digest& nonce);

// A_i when pw matches d2, PasswordMismatch otherwise.
Digest card_unlock(const SmartCard& card, std::string_view pw);

// Re-keys d1, d2 and every RSU entry to pw_new. Leaves the card untouched on
// PasswordMismatch.
void change_password(SmartCard& card, std::string_view pw_old, std::string_view pw_new);

// ---- first-time login and key agreement (U -> RSU -> MZs -> RSU -> U -> RSU)

// Sessions hold ephemeral secrets and are consumed by the step that follows.
struct UserFirstSession {
    std::string rsuid;
    BigInt a;
    BigInt q_i1;
    Digest a_i{};
    Digest x2{};
};

struct RsuFirstSession {
    BigInt b;
    BigInt q_i1;
    BigInt q_j1;
};

struct RsuFirstPending {
    Cid cid{};
    BigInt q_i1;
    BigInt q_j1;
    BigInt dh;
    Digest hb{};
};

struct ServerVerdict {
    M3 reply;
    std::string user_id;  // recovered ID_i*
    std::string rsuid;    // recovered RSUID_j*
};

Step<M1, UserFirstSession> user_first_login(const SmartCard& card, std::string_view pw, std::string_view rsuid,
                                            Timestamp now, Rng& rng);
Step<M2, RsuFirstSession> rsu_process_m1(const RsuState& rsu, const M1& m1, Timestamp now, Rng& rng);
ServerVerdict server_process_m2(const MixZoneServer& server, const M2& m2);
Step<M4, RsuFirstPending> rsu_process_m3(RsuState& rsu, RsuFirstSession&& session, const M3& m3, Timestamp now,
                                         Rng& rng);
Step<M5, SessionKey> card_process_m4(SmartCard& card, std::string_view pw, UserFirstSession&& session, const M4& m4);
SessionKey rsu_process_m5(RsuState& rsu, RsuFirstPending&& pending, const M5& m5);

// ---- consequent login and key agreement (U -> RSU -> U -> RSU) -----------

struct UserConsequentSession {
    ChebyParams params;
    std::string rsuid;
    BigInt a;
    BigInt q_i;
    Digest hb{};
};

struct RsuConsequentPending {
    Cid cid{};
    BigInt q_j1;
    BigInt q_i;
    BigInt dh;
    Digest hb{};
    Digest y1{};
};

Step<C1, UserConsequentSession> user_consequent_login(const SmartCard& card, std::string_view pw,
                                                      std::string_view rsuid, Timestamp now, Rng& rng);
Step<C2, RsuConsequentPending> rsu_process_c1(const RsuState& rsu, const C1& c1, Timestamp now, Rng& rng);
Step<C3, SessionKey> card_process_c2(UserConsequentSession&& session, const C2& c2);
SessionKey rsu_process_c3(RsuState& rsu, RsuConsequentPending&& pending, const C3& c3);

void revoke_cid(RsuState& rsu, const Cid& cid);

}  // namespace vanet::protocol
