#include "vanet/protocol/engine.hpp"

#include <algorithm>

#include "vanet/crypto/aead.hpp"
#include "vanet/crypto/encoding.hpp"
#include "vanet/error.hpp"

namespace vanet::protocol {

using crypto::cheby_eval;
using crypto::field;
using crypto::hash_fields;
using crypto::mask;

namespace {

std::string unmask_identity(const Digest& masked, const Digest& pad) {
    const auto plain = mask(masked, pad);
    const auto first = std::find_if(plain.begin(), plain.end(), [](std::uint8_t b) { return b != 0; });
    return std::string(first, plain.end());
}

Digest to_digest(const Bytes& bytes) { return crypto::digest_from(bytes); }

Digest password_pad(std::string_view pw, std::string_view id) { return hash_fields({field(pw), field(id)}); }

Digest entry_pad(std::string_view pw, std::string_view id, std::string_view rsuid) {
    return hash_fields({field(pw), field(id), field(rsuid)});
}

void verify_password(const SmartCard& card, std::string_view pw) {
    if (hash_fields({field(card.id), field(pw)}) != card.d2) fail(ErrorKind::PasswordMismatch, "password rejected by card");
}

void require_fresh(Timestamp now, Timestamp ts, std::uint64_t window) {
    if (!crypto::is_fresh(now, ts, window)) fail(ErrorKind::StaleTimestamp, "timestamp outside freshness window");
}

}  // namespace

void check_identity(std::string_view identity) {
    if (identity.empty()) fail(ErrorKind::EmptyIdentity, "identity is empty");
    if (identity.size() > crypto::kDigestBytes) fail(ErrorKind::InvalidIdentity, "identity longer than 32 bytes");
    if (identity.front() == '\0') fail(ErrorKind::InvalidIdentity, "identity starts with a zero byte");
}

Bytes element(const BigInt& value, const ChebyParams& params) {
    return crypto::to_fixed_bytes(value, params.element_bytes());
}

// ---- setup ------------------------------------------------------------------

MixZoneServer make_server(ChebyParams params, Rng& rng) {
    MixZoneServer server{params, to_digest(rng.bytes(crypto::kDigestBytes)), to_digest(rng.bytes(crypto::kSymKeyBytes)),
                         crypto::cheby_keypair(params, rng), {}};
    return server;
}

RsuState provision_rsu(const MixZoneServer& server, std::string rsuid, std::uint64_t freshness_window) {
    check_identity(rsuid);
    RsuState rsu{rsuid, hash_fields({field(rsuid), field(server.master)}), {}, server.params, server.public_key(),
                 freshness_window};
    return rsu;
}

// ---- registration -----------------------------------------------------------

RegistrationStart user_begin_registration(std::string_view id, std::string_view pw, const IrisTemplate& st, Rng& rng) {
    check_identity(id);
    if (pw.empty()) fail(ErrorKind::EmptyPassword, "password is empty");
    if (st.st.empty()) fail(ErrorKind::InvalidParams, "iris template is empty");
    const Digest nonce = to_digest(rng.bytes(crypto::kDigestBytes));
    RegReq request{std::string(id), mask(nonce, password_pad(pw, id)), st.st};
    return {std::move(request), nonce};
}

RegResp server_complete_registration(MixZoneServer& server, const RegReq& request, Rng& rng) {
    check_identity(request.id);
    if (server.registered.contains(request.id)) fail(ErrorKind::DuplicateRegistration, "identity already registered");
    const Digest a_i = hash_fields({field(request.id), field(server.master)});
    RegResp response;
    response.c = mask(a_i, request.d0);
    response.escrow =
        crypto::sym_encrypt(server.sym_key, crypto::encode_fields({field(request.id), request.st}), rng);
    response.modulus = server.params.modulus();
    response.seed = server.params.seed();
    response.server_public = server.public_key();
    server.registered.insert(request.id);
    return response;
}

SmartCard user_finalize_registration(const RegResp& response, std::string_view id, std::string_view pw,
                                     const Digest& nonce) {
    check_identity(id);
    if (pw.empty()) fail(ErrorKind::EmptyPassword, "password is empty");
    ChebyParams params(response.modulus, response.seed);
    SmartCard card{std::string(id), mask(response.c, nonce), hash_fields({field(id), field(pw)}), response.escrow,
                   {}, std::move(params), response.server_public};
    return card;
}

Digest card_unlock(const SmartCard& card, std::string_view pw) {
    verify_password(card, pw);
    return mask(card.d1, password_pad(pw, card.id));
}

void change_password(SmartCard& card, std::string_view pw_old, std::string_view pw_new) {
    verify_password(card, pw_old);
    if (pw_new.empty()) fail(ErrorKind::EmptyPassword, "new password is empty");
    SmartCard updated = card;
    updated.d1 = mask(mask(card.d1, password_pad(pw_old, card.id)), password_pad(pw_new, card.id));
    updated.d2 = hash_fields({field(card.id), field(pw_new)});
    for (auto& [rsuid, entry] : updated.entries) {
        const Digest hb = mask(entry.e, entry_pad(pw_old, card.id, rsuid));
        entry.e = mask(hb, entry_pad(pw_new, card.id, rsuid));
        entry.d = hash_fields({field(rsuid), field(pw_new), field(hb)});
    }
    card = std::move(updated);
}

// ---- first-time login and key agreement -------------------------------------

Step<M1, UserFirstSession> user_first_login(const SmartCard& card, std::string_view pw, std::string_view rsuid,
                                            Timestamp now, Rng& rng) {
    const Digest a_i = card_unlock(card, pw);
    check_identity(rsuid);
    const auto& params = card.params;
    auto a = crypto::random_exponent(params, rng).n;
    auto q_i1 = cheby_eval(a, params.seed(), params);
    const auto q_i2 = cheby_eval(a, card.server_public, params);
    const Digest x1 = mask(crypto::to_bytes(card.id), hash_fields({element(q_i2, params)}));
    const Digest x2 = hash_fields(
        {field(a_i), field(rsuid), element(q_i1, params), element(q_i2, params), field(x1), field(now)});
    M1 m1{q_i1, x1, x2, now};
    return {std::move(m1), UserFirstSession{std::string(rsuid), std::move(a), std::move(q_i1), a_i, x2}};
}

Step<M2, RsuFirstSession> rsu_process_m1(const RsuState& rsu, const M1& m1, Timestamp now, Rng& rng) {
    require_fresh(now, m1.ts, rsu.freshness_window);
    const auto& params = rsu.params;
    auto b = crypto::random_exponent(params, rng).n;
    auto q_j1 = cheby_eval(b, params.seed(), params);
    const auto q_j2 = cheby_eval(b, rsu.server_public, params);
    const Digest y1 = mask(crypto::to_bytes(rsu.rsuid), hash_fields({element(q_j2, params)}));
    const Digest y2 = hash_fields({element(m1.q_i1, params), element(q_j2, params), element(q_j1, params), field(y1),
                                   field(m1.x2), field(rsu.b_j)});
    M2 m2{m1.q_i1, m1.x1, m1.x2, m1.ts, q_j1, y1, y2};
    return {std::move(m2), RsuFirstSession{std::move(b), m1.q_i1, std::move(q_j1)}};
}

ServerVerdict server_process_m2(const MixZoneServer& server, const M2& m2) {
    const auto& params = server.params;
    const auto& k_s = server.chebyshev.secret.n;

    const auto q_i2 = cheby_eval(k_s, m2.q_i1, params);
    auto user_id = unmask_identity(m2.x1, hash_fields({element(q_i2, params)}));
    const Digest a_i = hash_fields({field(user_id), field(server.master)});

    const auto q_j2 = cheby_eval(k_s, m2.q_j1, params);
    auto rsuid = unmask_identity(m2.y1, hash_fields({element(q_j2, params)}));
    const Digest b_j = hash_fields({field(rsuid), field(server.master)});

    const Digest x2 = hash_fields(
        {field(a_i), field(rsuid), element(m2.q_i1, params), element(q_i2, params), field(m2.x1), field(m2.ts)});
    if (x2 != m2.x2) fail(ErrorKind::AuthFailure, "X2 does not verify", Party::User);
    const Digest y2 = hash_fields({element(m2.q_i1, params), element(q_j2, params), element(m2.q_j1, params),
                                   field(m2.y1), field(m2.x2), field(b_j)});
    if (y2 != m2.y2) fail(ErrorKind::AuthFailure, "Y2 does not verify", Party::Rsu);

    const Digest z_i =
        hash_fields({element(m2.q_j1, params), element(m2.q_i1, params), field(rsuid), field(a_i), field(m2.x2)});
    const Digest z_j = hash_fields({field(b_j), element(m2.q_i1, params), element(m2.q_j1, params), field(z_i)});
    return {M3{z_i, z_j}, std::move(user_id), std::move(rsuid)};
}

Step<M4, RsuFirstPending> rsu_process_m3(RsuState& rsu, RsuFirstSession&& session, const M3& m3, Timestamp now,
                                         Rng& rng) {
    const auto& params = rsu.params;
    const Digest z_j = hash_fields(
        {field(rsu.b_j), element(session.q_i1, params), element(session.q_j1, params), field(m3.z_i)});
    if (z_j != m3.z_j) fail(ErrorKind::AuthFailure, "Zj does not verify", Party::Server);

    auto dh = cheby_eval(session.b, session.q_i1, params);
    Cid cid{};
    do {
        const auto raw = rng.bytes(kCidBytes);
        std::copy(raw.begin(), raw.end(), cid.begin());
    } while (rsu.cid_table.contains(cid));

    const Timestamp t = now;
    const Digest hb = hash_fields({field(cid), field(rsu.b_j), field(t)});
    const Digest r = mask(hb, hash_fields({element(dh, params)}));
    const Digest r_j = hash_fields({field(m3.z_i), element(dh, params), field(cid), field(t), field(r)});
    rsu.cid_table[cid] = CidRecord{t, CidStatus::Active};

    M4 m4{session.q_j1, r_j, cid, t, r};
    return {std::move(m4), RsuFirstPending{cid, std::move(session.q_i1), std::move(session.q_j1), std::move(dh), hb}};
}

Step<M5, SessionKey> card_process_m4(SmartCard& card, std::string_view pw, UserFirstSession&& session, const M4& m4) {
    verify_password(card, pw);
    const auto& params = card.params;
    const auto& rsuid = session.rsuid;
    const auto dh = cheby_eval(session.a, m4.q_j1, params);
    const Digest z_i = hash_fields({element(m4.q_j1, params), element(session.q_i1, params), field(rsuid),
                                    field(session.a_i), field(session.x2)});
    const Digest r_j = hash_fields({field(z_i), element(dh, params), field(m4.cid), field(m4.t), field(m4.r)});
    if (r_j != m4.r_j) fail(ErrorKind::AuthFailure, "Rj does not verify", Party::Rsu);

    const Digest hb = mask(m4.r, hash_fields({element(dh, params)}));
    CardEntry entry{hash_fields({field(rsuid), field(pw), field(hb)}), m4.cid, m4.t,
                    mask(hb, entry_pad(pw, card.id, rsuid))};
    card.entries[rsuid] = entry;

    const Digest r_i = hash_fields(
        {field(rsuid), element(m4.q_j1, params), element(session.q_i1, params), field(hb), element(dh, params)});
    SessionKey key{hash_fields({element(dh, params), field(rsuid)})};
    return {M5{r_i}, key};
}

SessionKey rsu_process_m5(RsuState& rsu, RsuFirstPending&& pending, const M5& m5) {
    const auto& params = rsu.params;
    const Digest r_i = hash_fields({field(rsu.rsuid), element(pending.q_j1, params), element(pending.q_i1, params),
                                    field(pending.hb), element(pending.dh, params)});
    if (r_i != m5.r_i) {
        revoke_cid(rsu, pending.cid);
        fail(ErrorKind::AuthFailure, "Ri does not verify", Party::User);
    }
    return SessionKey{hash_fields({element(pending.dh, params), field(rsu.rsuid)})};
}

// ---- consequent login and key agreement -------------------------------------

Step<C1, UserConsequentSession> user_consequent_login(const SmartCard& card, std::string_view pw,
                                                      std::string_view rsuid, Timestamp now, Rng& rng) {
    const auto it = card.entries.find(std::string(rsuid));
    if (it == card.entries.end()) fail(ErrorKind::NoEntry, "card holds no entry for this RSU");
    verify_password(card, pw);
    const auto& entry = it->second;
    const Digest hb = mask(entry.e, entry_pad(pw, card.id, rsuid));
    if (hash_fields({field(rsuid), field(pw), field(hb)}) != entry.d)
        fail(ErrorKind::PasswordMismatch, "entry verifier rejected password");

    const auto& params = card.params;
    auto a = crypto::random_exponent(params, rng).n;
    auto q_i = cheby_eval(a, params.seed(), params);
    const Digest x1 = mask(q_i, hb);
    const Digest x2 = hash_fields({field(entry.cid), field(rsuid), element(q_i, params), field(x1), field(now)});
    C1 c1{entry.cid, entry.t, x1, x2, now};
    return {c1, UserConsequentSession{params, std::string(rsuid), std::move(a), std::move(q_i), hb}};
}

Step<C2, RsuConsequentPending> rsu_process_c1(const RsuState& rsu, const C1& c1, Timestamp now, Rng& rng) {
    require_fresh(now, c1.ts, rsu.freshness_window);
    const auto it = rsu.cid_table.find(c1.cid);
    if (it == rsu.cid_table.end()) fail(ErrorKind::UnknownCid, "CID not issued by this RSU");
    if (it->second.status == CidStatus::Revoked) fail(ErrorKind::RevokedCid, "CID has been revoked");
    if (it->second.t != c1.t) fail(ErrorKind::UnknownCid, "CID issue time does not match");

    const auto& params = rsu.params;
    const Digest hb = hash_fields({field(c1.cid), field(rsu.b_j), field(c1.t)});
    auto q_i = crypto::unmask_integer(c1.x1, hb);
    if (q_i >= params.modulus()) fail(ErrorKind::AuthFailure, "Qi out of range", Party::User);
    const Digest x2 = hash_fields({field(c1.cid), field(rsu.rsuid), element(q_i, params), field(c1.x1), field(c1.ts)});
    if (x2 != c1.x2) fail(ErrorKind::AuthFailure, "X2 does not verify", Party::User);

    const auto b = crypto::random_exponent(params, rng).n;
    auto q_j1 = cheby_eval(b, params.seed(), params);
    auto dh = cheby_eval(b, q_i, params);
    const Digest y1 = mask(q_j1, hash_fields({element(q_i, params), field(hb)}));
    const Digest y2 =
        hash_fields({element(q_j1, params), element(q_i, params), field(hb), field(y1), element(dh, params)});
    return {C2{y1, y2}, RsuConsequentPending{c1.cid, std::move(q_j1), std::move(q_i), std::move(dh), hb, y1}};
}

Step<C3, SessionKey> card_process_c2(UserConsequentSession&& session, const C2& c2) {
    const auto& params = session.params;
    const auto q_j1 = crypto::unmask_integer(c2.y1, hash_fields({element(session.q_i, params), field(session.hb)}));
    if (q_j1 >= params.modulus()) fail(ErrorKind::AuthFailure, "Qj1 out of range", Party::Rsu);
    const auto dh = cheby_eval(session.a, q_j1, params);
    const Digest y2 = hash_fields(
        {element(q_j1, params), element(session.q_i, params), field(session.hb), field(c2.y1), element(dh, params)});
    if (y2 != c2.y2) fail(ErrorKind::AuthFailure, "Y2 does not verify", Party::Rsu);

    const Digest r_i = hash_fields({field(session.rsuid), element(q_j1, params), element(session.q_i, params),
                                    field(session.hb), field(c2.y1), element(dh, params)});
    SessionKey key{hash_fields({element(dh, params), field(session.rsuid)})};
    return {C3{r_i}, key};
}

SessionKey rsu_process_c3(RsuState& rsu, RsuConsequentPending&& pending, const C3& c3) {
    const auto& params = rsu.params;
    const Digest r_i = hash_fields({field(rsu.rsuid), element(pending.q_j1, params), element(pending.q_i, params),
                                    field(pending.hb), field(pending.y1), element(pending.dh, params)});
    if (r_i != c3.r_i) {
        revoke_cid(rsu, pending.cid);
        fail(ErrorKind::AuthFailure, "Ri does not verify", Party::User);
    }
    return SessionKey{hash_fields({element(pending.dh, params), field(rsu.rsuid)})};
}

void revoke_cid(RsuState& rsu, const Cid& cid) {
    if (auto it = rsu.cid_table.find(cid); it != rsu.cid_table.end()) it->second.status = CidStatus::Revoked;
}

}  // namespace vanet::protocol
