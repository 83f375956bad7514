#include "vanet/addr/exchange.hpp"

#include <algorithm>

#include "vanet/crypto/aead.hpp"
#include "vanet/crypto/encoding.hpp"
#include "vanet/error.hpp"

namespace vanet::addr {

using crypto::field;

namespace {

Cid cid_from(const crypto::Bytes& raw) {
    if (raw.size() != protocol::kCidBytes) fail(ErrorKind::DecodeError, "CID must be 16 bytes");
    Cid cid{};
    std::copy(raw.begin(), raw.end(), cid.begin());
    return cid;
}

}  // namespace

AddrReq vehicle_request_address(const SessionKey& key, const Cid& cid, Timestamp now, crypto::Rng& rng) {
    const auto plain = crypto::encode_fields({field(cid), field(now)});
    return AddrReq{crypto::sym_encrypt(key.sk, plain, rng)};
}

AddressGrant rsu_handle_addr_request(const RsuState& rsu, AddressPool& pool, const SessionKey& key,
                                     const AddrReq& request, Timestamp now, crypto::Rng& rng) {
    const auto fields = crypto::decode_fields(crypto::sym_decrypt(key.sk, request.sealed));
    if (fields.size() != 2) fail(ErrorKind::DecodeError, "address request must carry [CID, ts]");
    const Cid cid = cid_from(fields[0]);
    const Timestamp ts{crypto::u64_from(fields[1])};
    if (!crypto::is_fresh(now, ts, rsu.freshness_window))
        fail(ErrorKind::StaleTimestamp, "address request timestamp expired");

    const auto it = rsu.cid_table.find(cid);
    if (it == rsu.cid_table.end()) fail(ErrorKind::UnknownCid, "address request from unknown CID");
    if (it->second.status == protocol::CidStatus::Revoked) fail(ErrorKind::RevokedCid, "address request from revoked CID");

    const Lease lease = pool.allocate(now, cid);
    const Ipv6Address address = pool.address_of(lease.vehicle_id);
    const auto bytes = address.bytes();
    const auto plain = crypto::encode_fields({field(bytes), field(lease.expiry), field(now)});
    return AddressGrant{AddrResp{crypto::sym_encrypt(key.sk, plain, rng)}, lease, address};
}

AssignedAddress vehicle_handle_addr_response(const SessionKey& key, const AddrResp& response, Timestamp now,
                                             std::uint64_t window) {
    const auto fields = crypto::decode_fields(crypto::sym_decrypt(key.sk, response.sealed));
    if (fields.size() != 3 || fields[0].size() != 16) fail(ErrorKind::DecodeError, "malformed address response");
    std::array<std::uint8_t, 16> raw{};
    std::copy(fields[0].begin(), fields[0].end(), raw.begin());
    const Timestamp expiry{crypto::u64_from(fields[1])};
    const Timestamp ts{crypto::u64_from(fields[2])};
    if (!crypto::is_fresh(now, ts, window)) fail(ErrorKind::StaleTimestamp, "address response timestamp expired");
    return AssignedAddress{Ipv6Address::from_bytes(raw), expiry};
}

}  // namespace vanet::addr
