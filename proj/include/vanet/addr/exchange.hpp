#pragma once

#include "vanet/addr/ipv6.hpp"
#include "vanet/addr/pool.hpp"
#include "vanet/crypto/rng.hpp"
#include "vanet/protocol/messages.hpp"
#include "vanet/protocol/types.hpp"

namespace vanet::addr {

using protocol::AddrReq;
using protocol::AddrResp;
using protocol::RsuState;
using protocol::SessionKey;

struct AssignedAddress {
    Ipv6Address address;
    Timestamp lease_expiry;
};

struct AddressGrant {
    AddrResp response;
    Lease lease;
    Ipv6Address address;
};

// AEAD(SK, [CID_i, ts])
AddrReq vehicle_request_address(const SessionKey& key, const Cid& cid, Timestamp now, crypto::Rng& rng);

// Decrypts, checks freshness and that the CID is active, allocates and answers
// with AEAD(SK, [address, lease_expiry, ts]). Errors: AuthFailure, StaleTimestamp,
// UnknownCid, RevokedCid, PoolExhausted.
AddressGrant rsu_handle_addr_request(const RsuState& rsu, AddressPool& pool, const SessionKey& key,
                                     const AddrReq& request, Timestamp now, crypto::Rng& rng);

// Errors: AuthFailure (wrong key or tampered), StaleTimestamp, DecodeError.
AssignedAddress vehicle_handle_addr_response(const SessionKey& key, const AddrResp& response, Timestamp now,
                                             std::uint64_t window = crypto::kDefaultFreshnessWindow);

}  // namespace vanet::addr
