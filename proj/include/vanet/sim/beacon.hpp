#pragma once

#include "vanet/addr/ipv6.hpp"
#include "vanet/crypto/rng.hpp"
#include "vanet/crypto/timestamp.hpp"
#include "vanet/protocol/types.hpp"

namespace vanet::sim {

// Application beacon: [claimed address, AEAD(SK, [address, body, ts])].
crypto::Bytes seal_beacon(const addr::Ipv6Address& claimed, const protocol::SessionKey& key, crypto::ByteView body,
                          crypto::Timestamp now, crypto::Rng& rng);

// Beacon with a sealed part the sender cannot bind to any session.
crypto::Bytes forge_beacon(const addr::Ipv6Address& claimed, crypto::Rng& rng);

addr::Ipv6Address beacon_claim(crypto::ByteView beacon);

// Throws AuthFailure / StaleTimestamp / DecodeError.
void open_beacon(crypto::ByteView beacon, const protocol::SessionKey& holder_key, crypto::Timestamp now,
                 std::uint64_t window);

// Address-conflict notice. The scheme never emits one, so receivers drop them.
crypto::Bytes conflict_notice(const addr::Ipv6Address& address);

}  // namespace vanet::sim
