#include "vanet/sim/beacon.hpp"

#include "vanet/crypto/aead.hpp"
#include "vanet/crypto/encoding.hpp"
#include "vanet/error.hpp"

namespace vanet::sim {

using crypto::Bytes;
using crypto::ByteView;
using crypto::field;

namespace {

constexpr std::uint8_t kConflictTag = 0xC0;

std::array<std::uint8_t, 16> address_bytes(ByteView raw) {
    if (raw.size() != 16) fail(ErrorKind::DecodeError, "beacon address must be 16 bytes");
    std::array<std::uint8_t, 16> out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

crypto::FieldVec split(ByteView beacon) {
    auto parts = crypto::decode_fields(beacon);
    if (parts.size() != 2) fail(ErrorKind::DecodeError, "beacon needs two fields");
    return parts;
}

}  // namespace

Bytes seal_beacon(const addr::Ipv6Address& claimed, const protocol::SessionKey& key, ByteView body,
                  crypto::Timestamp now, crypto::Rng& rng) {
    const auto inner = crypto::encode_fields({field(claimed.bytes()), field(body), field(now)});
    return crypto::encode_fields({field(claimed.bytes()), crypto::sym_encrypt(key.sk, inner, rng)});
}

Bytes forge_beacon(const addr::Ipv6Address& claimed, crypto::Rng& rng) {
    return crypto::encode_fields({field(claimed.bytes()), rng.bytes(crypto::kSymOverhead + 48)});
}

addr::Ipv6Address beacon_claim(ByteView beacon) {
    return addr::Ipv6Address::from_bytes(address_bytes(split(beacon)[0]));
}

void open_beacon(ByteView beacon, const protocol::SessionKey& holder_key, crypto::Timestamp now,
                 std::uint64_t window) {
    const auto parts = split(beacon);
    const auto inner = crypto::decode_fields(crypto::sym_decrypt(holder_key.sk, parts[1]));
    if (inner.size() != 3 || inner[2].size() != 8) fail(ErrorKind::DecodeError, "malformed beacon body");
    if (address_bytes(inner[0]) != address_bytes(parts[0]))
        fail(ErrorKind::AuthFailure, "sealed address differs from the claim");
    if (!crypto::is_fresh(now, crypto::Timestamp{crypto::u64_from(inner[2])}, window))
        fail(ErrorKind::StaleTimestamp, "beacon timestamp outside the window");
}

Bytes conflict_notice(const addr::Ipv6Address& address) {
    return crypto::encode_fields({Bytes{kConflictTag}, field(address.bytes())});
}

}  // namespace vanet::sim
