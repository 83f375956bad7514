#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "vanet/crypto/chebyshev.hpp"
#include "vanet/crypto/hash.hpp"
#include "vanet/crypto/timestamp.hpp"

namespace vanet::protocol {

using crypto::BigInt;
using crypto::Bytes;
using crypto::ByteView;
using crypto::ChebyParams;
using crypto::Digest;
using crypto::Timestamp;

inline constexpr std::size_t kCidBytes = 16;

// Pseudo-identity issued by an RSU at first-time login.
using Cid = std::array<std::uint8_t, kCidBytes>;

// Opaque biometric template ST.
struct IrisTemplate {
    Bytes st;
};

struct SessionKey {
    Digest sk{};

    friend bool operator==(const SessionKey&, const SessionKey&) = default;
};

// Trusted third party. `master` is r, `sym_key` is s, `chebyshev` holds k_s and P_s.
struct MixZoneServer {
    ChebyParams params;
    Digest master{};
    Digest sym_key{};
    crypto::ChebyKeypair chebyshev;
    std::set<std::string> registered;

    [[nodiscard]] const BigInt& public_key() const noexcept { return chebyshev.public_value; }
};

enum class CidStatus { Active, Revoked };

struct CidRecord {
    Timestamp t;
    CidStatus status = CidStatus::Active;
};

struct RsuState {
    std::string rsuid;
    Digest b_j{};  // h(RSUID_j || r), provisioned by the server
    std::map<Cid, CidRecord> cid_table;
    ChebyParams params;
    BigInt server_public;
    std::uint64_t freshness_window = crypto::kDefaultFreshnessWindow;
};

struct CardEntry {
    Digest d{};  // h(RSUID_j || pw || HB)
    Cid cid{};
    Timestamp t;
    Digest e{};  // HB masked under h(pw || ID || RSUID_j)
};

struct SmartCard {
    std::string id;
    Digest d1{};   // A_i xor h(pw || ID)
    Digest d2{};   // h(ID || pw)
    Bytes escrow;  // T = E_s(ID || ST)
    std::map<std::string, CardEntry> entries;
    ChebyParams params;
    BigInt server_public;
};

// Identities are masked as left-zero-padded blocks, so they must be 1..32
// bytes and must not start with 0x00. Throws EmptyIdentity / InvalidIdentity.
void check_identity(std::string_view identity);

// Fixed-width encoding of a group element for hashing and the wire.
Bytes element(const BigInt& value, const ChebyParams& params);

}  // namespace vanet::protocol
