#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "vanet/error.hpp"
#include "vanet/protocol/types.hpp"

namespace vanet::protocol {

inline constexpr std::uint8_t kWireVersion = 0x01;

enum class MessageType : std::uint8_t {
    RegReq = 0x01,
    RegResp = 0x02,
    M1 = 0x11,
    M2 = 0x12,
    M3 = 0x13,
    M4 = 0x14,
    M5 = 0x15,
    C1 = 0x21,
    C2 = 0x22,
    C3 = 0x23,
    AddrReq = 0x31,
    AddrResp = 0x32,
};

std::string_view to_string(MessageType type) noexcept;

struct RegReq {
    std::string id;
    Digest d0{};
    Bytes st;
};

struct RegResp {
    Digest c{};
    Bytes escrow;
    BigInt modulus;
    BigInt seed;
    BigInt server_public;
};

struct M1 {
    BigInt q_i1;
    Digest x1{};
    Digest x2{};
    Timestamp ts;
};

struct M2 {
    BigInt q_i1;
    Digest x1{};
    Digest x2{};
    Timestamp ts;
    BigInt q_j1;
    Digest y1{};
    Digest y2{};
};

struct M3 {
    Digest z_i{};
    Digest z_j{};
};

struct M4 {
    BigInt q_j1;
    Digest r_j{};
    Cid cid{};
    Timestamp t;
    Digest r{};
};

struct M5 {
    Digest r_i{};
};

struct C1 {
    Cid cid{};
    Timestamp t;
    Digest x1{};
    Digest x2{};
    Timestamp ts;
};

struct C2 {
    Digest y1{};
    Digest y2{};
};

struct C3 {
    Digest r_i{};
};

struct AddrReq {
    Bytes sealed;
};

struct AddrResp {
    Bytes sealed;
};

using WireMessage = std::variant<RegReq, RegResp, M1, M2, M3, M4, M5, C1, C2, C3, AddrReq, AddrResp>;

MessageType type_of(const WireMessage& message) noexcept;

// version (0x01) || type tag || encode_fields(body). Group elements are written
// at params.element_bytes(); digests at 32 bytes; timestamps at 8 bytes.
Bytes encode(const WireMessage& message, const ChebyParams& params);

// Strict inverse of encode. Throws DecodeError on a bad version, unknown tag,
// wrong field count or width, or a group element >= p.
WireMessage decode(ByteView wire, const ChebyParams& params);

template <class T>
T decode_as(ByteView wire, const ChebyParams& params) {
    auto message = decode(wire, params);
    if (auto* typed = std::get_if<T>(&message)) return std::move(*typed);
    fail(ErrorKind::DecodeError, "unexpected message type");
}

}  // namespace vanet::protocol
