#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string_view>
#include <vector>

#include "vanet/crypto/bytes.hpp"
#include "vanet/crypto/timestamp.hpp"

namespace vanet::crypto {

// Ordered protocol fields. Realizes "||" unambiguously: each field is written as
// a 4-byte big-endian length followed by its bytes.
using FieldVec = std::vector<Bytes>;

inline constexpr std::size_t kMaxFieldCount = 0xFFFF;

Bytes encode_fields(std::span<const Bytes> fields);
inline Bytes encode_fields(std::initializer_list<Bytes> fields) {
    return encode_fields(std::span<const Bytes>(fields.begin(), fields.size()));
}

// Exact inverse of encode_fields; throws DecodeError on truncation or trailing bytes.
FieldVec decode_fields(ByteView encoded);

// Field builders.
inline Bytes field(std::string_view text) { return to_bytes(text); }
inline Bytes field(ByteView bytes) { return Bytes(bytes.begin(), bytes.end()); }
template <std::size_t N>
Bytes field(const std::array<std::uint8_t, N>& bytes) {
    return Bytes(bytes.begin(), bytes.end());
}
inline Bytes field(Timestamp ts) { return u64_bytes(ts.seconds); }
inline Bytes field(const BigInt& value, std::size_t width) { return to_fixed_bytes(value, width); }

}  // namespace vanet::crypto
