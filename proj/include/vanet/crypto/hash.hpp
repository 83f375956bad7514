#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>

#include "vanet/crypto/bytes.hpp"

namespace vanet::crypto {

// k = 256
inline constexpr std::size_t kDigestBytes = 32;

using Digest = std::array<std::uint8_t, kDigestBytes>;

// Raw k-bit hash. Not metered.
Digest hash_bytes(ByteView data);

// Digest of encode_fields(fields). Counted as one hash operation.
Digest hash_fields(std::span<const Bytes> fields);
inline Digest hash_fields(std::initializer_list<Bytes> fields) {
    return hash_fields(std::span<const Bytes>(fields.begin(), fields.size()));
}

// XOR with a k-bit pad. `value` is left-padded with zeros to k/8 bytes;
// longer values throw ValueTooLong. mask(mask(v, pad), pad) == padded v.
Digest mask(ByteView value, const Digest& pad);
inline Digest mask(const Digest& value, const Digest& pad) { return mask(ByteView(value), pad); }

// Integers are masked at fixed k/8-byte width.
Digest mask(const BigInt& value, const Digest& pad);
BigInt unmask_integer(const Digest& masked, const Digest& pad);

Digest digest_from(ByteView bytes);  // throws DecodeError unless exactly k/8 bytes

}  // namespace vanet::crypto
