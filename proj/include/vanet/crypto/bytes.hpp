#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace vanet::crypto {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using BigInt = mpz_class;

Bytes to_bytes(std::string_view text);
std::string to_string(ByteView bytes);
std::string to_hex(ByteView bytes);

// Big-endian, left-padded to exactly `width` bytes. Throws ValueTooLong if the
// value does not fit, InvalidParams if it is negative.
Bytes to_fixed_bytes(const BigInt& value, std::size_t width);
BigInt from_bytes(ByteView bytes);

std::size_t byte_length(const BigInt& value);

// Big-endian u64, 8 bytes.
Bytes u64_bytes(std::uint64_t value);
std::uint64_t u64_from(ByteView bytes);

bool contains(ByteView haystack, ByteView needle);

}  // namespace vanet::crypto
