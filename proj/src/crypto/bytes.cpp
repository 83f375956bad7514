#include "vanet/crypto/bytes.hpp"

#include <algorithm>

#include "vanet/error.hpp"

namespace vanet::crypto {

Bytes to_bytes(std::string_view text) { return Bytes(text.begin(), text.end()); }

std::string to_string(ByteView bytes) { return std::string(bytes.begin(), bytes.end()); }

std::string to_hex(ByteView bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out += kDigits[b >> 4];
        out += kDigits[b & 0x0F];
    }
    return out;
}

std::size_t byte_length(const BigInt& value) {
    if (value == 0) return 0;
    return (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
}

Bytes to_fixed_bytes(const BigInt& value, std::size_t width) {
    if (sgn(value) < 0) fail(ErrorKind::InvalidParams, "negative integer");
    const auto len = byte_length(value);
    if (len > width) fail(ErrorKind::ValueTooLong, "integer wider than field");
    Bytes out(width, 0);
    if (len != 0) {
        std::size_t written = 0;
        mpz_export(out.data() + (width - len), &written, 1, 1, 1, 0, value.get_mpz_t());
    }
    return out;
}

BigInt from_bytes(ByteView bytes) {
    BigInt out;
    if (!bytes.empty()) mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    return out;
}

Bytes u64_bytes(std::uint64_t value) {
    Bytes out(8);
    for (int i = 7; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value & 0xFF);
        value >>= 8;
    }
    return out;
}

std::uint64_t u64_from(ByteView bytes) {
    if (bytes.size() != 8) fail(ErrorKind::DecodeError, "u64 field must be 8 bytes");
    std::uint64_t out = 0;
    for (auto b : bytes) out = (out << 8) | b;
    return out;
}

bool contains(ByteView haystack, ByteView needle) {
    if (needle.empty()) return true;
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

}  // namespace vanet::crypto
