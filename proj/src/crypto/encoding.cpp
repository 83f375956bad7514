#include "vanet/crypto/encoding.hpp"

#include <limits>

#include "vanet/error.hpp"

namespace vanet::crypto {

Bytes encode_fields(std::span<const Bytes> fields) {
    if (fields.size() > kMaxFieldCount) fail(ErrorKind::FieldTooLong, "too many fields");
    std::size_t total = 0;
    for (const auto& f : fields) {
        if (f.size() > std::numeric_limits<std::uint32_t>::max()) fail(ErrorKind::FieldTooLong, "field exceeds 2^32-1 bytes");
        total += 4 + f.size();
    }
    Bytes out;
    out.reserve(total);
    for (const auto& f : fields) {
        const auto len = static_cast<std::uint32_t>(f.size());
        out.push_back(static_cast<std::uint8_t>(len >> 24));
        out.push_back(static_cast<std::uint8_t>(len >> 16));
        out.push_back(static_cast<std::uint8_t>(len >> 8));
        out.push_back(static_cast<std::uint8_t>(len));
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

FieldVec decode_fields(ByteView encoded) {
    FieldVec out;
    std::size_t pos = 0;
    while (pos < encoded.size()) {
        if (encoded.size() - pos < 4) fail(ErrorKind::DecodeError, "truncated length prefix");
        const std::uint32_t len = (std::uint32_t{encoded[pos]} << 24) | (std::uint32_t{encoded[pos + 1]} << 16) |
                                  (std::uint32_t{encoded[pos + 2]} << 8) | std::uint32_t{encoded[pos + 3]};
        pos += 4;
        if (encoded.size() - pos < len) fail(ErrorKind::DecodeError, "truncated field");
        out.emplace_back(encoded.begin() + static_cast<std::ptrdiff_t>(pos),
                         encoded.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len;
        if (out.size() > kMaxFieldCount) fail(ErrorKind::DecodeError, "too many fields");
    }
    return out;
}

}  // namespace vanet::crypto
