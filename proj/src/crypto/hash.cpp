#include "vanet/crypto/hash.hpp"

#include <sodium.h>

#include "sodium_init.hpp"
#include "vanet/crypto/counters.hpp"
#include "vanet/crypto/encoding.hpp"
#include "vanet/error.hpp"

namespace vanet::crypto {

static_assert(crypto_hash_sha256_BYTES == kDigestBytes);

Digest hash_bytes(ByteView data) {
    detail::ensure_sodium();
    Digest out{};
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

Digest hash_fields(std::span<const Bytes> fields) {
    detail::count_hash();
    return hash_bytes(encode_fields(fields));
}

Digest mask(ByteView value, const Digest& pad) {
    if (value.size() > kDigestBytes) fail(ErrorKind::ValueTooLong, "value longer than mask pad");
    Digest out = pad;
    const auto offset = kDigestBytes - value.size();
    for (std::size_t i = 0; i < value.size(); ++i) out[offset + i] ^= value[i];
    return out;
}

Digest mask(const BigInt& value, const Digest& pad) { return mask(ByteView(to_fixed_bytes(value, kDigestBytes)), pad); }

BigInt unmask_integer(const Digest& masked, const Digest& pad) {
    const auto plain = mask(masked, pad);
    return from_bytes(plain);
}

Digest digest_from(ByteView bytes) {
    if (bytes.size() != kDigestBytes) fail(ErrorKind::DecodeError, "digest must be 32 bytes");
    Digest out{};
    std::copy(bytes.begin(), bytes.end(), out.begin());
    return out;
}

}  // namespace vanet::crypto
