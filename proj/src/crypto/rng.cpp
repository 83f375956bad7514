#include "vanet/crypto/rng.hpp"

#include <cstring>

#include <sodium.h>

#include "sodium_init.hpp"
#include "vanet/crypto/counters.hpp"
#include "vanet/error.hpp"

namespace vanet::crypto {

static_assert(randombytes_SEEDBYTES == 32);

Rng::Rng(std::uint64_t seed) {
    detail::ensure_sodium();
    static constexpr char kLabel[] = "vanet-akep/rng";
    Bytes material(kLabel, kLabel + sizeof(kLabel) - 1);
    const auto be = u64_bytes(seed);
    material.insert(material.end(), be.begin(), be.end());
    crypto_hash_sha256(key_.data(), material.data(), material.size());
}

void Rng::fill(std::uint8_t* out, std::size_t count) {
    Bytes stream(count + key_.size());
    randombytes_buf_deterministic(stream.data(), stream.size(), key_.data());
    std::memcpy(out, stream.data(), count);
    std::memcpy(key_.data(), stream.data() + count, key_.size());
    sodium_memzero(stream.data(), stream.size());
}

Bytes Rng::bytes(std::size_t count) {
    detail::count_rng();
    Bytes out(count);
    fill(out.data(), count);
    return out;
}

BigInt Rng::uniform(const BigInt& lo, const BigInt& hi) {
    if (hi < lo) fail(ErrorKind::InvalidParams, "empty range");
    detail::count_rng();
    const BigInt span = hi - lo + 1;
    Bytes raw(byte_length(span) + 8);
    fill(raw.data(), raw.size());
    BigInt out = from_bytes(raw) % span;
    return out + lo;
}

std::uint64_t Rng::next_u64() {
    detail::count_rng();
    std::uint8_t raw[8];
    fill(raw, sizeof raw);
    return u64_from(ByteView(raw, sizeof raw));
}

Rng Rng::fork() {
    detail::count_rng();
    std::array<std::uint8_t, 32> child{};
    fill(child.data(), child.size());
    return Rng(child);
}

}  // namespace vanet::crypto
