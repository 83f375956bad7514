#include "vanet/crypto/aead.hpp"

#include <sodium.h>

#include "sodium_init.hpp"
#include "vanet/crypto/counters.hpp"
#include "vanet/crypto/rng.hpp"
#include "vanet/error.hpp"

namespace vanet::crypto {

static_assert(crypto_aead_xchacha20poly1305_ietf_KEYBYTES == kSymKeyBytes);
static_assert(crypto_aead_xchacha20poly1305_ietf_NPUBBYTES == kSymNonceBytes);
static_assert(crypto_aead_xchacha20poly1305_ietf_ABYTES == kSymTagBytes);

Bytes sym_encrypt(ByteView key, ByteView plaintext, Rng& rng) {
    if (key.size() != kSymKeyBytes) fail(ErrorKind::InvalidParams, "symmetric key must be 32 bytes");
    detail::ensure_sodium();
    detail::count_sym();
    Bytes out = rng.bytes(kSymNonceBytes);
    out.resize(kSymNonceBytes + plaintext.size() + kSymTagBytes);
    unsigned long long written = 0;
    crypto_aead_xchacha20poly1305_ietf_encrypt(out.data() + kSymNonceBytes, &written, plaintext.data(),
                                               plaintext.size(), nullptr, 0, nullptr, out.data(), key.data());
    out.resize(kSymNonceBytes + written);
    return out;
}

Bytes sym_decrypt(ByteView key, ByteView ciphertext) {
    if (key.size() != kSymKeyBytes) fail(ErrorKind::InvalidParams, "symmetric key must be 32 bytes");
    detail::ensure_sodium();
    detail::count_sym();
    if (ciphertext.size() < kSymOverhead) fail(ErrorKind::AuthFailure, "ciphertext too short");
    Bytes out(ciphertext.size() - kSymOverhead);
    unsigned long long written = 0;
    const int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(
        out.data(), &written, nullptr, ciphertext.data() + kSymNonceBytes, ciphertext.size() - kSymNonceBytes,
        nullptr, 0, ciphertext.data(), key.data());
    if (rc != 0) fail(ErrorKind::AuthFailure, "ciphertext failed authentication");
    out.resize(written);
    return out;
}

}  // namespace vanet::crypto
