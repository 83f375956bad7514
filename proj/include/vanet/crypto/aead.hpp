#pragma once

#include "vanet/crypto/bytes.hpp"

namespace vanet::crypto {

class Rng;

// XChaCha20-Poly1305. Layout: 24-byte nonce || ciphertext || 16-byte tag.
inline constexpr std::size_t kSymKeyBytes = 32;
inline constexpr std::size_t kSymNonceBytes = 24;
inline constexpr std::size_t kSymTagBytes = 16;
inline constexpr std::size_t kSymOverhead = kSymNonceBytes + kSymTagBytes;

Bytes sym_encrypt(ByteView key, ByteView plaintext, Rng& rng);

// Throws AuthFailure when the ciphertext was modified or the key is wrong.
Bytes sym_decrypt(ByteView key, ByteView ciphertext);

}  // namespace vanet::crypto
