#pragma once

#include <array>
#include <cstdint>

#include "vanet/crypto/bytes.hpp"

namespace vanet::crypto {

// Deterministic ChaCha20 generator. The key is ratcheted after every draw, so a
// seed fixes the whole output stream. Each public call counts as one draw.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    Bytes bytes(std::size_t count);

    // Uniform in [lo, hi]; bias below 2^-64.
    BigInt uniform(const BigInt& lo, const BigInt& hi);

    std::uint64_t next_u64();

    // Independent generator derived from this one (one draw).
    Rng fork();

private:
    explicit Rng(const std::array<std::uint8_t, 32>& key) : key_(key) {}
    void fill(std::uint8_t* out, std::size_t count);

    std::array<std::uint8_t, 32> key_{};
};

}  // namespace vanet::crypto
