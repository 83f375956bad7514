#pragma once

#include <cstdint>

#include "vanet/crypto/bytes.hpp"

namespace vanet::crypto {

class Rng;

// Public chaotic-map parameters: prime modulus p and seed x with 2 <= x <= p-2.
// p is capped at 256 bits so every group element fits a 32-byte mask block.
class ChebyParams {
public:
    ChebyParams(BigInt p, BigInt x);

    // p = 251, x = 7
    static ChebyParams test();
    // p = 2^256 - 189 with a fixed public seed
    static ChebyParams standard();

    [[nodiscard]] const BigInt& modulus() const noexcept { return p_; }
    [[nodiscard]] const BigInt& seed() const noexcept { return x_; }

    // Wire width of one group element: byte length of p.
    [[nodiscard]] std::size_t element_bytes() const noexcept { return element_bytes_; }

    friend bool operator==(const ChebyParams& a, const ChebyParams& b) { return a.p_ == b.p_ && a.x_ == b.x_; }

private:
    BigInt p_;
    BigInt x_;
    std::size_t element_bytes_;
};

// Exponent n in [2, p-2].
struct ChebySecret {
    BigInt n;
};

struct ChebyKeypair {
    ChebySecret secret;
    BigInt public_value;
};

// T_n(y) mod p via the half-index identities
//   T_2k = 2 T_k^2 - 1,  T_2k+1 = 2 T_k T_k+1 - y
// in O(log n) multiplications. Throws InvalidParams for y outside [0, p-1] or n < 0.
BigInt cheby_eval(const BigInt& n, const BigInt& y, const ChebyParams& params);

// Word-size path for p < 2^32, same contract.
std::uint64_t cheby_eval(std::uint64_t n, std::uint64_t y, std::uint64_t p);

ChebyKeypair cheby_keypair(const ChebyParams& params, Rng& rng);

// Uniform exponent in [2, p-2].
ChebySecret random_exponent(const ChebyParams& params, Rng& rng);

}  // namespace vanet::crypto
