#pragma once

#include <cstdint>
#include <vector>

#include "vanet/crypto/bytes.hpp"

namespace vanet::oracle {

// T_0..T_max_n (y) mod p by the linear recurrence T_k = 2y T_k-1 - T_k-2.
std::vector<std::uint32_t> chebyshev_sequence(std::uint32_t y, std::uint32_t p, std::uint32_t max_n);

crypto::BigInt chebyshev_naive(std::uint64_t n, const crypto::BigInt& y, const crypto::BigInt& p);

// table[n * p + y] = T_n(y) mod p for all n <= max_n, y < p (p < 256).
std::vector<std::uint8_t> chebyshev_table(std::uint32_t p, std::uint32_t max_n);

struct SemigroupResult {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
};

// For all n, m in [0, max_degree] and y in [0, p-1]: T_n(T_m(y)) == T_nm(y) == T_m(T_n(y)),
// with the implementation's word-size evaluator on the left and the recurrence table
// on the right. Also checks T_n(y) itself against the table.
SemigroupResult check_semigroup(std::uint32_t p, std::uint32_t max_degree);

}  // namespace vanet::oracle
