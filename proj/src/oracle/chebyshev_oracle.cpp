#include "vanet/oracle/chebyshev_oracle.hpp"

#include "vanet/crypto/chebyshev.hpp"
#include "vanet/error.hpp"

namespace vanet::oracle {

std::vector<std::uint32_t> chebyshev_sequence(std::uint32_t y, std::uint32_t p, std::uint32_t max_n) {
    std::vector<std::uint32_t> seq(static_cast<std::size_t>(max_n) + 1);
    const std::uint64_t yy = y % p;
    seq[0] = 1 % p;
    if (max_n >= 1) seq[1] = static_cast<std::uint32_t>(yy);
    for (std::size_t k = 2; k <= max_n; ++k) {
        const std::uint64_t next = (2 * yy * seq[k - 1] + p - seq[k - 2]) % p;
        seq[k] = static_cast<std::uint32_t>(next);
    }
    return seq;
}

crypto::BigInt chebyshev_naive(std::uint64_t n, const crypto::BigInt& y, const crypto::BigInt& p) {
    crypto::BigInt prev = 1;
    crypto::BigInt cur = y;
    if (n == 0) return prev % p;
    const crypto::BigInt two_y = 2 * y;
    for (std::uint64_t k = 1; k < n; ++k) {
        crypto::BigInt next = two_y * cur - prev;
        mpz_mod(next.get_mpz_t(), next.get_mpz_t(), p.get_mpz_t());
        prev.swap(cur);
        cur.swap(next);
    }
    return cur % p;
}

std::vector<std::uint8_t> chebyshev_table(std::uint32_t p, std::uint32_t max_n) {
    if (p > 256) fail(ErrorKind::InvalidParams, "table oracle needs p <= 256");
    std::vector<std::uint8_t> table((static_cast<std::size_t>(max_n) + 1) * p);
    for (std::uint32_t y = 0; y < p; ++y) {
        const auto seq = chebyshev_sequence(y, p, max_n);
        for (std::size_t n = 0; n <= max_n; ++n) table[n * p + y] = static_cast<std::uint8_t>(seq[n]);
    }
    return table;
}

SemigroupResult check_semigroup(std::uint32_t p, std::uint32_t max_degree) {
    const std::uint32_t max_product = max_degree * max_degree;
    const auto table = chebyshev_table(p, max_product);
    auto at = [&](std::size_t n, std::size_t y) { return table[n * p + y]; };

    SemigroupResult result;
    for (std::uint32_t n = 0; n <= max_degree; ++n) {
        for (std::uint32_t m = 0; m <= max_degree; ++m) {
            const std::size_t nm = static_cast<std::size_t>(n) * m;
            for (std::uint32_t y = 0; y < p; ++y) {
                const auto expected = at(nm, y);
                const auto inner_m = crypto::cheby_eval(m, y, p);
                const auto inner_n = crypto::cheby_eval(n, y, p);
                const auto lhs = crypto::cheby_eval(n, inner_m, p);
                const auto rhs = crypto::cheby_eval(m, inner_n, p);
                ++result.checked;
                if (lhs != expected || rhs != expected || inner_m != at(m, y) || inner_n != at(n, y) ||
                    at(n, at(m, y)) != expected)
                    ++result.mismatches;
            }
        }
    }
    return result;
}

}  // namespace vanet::oracle
