#include "vanet/crypto/chebyshev.hpp"

#include <bit>

#include "vanet/crypto/counters.hpp"
#include "vanet/crypto/rng.hpp"
#include "vanet/error.hpp"

namespace vanet::crypto {

namespace {

constexpr int kPrimalityRounds = 40;
constexpr std::size_t kMaxModulusBits = 256;

std::uint64_t ladder_u64(std::uint64_t n, std::uint64_t y, std::uint64_t p) {
    if (n == 0) return 1 % p;
    // (lo, hi) = (T_k, T_k+1), k grows from the top bit of n down.
    std::uint64_t lo = 1 % p;
    std::uint64_t hi = y;
    const std::uint64_t two_y_sub = p - y;  // -y mod p, y < p
    for (int bit = std::bit_width(n) - 1; bit >= 0; --bit) {
        const std::uint64_t cross = (2 * ((lo * hi) % p) + two_y_sub) % p;
        if ((n >> bit) & 1U) {
            hi = (2 * ((hi * hi) % p) + p - 1) % p;
            lo = cross;
        } else {
            lo = (2 * ((lo * lo) % p) + p - 1) % p;
            hi = cross;
        }
    }
    return lo;
}

BigInt ladder_big(const BigInt& n, const BigInt& y, const BigInt& p) {
    if (n == 0) return BigInt(1) % p;
    mpz_class lo = 1;
    mpz_class hi = y;
    mpz_class tmp;
    mpz_class cross;
    const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (auto i = bits; i-- > 0;) {
        // cross = 2 lo hi - y
        mpz_mul(cross.get_mpz_t(), lo.get_mpz_t(), hi.get_mpz_t());
        mpz_mul_2exp(cross.get_mpz_t(), cross.get_mpz_t(), 1);
        mpz_sub(cross.get_mpz_t(), cross.get_mpz_t(), y.get_mpz_t());
        mpz_mod(cross.get_mpz_t(), cross.get_mpz_t(), p.get_mpz_t());
        mpz_class& sq = mpz_tstbit(n.get_mpz_t(), i) ? hi : lo;
        mpz_mul(tmp.get_mpz_t(), sq.get_mpz_t(), sq.get_mpz_t());
        mpz_mul_2exp(tmp.get_mpz_t(), tmp.get_mpz_t(), 1);
        mpz_sub_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), 1);
        mpz_mod(tmp.get_mpz_t(), tmp.get_mpz_t(), p.get_mpz_t());
        if (mpz_tstbit(n.get_mpz_t(), i)) {
            lo.swap(cross);
            hi.swap(tmp);
        } else {
            lo.swap(tmp);
            hi.swap(cross);
        }
    }
    return lo;
}

}  // namespace

ChebyParams::ChebyParams(BigInt p, BigInt x) : p_(std::move(p)), x_(std::move(x)), element_bytes_(0) {
    if (p_ < 5) fail(ErrorKind::InvalidParams, "modulus must be a prime >= 5");
    if (mpz_sizeinbase(p_.get_mpz_t(), 2) > kMaxModulusBits) fail(ErrorKind::InvalidParams, "modulus wider than 256 bits");
    if (mpz_probab_prime_p(p_.get_mpz_t(), kPrimalityRounds) == 0) fail(ErrorKind::InvalidParams, "modulus is not prime");
    if (x_ < 2 || x_ > p_ - 2) fail(ErrorKind::InvalidParams, "seed must lie in [2, p-2]");
    element_bytes_ = byte_length(p_);
}

ChebyParams ChebyParams::test() { return ChebyParams(BigInt(251), BigInt(7)); }

ChebyParams ChebyParams::standard() {
    static const ChebyParams params = [] {
        BigInt p = 1;
        p <<= 256;
        p -= 189;
        return ChebyParams(p, BigInt("95cecdae0c4411d66370d4c7a87cb54aaa36db40af869edec04cc8d320deb7d1", 16));
    }();
    return params;
}

std::uint64_t cheby_eval(std::uint64_t n, std::uint64_t y, std::uint64_t p) {
    if (p < 2 || p > 0xFFFFFFFFULL) fail(ErrorKind::InvalidParams, "word-size modulus must be in [2, 2^32)");
    if (y >= p) fail(ErrorKind::InvalidParams, "argument must be reduced mod p");
    detail::count_cheby();
    return ladder_u64(n, y, p);
}

BigInt cheby_eval(const BigInt& n, const BigInt& y, const ChebyParams& params) {
    const auto& p = params.modulus();
    if (sgn(n) < 0) fail(ErrorKind::InvalidParams, "negative degree");
    if (sgn(y) < 0 || y >= p) fail(ErrorKind::InvalidParams, "argument must be reduced mod p");
    detail::count_cheby();
    if (p.fits_ulong_p() && p.get_ui() <= 0xFFFFFFFFULL) {
        // T_n(y) mod p is periodic in n with a period dividing p^2 - 1, so a
        // large degree can be reduced without changing the result.
        const BigInt period = p * p - 1;
        const BigInt reduced = n % period;
        return BigInt(ladder_u64(reduced.get_ui(), y.get_ui(), p.get_ui()));
    }
    return ladder_big(n, y, p);
}

ChebySecret random_exponent(const ChebyParams& params, Rng& rng) {
    return ChebySecret{rng.uniform(BigInt(2), params.modulus() - 2)};
}

ChebyKeypair cheby_keypair(const ChebyParams& params, Rng& rng) {
    auto secret = random_exponent(params, rng);
    auto pub = cheby_eval(secret.n, params.seed(), params);
    return ChebyKeypair{std::move(secret), std::move(pub)};
}

}  // namespace vanet::crypto
