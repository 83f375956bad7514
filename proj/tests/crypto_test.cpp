#include <gtest/gtest.h>

#include <set>

#include "vanet/crypto.hpp"
#include "vanet/error.hpp"
#include "vanet/oracle/chebyshev_oracle.hpp"

namespace {

using namespace vanet;
using namespace vanet::crypto;

Bytes str(std::string_view s) { return to_bytes(s); }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no vanet::Error thrown";
    return ErrorKind::InvalidParams;
}

// ---- Chebyshev ----------------------------------------------------------------

TEST(Chebyshev, SmallValues) {
    EXPECT_EQ(cheby_eval(0, 5, 251), 1U);
    EXPECT_EQ(cheby_eval(1, 7, 251), 7U);
    EXPECT_EQ(cheby_eval(5, 2, 251), 111U);  // 1,2,7,26,97,362
}

TEST(Chebyshev, SemigroupSpot) {
    const auto t3 = cheby_eval(3, 2, 251);
    EXPECT_EQ(t3, 26U);
    EXPECT_EQ(cheby_eval(2, t3, 251), 96U);
    EXPECT_EQ(cheby_eval(6, 2, 251), 96U);
}

TEST(Chebyshev, BigAndWordPathsAgree) {
    const auto params = ChebyParams::test();
    for (std::uint64_t n = 0; n < 400; n += 7)
        for (std::uint64_t y = 0; y < 251; y += 13)
            EXPECT_EQ(cheby_eval(BigInt(static_cast<unsigned long>(n)), BigInt(static_cast<unsigned long>(y)), params),
                      cheby_eval(n, y, 251));
}

TEST(Chebyshev, MatchesRecurrenceAtDefaultPrime) {
    const auto params = ChebyParams::standard();
    Rng rng(12);
    for (int k = 0; k < 30; ++k) {
        const auto n = rng.next_u64() % 3000;
        const auto y = rng.uniform(0, params.modulus() - 1);
        EXPECT_EQ(cheby_eval(BigInt(static_cast<unsigned long>(n)), y, params),
                  oracle::chebyshev_naive(n, y, params.modulus()));
    }
}

TEST(Chebyshev, SemigroupAtDefaultPrime) {
    const auto params = ChebyParams::standard();
    Rng rng(13);
    for (int k = 0; k < 10; ++k) {
        const auto a = rng.uniform(1, params.modulus());
        const auto b = rng.uniform(1, params.modulus());
        const auto& x = params.seed();
        EXPECT_EQ(cheby_eval(a, cheby_eval(b, x, params), params), cheby_eval(b, cheby_eval(a, x, params), params));
    }
}

TEST(Chebyshev, HugeDegreeOnSmallPrimeUsesPeriod) {
    // T_n(y) mod p has period dividing p^2 - 1 in n.
    const std::uint64_t period = 251ULL * 251ULL - 1;
    for (std::uint64_t y = 0; y < 251; y += 17)
        EXPECT_EQ(cheby_eval(5 + 1000 * period, y, 251), cheby_eval(5, y, 251));
}

TEST(Chebyshev, ParamsValidation) {
    EXPECT_EQ(kind_of([] { ChebyParams(BigInt(250), BigInt(7)); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { ChebyParams(BigInt(3), BigInt(2)); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { ChebyParams(BigInt(251), BigInt(250)); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { ChebyParams(BigInt(251), BigInt(1)); }), ErrorKind::InvalidParams);
    BigInt too_wide = 1;
    too_wide <<= 257;
    EXPECT_EQ(kind_of([&] { ChebyParams(too_wide + 1, BigInt(7)); }), ErrorKind::InvalidParams);
}

TEST(Chebyshev, DefaultParams) {
    const auto& params = ChebyParams::standard();
    BigInt p = 1;
    p <<= 256;
    p -= 189;
    EXPECT_EQ(params.modulus(), p);
    EXPECT_EQ(params.seed(), BigInt("0x95cecdae0c4411d66370d4c7a87cb54aaa36db40af869edec04cc8d320deb7d1", 0));
    EXPECT_EQ(params.element_bytes(), 32U);
    EXPECT_EQ(ChebyParams::test().element_bytes(), 1U);
}

TEST(Chebyshev, KeypairRegression) {
    Rng rng(42);
    const auto params = ChebyParams::test();
    const auto kp = cheby_keypair(params, rng);
    EXPECT_EQ(kp.public_value, cheby_eval(kp.secret.n, params.seed(), params));
    Rng again(42);
    const auto kp2 = cheby_keypair(params, again);
    EXPECT_EQ(kp.secret.n, kp2.secret.n);
    EXPECT_EQ(kp.public_value, kp2.public_value);
    EXPECT_EQ(kp.secret.n, BigInt(57));
    EXPECT_EQ(kp.public_value, BigInt(25));
}

TEST(Chebyshev, DistinctSeedsDistinctSecrets) {
    const auto params = ChebyParams::standard();
    Rng a(1);
    Rng b(2);
    EXPECT_NE(cheby_keypair(params, a).secret.n, cheby_keypair(params, b).secret.n);
}

TEST(Chebyshev, CountsOneEvalPerCall) {
    OpCounters c;
    {
        CountingScope scope(c);
        cheby_eval(BigInt(10), BigInt(7), ChebyParams::test());
        cheby_eval(3, 4, 251);
    }
    EXPECT_EQ(c.cheby_evals, 2U);
}

// ---- encoding / hash / mask ---------------------------------------------------

TEST(Encoding, LengthPrefixed) {
    const auto enc = encode_fields({str("AB"), str("C")});
    const Bytes expected{0, 0, 0, 2, 'A', 'B', 0, 0, 0, 1, 'C'};
    EXPECT_EQ(enc, expected);
    EXPECT_TRUE(encode_fields(std::span<const Bytes>{}).empty());
    EXPECT_NE(encode_fields({str("ABC")}), encode_fields({str("AB"), str("C")}));
}

TEST(Encoding, DecodeInverts) {
    Rng rng(5);
    for (int k = 0; k < 200; ++k) {
        FieldVec fields;
        const auto n = rng.next_u64() % 6;
        for (std::uint64_t i = 0; i < n; ++i) fields.push_back(rng.bytes(rng.next_u64() % 40));
        EXPECT_EQ(decode_fields(encode_fields(fields)), fields);
    }
}

TEST(Encoding, DecodeRejectsMalformed) {
    auto enc = encode_fields({str("hello")});
    enc.pop_back();
    EXPECT_EQ(kind_of([&] { decode_fields(enc); }), ErrorKind::DecodeError);
    auto trailing = encode_fields({str("x")});
    trailing.push_back(0);
    EXPECT_EQ(kind_of([&] { decode_fields(trailing); }), ErrorKind::DecodeError);
}

TEST(Encoding, TooManyFields) {
    FieldVec fields(kMaxFieldCount + 1);
    EXPECT_EQ(kind_of([&] { encode_fields(fields); }), ErrorKind::FieldTooLong);
}

std::string hex(const Digest& d) { return to_hex(d); }

TEST(Hash, KnownVectors) {
    EXPECT_EQ(hex(hash_bytes(str("abc"))), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(hex(hash_fields({str("a")})), "72ff6b02949dad95006c343e3db3150090d3afb49f6bbdb92fdc17607997a85c");
    EXPECT_EQ(hex(hash_fields({str("AB"), str("C")})),
              "7abdea0c49b90a2a1a4ed23b0115638b2f3c7517c0d3373ab25f25728b8be165");
}

TEST(Hash, DeterministicAndDistinct) {
    EXPECT_EQ(hash_fields({str("a")}), hash_fields({str("a")}));
    EXPECT_NE(hash_fields({str("a")}), hash_fields({str("b")}));
}

TEST(Hash, OnlyFieldHashesAreCounted) {
    OpCounters c;
    {
        CountingScope scope(c);
        hash_bytes(str("x"));
        hash_fields({str("x")});
        hash_fields({str("y")});
    }
    EXPECT_EQ(c.hash_ops, 2U);
}

TEST(Mask, Algebra) {
    const auto pad = hash_fields({str("pad")});
    const Digest zero{};
    EXPECT_EQ(mask(zero, pad), pad);
    EXPECT_EQ(mask(pad, pad), zero);
    const auto v = hash_fields({str("v")});
    EXPECT_EQ(mask(mask(v, pad), pad), v);
}

TEST(Mask, ShortValuesAreLeftPadded) {
    const auto pad = hash_fields({str("pad")});
    const auto masked = mask(ByteView(str("id")), pad);
    const auto back = mask(masked, pad);
    for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(back[i], 0);
    EXPECT_EQ(back[30], 'i');
    EXPECT_EQ(back[31], 'd');
    EXPECT_EQ(kind_of([&] { mask(ByteView(Bytes(33, 1)), pad); }), ErrorKind::ValueTooLong);
}

TEST(Mask, Integers) {
    const auto pad = hash_fields({str("int")});
    const auto params = ChebyParams::standard();
    const BigInt v = params.modulus() - 5;
    EXPECT_EQ(unmask_integer(mask(v, pad), pad), v);
}

// ---- bytes ---------------------------------------------------------------------

TEST(Bytes, FixedWidth) {
    EXPECT_EQ(to_fixed_bytes(BigInt(0x0102), 4), (Bytes{0, 0, 1, 2}));
    EXPECT_EQ(from_bytes(Bytes{0, 0, 1, 2}), BigInt(0x0102));
    EXPECT_EQ(kind_of([] { to_fixed_bytes(BigInt(0x10000), 2); }), ErrorKind::ValueTooLong);
    EXPECT_EQ(u64_from(u64_bytes(0x0102030405060708ULL)), 0x0102030405060708ULL);
}

// ---- AEAD ------------------------------------------------------------------------

TEST(Aead, RoundTrip) {
    Rng rng(20);
    const auto key = rng.bytes(kSymKeyBytes);
    for (std::size_t len : {0UL, 1UL, 31UL, 500UL}) {
        const auto pt = rng.bytes(len);
        const auto ct = sym_encrypt(key, pt, rng);
        EXPECT_EQ(ct.size(), len + kSymOverhead);
        EXPECT_EQ(sym_decrypt(key, ct), pt);
    }
}

TEST(Aead, WrongKeyAndTruncation) {
    Rng rng(21);
    const auto key = rng.bytes(kSymKeyBytes);
    const auto other = rng.bytes(kSymKeyBytes);
    const auto ct = sym_encrypt(key, str("message"), rng);
    EXPECT_EQ(kind_of([&] { sym_decrypt(other, ct); }), ErrorKind::AuthFailure);
    EXPECT_EQ(kind_of([&] { sym_decrypt(key, Bytes(ct.begin(), ct.begin() + 10)); }), ErrorKind::AuthFailure);
}

TEST(Aead, EveryBitFlipDetected) {
    Rng rng(22);
    const auto key = rng.bytes(kSymKeyBytes);
    std::uint64_t detected = 0;
    constexpr int kTrials = 10'000;
    for (int k = 0; k < kTrials; ++k) {
        const auto pt = rng.bytes(1 + rng.next_u64() % 64);
        auto ct = sym_encrypt(key, pt, rng);
        const auto bit = rng.next_u64() % (ct.size() * 8);
        ct[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
        try {
            sym_decrypt(key, ct);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::AuthFailure) ++detected;
        }
    }
    EXPECT_EQ(detected, static_cast<std::uint64_t>(kTrials));
}

TEST(Aead, CountsSymOps) {
    Rng rng(23);
    const auto key = rng.bytes(kSymKeyBytes);
    OpCounters c;
    {
        CountingScope scope(c);
        sym_decrypt(key, sym_encrypt(key, str("x"), rng));
    }
    EXPECT_EQ(c.sym_ops, 2U);
}

// ---- rng --------------------------------------------------------------------------

TEST(Rng, Deterministic) {
    Rng a(99);
    Rng b(99);
    EXPECT_EQ(a.bytes(48), b.bytes(48));
    EXPECT_EQ(a.next_u64(), b.next_u64());
    Rng c(100);
    EXPECT_NE(Rng(99).bytes(32), c.bytes(32));
}

TEST(Rng, UniformStaysInRange) {
    Rng rng(3);
    std::set<unsigned long> seen;
    for (int k = 0; k < 2000; ++k) {
        const auto v = rng.uniform(BigInt(10), BigInt(19));
        ASSERT_GE(v, 10);
        ASSERT_LE(v, 19);
        seen.insert(v.get_ui());
    }
    EXPECT_EQ(seen.size(), 10U);
}

TEST(Timestamp, FreshnessWindowIsInclusive) {
    EXPECT_TRUE(is_fresh(Timestamp{100}, Timestamp{40}, 60));
    EXPECT_FALSE(is_fresh(Timestamp{100}, Timestamp{39}, 60));
    EXPECT_TRUE(is_fresh(Timestamp{100}, Timestamp{160}, 60));
    EXPECT_FALSE(is_fresh(Timestamp{100}, Timestamp{161}, 60));
}

}  // namespace
