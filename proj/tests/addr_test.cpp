#include <gtest/gtest.h>

#include "vanet/addr.hpp"
#include "vanet/error.hpp"
#include "vanet/protocol/engine.hpp"

namespace {

using namespace vanet;
using namespace vanet::addr;
using crypto::Timestamp;

template <class F>
ErrorKind kind_thrown(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidParams;
}

constexpr u128 kRsu = 0x20010DB800010001ULL;

protocol::Cid cid_of(std::uint8_t tag) {
    protocol::Cid cid{};
    cid[0] = tag;
    return cid;
}

// ---- layout -------------------------------------------------------------------

TEST(Layout, KnownAddress) {
    const AddressSplit split(64);
    const auto address = compose_address(kRsu, 0x42, split);
    EXPECT_EQ(address.to_string(), "2001:db8:1:1::42");
    EXPECT_EQ(decompose_address(address, split), (AddressParts{kRsu, 0x42}));
}

TEST(Layout, ZeroVehicleIsBarePrefix) {
    for (unsigned i : {8U, 16U, 48U, 64U}) {
        const AddressSplit split(i);
        EXPECT_EQ(compose_address(kRsu, 0, split).bits(), kRsu << i);
    }
}

TEST(Layout, WidthChecks) {
    const AddressSplit split(8);
    EXPECT_EQ(split.max_vehicle_id(), 255U);
    EXPECT_NO_THROW(compose_address(kRsu, 255, split));
    EXPECT_EQ(kind_thrown([&] { compose_address(kRsu, 256, split); }), ErrorKind::WidthOverflow);
    const u128 too_wide = u128(1) << 120;
    EXPECT_EQ(kind_thrown([&] { compose_address(too_wide, 0, split); }), ErrorKind::WidthOverflow);
    EXPECT_EQ(kind_thrown([] { AddressSplit(7); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_thrown([] { AddressSplit(65); }), ErrorKind::InvalidParams);
    EXPECT_EQ(AddressSplit(64).max_vehicle_id(), ~std::uint64_t{0});
}

TEST(Layout, RoundTripRandom) {
    crypto::Rng rng(4);
    for (int k = 0; k < 2000; ++k) {
        const AddressSplit split(8 + unsigned(rng.next_u64() % 57));
        const u128 rsu = (u128(rng.next_u64()) << 64 | rng.next_u64()) >> (128 - split.rsu_bits());
        const std::uint64_t vid = split.vehicle_bits() == 64 ? rng.next_u64() : rng.next_u64() & split.max_vehicle_id();
        const auto address = compose_address(rsu, vid, split);
        EXPECT_EQ(decompose_address(address, split), (AddressParts{rsu, vid}));
        EXPECT_EQ(Ipv6Address::parse(address.to_string()), address);
        EXPECT_EQ(Ipv6Address::from_bytes(address.bytes()), address);
    }
}

TEST(Text, CanonicalForms) {
    EXPECT_EQ(Ipv6Address().to_string(), "::");
    EXPECT_EQ(Ipv6Address(1).to_string(), "::1");
    EXPECT_EQ(Ipv6Address::parse("2001:0DB8:0000:0000:0001:0000:0000:0001").to_string(), "2001:db8::1:0:0:1");
    EXPECT_EQ(Ipv6Address::parse("1:0:1:0:1:0:1:0").to_string(), "1:0:1:0:1:0:1:0");
    EXPECT_EQ(Ipv6Address::parse("fe80::").to_string(), "fe80::");
    EXPECT_EQ(Ipv6Address::parse("::ffff").bits(), u128(0xffff));
}

TEST(Text, RejectsMalformed) {
    for (const char* text : {"", ":", "1:2:3", "1::2::3", "12345::", "g::1", "1:2:3:4:5:6:7:8:9", ":::"}) {
        EXPECT_EQ(kind_thrown([&] { Ipv6Address::parse(text); }), ErrorKind::DecodeError) << text;
    }
}

// ---- pool ----------------------------------------------------------------------

TEST(Pool, SmallestFreeIdFirst) {
    AddressPool pool(kRsu, AddressSplit(8), 100);
    EXPECT_EQ(pool.allocate(Timestamp{10}, cid_of(1)).vehicle_id, 0U);
    EXPECT_EQ(pool.allocate(Timestamp{10}, cid_of(2)).vehicle_id, 1U);
    EXPECT_EQ(pool.occupancy(Timestamp{10}), 2U);
}

TEST(Pool, ExhaustsAtWidth) {
    AddressPool pool(kRsu, AddressSplit(8), 100);
    for (unsigned k = 0; k < 256; ++k) {
        protocol::Cid cid{};
        cid[0] = std::uint8_t(k);
        cid[1] = 1;
        EXPECT_EQ(pool.allocate(Timestamp{10}, cid).vehicle_id, k);
    }
    EXPECT_EQ(kind_thrown([&] { pool.allocate(Timestamp{10}, cid_of(0)); }), ErrorKind::PoolExhausted);
    // Once every lease lapses the whole range is free again.
    EXPECT_EQ(pool.occupancy(Timestamp{110}), 0U);
    EXPECT_EQ(pool.allocate(Timestamp{110}, cid_of(0)).vehicle_id, 0U);
}

TEST(Pool, ReuseOnlyAfterExpiry) {
    AddressPool pool(kRsu, AddressSplit(8), 100);
    pool.allocate(Timestamp{0}, cid_of(1));
    EXPECT_EQ(pool.allocate(Timestamp{99}, cid_of(2)).vehicle_id, 1U);
    EXPECT_EQ(pool.allocate(Timestamp{100}, cid_of(3)).vehicle_id, 0U);
}

TEST(Pool, RenewalKeepsId) {
    AddressPool pool(kRsu, AddressSplit(16), 100);
    const auto first = pool.allocate(Timestamp{0}, cid_of(1));
    pool.allocate(Timestamp{5}, cid_of(2));
    const auto renewed = pool.allocate(Timestamp{50}, cid_of(1));
    EXPECT_EQ(renewed.vehicle_id, first.vehicle_id);
    EXPECT_EQ(renewed.expiry.seconds, 150U);
    EXPECT_EQ(pool.history().size(), 2U);
    EXPECT_EQ(pool.history()[0].expiry.seconds, 150U);
}

TEST(Pool, DumpListsActiveLeases) {
    AddressPool pool(kRsu, AddressSplit(64), 100);
    pool.allocate(Timestamp{0}, cid_of(1));
    pool.allocate(Timestamp{60}, cid_of(2));
    const auto dump = pool.dump(Timestamp{120});
    ASSERT_EQ(dump.size(), 1U);
    EXPECT_EQ(dump[0].address.to_string(), "2001:db8:1:1::1");
    EXPECT_EQ(dump[0].holder, cid_of(2));
    EXPECT_EQ(dump[0].expiry.seconds, 160U);
    ASSERT_NE(pool.find_active(dump[0].address, Timestamp{120}), nullptr);
    EXPECT_EQ(pool.find_active(pool.address_of(0), Timestamp{120}), nullptr);
}

// ---- exchange -----------------------------------------------------------------

class Exchange : public ::testing::Test {
protected:
    Exchange()
        : rng(5),
          server(protocol::make_server(crypto::ChebyParams::test(), rng)),
          rsu(protocol::provision_rsu(server, "rsu-x")),
          pool(kRsu, AddressSplit(64), 300) {
        key.sk[0] = 0xAB;
        cid = cid_of(9);
        rsu.cid_table[cid] = protocol::CidRecord{Timestamp{1}, protocol::CidStatus::Active};
    }

    crypto::Rng rng;
    protocol::MixZoneServer server;
    protocol::RsuState rsu;
    AddressPool pool;
    protocol::SessionKey key;
    protocol::Cid cid{};
    Timestamp now{1000};
};

TEST_F(Exchange, HonestRequestGetsLease) {
    const auto request = vehicle_request_address(key, cid, now, rng);
    const auto grant = rsu_handle_addr_request(rsu, pool, key, request, now, rng);
    const auto assigned = vehicle_handle_addr_response(key, grant.response, now);
    EXPECT_EQ(assigned.address, grant.address);
    EXPECT_EQ(assigned.address.to_string(), "2001:db8:1:1::");
    EXPECT_EQ(assigned.lease_expiry.seconds, now.seconds + 300);
    EXPECT_EQ(grant.lease.holder, cid);
}

TEST_F(Exchange, StaleRequestAllocatesNothing) {
    const auto request = vehicle_request_address(key, cid, now, rng);
    const Timestamp late{now.seconds + rsu.freshness_window + 1};
    EXPECT_EQ(kind_thrown([&] { rsu_handle_addr_request(rsu, pool, key, request, late, rng); }),
              ErrorKind::StaleTimestamp);
    EXPECT_EQ(pool.occupancy(late), 0U);
}

TEST_F(Exchange, WrongKeyOrTamperRejected) {
    protocol::SessionKey other;
    other.sk[0] = 0xCD;
    auto request = vehicle_request_address(key, cid, now, rng);
    EXPECT_EQ(kind_thrown([&] { rsu_handle_addr_request(rsu, pool, other, request, now, rng); }),
              ErrorKind::AuthFailure);
    request.sealed.back() ^= 1;
    EXPECT_EQ(kind_thrown([&] { rsu_handle_addr_request(rsu, pool, key, request, now, rng); }), ErrorKind::AuthFailure);
    EXPECT_EQ(pool.occupancy(now), 0U);

    const auto grant = rsu_handle_addr_request(rsu, pool, key, vehicle_request_address(key, cid, now, rng), now, rng);
    EXPECT_EQ(kind_thrown([&] { vehicle_handle_addr_response(other, grant.response, now); }), ErrorKind::AuthFailure);
}

TEST_F(Exchange, CidMustBeActive) {
    const auto stranger = cid_of(77);
    EXPECT_EQ(kind_thrown([&] {
                  rsu_handle_addr_request(rsu, pool, key, vehicle_request_address(key, stranger, now, rng), now, rng);
              }),
              ErrorKind::UnknownCid);
    protocol::revoke_cid(rsu, cid);
    EXPECT_EQ(kind_thrown([&] {
                  rsu_handle_addr_request(rsu, pool, key, vehicle_request_address(key, cid, now, rng), now, rng);
              }),
              ErrorKind::RevokedCid);
}

TEST_F(Exchange, StaleResponseRejected) {
    const auto grant = rsu_handle_addr_request(rsu, pool, key, vehicle_request_address(key, cid, now, rng), now, rng);
    const Timestamp late{now.seconds + 61};
    EXPECT_EQ(kind_thrown([&] { vehicle_handle_addr_response(key, grant.response, late, 60); }),
              ErrorKind::StaleTimestamp);
}

}  // namespace
