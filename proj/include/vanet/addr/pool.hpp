#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "vanet/addr/ipv6.hpp"
#include "vanet/crypto/timestamp.hpp"
#include "vanet/protocol/types.hpp"

namespace vanet::addr {

using crypto::Timestamp;
using protocol::Cid;

inline constexpr std::uint64_t kDefaultLeaseSeconds = 300;

struct Lease {
    std::uint64_t vehicle_id = 0;
    Cid holder{};
    Timestamp granted;
    Timestamp expiry;  // active while now < expiry
};

struct LeaseRecord {
    Ipv6Address address;
    Cid holder{};
    Timestamp expiry;
};

// Duplicate-free allocator for one RSU prefix. Expired leases are reclaimed
// lazily on the next allocation; no conflict detection traffic is needed.
class AddressPool {
public:
    AddressPool(u128 rsu_id, AddressSplit split, std::uint64_t lease_seconds = kDefaultLeaseSeconds);

    // Smallest vehicle id without an active lease. A holder that already owns an
    // active lease has it renewed instead. Throws PoolExhausted.
    Lease allocate(Timestamp now, const Cid& holder);

    [[nodiscard]] std::size_t occupancy(Timestamp now) const;
    [[nodiscard]] std::vector<LeaseRecord> dump(Timestamp now) const;
    [[nodiscard]] Ipv6Address address_of(std::uint64_t vehicle_id) const;

    // Holder of the active lease on `address`, if any.
    [[nodiscard]] const Lease* find_active(const Ipv6Address& address, Timestamp now) const;

    // Every grant ever made, renewals folded into the original grant's expiry.
    [[nodiscard]] const std::vector<Lease>& history() const noexcept { return history_; }

    [[nodiscard]] u128 rsu_id() const noexcept { return rsu_id_; }
    [[nodiscard]] const AddressSplit& split() const noexcept { return split_; }
    [[nodiscard]] std::uint64_t lease_seconds() const noexcept { return lease_seconds_; }

private:
    struct Slot {
        Cid holder{};
        Timestamp expiry;
        std::size_t history_index = 0;
    };

    u128 rsu_id_;
    AddressSplit split_;
    std::uint64_t lease_seconds_;
    std::map<std::uint64_t, Slot> slots_;
    std::map<Cid, std::uint64_t> by_holder_;
    std::vector<Lease> history_;
};

}  // namespace vanet::addr
