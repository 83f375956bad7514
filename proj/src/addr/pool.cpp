#include "vanet/addr/pool.hpp"

#include "vanet/error.hpp"

namespace vanet::addr {

AddressPool::AddressPool(u128 rsu_id, AddressSplit split, std::uint64_t lease_seconds)
    : rsu_id_(rsu_id), split_(split), lease_seconds_(lease_seconds) {
    if (lease_seconds == 0) fail(ErrorKind::InvalidParams, "lease duration must be positive");
    compose_address(rsu_id, 0, split_);  // width check
}

Lease AddressPool::allocate(Timestamp now, const Cid& holder) {
    const Timestamp expiry{now.seconds + lease_seconds_};

    if (auto held = by_holder_.find(holder); held != by_holder_.end()) {
        auto& slot = slots_.at(held->second);
        if (now < slot.expiry) {
            slot.expiry = expiry;
            history_[slot.history_index].expiry = expiry;
            return history_[slot.history_index];
        }
    }

    // Lazy reclamation.
    for (auto it = slots_.begin(); it != slots_.end();) {
        if (it->second.expiry <= now) {
            by_holder_.erase(it->second.holder);
            it = slots_.erase(it);
        } else {
            ++it;
        }
    }

    std::uint64_t candidate = 0;
    for (const auto& [id, slot] : slots_) {
        if (id != candidate) break;
        if (candidate == split_.max_vehicle_id()) fail(ErrorKind::PoolExhausted, "every vehicle id holds an active lease");
        ++candidate;
    }

    Lease lease{candidate, holder, now, expiry};
    slots_[candidate] = Slot{holder, expiry, history_.size()};
    by_holder_[holder] = candidate;
    history_.push_back(lease);
    return lease;
}

std::size_t AddressPool::occupancy(Timestamp now) const {
    std::size_t n = 0;
    for (const auto& [id, slot] : slots_)
        if (now < slot.expiry) ++n;
    return n;
}

std::vector<LeaseRecord> AddressPool::dump(Timestamp now) const {
    std::vector<LeaseRecord> out;
    for (const auto& [id, slot] : slots_)
        if (now < slot.expiry) out.push_back(LeaseRecord{address_of(id), slot.holder, slot.expiry});
    return out;
}

Ipv6Address AddressPool::address_of(std::uint64_t vehicle_id) const { return compose_address(rsu_id_, vehicle_id, split_); }

const Lease* AddressPool::find_active(const Ipv6Address& address, Timestamp now) const {
    const auto parts = decompose_address(address, split_);
    if (parts.rsu_id != rsu_id_) return nullptr;
    const auto it = slots_.find(parts.vehicle_id);
    if (it == slots_.end() || !(now < it->second.expiry)) return nullptr;
    return &history_[it->second.history_index];
}

}  // namespace vanet::addr
