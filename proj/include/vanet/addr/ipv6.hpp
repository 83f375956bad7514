#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace vanet::addr {

__extension__ typedef unsigned __int128 u128;

// Vehicle-id width i; the RSU id occupies the remaining 128 - i high bits.
class AddressSplit {
public:
    static constexpr unsigned kMinVehicleBits = 8;
    static constexpr unsigned kMaxVehicleBits = 64;

    explicit AddressSplit(unsigned vehicle_bits = 64);

    [[nodiscard]] unsigned vehicle_bits() const noexcept { return vehicle_bits_; }
    [[nodiscard]] unsigned rsu_bits() const noexcept { return 128 - vehicle_bits_; }
    // 2^i - 1
    [[nodiscard]] std::uint64_t max_vehicle_id() const noexcept;

    friend bool operator==(const AddressSplit&, const AddressSplit&) = default;

private:
    unsigned vehicle_bits_;
};

class Ipv6Address {
public:
    Ipv6Address() = default;
    explicit Ipv6Address(u128 bits) : bits_(bits) {}

    [[nodiscard]] u128 bits() const noexcept { return bits_; }
    [[nodiscard]] std::array<std::uint8_t, 16> bytes() const noexcept;
    static Ipv6Address from_bytes(const std::array<std::uint8_t, 16>& bytes) noexcept;

    // Lowercase hex groups without leading zeros; the longest run (>= 2) of zero
    // groups, leftmost on ties, collapses to "::".
    [[nodiscard]] std::string to_string() const;

    // Accepts full and "::"-compressed hex forms. Throws DecodeError.
    static Ipv6Address parse(std::string_view text);

    friend auto operator<=>(const Ipv6Address&, const Ipv6Address&) = default;

private:
    u128 bits_ = 0;
};

struct AddressParts {
    u128 rsu_id = 0;
    std::uint64_t vehicle_id = 0;

    friend bool operator==(const AddressParts&, const AddressParts&) = default;
};

// Throws WidthOverflow when either part exceeds its width.
Ipv6Address compose_address(u128 rsu_id, std::uint64_t vehicle_id, const AddressSplit& split);
AddressParts decompose_address(const Ipv6Address& address, const AddressSplit& split);

// Hex helper for 128-bit values (no leading zeros, "0" for zero).
std::string to_hex(u128 value);

}  // namespace vanet::addr
