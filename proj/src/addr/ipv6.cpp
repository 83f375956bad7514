#include "vanet/addr/ipv6.hpp"

#include <vector>

#include "vanet/error.hpp"

namespace vanet::addr {

AddressSplit::AddressSplit(unsigned vehicle_bits) : vehicle_bits_(vehicle_bits) {
    if (vehicle_bits < kMinVehicleBits || vehicle_bits > kMaxVehicleBits)
        fail(ErrorKind::InvalidParams, "vehicle-id width must lie in [8, 64]");
}

std::uint64_t AddressSplit::max_vehicle_id() const noexcept {
    return vehicle_bits_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << vehicle_bits_) - 1;
}

std::array<std::uint8_t, 16> Ipv6Address::bytes() const noexcept {
    std::array<std::uint8_t, 16> out{};
    u128 v = bits_;
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xFF);
        v >>= 8;
    }
    return out;
}

Ipv6Address Ipv6Address::from_bytes(const std::array<std::uint8_t, 16>& bytes) noexcept {
    u128 v = 0;
    for (auto b : bytes) v = (v << 8) | b;
    return Ipv6Address(v);
}

std::string Ipv6Address::to_string() const {
    std::array<std::uint16_t, 8> groups{};
    for (int g = 0; g < 8; ++g) groups[static_cast<std::size_t>(g)] = static_cast<std::uint16_t>(bits_ >> (112 - 16 * g));

    int best_start = -1;
    int best_len = 0;
    for (int g = 0; g < 8;) {
        if (groups[static_cast<std::size_t>(g)] != 0) {
            ++g;
            continue;
        }
        int end = g;
        while (end < 8 && groups[static_cast<std::size_t>(end)] == 0) ++end;
        if (end - g > best_len) {
            best_start = g;
            best_len = end - g;
        }
        g = end;
    }
    if (best_len < 2) best_start = -1;

    static constexpr char kDigits[] = "0123456789abcdef";
    auto hex_group = [](std::uint16_t v) {
        std::string s;
        for (int shift = 12; shift >= 0; shift -= 4) {
            const auto nib = (v >> shift) & 0xF;
            if (s.empty() && nib == 0 && shift != 0) continue;
            s += kDigits[nib];
        }
        return s;
    };

    std::string out;
    for (int g = 0; g < 8; ++g) {
        if (g == best_start) {
            out += "::";
            g += best_len - 1;
            continue;
        }
        if (!out.empty() && out.back() != ':') out += ':';
        out += hex_group(groups[static_cast<std::size_t>(g)]);
    }
    return out;
}

namespace {

std::vector<std::uint16_t> parse_groups(std::string_view text) {
    std::vector<std::uint16_t> groups;
    if (text.empty()) return groups;
    std::size_t pos = 0;
    while (true) {
        const auto colon = text.find(':', pos);
        const auto piece = text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos);
        if (piece.empty() || piece.size() > 4) fail(ErrorKind::DecodeError, "malformed IPv6 group");
        std::uint16_t v = 0;
        for (char c : piece) {
            int nib;
            if (c >= '0' && c <= '9') nib = c - '0';
            else if (c >= 'a' && c <= 'f') nib = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') nib = c - 'A' + 10;
            else fail(ErrorKind::DecodeError, "non-hex character in IPv6 address");
            v = static_cast<std::uint16_t>((v << 4) | nib);
        }
        groups.push_back(v);
        if (colon == std::string_view::npos) break;
        pos = colon + 1;
    }
    return groups;
}

}  // namespace

Ipv6Address Ipv6Address::parse(std::string_view text) {
    std::vector<std::uint16_t> groups;
    const auto gap = text.find("::");
    if (gap == std::string_view::npos) {
        groups = parse_groups(text);
        if (groups.size() != 8) fail(ErrorKind::DecodeError, "IPv6 address needs 8 groups");
    } else {
        if (text.find("::", gap + 1) != std::string_view::npos) fail(ErrorKind::DecodeError, "more than one '::'");
        auto head = parse_groups(text.substr(0, gap));
        auto tail = parse_groups(text.substr(gap + 2));
        if (head.size() + tail.size() > 7) fail(ErrorKind::DecodeError, "too many IPv6 groups");
        groups = head;
        groups.resize(8 - tail.size(), 0);
        groups.insert(groups.end(), tail.begin(), tail.end());
    }
    u128 v = 0;
    for (auto g : groups) v = (v << 16) | g;
    return Ipv6Address(v);
}

Ipv6Address compose_address(u128 rsu_id, std::uint64_t vehicle_id, const AddressSplit& split) {
    if (vehicle_id > split.max_vehicle_id()) fail(ErrorKind::WidthOverflow, "vehicle id exceeds i bits");
    if ((rsu_id >> split.rsu_bits()) != 0) fail(ErrorKind::WidthOverflow, "RSU id exceeds 128 - i bits");
    return Ipv6Address((rsu_id << split.vehicle_bits()) | vehicle_id);
}

AddressParts decompose_address(const Ipv6Address& address, const AddressSplit& split) {
    const u128 bits = address.bits();
    return AddressParts{bits >> split.vehicle_bits(), static_cast<std::uint64_t>(bits) & split.max_vehicle_id()};
}

std::string to_hex(u128 value) {
    if (value == 0) return "0";
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    while (value != 0) {
        out.insert(out.begin(), kDigits[static_cast<unsigned>(value & 0xF)]);
        value >>= 4;
    }
    return out;
}

}  // namespace vanet::addr
