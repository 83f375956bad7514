#pragma once

#include <compare>
#include <cstdint>

namespace vanet::crypto {

// Seconds since epoch on the simulated clock.
struct Timestamp {
    std::uint64_t seconds = 0;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

inline constexpr std::uint64_t kDefaultFreshnessWindow = 60;

// |now - ts| <= window
constexpr bool is_fresh(Timestamp now, Timestamp ts, std::uint64_t window) noexcept {
    const auto age = now.seconds >= ts.seconds ? now.seconds - ts.seconds : ts.seconds - now.seconds;
    return age <= window;
}

}  // namespace vanet::crypto
