#include "vanet/sim/fuzz.hpp"

#include <array>

#include "vanet/error.hpp"
#include "vanet/sim/testbed.hpp"

namespace vanet::sim {

using protocol::MessageType;

namespace {

constexpr std::array<MessageType, 10> kTargets{
    MessageType::M1, MessageType::M2, MessageType::M3, MessageType::M4,      MessageType::M5,
    MessageType::C1, MessageType::C2, MessageType::C3, MessageType::AddrReq, MessageType::AddrResp,
};

}  // namespace

FuzzReport run_fuzz(const FuzzConfig& config) {
    const auto params = config.prime == PrimeChoice::Test ? crypto::ChebyParams::test() : crypto::ChebyParams::standard();
    crypto::Rng picker(config.seed);
    FuzzReport report;

    for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        const auto target = kTargets[picker.next_u64() % kTargets.size()];
        const auto bit_draw = picker.next_u64();
        ++report.trials;
        ++report.by_message[std::string(protocol::to_string(target))];

        Testbed bed(params, picker.next_u64());
        bool flipped = false;
        try {
            auto vehicle = bed.enroll("fz-" + std::to_string(trial));
            bed.set_hook([&](MessageType type, crypto::Bytes& wire) {
                if (flipped || type != target) return;
                const auto bit = bit_draw % (wire.size() * 8);
                wire[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
                flipped = true;
            });
            const auto first = bed.first_login(vehicle);
            bed.advance(1);
            bed.request_address(vehicle, first);
            bed.advance(1);
            const auto again = bed.consequent_login(vehicle);
            if (!flipped) fail(ErrorKind::InvalidParams, "fuzz target never reached");
            (void)again;
            ++report.completed;
        } catch (const Error& e) {
            if (flipped) {
                ++report.typed_errors;
                ++report.by_error[std::string(to_string(e.kind()))];
            } else {
                ++report.other_errors;
            }
        } catch (...) {
            ++report.other_errors;
        }
    }
    return report;
}

nlohmann::json to_json(const FuzzReport& report) {
    return nlohmann::json{{"trials", report.trials},
                          {"completed", report.completed},
                          {"typed_errors", report.typed_errors},
                          {"other_errors", report.other_errors},
                          {"by_message", report.by_message},
                          {"by_error", report.by_error},
                          {"passed", report.passed()}};
}

}  // namespace vanet::sim
