#pragma once

#include <cstdint>

#include "vanet/crypto/bytes.hpp"

namespace vanet::sim {

using NodeId = std::uint32_t;
using FlowId = std::uint64_t;

enum class FrameKind : std::uint8_t { Protocol, Beacon, Conflict };

// One transmission on the simulated channel. Nodes see src/dst/flow/kind/payload
// only; the remaining fields are ground truth for accounting.
struct Frame {
    NodeId src = 0;
    NodeId dst = 0;
    FlowId flow = 0;
    FrameKind kind = FrameKind::Protocol;
    crypto::Bytes payload;

    bool injected = false;
    bool tampered = false;
    bool control = false;
    std::size_t injector = 0;
};

}  // namespace vanet::sim
