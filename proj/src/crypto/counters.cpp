#include "vanet/crypto/counters.hpp"

namespace vanet::crypto {

namespace {
thread_local OpCounters* g_active = nullptr;
}

CountingScope::CountingScope(OpCounters& sink) noexcept : previous_(g_active) { g_active = &sink; }

CountingScope::~CountingScope() { g_active = previous_; }

OpCounters* detail::active_counters() noexcept { return g_active; }

}  // namespace vanet::crypto
