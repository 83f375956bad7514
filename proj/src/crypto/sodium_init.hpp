#pragma once

namespace vanet::crypto::detail {

// sodium_init() once per process; throws if the library cannot start.
void ensure_sodium();

}  // namespace vanet::crypto::detail
