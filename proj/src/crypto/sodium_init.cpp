#include "sodium_init.hpp"

#include <sodium.h>

#include "vanet/error.hpp"

namespace vanet::crypto::detail {

void ensure_sodium() {
    static const int status = sodium_init();
    if (status < 0) fail(ErrorKind::InvalidParams, "libsodium failed to initialize");
}

}  // namespace vanet::crypto::detail
