#pragma once

#include "vanet/crypto/aead.hpp"
#include "vanet/crypto/bytes.hpp"
#include "vanet/crypto/chebyshev.hpp"
#include "vanet/crypto/counters.hpp"
#include "vanet/crypto/encoding.hpp"
#include "vanet/crypto/hash.hpp"
#include "vanet/crypto/rng.hpp"
#include "vanet/crypto/timestamp.hpp"
