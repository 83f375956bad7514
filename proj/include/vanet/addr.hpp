#pragma once

#include "vanet/addr/exchange.hpp"
#include "vanet/addr/ipv6.hpp"
#include "vanet/addr/pool.hpp"
