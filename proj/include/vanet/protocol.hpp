#pragma once

#include "vanet/protocol/engine.hpp"
#include "vanet/protocol/messages.hpp"
#include "vanet/protocol/types.hpp"
