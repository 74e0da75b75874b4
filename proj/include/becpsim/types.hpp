#pragma once

#include <cstdint>

namespace becpsim {

using NodeId = std::uint32_t;

// Virtual time in seconds.
using Seconds = double;

} // namespace becpsim
