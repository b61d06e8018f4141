#pragma once

#include <optional>
#include <string_view>

#include "sxt/perfmodel.hpp"

namespace sxt {

struct Preset {
  AcceleratorConfig accel;
  PerfParams perf;
};

/// The shipped U280 build: 64 PEs, N0=8, K0=4096, depth 12288, FIFO 8,
/// D=15, 189 MHz, 460 GB/s, 225 W.
Preset preset_u280();

/// Projected higher-bandwidth build: 350 MHz, 900 GB/s, 300 W.
Preset preset_projected();

std::optional<Preset> preset_by_name(std::string_view name);

}  // namespace sxt
