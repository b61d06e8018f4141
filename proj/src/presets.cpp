#include "sxt/presets.hpp"

namespace sxt {

Preset preset_u280() {
  return {};  // struct defaults are the U280 build
}

Preset preset_projected() {
  Preset p;
  p.accel.frequency_mhz = 350.0;
  p.perf.frequency_mhz = 350.0;
  p.perf.bandwidth_gb_s = 900.0;
  p.perf.tdp_watts = 300.0;
  return p;
}

std::optional<Preset> preset_by_name(std::string_view name) {
  if (name == "u280") return preset_u280();
  if (name == "projected") return preset_projected();
  return std::nullopt;
}

}  // namespace sxt
