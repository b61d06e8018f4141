#pragma once

#include <filesystem>

#include "sxt/schedule.hpp"

namespace sxt {

// Scheduled stream container, little-endian:
//   magic "SXTS", version u32, P u32, num_windows u32, K0 u32, D u32,
//   then per PE: Q as u32[num_windows + 1] followed by Q.back() 64-bit
//   slot words.
inline constexpr uint32_t kStreamVersion = 1;

void write_stream_file(const std::filesystem::path& path,
                       const ScheduledMatrix& sm);

/// Throws io_error when unreadable, validation_error when the header or
/// pointer structure is malformed.
ScheduledMatrix read_stream_file(const std::filesystem::path& path);

}  // namespace sxt
