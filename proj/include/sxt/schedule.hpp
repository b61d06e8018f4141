#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sxt/partition.hpp"

namespace sxt {

/// RAW dependency distance: two non-zeros accumulating into the same
/// row must issue at least d cycles apart.
struct ScheduleConfig {
  uint32_t d = 15;

  void validate() const;
};

// 64-bit non-zero word layout:
//   bits [13:0]  local column index
//   bits [31:14] local row index
//   bits [63:32] fp32 value bit pattern
// Row 0x3FFFF is reserved: such a word is a bubble and carries no work.
inline constexpr uint32_t kBubbleRow = 0x3FFFFu;
inline constexpr uint32_t kMaxPayloadRow = kBubbleRow - 1;
inline constexpr uint32_t kMaxLocalCol = 0x3FFFu;
inline constexpr uint64_t kBubbleWord = static_cast<uint64_t>(kBubbleRow) << 14;

/// Packs a non-zero into its wire word. Throws validation_error when a
/// field exceeds its width (the reserved bubble row counts as overflow).
uint64_t encode_nonzero(const LocalNonZero& nz);

struct DecodedSlot {
  bool bubble = true;
  uint32_t row = 0;
  uint32_t col = 0;
  uint32_t value_bits = 0;

  float value() const;
};

DecodedSlot decode_nonzero(uint64_t word);

/// One scheduled instruction stream: a slot per cycle, payloads and
/// bubbles, never ending in a bubble.
struct ScheduledStream {
  std::vector<uint64_t> slots;
  uint64_t payload_count = 0;

  uint64_t makespan() const { return slots.size(); }
  uint64_t bubble_count() const { return slots.size() - payload_count; }
};

/// Out-of-order scheduling of one bin: non-zeros are visited in the
/// bin's column-major order and each is placed at the earliest
/// unoccupied cycle at least d after the previous placement of its row.
/// Unfilled cycles below the final makespan become bubbles.
ScheduledStream schedule_window(std::span<const LocalNonZero> bin,
                                const ScheduleConfig& cfg);

/// In-order issue in bin order: cycle = max(prev + 1, row_last + d).
uint64_t in_order_colmajor_cycles(std::span<const LocalNonZero> bin,
                                  const ScheduleConfig& cfg);

/// In-order issue after sorting the bin row-major.
uint64_t in_order_rowmajor_cycles(std::span<const LocalNonZero> bin,
                                  const ScheduleConfig& cfg);

/// Stream start offsets for one PE: q[0] = 0, q[j+1] - q[j] is the
/// makespan of window j, so q has num_windows + 1 entries.
struct PointerList {
  std::vector<uint32_t> q;
};

/// All PE streams of a partitioned matrix, window streams concatenated
/// in window order per PE.
struct ScheduledMatrix {
  uint32_t pe_count = 0;
  uint32_t num_windows = 0;
  uint32_t k0 = 0;
  uint32_t d = 0;
  std::vector<std::vector<uint64_t>> streams;  // [pe] concatenated slots
  std::vector<PointerList> pointers;           // [pe]
};

ScheduledMatrix schedule_matrix(const PartitionedA& pa,
                                const ScheduleConfig& cfg);

struct ValidationReport {
  bool ok = true;
  uint64_t makespan = 0;
  uint64_t payload_count = 0;
  uint64_t bubble_count = 0;
  std::vector<std::string> issues;
};

/// Checks a stream against its source bin: the d-distance constraint,
/// payload multiset completeness, and the no-trailing-bubble rule.
ValidationReport validate_slots(std::span<const uint64_t> slots,
                                std::span<const LocalNonZero> bin,
                                const ScheduleConfig& cfg);

ValidationReport validate_schedule(const ScheduledStream& stream,
                                   std::span<const LocalNonZero> bin,
                                   const ScheduleConfig& cfg);

}  // namespace sxt
