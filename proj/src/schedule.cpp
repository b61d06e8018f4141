#include "sxt/schedule.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "sxt/errors.hpp"

namespace sxt {

void ScheduleConfig::validate() const {
  if (d < 1) throw config_error("schedule config: d must be >= 1");
}

uint64_t encode_nonzero(const LocalNonZero& nz) {
  if (nz.local_col > kMaxLocalCol) {
    throw validation_error("encode: column " + std::to_string(nz.local_col) +
                           " exceeds the 14-bit field");
  }
  if (nz.local_row > kMaxPayloadRow) {
    throw validation_error("encode: row " + std::to_string(nz.local_row) +
                           " exceeds the 18-bit payload range");
  }
  return static_cast<uint64_t>(nz.local_col) |
         (static_cast<uint64_t>(nz.local_row) << 14) |
         (static_cast<uint64_t>(std::bit_cast<uint32_t>(nz.value)) << 32);
}

float DecodedSlot::value() const { return std::bit_cast<float>(value_bits); }

DecodedSlot decode_nonzero(uint64_t word) {
  DecodedSlot s;
  s.col = static_cast<uint32_t>(word & 0x3FFFu);
  s.row = static_cast<uint32_t>((word >> 14) & 0x3FFFFu);
  s.value_bits = static_cast<uint32_t>(word >> 32);
  s.bubble = s.row == kBubbleRow;
  return s;
}

ScheduledStream schedule_window(std::span<const LocalNonZero> bin,
                                const ScheduleConfig& cfg) {
  cfg.validate();
  ScheduledStream out;
  if (bin.empty()) return out;

  uint32_t max_row = 0;
  for (const LocalNonZero& nz : bin) max_row = std::max(max_row, nz.local_row);
  std::vector<int64_t> last(static_cast<size_t>(max_row) + 1, -1);

  uint64_t frontier = 0;       // first never-occupied cycle
  std::set<uint64_t> holes;    // unoccupied cycles below frontier
  std::vector<uint64_t> cycle_of(bin.size());

  for (size_t i = 0; i < bin.size(); ++i) {
    const uint32_t row = bin[i].local_row;
    const uint64_t bound =
        last[row] < 0 ? 0 : static_cast<uint64_t>(last[row]) + cfg.d;
    uint64_t cycle;
    if (auto it = holes.lower_bound(bound); it != holes.end()) {
      cycle = *it;
      holes.erase(it);
    } else {
      cycle = std::max(bound, frontier);
      for (uint64_t h = frontier; h < cycle; ++h) holes.insert(h);
      frontier = cycle + 1;
    }
    last[row] = static_cast<int64_t>(cycle);
    cycle_of[i] = cycle;
  }

  out.slots.assign(frontier, kBubbleWord);
  for (size_t i = 0; i < bin.size(); ++i) {
    out.slots[cycle_of[i]] = encode_nonzero(bin[i]);
  }
  out.payload_count = bin.size();
  return out;
}

namespace {

uint64_t in_order_cycles(std::span<const LocalNonZero> bin, uint32_t d) {
  if (bin.empty()) return 0;
  std::unordered_map<uint32_t, uint64_t> last;
  last.reserve(bin.size());
  uint64_t t = 0;
  bool first = true;
  for (const LocalNonZero& nz : bin) {
    uint64_t issue = first ? 0 : t + 1;
    if (auto it = last.find(nz.local_row); it != last.end()) {
      issue = std::max(issue, it->second + d);
    }
    last[nz.local_row] = issue;
    t = issue;
    first = false;
  }
  return t + 1;
}

}  // namespace

uint64_t in_order_colmajor_cycles(std::span<const LocalNonZero> bin,
                                  const ScheduleConfig& cfg) {
  cfg.validate();
  return in_order_cycles(bin, cfg.d);
}

uint64_t in_order_rowmajor_cycles(std::span<const LocalNonZero> bin,
                                  const ScheduleConfig& cfg) {
  cfg.validate();
  std::vector<LocalNonZero> rowmajor(bin.begin(), bin.end());
  std::sort(rowmajor.begin(), rowmajor.end(),
            [](const LocalNonZero& x, const LocalNonZero& y) {
              return x.local_row != y.local_row ? x.local_row < y.local_row
                                                : x.local_col < y.local_col;
            });
  return in_order_cycles(rowmajor, cfg.d);
}

ScheduledMatrix schedule_matrix(const PartitionedA& pa,
                                const ScheduleConfig& cfg) {
  cfg.validate();
  ScheduledMatrix sm;
  sm.pe_count = pa.config.p;
  sm.num_windows = pa.num_windows;
  sm.k0 = pa.config.k0;
  sm.d = cfg.d;
  sm.streams.resize(sm.pe_count);
  sm.pointers.resize(sm.pe_count);
  for (uint32_t pe = 0; pe < sm.pe_count; ++pe) {
    auto& stream = sm.streams[pe];
    auto& q = sm.pointers[pe].q;
    q.reserve(pa.num_windows + 1);
    q.push_back(0);
    for (uint32_t j = 0; j < pa.num_windows; ++j) {
      ScheduledStream ss = schedule_window(pa.bins[j][pe], cfg);
      stream.insert(stream.end(), ss.slots.begin(), ss.slots.end());
      if (stream.size() > std::numeric_limits<uint32_t>::max()) {
        throw capacity_error("PE " + std::to_string(pe) +
                             " stream exceeds 32-bit pointer range");
      }
      q.push_back(static_cast<uint32_t>(stream.size()));
    }
  }
  return sm;
}

ValidationReport validate_slots(std::span<const uint64_t> slots,
                                std::span<const LocalNonZero> bin,
                                const ScheduleConfig& cfg) {
  ValidationReport rep;
  rep.makespan = slots.size();

  using Key = std::tuple<uint32_t, uint32_t, uint32_t>;  // row, col, value bits
  std::map<Key, int64_t> balance;
  for (const LocalNonZero& nz : bin) {
    ++balance[{nz.local_row, nz.local_col, std::bit_cast<uint32_t>(nz.value)}];
  }

  std::unordered_map<uint32_t, uint64_t> last_seen;
  for (size_t i = 0; i < slots.size(); ++i) {
    const DecodedSlot s = decode_nonzero(slots[i]);
    if (s.bubble) continue;
    ++rep.payload_count;
    if (auto it = last_seen.find(s.row); it != last_seen.end()) {
      if (i - it->second < cfg.d) {
        rep.issues.push_back("row " + std::to_string(s.row) +
                             " reissued at slot " + std::to_string(i) +
                             ", only " + std::to_string(i - it->second) +
                             " cycles after slot " + std::to_string(it->second) +
                             " (d = " + std::to_string(cfg.d) + ")");
      }
    }
    last_seen[s.row] = i;
    --balance[{s.row, s.col, s.value_bits}];
  }
  rep.bubble_count = rep.makespan - rep.payload_count;

  for (const auto& [key, count] : balance) {
    if (count != 0) {
      const auto& [row, col, bits] = key;
      rep.issues.push_back(
          "payload multiset mismatch at (" + std::to_string(row) + ", " +
          std::to_string(col) + "): " +
          (count > 0 ? "missing " + std::to_string(count)
                     : "extra " + std::to_string(-count)) +
          " occurrence(s)");
    }
  }
  if (!slots.empty() && decode_nonzero(slots.back()).bubble) {
    rep.issues.push_back("stream ends in a bubble");
  }
  rep.ok = rep.issues.empty();
  return rep;
}

ValidationReport validate_schedule(const ScheduledStream& stream,
                                   std::span<const LocalNonZero> bin,
                                   const ScheduleConfig& cfg) {
  ValidationReport rep = validate_slots(stream.slots, bin, cfg);
  if (rep.payload_count != stream.payload_count) {
    rep.issues.push_back("recorded payload_count " +
                         std::to_string(stream.payload_count) +
                         " does not match decoded count " +
                         std::to_string(rep.payload_count));
    rep.ok = false;
  }
  return rep;
}

}  // namespace sxt
