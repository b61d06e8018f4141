#include "sxt/partition.hpp"

#include <algorithm>
#include <string>

#include "sxt/errors.hpp"

namespace sxt {

namespace {
constexpr uint32_t kRowFieldLimit = 1u << 18;  // local row must fit 18 bits
constexpr uint32_t kColFieldLimit = 1u << 14;  // local col must fit 14 bits
}  // namespace

void PartitionConfig::validate() const {
  if (p < 1 || n0 < 1 || k0 < 1) {
    throw config_error("partition config: p, n0, k0 must all be >= 1");
  }
  if (k0 > kColFieldLimit) {
    throw config_error("partition config: k0 = " + std::to_string(k0) +
                       " exceeds the 14-bit local column field (max 16384)");
  }
}

uint64_t PartitionedA::total_nonzeros() const {
  uint64_t total = 0;
  for (const auto& window : bins) {
    for (const auto& bin : window) total += bin.size();
  }
  return total;
}

PartitionedA partition_a(const CsrMatrix& a, const PartitionConfig& cfg) {
  cfg.validate();
  if (a.num_rows > static_cast<uint64_t>(cfg.p) * kRowFieldLimit) {
    uint64_t first_bad = static_cast<uint64_t>(cfg.p) * kRowFieldLimit;
    throw capacity_error(
        "row " + std::to_string(first_bad) + " needs local index " +
        std::to_string(first_bad / cfg.p) +
        ", beyond the 18-bit row field; increase the PE count");
  }

  PartitionedA pa;
  pa.config = cfg;
  pa.num_rows = a.num_rows;
  pa.num_cols = a.num_cols;
  pa.num_windows = static_cast<uint32_t>(ceil_div(a.num_cols, cfg.k0));
  pa.bins.assign(pa.num_windows,
                 std::vector<std::vector<LocalNonZero>>(cfg.p));

  for (uint32_t r = 0; r < a.num_rows; ++r) {
    const uint32_t pe = r % cfg.p;
    const uint32_t local_row = r / cfg.p;
    for (uint64_t i = a.row_offsets[r]; i < a.row_offsets[r + 1]; ++i) {
      const uint32_t c = a.col_indices[i];
      pa.bins[c / cfg.k0][pe].push_back(
          {local_row, c % cfg.k0, a.values[i]});
    }
  }
  for (auto& window : pa.bins) {
    for (auto& bin : window) {
      std::sort(bin.begin(), bin.end(),
                [](const LocalNonZero& x, const LocalNonZero& y) {
                  return x.local_col != y.local_col
                             ? x.local_col < y.local_col
                             : x.local_row < y.local_row;
                });
    }
  }
  return pa;
}

DenseMatrix partition_b_window(const DenseMatrix& b, uint32_t window,
                               uint32_t tile, const PartitionConfig& cfg) {
  cfg.validate();
  const uint64_t num_windows = ceil_div(b.num_rows, cfg.k0);
  const uint64_t num_tiles = ceil_div(b.num_cols, cfg.n0);
  if (window >= num_windows || tile >= num_tiles) {
    throw config_error("B window (" + std::to_string(window) + ", " +
                       std::to_string(tile) + ") out of range for " +
                       std::to_string(num_windows) + " windows x " +
                       std::to_string(num_tiles) + " tiles");
  }
  DenseMatrix out = DenseMatrix::zeros(cfg.k0, cfg.n0);
  const uint64_t row_begin = static_cast<uint64_t>(window) * cfg.k0;
  const uint64_t col_begin = static_cast<uint64_t>(tile) * cfg.n0;
  const uint32_t rows =
      static_cast<uint32_t>(std::min<uint64_t>(cfg.k0, b.num_rows - row_begin));
  const uint32_t cols =
      static_cast<uint32_t>(std::min<uint64_t>(cfg.n0, b.num_cols - col_begin));
  for (uint32_t r = 0; r < rows; ++r) {
    const float* src = b.row(static_cast<uint32_t>(row_begin + r)) + col_begin;
    std::copy(src, src + cols, out.row(r));
  }
  return out;
}

}  // namespace sxt
