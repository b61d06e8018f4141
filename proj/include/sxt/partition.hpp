#pragma once

#include <cstdint>
#include <vector>

#include "sxt/matrix.hpp"

namespace sxt {

/// Three-level decomposition knobs: P-way row interleaving, K0-wide
/// column windows over A/B rows, N0-wide column tiles over B/C.
struct PartitionConfig {
  uint32_t p = 64;     // PE count
  uint32_t n0 = 8;     // B column tile width
  uint32_t k0 = 4096;  // window size

  void validate() const;
};

/// A non-zero with both indices compressed for its bin: the global
/// (row, col) maps to (row / P, col % K0) inside bin [col / K0][row % P].
struct LocalNonZero {
  uint32_t local_row = 0;
  uint32_t local_col = 0;
  float value = 0.0f;

  friend bool operator==(const LocalNonZero&, const LocalNonZero&) = default;
};

/// A split into num_windows x P bins, each in column-major local order.
struct PartitionedA {
  PartitionConfig config;
  uint32_t num_rows = 0;
  uint32_t num_cols = 0;
  uint32_t num_windows = 0;
  std::vector<std::vector<std::vector<LocalNonZero>>> bins;  // [window][pe]

  uint64_t total_nonzeros() const;
};

inline uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

/// Splits A by mod-P row interleaving within K0 column windows. Bins come
/// out in column-major order of local coordinates, the visit order the
/// scheduler requires. Throws capacity_error when a row's local index
/// would overflow the 18-bit row field.
PartitionedA partition_a(const CsrMatrix& a, const PartitionConfig& cfg);

/// The K0 x N0 window of B covering rows [j*K0, (j+1)*K0) and columns
/// [i*N0, (i+1)*N0), zero-padded at ragged edges.
DenseMatrix partition_b_window(const DenseMatrix& b, uint32_t window,
                               uint32_t tile, const PartitionConfig& cfg);

}  // namespace sxt
