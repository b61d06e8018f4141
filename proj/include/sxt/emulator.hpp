#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sxt/matrix.hpp"
#include "sxt/partition.hpp"
#include "sxt/schedule.hpp"

namespace sxt {

/// Every architecture knob of the emulated engine. The PE total is
/// peg_count * pes_per_peg; each PE runs n0 parallel lanes.
struct AcceleratorConfig {
  uint32_t peg_count = 8;
  uint32_t pes_per_peg = 8;
  uint32_t n0 = 8;
  uint32_t k0 = 4096;
  uint32_t scratchpad_depth = 12288;  // C rows per PE
  uint32_t fifo_depth = 8;
  uint32_t d = 15;
  uint32_t f_b = 4;   // B store partition factor (2*f_b elements/cycle)
  uint32_t f_c = 16;  // CompC parallel factor
  double frequency_mhz = 189.0;

  uint32_t pe_count() const { return peg_count * pes_per_peg; }
  PartitionConfig partition_config() const { return {pe_count(), n0, k0}; }
  void validate() const;
};

struct PhaseCycles {
  uint64_t init_c = 0;
  uint64_t stream_b = 0;
  uint64_t pe_compute = 0;
  uint64_t comp_c = 0;

  uint64_t total() const { return init_c + stream_b + pe_compute + comp_c; }
};

struct WindowCycles {
  uint64_t stream_b = 0;
  uint64_t pe_compute = 0;  // max PE stream length in the window
};

struct TileCycles {
  uint64_t init_c = 0;
  uint64_t comp_c = 0;
  std::vector<WindowCycles> windows;
};

struct EmulationResult {
  DenseMatrix c_out;
  std::vector<TileCycles> tiles;  // one per N0-wide column tile
  PhaseCycles totals;
  // Timing side notes, never part of totals:
  uint64_t chain_latency = 0;   // PEG relay broadcast, peg_count per window
  uint64_t stall_estimate = 0;  // FIFO asynchrony estimate
};

/// Runs one stream slice through a PE: every payload updates all n0
/// lanes of its scratchpad row from the B window; bubbles only advance
/// time. Returns the cycle count, which is exactly the slot count.
uint64_t pe_execute(std::span<const uint64_t> slots,
                    const DenseMatrix& b_window, DenseMatrix& scratchpad);

/// Merges per-PE scratchpads into the output tile in PE-interleaved row
/// order: out = alpha * scratchpad + beta * c_in. Returns ceil(M / f_c).
uint64_t comp_c_phase(const std::vector<DenseMatrix>& scratchpads,
                      const DenseMatrix& c_in, float alpha, float beta,
                      uint32_t col_begin, uint32_t col_count, uint32_t f_c,
                      DenseMatrix& c_out);

/// FIFO asynchrony estimate for one window: cycles by which PE streams
/// outrun the shortest stream beyond the FIFO slack.
uint64_t estimate_sync_stalls(std::span<const uint64_t> window_lengths,
                              uint32_t fifo_depth);

/// Full loop nest: per column tile, zero scratchpads, then per window
/// stream the B block and execute every PE between consecutive Q
/// entries, then merge with alpha/beta into c_out.
EmulationResult run_spmm(const SpmmProblem& problem, const ScheduledMatrix& sm,
                         const AcceleratorConfig& cfg);

}  // namespace sxt
