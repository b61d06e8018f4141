#pragma once

#include <cstdint>

#include "sxt/emulator.hpp"

namespace sxt {

/// Platform parameters for the analytical model and the derived
/// throughput / bandwidth / energy metrics.
struct PerfParams {
  double f_b = 4.0;
  double f_c = 16.0;
  double frequency_mhz = 189.0;
  double bandwidth_gb_s = 460.0;
  double tdp_watts = 225.0;
};

/// Analytical cycle model. All divisions are real-valued; ceilings are
/// the emulator's business.
struct ModelReport {
  // Per-iteration terms:
  double t_init_c = 0;    // K / P
  double t_stream_b = 0;  // K0 / (2 f_b), per window
  double t_pe = 0;        // nnz K0 / (P K), per window
  double t_comp_c = 0;    // M / f_c, per column tile
  // Totals over the loop nest:
  double total_cycles = 0;             // full composition incl. t_init_c
  double total_cycles_simplified = 0;  // three-term closed form
  double seconds = 0;                  // from total_cycles at frequency
  double flops = 0;
  double throughput_gflops = 0;
  double bandwidth_utilization = 0;  // fraction of delivered-byte capacity
  double flop_per_joule = 0;
};

ModelReport model_cycles(uint64_t m, uint64_t k, uint64_t n, uint64_t nnz,
                         const AcceleratorConfig& cfg, const PerfParams& pp);

struct ResourceEstimate {
  double bram_blocks = 0;
  double uram_blocks = 0;
};

/// On-chip memory block arithmetic: B windows in BRAM (1024x18-bit
/// blocks, one block shared by two PEs), C scratchpads in URAM
/// (4096x72-bit blocks, two fp32 per entry).
ResourceEstimate resource_estimate(const AcceleratorConfig& cfg);

/// FLOP for one pass: 2*nnz*N multiply-accumulate plus 3*M*N for the
/// alpha/beta merge.
double flop_count(uint64_t m, uint64_t n, uint64_t nnz);

/// Essential traffic 4*(nnz + N*(2M + K)) bytes over the bytes the
/// memory system could deliver in exec_seconds.
double bandwidth_utilization(uint64_t m, uint64_t k, uint64_t n, uint64_t nnz,
                             double exec_seconds, const PerfParams& pp);

double energy_efficiency(double flop, double exec_seconds,
                         const PerfParams& pp);

/// Compute roof: 2 * P * N0 FLOP per cycle at the platform frequency.
double roofline_gflops(const AcceleratorConfig& cfg, const PerfParams& pp);

}  // namespace sxt
