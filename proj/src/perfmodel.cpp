#include "sxt/perfmodel.hpp"

#include "sxt/errors.hpp"

namespace sxt {

ModelReport model_cycles(uint64_t m, uint64_t k, uint64_t n, uint64_t nnz,
                         const AcceleratorConfig& cfg, const PerfParams& pp) {
  cfg.validate();
  if (m == 0 || k == 0 || n == 0) {
    throw config_error("model: dimensions must be positive");
  }
  const double p = cfg.pe_count();
  ModelReport r;
  r.t_init_c = static_cast<double>(k) / p;
  r.t_stream_b = cfg.k0 / (2.0 * pp.f_b);
  r.t_pe = static_cast<double>(nnz) * cfg.k0 / (p * static_cast<double>(k));
  r.t_comp_c = static_cast<double>(m) / pp.f_c;

  const double windows = static_cast<double>(k) / cfg.k0;
  const double tiles = static_cast<double>(n) / cfg.n0;
  r.total_cycles =
      (r.t_init_c + windows * (r.t_stream_b + r.t_pe) + r.t_comp_c) * tiles;
  r.total_cycles_simplified =
      (k / (2.0 * pp.f_b) + nnz / p + m / pp.f_c) * tiles;

  r.seconds = r.total_cycles / (pp.frequency_mhz * 1e6);
  r.flops = flop_count(m, n, nnz);
  r.throughput_gflops = r.flops / r.seconds / 1e9;
  r.bandwidth_utilization = bandwidth_utilization(m, k, n, nnz, r.seconds, pp);
  r.flop_per_joule = energy_efficiency(r.flops, r.seconds, pp);
  return r;
}

ResourceEstimate resource_estimate(const AcceleratorConfig& cfg) {
  const double p = cfg.pe_count();
  ResourceEstimate e;
  e.bram_blocks = (cfg.k0 / 1024.0 * 2.0) * cfg.n0 * p / 2.0;
  e.uram_blocks = (cfg.scratchpad_depth / 4096.0) * (cfg.n0 / 2.0) * p;
  return e;
}

double flop_count(uint64_t m, uint64_t n, uint64_t nnz) {
  return 2.0 * static_cast<double>(nnz) * static_cast<double>(n) +
         3.0 * static_cast<double>(m) * static_cast<double>(n);
}

double bandwidth_utilization(uint64_t m, uint64_t k, uint64_t n, uint64_t nnz,
                             double exec_seconds, const PerfParams& pp) {
  if (exec_seconds <= 0) {
    throw config_error("bandwidth utilization: execution time must be > 0");
  }
  const double essential_bytes =
      4.0 * (static_cast<double>(nnz) +
             static_cast<double>(n) * (2.0 * static_cast<double>(m) +
                                       static_cast<double>(k)));
  return essential_bytes / (exec_seconds * pp.bandwidth_gb_s * 1e9);
}

double energy_efficiency(double flop, double exec_seconds,
                         const PerfParams& pp) {
  if (exec_seconds <= 0 || pp.tdp_watts <= 0) {
    throw config_error("energy efficiency: time and TDP must be > 0");
  }
  return flop / (exec_seconds * pp.tdp_watts);
}

double roofline_gflops(const AcceleratorConfig& cfg, const PerfParams& pp) {
  return 2.0 * cfg.pe_count() * cfg.n0 * pp.frequency_mhz * 1e6 / 1e9;
}

}  // namespace sxt
