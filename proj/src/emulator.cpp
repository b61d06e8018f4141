#include "sxt/emulator.hpp"

#include <algorithm>
#include <string>

#include "sxt/errors.hpp"

namespace sxt {

void AcceleratorConfig::validate() const {
  if (peg_count < 1 || pes_per_peg < 1) {
    throw config_error("accelerator config: peg_count and pes_per_peg >= 1");
  }
  partition_config().validate();
  if (scratchpad_depth < 1 || scratchpad_depth > (1u << 18)) {
    throw config_error(
        "accelerator config: scratchpad_depth must be in [1, 2^18]");
  }
  if (fifo_depth < 1) throw config_error("accelerator config: fifo_depth >= 1");
  if (d < 1) throw config_error("accelerator config: d >= 1");
  if (f_b < 1 || f_c < 1) {
    throw config_error("accelerator config: f_b and f_c >= 1");
  }
  if (frequency_mhz <= 0) {
    throw config_error("accelerator config: frequency must be positive");
  }
}

uint64_t pe_execute(std::span<const uint64_t> slots,
                    const DenseMatrix& b_window, DenseMatrix& scratchpad) {
  const uint32_t lanes = b_window.num_cols;
  for (uint64_t word : slots) {
    const DecodedSlot s = decode_nonzero(word);
    if (s.bubble) continue;
    if (s.row >= scratchpad.num_rows) {
      throw validation_error("stream row " + std::to_string(s.row) +
                             " outside the PE's " +
                             std::to_string(scratchpad.num_rows) +
                             " scratchpad rows");
    }
    if (s.col >= b_window.num_rows) {
      throw validation_error("stream column " + std::to_string(s.col) +
                             " outside the " +
                             std::to_string(b_window.num_rows) +
                             "-row B window");
    }
    const float a_val = s.value();
    float* crow = scratchpad.row(s.row);
    const float* brow = b_window.row(s.col);
    for (uint32_t q = 0; q < lanes; ++q) {
      crow[q] += a_val * brow[q];
    }
  }
  return slots.size();  // II=1: one slot per cycle, bubbles included
}

uint64_t comp_c_phase(const std::vector<DenseMatrix>& scratchpads,
                      const DenseMatrix& c_in, float alpha, float beta,
                      uint32_t col_begin, uint32_t col_count, uint32_t f_c,
                      DenseMatrix& c_out) {
  const uint32_t p = static_cast<uint32_t>(scratchpads.size());
  const uint32_t m = c_out.num_rows;
  for (uint32_t r = 0; r < m; ++r) {
    const DenseMatrix& pad = scratchpads[r % p];
    const float* srow = pad.row(r / p);
    const float* irow = c_in.row(r) + col_begin;
    float* orow = c_out.row(r) + col_begin;
    for (uint32_t q = 0; q < col_count; ++q) {
      orow[q] = alpha * srow[q] + beta * irow[q];
    }
  }
  return ceil_div(m, f_c);
}

uint64_t estimate_sync_stalls(std::span<const uint64_t> window_lengths,
                              uint32_t fifo_depth) {
  if (window_lengths.empty()) return 0;
  const uint64_t shortest =
      *std::min_element(window_lengths.begin(), window_lengths.end());
  uint64_t stall = 0;
  for (uint64_t len : window_lengths) {
    const uint64_t ahead = len - shortest;
    if (ahead > fifo_depth) stall += ahead - fifo_depth;
  }
  return stall;
}

EmulationResult run_spmm(const SpmmProblem& problem, const ScheduledMatrix& sm,
                         const AcceleratorConfig& cfg) {
  cfg.validate();
  validate_problem(problem);
  const uint32_t p = cfg.pe_count();
  const uint32_t m = problem.a.num_rows;
  const uint32_t k = problem.a.num_cols;
  const uint32_t n = problem.b.num_cols;

  if (sm.pe_count != p || sm.k0 != cfg.k0 || sm.d != cfg.d) {
    throw config_error(
        "stream/config mismatch: stream has P=" + std::to_string(sm.pe_count) +
        " k0=" + std::to_string(sm.k0) + " d=" + std::to_string(sm.d) +
        ", config expects P=" + std::to_string(p) +
        " k0=" + std::to_string(cfg.k0) + " d=" + std::to_string(cfg.d));
  }
  const uint32_t num_windows = static_cast<uint32_t>(ceil_div(k, cfg.k0));
  if (sm.num_windows != num_windows) {
    throw config_error("stream has " + std::to_string(sm.num_windows) +
                       " windows, matrix needs " + std::to_string(num_windows));
  }
  const uint64_t rows_per_pe = ceil_div(m, p);
  if (rows_per_pe > cfg.scratchpad_depth) {
    throw capacity_error(
        "matrix needs " + std::to_string(rows_per_pe) +
        " scratchpad rows per PE but depth is " +
        std::to_string(cfg.scratchpad_depth) +
        "; increase the PE count or scratchpad depth");
  }
  if (sm.streams.size() != p || sm.pointers.size() != p) {
    throw validation_error("stream is missing PE lists");
  }
  for (uint32_t pe = 0; pe < p; ++pe) {
    const auto& q = sm.pointers[pe].q;
    if (q.size() != static_cast<size_t>(num_windows) + 1 || q.front() != 0 ||
        !std::is_sorted(q.begin(), q.end()) ||
        q.back() != sm.streams[pe].size()) {
      throw validation_error("PE " + std::to_string(pe) +
                             ": malformed pointer list Q");
    }
  }

  const uint32_t num_tiles = static_cast<uint32_t>(ceil_div(n, cfg.n0));
  const PartitionConfig pcfg = cfg.partition_config();

  // Timing side notes; streams repeat identically for every column tile.
  EmulationResult res;
  std::vector<uint64_t> lengths(p);
  for (uint32_t j = 0; j < num_windows; ++j) {
    for (uint32_t pe = 0; pe < p; ++pe) {
      const auto& q = sm.pointers[pe].q;
      lengths[pe] = q[j + 1] - q[j];
    }
    res.stall_estimate +=
        estimate_sync_stalls(lengths, cfg.fifo_depth) * num_tiles;
  }
  res.chain_latency =
      static_cast<uint64_t>(cfg.peg_count) * num_windows * num_tiles;

  std::vector<DenseMatrix> pads;
  pads.reserve(p);
  for (uint32_t pe = 0; pe < p; ++pe) {
    const uint32_t pe_rows =
        m > pe ? static_cast<uint32_t>(ceil_div(m - pe, p)) : 0;
    pads.push_back(DenseMatrix::zeros(pe_rows, cfg.n0));
  }

  res.c_out = DenseMatrix::zeros(m, n);
  res.tiles.reserve(num_tiles);
  for (uint32_t i = 0; i < num_tiles; ++i) {
    TileCycles tc;
    for (auto& pad : pads) {
      std::fill(pad.values.begin(), pad.values.end(), 0.0f);
    }
    tc.init_c = rows_per_pe;  // P-way parallel zeroing, one row per cycle
    tc.windows.reserve(num_windows);
    for (uint32_t j = 0; j < num_windows; ++j) {
      const DenseMatrix b_window = partition_b_window(problem.b, j, i, pcfg);
      WindowCycles wc;
      wc.stream_b = ceil_div(cfg.k0, 2ull * cfg.f_b);
      for (uint32_t pe = 0; pe < p; ++pe) {
        const auto& q = sm.pointers[pe].q;
        const std::span<const uint64_t> slice(
            sm.streams[pe].data() + q[j], static_cast<size_t>(q[j + 1] - q[j]));
        const uint64_t cycles = pe_execute(slice, b_window, pads[pe]);
        wc.pe_compute = std::max(wc.pe_compute, cycles);
      }
      tc.windows.push_back(wc);
      res.totals.stream_b += wc.stream_b;
      res.totals.pe_compute += wc.pe_compute;
    }
    const uint32_t col_begin = i * cfg.n0;
    const uint32_t col_count = std::min(cfg.n0, n - col_begin);
    tc.comp_c = comp_c_phase(pads, problem.c_in, problem.alpha, problem.beta,
                             col_begin, col_count, cfg.f_c, res.c_out);
    res.totals.init_c += tc.init_c;
    res.totals.comp_c += tc.comp_c;
    res.tiles.push_back(std::move(tc));
  }
  return res;
}

}  // namespace sxt
