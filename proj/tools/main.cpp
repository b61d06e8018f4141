// sxt: streaming SpMM accelerator toolkit.
//
// Subcommands cover the full pipeline: gen (write a random sparse
// matrix), schedule (partition + out-of-order scheduling to a stream
// file), emulate (run the engine emulator), validate (check a stream
// against its matrix), model (analytical cycles/resources), bench
// (corpus sweep to CSV).

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sxt/emulator.hpp"
#include "sxt/errors.hpp"
#include "sxt/matrix.hpp"
#include "sxt/mtx_io.hpp"
#include "sxt/partition.hpp"
#include "sxt/perfmodel.hpp"
#include "sxt/presets.hpp"
#include "sxt/schedule.hpp"
#include "sxt/stream_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GenSpec {
  uint32_t m = 0;
  uint32_t k = 0;
  double density = 0.0;
  std::optional<uint64_t> seed;
};

GenSpec parse_gen(const std::string& spec) {
  GenSpec g;
  char sep = 0;
  std::istringstream ss(spec);
  unsigned long long m = 0, k = 0;
  if (!(ss >> m) || !(ss >> sep) || sep != 'x' || !(ss >> k)) {
    throw sxt::config_error("bad --gen spec '" + spec +
                            "', expected MxKxDENSITY[:seed]");
  }
  if (!(ss >> sep) || sep != 'x' || !(ss >> g.density)) {
    throw sxt::config_error("bad --gen spec '" + spec +
                            "', expected MxKxDENSITY[:seed]");
  }
  if (ss >> sep) {
    unsigned long long seed = 0;
    if (sep != ':' || !(ss >> seed)) {
      throw sxt::config_error("bad --gen seed in '" + spec + "'");
    }
    g.seed = seed;
  }
  g.m = static_cast<uint32_t>(m);
  g.k = static_cast<uint32_t>(k);
  return g;
}

struct Options {
  std::string input;
  std::string gen;
  std::string stream;
  std::string out;
  std::string report;
  std::string csv;
  std::string corpus;
  std::string preset = "u280";
  std::vector<uint32_t> n_list;
  uint32_t n = 8;
  double alpha = 1.0;
  double beta = 0.0;
  uint64_t seed = 1;
  bool expand_symmetric = true;
  bool check = false;
  double launch_ms = 0.0;

  // knob overrides; presence tracked through the CLI11 option pointers
  uint32_t p = 64, pegs = 8, pes_per_peg = 8, n0 = 8, k0 = 4096, d = 15;
  uint32_t depth = 12288, fifo = 8, fb = 4, fc = 16;
  double freq = 189.0, bandwidth = 460.0, tdp = 225.0;

  CLI::App* sub = nullptr;

  bool set(const std::string& flag) const { return sub->count(flag) > 0; }
};

void add_knob_options(CLI::App* sub, Options& o) {
  sub->add_option("--preset", o.preset, "Platform preset: u280 | projected")
      ->check(CLI::IsMember({"u280", "projected"}));
  sub->add_option("--p", o.p, "Total PE count (n/8 PEGs x 8 when 8 | n)");
  sub->add_option("--pegs", o.pegs, "PE group count");
  sub->add_option("--pes-per-peg", o.pes_per_peg, "PEs per group");
  sub->add_option("--n0", o.n0, "B column tile width");
  sub->add_option("--k0", o.k0, "Window size (max 16384)");
  sub->add_option("--d", o.d, "RAW dependency distance in cycles");
  sub->add_option("--depth", o.depth, "C scratchpad rows per PE");
  sub->add_option("--fifo", o.fifo, "Broadcast FIFO depth");
  sub->add_option("--fb", o.fb, "B store partition factor");
  sub->add_option("--fc", o.fc, "CompC parallel factor");
  sub->add_option("--freq", o.freq, "Clock frequency in MHz");
  sub->add_option("--bandwidth", o.bandwidth, "Memory bandwidth in GB/s");
  sub->add_option("--tdp", o.tdp, "Thermal design power in W");
  sub->add_option("--launch-ms", o.launch_ms,
                  "Per-run launch overhead added to reported seconds");
}

void add_input_options(CLI::App* sub, Options& o) {
  sub->add_option("--input,-i", o.input, "Matrix Market file for A");
  sub->add_option("--gen", o.gen, "Random A spec MxKxDENSITY[:seed]");
  sub->add_option("--seed", o.seed, "Seed for generated inputs");
  sub->add_flag("--expand-symmetric,!--no-expand-symmetric",
                o.expand_symmetric, "Mirror symmetric .mtx files (default on)");
}

sxt::Preset build_preset(const Options& o) {
  sxt::Preset pre = *sxt::preset_by_name(o.preset);
  sxt::AcceleratorConfig& a = pre.accel;
  sxt::PerfParams& pp = pre.perf;
  if (o.set("--p")) {
    if (o.p % 8 == 0) {
      a.peg_count = o.p / 8;
      a.pes_per_peg = 8;
    } else {
      a.peg_count = 1;
      a.pes_per_peg = o.p;
    }
  }
  if (o.set("--pegs")) a.peg_count = o.pegs;
  if (o.set("--pes-per-peg")) a.pes_per_peg = o.pes_per_peg;
  if (o.set("--n0")) a.n0 = o.n0;
  if (o.set("--k0")) a.k0 = o.k0;
  if (o.set("--d")) a.d = o.d;
  if (o.set("--depth")) a.scratchpad_depth = o.depth;
  if (o.set("--fifo")) a.fifo_depth = o.fifo;
  if (o.set("--fb")) a.f_b = o.fb;
  if (o.set("--fc")) a.f_c = o.fc;
  if (o.set("--freq")) a.frequency_mhz = o.freq;
  pp.f_b = a.f_b;
  pp.f_c = a.f_c;
  pp.frequency_mhz = a.frequency_mhz;
  if (o.set("--bandwidth")) pp.bandwidth_gb_s = o.bandwidth;
  if (o.set("--tdp")) pp.tdp_watts = o.tdp;
  a.validate();
  return pre;
}

sxt::DenseMatrix synth_dense(uint32_t rows, uint32_t cols, uint64_t seed) {
  sxt::DenseMatrix m = sxt::DenseMatrix::zeros(rows, cols);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  for (float& v : m.values) v = dist(rng);
  return m;
}

// A from --input or --gen; exactly one source must be given.
sxt::CsrMatrix load_a(const Options& o) {
  const bool has_input = !o.input.empty();
  const bool has_gen = !o.gen.empty();
  if (has_input == has_gen) {
    throw sxt::config_error("exactly one of --input or --gen is required");
  }
  if (has_input) {
    sxt::CooMatrix coo = sxt::load_matrix_market(o.input, o.expand_symmetric);
    return sxt::coo_to_csr(coo);
  }
  GenSpec g = parse_gen(o.gen);
  sxt::SpmmProblem p =
      sxt::random_problem(g.m, g.k, 1, g.density, g.seed.value_or(o.seed));
  return std::move(p.a);
}

sxt::SpmmProblem assemble_problem(const Options& o, sxt::CsrMatrix a) {
  sxt::SpmmProblem p;
  p.b = synth_dense(a.num_cols, o.n, o.seed * 0x9E3779B97F4A7C15ull + 1);
  p.c_in = synth_dense(a.num_rows, o.n, o.seed * 0x9E3779B97F4A7C15ull + 2);
  p.a = std::move(a);
  p.alpha = static_cast<float>(o.alpha);
  p.beta = static_cast<float>(o.beta);
  return p;
}

uint64_t stream_bytes(const sxt::ScheduledMatrix& sm) {
  uint64_t bytes = 24;
  for (uint32_t pe = 0; pe < sm.pe_count; ++pe) {
    bytes += 4ull * sm.pointers[pe].q.size() + 8ull * sm.streams[pe].size();
  }
  return bytes;
}

uint64_t footprint_bytes(const sxt::SpmmProblem& p,
                         const sxt::ScheduledMatrix* sm) {
  uint64_t bytes = 8ull * (p.a.num_rows + 1) + 8ull * p.a.nnz();
  bytes += 4ull * (p.b.values.size() + 2ull * p.c_in.values.size());
  if (sm) bytes += stream_bytes(*sm);
  return bytes;
}

json config_json(const sxt::AcceleratorConfig& a, const sxt::PerfParams& pp) {
  return json{{"pegs", a.peg_count},
              {"pes_per_peg", a.pes_per_peg},
              {"p", a.pe_count()},
              {"n0", a.n0},
              {"k0", a.k0},
              {"d", a.d},
              {"scratchpad_depth", a.scratchpad_depth},
              {"fifo_depth", a.fifo_depth},
              {"f_b", a.f_b},
              {"f_c", a.f_c},
              {"frequency_mhz", a.frequency_mhz},
              {"bandwidth_gb_s", pp.bandwidth_gb_s},
              {"tdp_watts", pp.tdp_watts}};
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw sxt::io_error(path + ": cannot open for writing");
  out << j.dump(2) << "\n";
  if (!out) throw sxt::io_error(path + ": write failed");
}

int cmd_gen(const Options& o) {
  if (o.gen.empty() || o.out.empty()) {
    throw sxt::config_error("gen requires --gen and --out");
  }
  sxt::CsrMatrix a = load_a(o);
  sxt::save_matrix_market(o.out, sxt::csr_to_coo(a));
  std::cout << "wrote " << o.out << ": " << a.num_rows << " x " << a.num_cols
            << ", " << a.nnz() << " non-zeros\n";
  return 0;
}

json schedule_report(const sxt::PartitionedA& pa,
                     const sxt::ScheduledMatrix& sm,
                     const sxt::ScheduleConfig& scfg) {
  json windows = json::array();
  uint64_t total_slots = 0, total_bubbles = 0;
  uint64_t total_col = 0, total_row = 0;
  for (uint32_t j = 0; j < sm.num_windows; ++j) {
    json makespan = json::array(), bubbles = json::array(),
         payloads = json::array(), col_cycles = json::array(),
         row_cycles = json::array();
    for (uint32_t pe = 0; pe < sm.pe_count; ++pe) {
      const auto& q = sm.pointers[pe].q;
      const uint64_t len = q[j + 1] - q[j];
      const uint64_t nnz = pa.bins[j][pe].size();
      const uint64_t col = sxt::in_order_colmajor_cycles(pa.bins[j][pe], scfg);
      const uint64_t row = sxt::in_order_rowmajor_cycles(pa.bins[j][pe], scfg);
      makespan.push_back(len);
      bubbles.push_back(len - nnz);
      payloads.push_back(nnz);
      col_cycles.push_back(col);
      row_cycles.push_back(row);
      total_slots += len;
      total_bubbles += len - nnz;
      total_col += col;
      total_row += row;
    }
    windows.push_back(json{{"window", j},
                           {"makespan", makespan},
                           {"bubbles", bubbles},
                           {"payloads", payloads},
                           {"in_order_colmajor", col_cycles},
                           {"in_order_rowmajor", row_cycles}});
  }
  return json{{"matrix",
               {{"rows", pa.num_rows},
                {"cols", pa.num_cols},
                {"nnz", pa.total_nonzeros()}}},
              {"config",
               {{"p", pa.config.p},
                {"n0", pa.config.n0},
                {"k0", pa.config.k0},
                {"d", scfg.d}}},
              {"windows", windows},
              {"totals",
               {{"slots", total_slots},
                {"payloads", pa.total_nonzeros()},
                {"bubbles", total_bubbles},
                {"in_order_colmajor", total_col},
                {"in_order_rowmajor", total_row}}}};
}

int cmd_schedule(const Options& o) {
  const sxt::Preset pre = build_preset(o);
  sxt::CsrMatrix a = load_a(o);
  const sxt::PartitionedA pa =
      sxt::partition_a(a, pre.accel.partition_config());
  const sxt::ScheduleConfig scfg{pre.accel.d};
  const sxt::ScheduledMatrix sm = sxt::schedule_matrix(pa, scfg);
  if (!o.out.empty()) sxt::write_stream_file(o.out, sm);

  const json rep = schedule_report(pa, sm, scfg);
  if (!o.report.empty()) write_json(o.report, rep);
  std::cout << "scheduled " << pa.total_nonzeros() << " non-zeros into "
            << rep["totals"]["slots"] << " slots (" << rep["totals"]["bubbles"]
            << " bubbles) across " << sm.pe_count << " PEs x "
            << sm.num_windows << " windows\n";
  if (!o.out.empty()) std::cout << "wrote " << o.out << "\n";
  return 0;
}

struct CheckResult {
  bool enabled = false;
  bool passed = true;
  double max_rel_error = 0.0;
};

CheckResult check_against_reference(const sxt::SpmmProblem& p,
                                    const sxt::DenseMatrix& got) {
  CheckResult cr;
  cr.enabled = true;
  const sxt::DenseMatrix want = sxt::reference_spmm(p);
  for (size_t i = 0; i < want.values.size(); ++i) {
    const double a = want.values[i], b = got.values[i];
    const double scale = std::max(std::abs(a), std::abs(b));
    const double err = std::abs(a - b);
    if (err > 1e-5 * scale + 1e-6) cr.passed = false;
    if (scale > 0) cr.max_rel_error = std::max(cr.max_rel_error, err / scale);
  }
  return cr;
}

json emulate_report(const sxt::SpmmProblem& p, const sxt::EmulationResult& res,
                    const sxt::Preset& pre, uint64_t footprint,
                    double launch_ms, const CheckResult& cr) {
  const uint64_t m = p.a.num_rows, k = p.a.num_cols, n = p.b.num_cols;
  const double seconds =
      res.totals.total() / (pre.perf.frequency_mhz * 1e6) + launch_ms * 1e-3;
  const double flops = sxt::flop_count(m, n, p.a.nnz());
  json tiles = json::array();
  for (const auto& tc : res.tiles) {
    json ws = json::array();
    for (const auto& wc : tc.windows) {
      ws.push_back(
          json{{"stream_b", wc.stream_b}, {"pe_compute", wc.pe_compute}});
    }
    tiles.push_back(json{
        {"init_c", tc.init_c}, {"comp_c", tc.comp_c}, {"windows", ws}});
  }
  json rep{
      {"problem",
       {{"m", m},
        {"k", k},
        {"n", n},
        {"nnz", p.a.nnz()},
        {"alpha", p.alpha},
        {"beta", p.beta},
        {"footprint_bytes", footprint}}},
      {"config", config_json(pre.accel, pre.perf)},
      {"cycles",
       {{"init_c", res.totals.init_c},
        {"stream_b", res.totals.stream_b},
        {"pe_compute", res.totals.pe_compute},
        {"comp_c", res.totals.comp_c},
        {"total", res.totals.total()}}},
      {"chain_latency", res.chain_latency},
      {"stall_estimate", res.stall_estimate},
      {"seconds", seconds},
      {"gflops", flops / seconds / 1e9},
      {"bw_util_pct",
       100.0 * sxt::bandwidth_utilization(m, k, n, p.a.nnz(), seconds,
                                          pre.perf)},
      {"flop_per_joule", sxt::energy_efficiency(flops, seconds, pre.perf)},
      {"tiles", tiles}};
  if (cr.enabled) {
    rep["check"] = json{{"passed", cr.passed},
                        {"max_rel_error", cr.max_rel_error}};
  }
  return rep;
}

int cmd_emulate(const Options& o) {
  const sxt::Preset pre = build_preset(o);
  sxt::CsrMatrix a = load_a(o);

  sxt::SpmmProblem p;
  if (!o.gen.empty()) {
    GenSpec g = parse_gen(o.gen);
    p = sxt::random_problem(g.m, g.k, o.n, g.density, g.seed.value_or(o.seed));
    if (o.set("--alpha")) p.alpha = static_cast<float>(o.alpha);
    if (o.set("--beta")) p.beta = static_cast<float>(o.beta);
  } else {
    p = assemble_problem(o, std::move(a));
  }

  sxt::ScheduledMatrix sm;
  if (!o.stream.empty()) {
    sm = sxt::read_stream_file(o.stream);
  } else {
    const sxt::PartitionedA pa =
        sxt::partition_a(p.a, pre.accel.partition_config());
    sm = sxt::schedule_matrix(pa, sxt::ScheduleConfig{pre.accel.d});
  }

  const sxt::EmulationResult res = sxt::run_spmm(p, sm, pre.accel);
  CheckResult cr;
  if (o.check) cr = check_against_reference(p, res.c_out);

  const json rep = emulate_report(p, res, pre, footprint_bytes(p, &sm),
                                  o.launch_ms, cr);
  if (!o.report.empty()) write_json(o.report, rep);
  if (!o.out.empty()) {
    if (o.out.size() > 4 && o.out.substr(o.out.size() - 4) == ".mtx") {
      sxt::save_matrix_market_array(o.out, res.c_out);
    } else {
      std::ofstream raw(o.out, std::ios::binary);
      if (!raw) throw sxt::io_error(o.out + ": cannot open for writing");
      raw.write(reinterpret_cast<const char*>(res.c_out.values.data()),
                static_cast<std::streamsize>(res.c_out.values.size() *
                                             sizeof(float)));
      if (!raw) throw sxt::io_error(o.out + ": write failed");
      write_json(o.out + ".json", rep);
    }
  }

  std::cout << "emulated C = alpha*A*B + beta*C: " << res.totals.total()
            << " cycles (init " << res.totals.init_c << ", streamB "
            << res.totals.stream_b << ", PE " << res.totals.pe_compute
            << ", compC " << res.totals.comp_c << "), "
            << rep["gflops"].get<double>() << " GFLOP/s\n";
  if (cr.enabled) {
    std::cout << "check vs reference: max relative error " << cr.max_rel_error
              << (cr.passed ? " (ok)" : " (FAILED)") << "\n";
    if (!cr.passed) {
      throw sxt::validation_error("emulated result disagrees with reference");
    }
  }
  return 0;
}

int cmd_validate(const Options& o) {
  if (o.stream.empty()) throw sxt::config_error("validate requires --stream");
  const sxt::ScheduledMatrix sm = sxt::read_stream_file(o.stream);
  sxt::CsrMatrix a = load_a(o);

  const sxt::PartitionConfig pcfg{sm.pe_count, 8, sm.k0};
  const uint32_t expect_windows =
      static_cast<uint32_t>(sxt::ceil_div(a.num_cols, sm.k0));
  if (sm.num_windows != expect_windows) {
    std::cerr << "stream has " << sm.num_windows << " windows but matrix needs "
              << expect_windows << "\n";
    return 1;
  }
  const sxt::PartitionedA pa = sxt::partition_a(a, pcfg);
  const sxt::ScheduleConfig scfg{sm.d};

  uint64_t issue_count = 0;
  for (uint32_t j = 0; j < sm.num_windows && issue_count < 32; ++j) {
    for (uint32_t pe = 0; pe < sm.pe_count && issue_count < 32; ++pe) {
      const auto& q = sm.pointers[pe].q;
      const std::span<const uint64_t> slice(
          sm.streams[pe].data() + q[j], static_cast<size_t>(q[j + 1] - q[j]));
      const sxt::ValidationReport rep =
          sxt::validate_slots(slice, pa.bins[j][pe], scfg);
      for (const std::string& issue : rep.issues) {
        std::cerr << "window " << j << " PE " << pe << ": " << issue << "\n";
        if (++issue_count >= 32) {
          std::cerr << "(further issues suppressed)\n";
          break;
        }
      }
    }
  }
  if (issue_count > 0) {
    std::cout << "stream INVALID for " << (o.input.empty() ? o.gen : o.input)
              << "\n";
    return 1;
  }
  std::cout << "stream valid: " << pa.total_nonzeros() << " non-zeros, D = "
            << sm.d << ", " << sm.pe_count << " PEs x " << sm.num_windows
            << " windows\n";
  return 0;
}

int cmd_model(const Options& o) {
  const sxt::Preset pre = build_preset(o);
  sxt::CsrMatrix a = load_a(o);
  const uint64_t m = a.num_rows, k = a.num_cols, nnz = a.nnz();
  const sxt::ModelReport r =
      sxt::model_cycles(m, k, o.n, nnz, pre.accel, pre.perf);
  const double seconds = r.seconds + o.launch_ms * 1e-3;

  json rep{{"problem", {{"m", m}, {"k", k}, {"n", o.n}, {"nnz", nnz}}},
           {"config", config_json(pre.accel, pre.perf)},
           {"cycles",
            {{"t_init_c", r.t_init_c},
             {"t_stream_b", r.t_stream_b},
             {"t_pe", r.t_pe},
             {"t_comp_c", r.t_comp_c},
             {"total", r.total_cycles},
             {"total_simplified", r.total_cycles_simplified}}},
           {"resources",
            {{"bram_blocks", sxt::resource_estimate(pre.accel).bram_blocks},
             {"uram_blocks", sxt::resource_estimate(pre.accel).uram_blocks}}},
           {"seconds", seconds},
           {"gflops", r.flops / seconds / 1e9},
           {"bw_util_pct",
            100.0 * sxt::bandwidth_utilization(m, k, o.n, nnz, seconds,
                                               pre.perf)},
           {"flop_per_joule",
            sxt::energy_efficiency(r.flops, seconds, pre.perf)}};
  if (!o.out.empty()) {
    write_json(o.out, rep);
  } else {
    std::cout << rep.dump(2) << "\n";
  }
  return 0;
}

int cmd_bench(const Options& o) {
  std::string corpus = o.corpus;
  if (corpus.empty()) {
    if (const char* env = std::getenv("SXT_CORPUS_DIR")) corpus = env;
  }
  if (corpus.empty()) {
    throw sxt::config_error("bench requires --corpus or SXT_CORPUS_DIR");
  }
  if (!fs::is_directory(corpus)) {
    throw sxt::io_error(corpus + ": not a directory");
  }
  std::vector<uint32_t> n_values = o.n_list;
  if (n_values.empty()) n_values = {8, 16, 32, 64, 128, 256, 512};

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.path().extension() == ".mtx") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::ostream* out = &std::cout;
  std::ofstream csv_file;
  if (!o.csv.empty()) {
    csv_file.open(o.csv);
    if (!csv_file) throw sxt::io_error(o.csv + ": cannot open for writing");
    out = &csv_file;
  }
  *out << "matrix,rows,cols,nnz,n,model_cycles,emulated_cycles,gflops,"
          "bw_util_pct,flop_per_joule\n";

  const sxt::Preset pre = build_preset(o);
  size_t rows_written = 0;
  for (const fs::path& file : files) {
    try {
      const sxt::CooMatrix coo =
          sxt::load_matrix_market(file, o.expand_symmetric);
      const sxt::CsrMatrix a = sxt::coo_to_csr(coo);
      const sxt::PartitionedA pa =
          sxt::partition_a(a, pre.accel.partition_config());
      const sxt::ScheduledMatrix sm =
          sxt::schedule_matrix(pa, sxt::ScheduleConfig{pre.accel.d});
      for (uint32_t n : n_values) {
        Options on = o;
        on.n = n;
        sxt::SpmmProblem p = assemble_problem(on, a);
        const sxt::EmulationResult res = sxt::run_spmm(p, sm, pre.accel);
        const sxt::ModelReport mr = sxt::model_cycles(
            a.num_rows, a.num_cols, n, a.nnz(), pre.accel, pre.perf);
        const double seconds =
            res.totals.total() / (pre.perf.frequency_mhz * 1e6) +
            o.launch_ms * 1e-3;
        const double flops = sxt::flop_count(a.num_rows, n, a.nnz());
        char line[512];
        std::snprintf(line, sizeof(line),
                      "%s,%u,%u,%llu,%u,%.1f,%llu,%.6g,%.6g,%.6g\n",
                      file.filename().string().c_str(), a.num_rows, a.num_cols,
                      static_cast<unsigned long long>(a.nnz()), n,
                      mr.total_cycles,
                      static_cast<unsigned long long>(res.totals.total()),
                      flops / seconds / 1e9,
                      100.0 * sxt::bandwidth_utilization(a.num_rows, a.num_cols,
                                                         n, a.nnz(), seconds,
                                                         pre.perf),
                      sxt::energy_efficiency(flops, seconds, pre.perf));
        *out << line;
        ++rows_written;
      }
    } catch (const std::exception& e) {
      std::cerr << "skipping " << file << ": " << e.what() << "\n";
    }
  }
  if (!o.csv.empty()) {
    std::cout << "wrote " << rows_written << " rows to " << o.csv << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming SpMM accelerator toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file (flag names as keys)");

  Options gen_o, sched_o, emu_o, val_o, model_o, bench_o;

  CLI::App* gen = app.add_subcommand("gen", "Write a random sparse .mtx");
  gen->add_option("--gen", gen_o.gen, "Spec MxKxDENSITY[:seed]")->required();
  gen->add_option("--seed", gen_o.seed, "Seed when the spec omits one");
  gen->add_option("--out,-o", gen_o.out, "Output .mtx path")->required();
  gen_o.sub = gen;

  CLI::App* sched = app.add_subcommand(
      "schedule", "Partition A and emit an out-of-order stream file");
  add_input_options(sched, sched_o);
  add_knob_options(sched, sched_o);
  sched->add_option("--out,-o", sched_o.out, "Stream file to write");
  sched->add_option("--report", sched_o.report, "Schedule report JSON path");
  sched_o.sub = sched;

  CLI::App* emu = app.add_subcommand(
      "emulate", "Run the functional + cycle-counting emulator");
  add_input_options(emu, emu_o);
  add_knob_options(emu, emu_o);
  emu->add_option("--n", emu_o.n, "B/C column count");
  emu->add_option("--alpha", emu_o.alpha, "Scale on A*B");
  emu->add_option("--beta", emu_o.beta, "Scale on C_in");
  emu->add_option("--stream", emu_o.stream,
                  "Scheduled stream file (default: schedule in memory)");
  emu->add_option("--out,-o", emu_o.out,
                  "C output path (.mtx for array format, else raw fp32)");
  emu->add_option("--report", emu_o.report, "Cycle report JSON path");
  emu->add_flag("--check", emu_o.check, "Compare against the reference SpMM");
  emu_o.sub = emu;

  CLI::App* val = app.add_subcommand(
      "validate", "Check a stream file against its source matrix");
  add_input_options(val, val_o);
  val->add_option("--stream", val_o.stream, "Stream file")->required();
  val_o.sub = val;

  CLI::App* model =
      app.add_subcommand("model", "Analytical cycle/resource model");
  add_input_options(model, model_o);
  add_knob_options(model, model_o);
  model->add_option("--n", model_o.n, "B/C column count");
  model->add_option("--out,-o", model_o.out, "Report JSON path (default stdout)");
  model_o.sub = model;

  CLI::App* bench = app.add_subcommand(
      "bench", "Sweep a corpus directory of .mtx files to CSV");
  bench->add_option("--corpus", bench_o.corpus,
                    "Directory of .mtx files (default $SXT_CORPUS_DIR)");
  bench->add_option("--n", bench_o.n_list,
                    "N values (default 8 16 32 64 128 256 512)");
  bench->add_option("--csv", bench_o.csv, "CSV output path (default stdout)");
  bench->add_option("--alpha", bench_o.alpha, "Scale on A*B");
  bench->add_option("--beta", bench_o.beta, "Scale on C_in");
  bench->add_option("--seed", bench_o.seed, "Seed for generated B/C");
  bench->add_flag("--expand-symmetric,!--no-expand-symmetric",
                  bench_o.expand_symmetric, "Mirror symmetric .mtx files");
  add_knob_options(bench, bench_o);
  bench_o.sub = bench;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) return cmd_gen(gen_o);
    if (*sched) return cmd_schedule(sched_o);
    if (*emu) return cmd_emulate(emu_o);
    if (*val) return cmd_validate(val_o);
    if (*model) return cmd_model(model_o);
    if (*bench) return cmd_bench(bench_o);
  } catch (const sxt::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const sxt::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const sxt::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const sxt::io_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
