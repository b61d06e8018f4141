#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sxt/emulator.hpp"
#include "sxt/errors.hpp"
#include "sxt/matrix.hpp"
#include "sxt/mtx_io.hpp"
#include "sxt/partition.hpp"
#include "sxt/perfmodel.hpp"
#include "sxt/presets.hpp"
#include "sxt/schedule.hpp"
#include "sxt/stream_io.hpp"

namespace py = pybind11;

namespace {

sxt::DenseMatrix dense_from_numpy(
    const py::array_t<float, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw sxt::config_error("expected a 2-D float array");
  sxt::DenseMatrix m;
  m.num_rows = static_cast<uint32_t>(arr.shape(0));
  m.num_cols = static_cast<uint32_t>(arr.shape(1));
  m.values.assign(arr.data(), arr.data() + arr.size());
  return m;
}

py::array_t<float> dense_to_numpy(const sxt::DenseMatrix& m) {
  py::array_t<float> arr({static_cast<py::ssize_t>(m.num_rows),
                          static_cast<py::ssize_t>(m.num_cols)});
  std::copy(m.values.begin(), m.values.end(), arr.mutable_data());
  return arr;
}

std::vector<sxt::LocalNonZero> bin_from_tuples(
    const std::vector<std::tuple<uint32_t, uint32_t, float>>& entries) {
  std::vector<sxt::LocalNonZero> bin;
  bin.reserve(entries.size());
  for (const auto& [r, c, v] : entries) bin.push_back({r, c, v});
  return bin;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Streaming SpMM accelerator toolkit: partitioner, out-of-order "
            "non-zero scheduler, engine emulator, and performance model";

  py::register_exception<sxt::io_error>(m, "IoError");
  py::register_exception<sxt::config_error>(m, "ConfigError");
  py::register_exception<sxt::capacity_error>(m, "CapacityError");
  py::register_exception<sxt::validation_error>(m, "ValidationError");

  py::class_<sxt::CooMatrix>(m, "CooMatrix")
      .def_readonly("num_rows", &sxt::CooMatrix::num_rows)
      .def_readonly("num_cols", &sxt::CooMatrix::num_cols)
      .def_property_readonly("entries",
                             [](const sxt::CooMatrix& c) {
                               std::vector<std::tuple<uint32_t, uint32_t,
                                                      float>> out;
                               out.reserve(c.entries.size());
                               for (const auto& e : c.entries) {
                                 out.emplace_back(e.row, e.col, e.value);
                               }
                               return out;
                             })
      .def("__len__",
           [](const sxt::CooMatrix& c) { return c.entries.size(); });

  py::class_<sxt::CsrMatrix>(m, "CsrMatrix")
      .def_readonly("num_rows", &sxt::CsrMatrix::num_rows)
      .def_readonly("num_cols", &sxt::CsrMatrix::num_cols)
      .def_readonly("row_offsets", &sxt::CsrMatrix::row_offsets)
      .def_readonly("col_indices", &sxt::CsrMatrix::col_indices)
      .def_readonly("values", &sxt::CsrMatrix::values)
      .def_property_readonly("nnz", &sxt::CsrMatrix::nnz);

  py::class_<sxt::SpmmProblem>(m, "SpmmProblem")
      .def_readonly("a", &sxt::SpmmProblem::a)
      .def_property_readonly(
          "b", [](const sxt::SpmmProblem& p) { return dense_to_numpy(p.b); })
      .def_property_readonly("c_in", [](const sxt::SpmmProblem& p) {
        return dense_to_numpy(p.c_in);
      })
      .def_readwrite("alpha", &sxt::SpmmProblem::alpha)
      .def_readwrite("beta", &sxt::SpmmProblem::beta);

  py::class_<sxt::PartitionConfig>(m, "PartitionConfig")
      .def(py::init([](uint32_t p, uint32_t n0, uint32_t k0) {
             sxt::PartitionConfig cfg{p, n0, k0};
             cfg.validate();
             return cfg;
           }),
           py::arg("p") = 64, py::arg("n0") = 8, py::arg("k0") = 4096)
      .def_readonly("p", &sxt::PartitionConfig::p)
      .def_readonly("n0", &sxt::PartitionConfig::n0)
      .def_readonly("k0", &sxt::PartitionConfig::k0);

  py::class_<sxt::PartitionedA>(m, "PartitionedA")
      .def_readonly("num_rows", &sxt::PartitionedA::num_rows)
      .def_readonly("num_cols", &sxt::PartitionedA::num_cols)
      .def_readonly("num_windows", &sxt::PartitionedA::num_windows)
      .def_property_readonly("total_nonzeros",
                             &sxt::PartitionedA::total_nonzeros)
      .def("bin", [](const sxt::PartitionedA& pa, uint32_t window,
                     uint32_t pe) {
        std::vector<std::tuple<uint32_t, uint32_t, float>> out;
        for (const auto& nz : pa.bins.at(window).at(pe)) {
          out.emplace_back(nz.local_row, nz.local_col, nz.value);
        }
        return out;
      });

  py::class_<sxt::ScheduleConfig>(m, "ScheduleConfig")
      .def(py::init([](uint32_t d) {
             sxt::ScheduleConfig cfg{d};
             cfg.validate();
             return cfg;
           }),
           py::arg("d") = 15)
      .def_readonly("d", &sxt::ScheduleConfig::d);

  py::class_<sxt::ScheduledStream>(m, "ScheduledStream")
      .def_readonly("slots", &sxt::ScheduledStream::slots)
      .def_readonly("payload_count", &sxt::ScheduledStream::payload_count)
      .def_property_readonly("makespan", &sxt::ScheduledStream::makespan)
      .def_property_readonly("bubble_count",
                             &sxt::ScheduledStream::bubble_count);

  py::class_<sxt::ScheduledMatrix>(m, "ScheduledMatrix")
      .def_readonly("pe_count", &sxt::ScheduledMatrix::pe_count)
      .def_readonly("num_windows", &sxt::ScheduledMatrix::num_windows)
      .def_readonly("k0", &sxt::ScheduledMatrix::k0)
      .def_readonly("d", &sxt::ScheduledMatrix::d)
      .def("stream",
           [](const sxt::ScheduledMatrix& sm, uint32_t pe) {
             return sm.streams.at(pe);
           })
      .def("pointers", [](const sxt::ScheduledMatrix& sm, uint32_t pe) {
        return sm.pointers.at(pe).q;
      });

  py::class_<sxt::AcceleratorConfig>(m, "AcceleratorConfig")
      .def(py::init<>())
      .def_readwrite("peg_count", &sxt::AcceleratorConfig::peg_count)
      .def_readwrite("pes_per_peg", &sxt::AcceleratorConfig::pes_per_peg)
      .def_readwrite("n0", &sxt::AcceleratorConfig::n0)
      .def_readwrite("k0", &sxt::AcceleratorConfig::k0)
      .def_readwrite("scratchpad_depth",
                     &sxt::AcceleratorConfig::scratchpad_depth)
      .def_readwrite("fifo_depth", &sxt::AcceleratorConfig::fifo_depth)
      .def_readwrite("d", &sxt::AcceleratorConfig::d)
      .def_readwrite("f_b", &sxt::AcceleratorConfig::f_b)
      .def_readwrite("f_c", &sxt::AcceleratorConfig::f_c)
      .def_readwrite("frequency_mhz", &sxt::AcceleratorConfig::frequency_mhz)
      .def_property_readonly("pe_count", &sxt::AcceleratorConfig::pe_count);

  py::class_<sxt::PerfParams>(m, "PerfParams")
      .def(py::init<>())
      .def_readwrite("f_b", &sxt::PerfParams::f_b)
      .def_readwrite("f_c", &sxt::PerfParams::f_c)
      .def_readwrite("frequency_mhz", &sxt::PerfParams::frequency_mhz)
      .def_readwrite("bandwidth_gb_s", &sxt::PerfParams::bandwidth_gb_s)
      .def_readwrite("tdp_watts", &sxt::PerfParams::tdp_watts);

  py::class_<sxt::Preset>(m, "Preset")
      .def_readwrite("accel", &sxt::Preset::accel)
      .def_readwrite("perf", &sxt::Preset::perf);

  py::class_<sxt::EmulationResult>(m, "EmulationResult")
      .def_property_readonly(
          "c_out",
          [](const sxt::EmulationResult& r) { return dense_to_numpy(r.c_out); })
      .def_property_readonly("cycles",
                             [](const sxt::EmulationResult& r) {
                               py::dict d;
                               d["init_c"] = r.totals.init_c;
                               d["stream_b"] = r.totals.stream_b;
                               d["pe_compute"] = r.totals.pe_compute;
                               d["comp_c"] = r.totals.comp_c;
                               d["total"] = r.totals.total();
                               return d;
                             })
      .def_readonly("chain_latency", &sxt::EmulationResult::chain_latency)
      .def_readonly("stall_estimate", &sxt::EmulationResult::stall_estimate);

  py::class_<sxt::ModelReport>(m, "ModelReport")
      .def_readonly("t_init_c", &sxt::ModelReport::t_init_c)
      .def_readonly("t_stream_b", &sxt::ModelReport::t_stream_b)
      .def_readonly("t_pe", &sxt::ModelReport::t_pe)
      .def_readonly("t_comp_c", &sxt::ModelReport::t_comp_c)
      .def_readonly("total_cycles", &sxt::ModelReport::total_cycles)
      .def_readonly("total_cycles_simplified",
                    &sxt::ModelReport::total_cycles_simplified)
      .def_readonly("seconds", &sxt::ModelReport::seconds)
      .def_readonly("flops", &sxt::ModelReport::flops)
      .def_readonly("throughput_gflops", &sxt::ModelReport::throughput_gflops)
      .def_readonly("bandwidth_utilization",
                    &sxt::ModelReport::bandwidth_utilization)
      .def_readonly("flop_per_joule", &sxt::ModelReport::flop_per_joule);

  py::class_<sxt::ValidationReport>(m, "ValidationReport")
      .def_readonly("ok", &sxt::ValidationReport::ok)
      .def_readonly("makespan", &sxt::ValidationReport::makespan)
      .def_readonly("payload_count", &sxt::ValidationReport::payload_count)
      .def_readonly("bubble_count", &sxt::ValidationReport::bubble_count)
      .def_readonly("issues", &sxt::ValidationReport::issues);

  m.def("load_matrix_market", &sxt::load_matrix_market, py::arg("path"),
        py::arg("expand_symmetric") = true);
  m.def("coo_to_csr", &sxt::coo_to_csr);
  m.def(
      "reference_spmm",
      [](const sxt::CsrMatrix& a, const py::array_t<float>& b,
         const py::array_t<float>& c_in, float alpha, float beta) {
        sxt::SpmmProblem p;
        p.a = a;
        p.b = dense_from_numpy(b);
        p.c_in = dense_from_numpy(c_in);
        p.alpha = alpha;
        p.beta = beta;
        return dense_to_numpy(sxt::reference_spmm(p));
      },
      py::arg("a"), py::arg("b"), py::arg("c_in"), py::arg("alpha") = 1.0f,
      py::arg("beta") = 0.0f);
  m.def("random_problem", &sxt::random_problem, py::arg("m"), py::arg("k"),
        py::arg("n"), py::arg("density"), py::arg("seed"));

  m.def("partition_a", &sxt::partition_a, py::arg("a"), py::arg("config"));
  m.def(
      "partition_b_window",
      [](const py::array_t<float>& b, uint32_t window, uint32_t tile,
         const sxt::PartitionConfig& cfg) {
        return dense_to_numpy(
            sxt::partition_b_window(dense_from_numpy(b), window, tile, cfg));
      },
      py::arg("b"), py::arg("window"), py::arg("tile"), py::arg("config"));

  m.def("encode_nonzero",
        [](uint32_t row, uint32_t col, float value) {
          return sxt::encode_nonzero({row, col, value});
        },
        py::arg("local_row"), py::arg("local_col"), py::arg("value"));
  m.def("decode_nonzero", [](uint64_t word) {
    const sxt::DecodedSlot s = sxt::decode_nonzero(word);
    py::dict d;
    d["bubble"] = s.bubble;
    d["row"] = s.row;
    d["col"] = s.col;
    d["value_bits"] = s.value_bits;
    d["value"] = s.value();
    return d;
  });
  m.def(
      "schedule_window",
      [](const std::vector<std::tuple<uint32_t, uint32_t, float>>& bin,
         const sxt::ScheduleConfig& cfg) {
        return sxt::schedule_window(bin_from_tuples(bin), cfg);
      },
      py::arg("bin"), py::arg("config"));
  m.def(
      "in_order_colmajor_cycles",
      [](const std::vector<std::tuple<uint32_t, uint32_t, float>>& bin,
         const sxt::ScheduleConfig& cfg) {
        return sxt::in_order_colmajor_cycles(bin_from_tuples(bin), cfg);
      },
      py::arg("bin"), py::arg("config"));
  m.def(
      "in_order_rowmajor_cycles",
      [](const std::vector<std::tuple<uint32_t, uint32_t, float>>& bin,
         const sxt::ScheduleConfig& cfg) {
        return sxt::in_order_rowmajor_cycles(bin_from_tuples(bin), cfg);
      },
      py::arg("bin"), py::arg("config"));
  m.def("schedule_matrix", &sxt::schedule_matrix, py::arg("partitioned"),
        py::arg("config"));
  m.def(
      "validate_schedule",
      [](const sxt::ScheduledStream& stream,
         const std::vector<std::tuple<uint32_t, uint32_t, float>>& bin,
         const sxt::ScheduleConfig& cfg) {
        return sxt::validate_schedule(stream, bin_from_tuples(bin), cfg);
      },
      py::arg("stream"), py::arg("bin"), py::arg("config"));

  m.def("write_stream_file", &sxt::write_stream_file, py::arg("path"),
        py::arg("scheduled"));
  m.def("read_stream_file", &sxt::read_stream_file, py::arg("path"));

  m.def(
      "run_spmm",
      [](const sxt::CsrMatrix& a, const py::array_t<float>& b,
         const py::array_t<float>& c_in, float alpha, float beta,
         const sxt::ScheduledMatrix& sm, const sxt::AcceleratorConfig& cfg) {
        sxt::SpmmProblem p;
        p.a = a;
        p.b = dense_from_numpy(b);
        p.c_in = dense_from_numpy(c_in);
        p.alpha = alpha;
        p.beta = beta;
        return sxt::run_spmm(p, sm, cfg);
      },
      py::arg("a"), py::arg("b"), py::arg("c_in"), py::arg("alpha"),
      py::arg("beta"), py::arg("scheduled"), py::arg("config"));

  m.def("model_cycles", &sxt::model_cycles, py::arg("m"), py::arg("k"),
        py::arg("n"), py::arg("nnz"), py::arg("config"), py::arg("params"));
  m.def("resource_estimate", [](const sxt::AcceleratorConfig& cfg) {
    const sxt::ResourceEstimate e = sxt::resource_estimate(cfg);
    return py::make_tuple(e.bram_blocks, e.uram_blocks);
  });
  m.def("flop_count", &sxt::flop_count, py::arg("m"), py::arg("n"),
        py::arg("nnz"));
  m.def("bandwidth_utilization", &sxt::bandwidth_utilization, py::arg("m"),
        py::arg("k"), py::arg("n"), py::arg("nnz"), py::arg("exec_seconds"),
        py::arg("params"));
  m.def("energy_efficiency", &sxt::energy_efficiency, py::arg("flop"),
        py::arg("exec_seconds"), py::arg("params"));
  m.def("roofline_gflops", &sxt::roofline_gflops, py::arg("config"),
        py::arg("params"));
  m.def("preset", [](const std::string& name) {
    auto p = sxt::preset_by_name(name);
    if (!p) throw sxt::config_error("unknown preset '" + name + "'");
    return *p;
  });
}
