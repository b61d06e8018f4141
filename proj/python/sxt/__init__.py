"""Streaming SpMM accelerator toolkit.

Partition a sparse matrix into per-PE bins, schedule its non-zeros into
RAW-hazard-free II=1 instruction streams, run them through the engine
emulator, and evaluate the analytical performance model.
"""

from sxt._core import (  # noqa: F401
    AcceleratorConfig,
    CapacityError,
    ConfigError,
    CooMatrix,
    CsrMatrix,
    EmulationResult,
    IoError,
    ModelReport,
    PartitionConfig,
    PartitionedA,
    PerfParams,
    Preset,
    ScheduleConfig,
    ScheduledMatrix,
    ScheduledStream,
    SpmmProblem,
    ValidationError,
    ValidationReport,
    bandwidth_utilization,
    coo_to_csr,
    decode_nonzero,
    encode_nonzero,
    energy_efficiency,
    flop_count,
    in_order_colmajor_cycles,
    in_order_rowmajor_cycles,
    load_matrix_market,
    model_cycles,
    partition_a,
    partition_b_window,
    preset,
    random_problem,
    read_stream_file,
    reference_spmm,
    resource_estimate,
    roofline_gflops,
    run_spmm,
    schedule_matrix,
    schedule_window,
    validate_schedule,
    write_stream_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
