"""CSR-k sparse matrices: Band-k reordering, CPU kernels, GPU emulation and tuning."""

from ._core import (
    CsrkError,
    CsrKMatrix,
    CsrMatrix,
    DimensionError,
    MatrixStats,
    ParseError,
    band_k,
    classify,
    compute_stats,
    cpu_candidate_srs,
    emulate_gpu3,
    emulate_gpu35,
    fit_log_model,
    gpu_candidate_grid,
    pack,
    read_matrix_market,
    reorder_and_pack,
    run_benchmark,
    spmv_csr2,
    spmv_csr3,
    spmv_ref,
    tune_cpu,
    tune_gpu,
    write_matrix_market,
)

__all__ = [name for name in dir() if not name.startswith("_")]
