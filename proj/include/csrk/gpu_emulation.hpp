#pragma once

#include <span>
#include <string>
#include <vector>

#include "csrk/csrk_matrix.hpp"

namespace csrk {

/// CUDA-style thread-block extents.
struct BlockDims {
  index_t x = 1;
  index_t y = 1;
  index_t z = 1;

  index_t threads() const { return x * y * z; }
  std::string to_string() const;
  friend bool operator==(const BlockDims &, const BlockDims &) = default;
};

inline constexpr index_t kMaxThreadsPerBlock = 1024;

/// Throws `Error` unless every extent is >= 1 and x*y*z <= 1024.
void validate_block_dims(const BlockDims &dims);
/// Parses "x,y[,z]" (also accepts 'x' as the separator, e.g. "8x12").
BlockDims parse_block_dims(const std::string &text);

/// Where one matrix row was computed in the emulated launch.
struct RowAssignment {
  index_t row = 0;
  index_t block = 0;
  index_t lane_z = 0;
  index_t lane_y = 0;
  /// Lanes [lane_x_begin, lane_x_end) that touched the row's nonzeros.
  index_t lane_x_begin = 0;
  index_t lane_x_end = 0;
  /// Grid-stride iterations taken before reaching this row: over super-rows,
  /// then over rows inside the super-row.
  index_t super_row_pass = 0;
  index_t row_pass = 0;
  /// Levels of the pairwise reduction over the block's temp lanes (0 = serial).
  index_t reduction_depth = 0;
};

struct EmulationTrace {
  BlockDims dims;
  index_t grid_blocks = 0;
  std::vector<RowAssignment> rows;
};

/// True iff every row in [0, n_rows) appears in exactly one record.
bool trace_is_partition(const EmulationTrace &trace, index_t n_rows);

struct EmulationResult {
  std::vector<value_t> y;
  EmulationTrace trace;
};

/// GPUSpMV-3 mapping: block b owns super-super-row b, super-rows stride over
/// the y lanes, rows over the x lanes, each row's inner product is serial.
/// Requires dims.z == 1.
EmulationResult emulate_gpu_spmv3(const CsrKMatrix &m, std::span<const value_t> x,
                                  const BlockDims &dims);

/// GPUSpMV-3.5 mapping: super-rows stride over z, rows over y, and the
/// nonzeros of a row over x into a per-row temp[dims.x], which is then summed
/// by `tree_reduce`.
EmulationResult emulate_gpu_spmv35(const CsrKMatrix &m, std::span<const value_t> x,
                                   const BlockDims &dims);

/// Fixed pairwise reduction: while more than one lane is active, lane i adds
/// lane i + ceil(active/2). Returns the number of levels.
index_t tree_reduce(std::span<value_t> lanes);

} // namespace csrk
