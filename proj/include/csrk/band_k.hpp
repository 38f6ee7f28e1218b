#pragma once

#include <span>
#include <vector>

#include "csrk/csr_matrix.hpp"
#include "csrk/csrk_matrix.hpp"
#include "csrk/graph.hpp"
#include "csrk/permutation.hpp"

namespace csrk {

struct BandKResult {
  Permutation perm;
  /// [0]: rows per super-row; [1] (k = 3): super-rows per super-super-row.
  std::vector<std::vector<index_t>> level_group_sizes;
};

/// Band-k multilevel ordering.
///
/// Coarsens the symmetrized pattern graph k-1 times (level 1 aims at
/// `level_targets[0]` rows per node, level 2 at `level_targets[1]` level-1
/// nodes per node), orders the coarsest graph with
/// `weighted_bandwidth_order`, then expands level by level, laying out the
/// members of each coarse node contiguously in the order given by
/// `weighted_bandwidth_order` on their induced subgraph. Each member block is
/// flipped, if that shortens its links, so that members adjacent to already
/// placed nodes come first.
///
/// Level-1 coarse nodes become super-rows, level-2 nodes super-super-rows.
/// Group sizes follow the coarse nodes and are only approximately the targets.
BandKResult band_k(const CsrMatrix &a, int k, std::span<const index_t> level_targets);

/// band_k followed by pack_csrk.
CsrKMatrix reorder_and_pack(const CsrMatrix &a, int k, std::span<const index_t> level_targets);

} // namespace csrk
