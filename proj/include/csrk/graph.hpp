#pragma once

#include <span>
#include <vector>

#include "csrk/csr_matrix.hpp"

namespace csrk {

/// Undirected weighted graph in CSR adjacency form.
///
/// `node_weight` counts the fine matrix rows aggregated into a node (1 at
/// level 0); `edge_weight` is parallel to `adj` and counts collapsed fine
/// edges. Adjacency is symmetric, sorted per node, and free of self-loops.
struct AdjacencyGraph {
  std::vector<index_t> xadj{0};
  std::vector<index_t> adj;
  std::vector<index_t> edge_weight;
  std::vector<index_t> node_weight;

  index_t n_nodes() const { return static_cast<index_t>(node_weight.size()); }
  index_t degree(index_t v) const { return xadj[v + 1] - xadj[v]; }
  std::span<const index_t> neighbors(index_t v) const { return {adj.data() + xadj[v], degree(v)}; }
  std::span<const index_t> edge_weights(index_t v) const {
    return {edge_weight.data() + xadj[v], degree(v)};
  }
  std::size_t total_weight() const;

  friend bool operator==(const AdjacencyGraph &, const AdjacencyGraph &) = default;
};

/// Throws `Error` if any structural invariant of the graph is broken.
void validate_graph(const AdjacencyGraph &g);

/// Graph of pattern(A + Aᵀ) without the diagonal, unit weights.
AdjacencyGraph build_graph(const CsrMatrix &a);

/// Subgraph induced by `nodes` (local ids follow the order of `nodes`).
AdjacencyGraph induced_subgraph(const AdjacencyGraph &g, std::span<const index_t> nodes);

/// Partition of fine nodes into coarse nodes.
struct CoarseningMap {
  std::vector<index_t> fine_to_coarse;
  /// CSR-style member lists: members of coarse node c are
  /// `members[member_ptr[c] .. member_ptr[c+1])`, ascending fine ids.
  std::vector<index_t> member_ptr{0};
  std::vector<index_t> members;

  index_t n_coarse() const { return static_cast<index_t>(member_ptr.size() - 1); }
  std::span<const index_t> members_of(index_t c) const {
    return {members.data() + member_ptr[c], member_ptr[c + 1] - member_ptr[c]};
  }

  static CoarseningMap identity(index_t n);
  /// Builds member lists from a fine->coarse assignment with coarse ids in [0, n_coarse).
  static CoarseningMap from_assignment(std::vector<index_t> fine_to_coarse, index_t n_coarse);
  /// Map from this map's fine nodes to `next`'s coarse nodes.
  CoarseningMap compose(const CoarseningMap &next) const;
};

/// Contracts `g` along a fine->coarse assignment, summing node and edge weights.
AdjacencyGraph contract(const AdjacencyGraph &g, const CoarseningMap &map);

/// One heavy-edge matching round. Nodes are visited by ascending degree
/// (ties by index); each unmatched node pairs with its unmatched neighbor of
/// largest edge weight (ties by lowest index) provided the merged weight does
/// not exceed `max_weight`.
CoarseningMap heavy_edge_matching(const AdjacencyGraph &g, index_t max_weight);

struct CoarsenResult {
  AdjacencyGraph graph;
  CoarseningMap map;
  int rounds = 0;
};

/// Repeats matching rounds until the mean node weight reaches `target_weight`
/// or a round shrinks the node count by less than 5%.
CoarsenResult coarsen(const AdjacencyGraph &g, index_t target_weight);

} // namespace csrk
