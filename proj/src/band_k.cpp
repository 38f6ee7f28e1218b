#include "csrk/band_k.hpp"

#include <algorithm>
#include <string>

#include "csrk/ordering.hpp"

namespace csrk {

namespace {

struct LinkCost {
  std::size_t max = 0;
  std::size_t sum = 0;
  bool operator<(const LinkCost &o) const { return max != o.max ? max < o.max : sum < o.sum; }
};

// Cost of the links from `block` (laid out from `offset`, in row units) back to
// nodes that are already placed.
LinkCost back_link_cost(const AdjacencyGraph &g, std::span<const index_t> block, std::size_t offset,
                        const std::vector<std::size_t> &position, const std::vector<char> &placed) {
  LinkCost cost;
  std::size_t at = offset;
  for (auto v : block) {
    for (auto u : g.neighbors(v))
      if (placed[u]) {
        const std::size_t d = at - position[u];
        cost.max = std::max(cost.max, d);
        cost.sum += d;
      }
    at += g.node_weight[v];
  }
  return cost;
}

// Expands a sequence of coarse nodes into the sequence of their fine members.
std::vector<index_t> expand(const AdjacencyGraph &fine, const CoarseningMap &map,
                            std::span<const index_t> coarse_sequence,
                            std::vector<index_t> &group_sizes) {
  std::vector<index_t> out;
  out.reserve(fine.n_nodes());
  std::vector<std::size_t> position(fine.n_nodes(), 0);
  std::vector<char> placed(fine.n_nodes(), 0);
  std::vector<index_t> block;
  std::size_t offset = 0;
  group_sizes.clear();
  for (auto c : coarse_sequence) {
    auto members = map.members_of(c);
    block.clear();
    if (members.size() == 1) {
      block.push_back(members[0]);
    } else {
      const AdjacencyGraph sub = induced_subgraph(fine, members);
      const Permutation local = weighted_bandwidth_order(sub);
      for (auto l : local.inverse())
        block.push_back(members[l]);
      const auto fwd_cost = back_link_cost(fine, block, offset, position, placed);
      std::reverse(block.begin(), block.end());
      const auto rev_cost = back_link_cost(fine, block, offset, position, placed);
      if (!(rev_cost < fwd_cost))
        std::reverse(block.begin(), block.end());
    }
    for (auto v : block) {
      position[v] = offset;
      placed[v] = 1;
      offset += fine.node_weight[v];
      out.push_back(v);
    }
    group_sizes.push_back(static_cast<index_t>(members.size()));
  }
  return out;
}

} // namespace

BandKResult band_k(const CsrMatrix &a, int k, std::span<const index_t> level_targets) {
  if (k != 2 && k != 3)
    throw Error("band_k: k must be 2 or 3, got " + std::to_string(k));
  if (level_targets.size() != static_cast<std::size_t>(k - 1))
    throw Error("band_k: expected " + std::to_string(k - 1) + " level targets, got " +
                std::to_string(level_targets.size()));
  if (a.n_rows() == 0)
    throw Error("band_k: empty matrix");
  for (auto t : level_targets)
    if (t == 0)
      throw Error("band_k: level targets must be at least 1");

  // graphs[0] is the row graph; graphs[i] is level i; maps[i] takes graphs[i] to graphs[i+1].
  std::vector<AdjacencyGraph> graphs;
  std::vector<CoarseningMap> maps;
  graphs.push_back(build_graph(a));

  auto level1 = coarsen(graphs[0], level_targets[0]);
  graphs.push_back(std::move(level1.graph));
  maps.push_back(std::move(level1.map));

  if (k == 3) {
    // Level-2 targets count super-rows, so coarsen with unit weights and
    // re-contract to carry row counts for the ordering.
    AdjacencyGraph units = graphs[1];
    std::fill(units.node_weight.begin(), units.node_weight.end(), 1);
    auto level2 = coarsen(units, level_targets[1]);
    graphs.push_back(contract(graphs[1], level2.map));
    maps.push_back(std::move(level2.map));
  }

  std::vector<index_t> sequence = weighted_bandwidth_order(graphs.back()).inverse();
  BandKResult result;
  result.level_group_sizes.resize(static_cast<std::size_t>(k - 1));
  for (std::size_t level = graphs.size() - 1; level > 0; --level)
    sequence = expand(graphs[level - 1], maps[level - 1], sequence,
                      result.level_group_sizes[level - 1]);

  result.perm = Permutation::from_inverse(std::move(sequence));
  return result;
}

CsrKMatrix reorder_and_pack(const CsrMatrix &a, int k, std::span<const index_t> level_targets) {
  auto r = band_k(a, k, level_targets);
  return pack_csrk(a, r.perm, r.level_group_sizes);
}

} // namespace csrk
