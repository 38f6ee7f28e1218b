#include "csrk/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace csrk {

std::size_t AdjacencyGraph::total_weight() const {
  return std::accumulate(node_weight.begin(), node_weight.end(), std::size_t{0});
}

void validate_graph(const AdjacencyGraph &g) {
  const index_t n = g.n_nodes();
  if (g.xadj.size() != std::size_t{n} + 1 || g.xadj.front() != 0 || g.xadj.back() != g.adj.size() ||
      g.edge_weight.size() != g.adj.size())
    throw Error("graph: array lengths inconsistent");
  for (index_t v = 0; v < n; ++v) {
    if (g.node_weight[v] == 0)
      throw Error("graph: node " + std::to_string(v) + " has zero weight");
    auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const index_t u = nb[i];
      if (u >= n || u == v)
        throw Error("graph: bad neighbor " + std::to_string(u) + " of node " + std::to_string(v));
      if (i > 0 && nb[i] <= nb[i - 1])
        throw Error("graph: neighbors of node " + std::to_string(v) + " not sorted");
      auto back = g.neighbors(u);
      auto it = std::lower_bound(back.begin(), back.end(), v);
      if (it == back.end() || *it != v)
        throw Error("graph: edge " + std::to_string(v) + "-" + std::to_string(u) + " not symmetric");
      if (g.edge_weights(u)[it - back.begin()] != g.edge_weights(v)[i])
        throw Error("graph: edge weights not symmetric");
    }
  }
}

AdjacencyGraph build_graph(const CsrMatrix &a) {
  if (!a.is_square())
    throw DimensionError("build_graph: matrix is " + std::to_string(a.n_rows()) + "x" +
                         std::to_string(a.n_cols()) + ", expected square");
  const index_t n = a.n_rows();
  const CsrMatrix at = transpose(a);

  AdjacencyGraph g;
  g.node_weight.assign(n, 1);
  g.xadj.assign(std::size_t{n} + 1, 0);
  g.adj.reserve(2 * a.nnz());
  for (index_t v = 0; v < n; ++v) {
    // Merge the two sorted column lists, dropping the diagonal.
    auto r = a.row_cols(v);
    auto c = at.row_cols(v);
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < c.size()) {
      index_t u;
      if (j == c.size() || (i < r.size() && r[i] < c[j]))
        u = r[i++];
      else if (i == r.size() || c[j] < r[i])
        u = c[j++];
      else {
        u = r[i++];
        ++j;
      }
      if (u != v)
        g.adj.push_back(u);
    }
    g.xadj[v + 1] = static_cast<index_t>(g.adj.size());
  }
  g.edge_weight.assign(g.adj.size(), 1);
  return g;
}

AdjacencyGraph induced_subgraph(const AdjacencyGraph &g, std::span<const index_t> nodes) {
  constexpr index_t absent = std::numeric_limits<index_t>::max();
  std::vector<index_t> local(g.n_nodes(), absent);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    local[nodes[i]] = static_cast<index_t>(i);

  AdjacencyGraph sub;
  sub.xadj.assign(nodes.size() + 1, 0);
  sub.node_weight.resize(nodes.size());
  std::vector<std::pair<index_t, index_t>> row;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const index_t v = nodes[i];
    sub.node_weight[i] = g.node_weight[v];
    auto nb = g.neighbors(v);
    auto ew = g.edge_weights(v);
    row.clear();
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (local[nb[k]] != absent)
        row.emplace_back(local[nb[k]], ew[k]);
    std::sort(row.begin(), row.end());
    for (auto [u, w] : row) {
      sub.adj.push_back(u);
      sub.edge_weight.push_back(w);
    }
    sub.xadj[i + 1] = static_cast<index_t>(sub.adj.size());
  }
  return sub;
}

CoarseningMap CoarseningMap::identity(index_t n) {
  std::vector<index_t> f2c(n);
  std::iota(f2c.begin(), f2c.end(), index_t{0});
  return from_assignment(std::move(f2c), n);
}

CoarseningMap CoarseningMap::from_assignment(std::vector<index_t> fine_to_coarse, index_t n_coarse) {
  CoarseningMap m;
  m.member_ptr.assign(std::size_t{n_coarse} + 1, 0);
  for (auto c : fine_to_coarse) {
    if (c >= n_coarse)
      throw Error("coarsening map: coarse id out of range");
    ++m.member_ptr[c + 1];
  }
  std::partial_sum(m.member_ptr.begin(), m.member_ptr.end(), m.member_ptr.begin());
  m.members.resize(fine_to_coarse.size());
  auto fill = m.member_ptr;
  for (index_t v = 0; v < fine_to_coarse.size(); ++v)
    m.members[fill[fine_to_coarse[v]]++] = v;
  for (index_t c = 0; c < n_coarse; ++c)
    if (m.member_ptr[c + 1] == m.member_ptr[c])
      throw Error("coarsening map: coarse node " + std::to_string(c) + " has no members");
  m.fine_to_coarse = std::move(fine_to_coarse);
  return m;
}

CoarseningMap CoarseningMap::compose(const CoarseningMap &next) const {
  std::vector<index_t> f2c(fine_to_coarse.size());
  for (std::size_t v = 0; v < f2c.size(); ++v)
    f2c[v] = next.fine_to_coarse[fine_to_coarse[v]];
  return from_assignment(std::move(f2c), next.n_coarse());
}

AdjacencyGraph contract(const AdjacencyGraph &g, const CoarseningMap &map) {
  const index_t nc = map.n_coarse();
  AdjacencyGraph cg;
  cg.node_weight.assign(nc, 0);
  cg.xadj.assign(std::size_t{nc} + 1, 0);

  // Dense scratch row keyed by coarse neighbor; `touched` keeps it sparse to reset.
  std::vector<index_t> acc(nc, 0);
  std::vector<index_t> touched;
  for (index_t c = 0; c < nc; ++c) {
    touched.clear();
    for (auto v : map.members_of(c)) {
      cg.node_weight[c] += g.node_weight[v];
      auto nb = g.neighbors(v);
      auto ew = g.edge_weights(v);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const index_t cu = map.fine_to_coarse[nb[k]];
        if (cu == c)
          continue;
        if (acc[cu] == 0)
          touched.push_back(cu);
        acc[cu] += ew[k];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto cu : touched) {
      cg.adj.push_back(cu);
      cg.edge_weight.push_back(acc[cu]);
      acc[cu] = 0;
    }
    cg.xadj[c + 1] = static_cast<index_t>(cg.adj.size());
  }
  return cg;
}

CoarseningMap heavy_edge_matching(const AdjacencyGraph &g, index_t max_weight) {
  const index_t n = g.n_nodes();
  std::vector<index_t> order(n);
  std::iota(order.begin(), order.end(), index_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](index_t a, index_t b) { return g.degree(a) < g.degree(b); });

  constexpr index_t unmatched = std::numeric_limits<index_t>::max();
  std::vector<index_t> mate(n, unmatched);
  for (auto v : order) {
    if (mate[v] != unmatched)
      continue;
    index_t best = unmatched, best_w = 0;
    auto nb = g.neighbors(v);
    auto ew = g.edge_weights(v);
    // Neighbors are sorted, so strict '>' keeps the lowest index on ties.
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const index_t u = nb[k];
      if (mate[u] != unmatched || g.node_weight[u] + g.node_weight[v] > max_weight)
        continue;
      if (best == unmatched || ew[k] > best_w) {
        best = u;
        best_w = ew[k];
      }
    }
    mate[v] = v;
    if (best != unmatched) {
      mate[v] = best;
      mate[best] = v;
    }
  }

  // Coarse ids follow the lowest fine index of each pair.
  std::vector<index_t> f2c(n, unmatched);
  index_t nc = 0;
  for (index_t v = 0; v < n; ++v) {
    if (f2c[v] != unmatched)
      continue;
    f2c[v] = nc;
    f2c[mate[v]] = nc;
    ++nc;
  }
  return CoarseningMap::from_assignment(std::move(f2c), nc);
}

CoarsenResult coarsen(const AdjacencyGraph &g, index_t target_weight) {
  if (target_weight == 0)
    throw Error("coarsen: target weight must be at least 1");
  CoarsenResult res{g, CoarseningMap::identity(g.n_nodes()), 0};
  auto mean_weight = [](const AdjacencyGraph &h) {
    return h.n_nodes() == 0 ? 0.0 : static_cast<double>(h.total_weight()) / h.n_nodes();
  };
  while (res.graph.n_nodes() > 1 && mean_weight(res.graph) < target_weight) {
    auto step = heavy_edge_matching(res.graph, target_weight);
    const index_t before = res.graph.n_nodes();
    const index_t after = step.n_coarse();
    if (after == before)
      break;
    res.graph = contract(res.graph, step);
    res.map = res.map.compose(step);
    ++res.rounds;
    if (static_cast<double>(before - after) < 0.05 * before)
      break;
  }
  return res;
}

} // namespace csrk
