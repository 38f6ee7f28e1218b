#include "csrk/ordering.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace csrk {

namespace {

constexpr index_t kUnset = std::numeric_limits<index_t>::max();

struct Priority {
  const AdjacencyGraph &g;
  bool operator()(index_t a, index_t b) const {
    if (g.degree(a) != g.degree(b))
      return g.degree(a) < g.degree(b);
    if (g.node_weight[a] != g.node_weight[b])
      return g.node_weight[a] < g.node_weight[b];
    return a < b;
  }
};

// Breadth-first level structure from `root`; returns the nodes of the last level.
// `level` must be kUnset for every node of the component on entry and is reset on exit.
std::vector<index_t> last_level(const AdjacencyGraph &g, index_t root, std::vector<index_t> &level,
                                index_t &depth) {
  std::vector<index_t> queue{root};
  level[root] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const index_t v = queue[head];
    for (auto u : g.neighbors(v))
      if (level[u] == kUnset) {
        level[u] = level[v] + 1;
        queue.push_back(u);
      }
  }
  depth = level[queue.back()];
  std::vector<index_t> last;
  for (auto it = queue.rbegin(); it != queue.rend() && level[*it] == depth; ++it)
    last.push_back(*it);
  for (auto v : queue)
    level[v] = kUnset;
  return last;
}

} // namespace

index_t pseudo_peripheral_node(const AdjacencyGraph &g, index_t seed) {
  std::vector<index_t> level(g.n_nodes(), kUnset);
  const Priority before{g};
  index_t root = seed, depth = 0;
  auto last = last_level(g, root, level, depth);
  for (;;) {
    const index_t candidate = *std::min_element(last.begin(), last.end(), before);
    index_t cand_depth = 0;
    auto cand_last = last_level(g, candidate, level, cand_depth);
    if (cand_depth <= depth)
      return root;
    root = candidate;
    depth = cand_depth;
    last = std::move(cand_last);
  }
}

Permutation weighted_bandwidth_order(const AdjacencyGraph &g) {
  const index_t n = g.n_nodes();
  const Priority before{g};

  // Components, each seeded by its lowest-priority node.
  std::vector<index_t> comp(n, kUnset);
  std::vector<std::vector<index_t>> components;
  for (index_t s = 0; s < n; ++s) {
    if (comp[s] != kUnset)
      continue;
    const auto id = static_cast<index_t>(components.size());
    std::vector<index_t> nodes{s};
    comp[s] = id;
    for (std::size_t head = 0; head < nodes.size(); ++head)
      for (auto u : g.neighbors(nodes[head]))
        if (comp[u] == kUnset) {
          comp[u] = id;
          nodes.push_back(u);
        }
    components.push_back(std::move(nodes));
  }
  std::stable_sort(components.begin(), components.end(),
                   [](const auto &a, const auto &b) { return a.size() > b.size(); });

  std::vector<index_t> order;
  order.reserve(n);
  std::vector<char> visited(n, 0);
  std::vector<index_t> frontier;
  for (const auto &nodes : components) {
    const index_t seed = *std::min_element(nodes.begin(), nodes.end(), before);
    const index_t start = pseudo_peripheral_node(g, seed);
    const std::size_t first = order.size();
    order.push_back(start);
    visited[start] = 1;
    for (std::size_t head = first; head < order.size(); ++head) {
      frontier.clear();
      for (auto u : g.neighbors(order[head]))
        if (!visited[u]) {
          visited[u] = 1;
          frontier.push_back(u);
        }
      std::sort(frontier.begin(), frontier.end(), before);
      order.insert(order.end(), frontier.begin(), frontier.end());
    }
    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(first), order.end());
  }
  return Permutation::from_inverse(std::move(order));
}

void write_permutation(std::ostream &os, const Permutation &p) {
  for (auto v : p.forward())
    os << v << '\n';
  if (!os)
    throw Error("write_permutation: stream write failed");
}

Permutation read_permutation(std::istream &is) {
  std::vector<index_t> fwd;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(line, &used);
      if (line.find_first_not_of(" \t\r", used) != std::string::npos || v > kUnset - 1)
        throw std::invalid_argument(line);
      fwd.push_back(static_cast<index_t>(v));
    } catch (const std::logic_error &) {
      throw Error("read_permutation: line " + std::to_string(line_no) + ": not an index: '" + line + "'");
    }
  }
  return Permutation::from_forward(std::move(fwd));
}

void write_permutation(const std::filesystem::path &path, const Permutation &p) {
  std::ofstream os(path);
  if (!os)
    throw Error("cannot open " + path.string() + " for writing");
  write_permutation(os, p);
}

Permutation read_permutation(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is)
    throw Error("cannot open " + path.string());
  return read_permutation(is);
}

} // namespace csrk
