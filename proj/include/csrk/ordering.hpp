#pragma once

#include <filesystem>
#include <iosfwd>

#include "csrk/graph.hpp"
#include "csrk/permutation.hpp"

namespace csrk {

/// Weight-aware reverse Cuthill-McKee.
///
/// Each connected component (largest first, ties by lowest node id) is
/// traversed breadth-first from a pseudo-peripheral node; unvisited
/// neighbors are queued by ascending degree, then ascending node weight,
/// then id. Each component's visit order is reversed. The returned
/// permutation maps node id -> position.
Permutation weighted_bandwidth_order(const AdjacencyGraph &g);

/// Pseudo-peripheral node of the component containing `seed` (George-Liu).
index_t pseudo_peripheral_node(const AdjacencyGraph &g, index_t seed);

/// Newline-separated 0-based indices: line i holds the new position of row i.
void write_permutation(std::ostream &os, const Permutation &p);
Permutation read_permutation(std::istream &is);
void write_permutation(const std::filesystem::path &path, const Permutation &p);
Permutation read_permutation(const std::filesystem::path &path);

} // namespace csrk
