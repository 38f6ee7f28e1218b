#pragma once

#include <span>
#include <vector>

#include "csrk/types.hpp"

namespace csrk {

/// Row/column reordering. `forward()[old] = new`, `inverse()[new] = old`.
class Permutation {
public:
  Permutation() = default;

  static Permutation identity(index_t n);
  /// Builds from old->new positions; throws if `fwd` is not a bijection.
  static Permutation from_forward(std::vector<index_t> fwd);
  /// Builds from new->old positions (an elimination order); throws if not a bijection.
  static Permutation from_inverse(std::vector<index_t> inv);

  index_t size() const { return static_cast<index_t>(fwd_.size()); }
  const std::vector<index_t> &forward() const { return fwd_; }
  const std::vector<index_t> &inverse() const { return inv_; }

  index_t new_index(index_t old_index) const { return fwd_[old_index]; }
  index_t old_index(index_t new_index) const { return inv_[new_index]; }

  Permutation inverted() const;
  /// `(this.then(next)).new_index(i) == next.new_index(this.new_index(i))`
  Permutation then(const Permutation &next) const;
  bool is_identity() const;

  friend bool operator==(const Permutation &, const Permutation &) = default;

private:
  Permutation(std::vector<index_t> fwd, std::vector<index_t> inv)
      : fwd_(std::move(fwd)), inv_(std::move(inv)) {}

  std::vector<index_t> fwd_;
  std::vector<index_t> inv_;
};

/// out[p.new_index(i)] = x[i]
std::vector<value_t> permute_vector(const Permutation &p, std::span<const value_t> x);
/// out[i] = y[p.new_index(i)]
std::vector<value_t> unpermute_vector(const Permutation &p, std::span<const value_t> y);

} // namespace csrk
