#include "csrk/permutation.hpp"

#include <string>

namespace csrk {

namespace {

std::vector<index_t> invert_checked(const std::vector<index_t> &map, const char *what) {
  const auto n = map.size();
  constexpr index_t unset = std::numeric_limits<index_t>::max();
  std::vector<index_t> inv(n, unset);
  for (std::size_t i = 0; i < n; ++i) {
    const index_t j = map[i];
    if (j >= n)
      throw Error(std::string(what) + ": entry " + std::to_string(i) + " = " + std::to_string(j) +
                  " out of range [0, " + std::to_string(n) + ")");
    if (inv[j] != unset)
      throw Error(std::string(what) + ": value " + std::to_string(j) + " appears twice");
    inv[j] = static_cast<index_t>(i);
  }
  return inv;
}

} // namespace

Permutation Permutation::identity(index_t n) {
  std::vector<index_t> fwd(n);
  for (index_t i = 0; i < n; ++i)
    fwd[i] = i;
  auto inv = fwd;
  return Permutation(std::move(fwd), std::move(inv));
}

Permutation Permutation::from_forward(std::vector<index_t> fwd) {
  auto inv = invert_checked(fwd, "permutation");
  return Permutation(std::move(fwd), std::move(inv));
}

Permutation Permutation::from_inverse(std::vector<index_t> inv) {
  auto fwd = invert_checked(inv, "permutation");
  return Permutation(std::move(fwd), std::move(inv));
}

Permutation Permutation::inverted() const { return Permutation(inv_, fwd_); }

Permutation Permutation::then(const Permutation &next) const {
  if (next.size() != size())
    throw DimensionError("permutation sizes differ");
  std::vector<index_t> fwd(size());
  for (index_t i = 0; i < size(); ++i)
    fwd[i] = next.fwd_[fwd_[i]];
  return from_forward(std::move(fwd));
}

bool Permutation::is_identity() const {
  for (index_t i = 0; i < size(); ++i)
    if (fwd_[i] != i)
      return false;
  return true;
}

std::vector<value_t> permute_vector(const Permutation &p, std::span<const value_t> x) {
  if (x.size() != p.size())
    throw DimensionError("permute_vector: vector length " + std::to_string(x.size()) +
                         " != permutation size " + std::to_string(p.size()));
  std::vector<value_t> out(x.size());
  for (index_t i = 0; i < p.size(); ++i)
    out[p.new_index(i)] = x[i];
  return out;
}

std::vector<value_t> unpermute_vector(const Permutation &p, std::span<const value_t> y) {
  if (y.size() != p.size())
    throw DimensionError("unpermute_vector: vector length " + std::to_string(y.size()) +
                         " != permutation size " + std::to_string(p.size()));
  std::vector<value_t> out(y.size());
  for (index_t i = 0; i < p.size(); ++i)
    out[i] = y[p.new_index(i)];
  return out;
}

} // namespace csrk
