#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace csrk {

using index_t = std::uint32_t;
using value_t = double;

// Structural nonzero counts must stay addressable by a signed 32-bit index.
inline constexpr std::size_t kMaxNnz = std::size_t{1} << 31;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

} // namespace csrk
