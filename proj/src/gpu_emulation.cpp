#include "csrk/gpu_emulation.hpp"

#include <algorithm>
#include <sstream>

namespace csrk {

std::string BlockDims::to_string() const {
  std::ostringstream os;
  os << x << 'x' << y << 'x' << z;
  return os.str();
}

void validate_block_dims(const BlockDims &d) {
  if (d.x == 0 || d.y == 0 || d.z == 0)
    throw Error("block dims " + d.to_string() + ": every extent must be at least 1");
  if (std::uint64_t{d.x} * d.y * d.z > kMaxThreadsPerBlock)
    throw Error("block dims " + d.to_string() + " exceed " + std::to_string(kMaxThreadsPerBlock) +
                " threads per block");
}

BlockDims parse_block_dims(const std::string &text) {
  std::vector<index_t> parts;
  std::string token;
  auto flush = [&] {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
      throw Error("block dims: cannot parse '" + text + "'");
    parts.push_back(static_cast<index_t>(std::stoul(token)));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == 'x' || c == 'X')
      flush();
    else if (c != ' ')
      token.push_back(c);
  }
  flush();
  if (parts.size() < 2 || parts.size() > 3)
    throw Error("block dims: expected 2 or 3 extents in '" + text + "'");
  BlockDims d{parts[0], parts[1], parts.size() == 3 ? parts[2] : 1};
  validate_block_dims(d);
  return d;
}

bool trace_is_partition(const EmulationTrace &trace, index_t n_rows) {
  if (trace.rows.size() != n_rows)
    return false;
  std::vector<char> seen(n_rows, 0);
  for (const auto &r : trace.rows) {
    if (r.row >= n_rows || seen[r.row])
      return false;
    seen[r.row] = 1;
  }
  return true;
}

index_t tree_reduce(std::span<value_t> lanes) {
  index_t depth = 0;
  for (std::size_t active = lanes.size(); active > 1; ++depth) {
    const std::size_t half = (active + 1) / 2;
    for (std::size_t i = 0; i + half < active; ++i)
      lanes[i] += lanes[i + half];
    active = half;
  }
  return depth;
}

namespace {

void check_inputs(const CsrKMatrix &m, std::span<const value_t> x, const char *who) {
  if (m.k() != 3)
    throw Error(std::string(who) + ": matrix is CSR-" + std::to_string(m.k()) + ", expected CSR-3");
  if (x.size() != m.base().n_cols())
    throw DimensionError(std::string(who) + ": x has " + std::to_string(x.size()) +
                         " entries, expected " + std::to_string(m.base().n_cols()));
}

} // namespace

EmulationResult emulate_gpu_spmv3(const CsrKMatrix &m, std::span<const value_t> x,
                                  const BlockDims &dims) {
  validate_block_dims(dims);
  if (dims.z != 1)
    throw Error("emulate_gpu_spmv3: the z extent is unused and must be 1, got " + dims.to_string());
  check_inputs(m, x, "emulate_gpu_spmv3");

  const auto &rp = m.base().row_ptr();
  const auto &ci = m.base().col_idx();
  const auto &vals = m.base().vals();
  const auto &sr_ptr = m.sr_ptr();
  const auto &ssr_ptr = m.ssr_ptr();

  EmulationResult out;
  out.y.assign(m.base().n_rows(), 0.0);
  out.trace.dims = dims;
  out.trace.grid_blocks = m.num_super_super_rows();
  out.trace.rows.reserve(m.base().n_rows());

  for (index_t block = 0; block < out.trace.grid_blocks; ++block) {
    const index_t ssr_start = ssr_ptr[block];
    const index_t ssr_end = ssr_ptr[block + 1];
    for (index_t ty = 0; ty < dims.y; ++ty) {
      for (index_t i = ssr_start + ty; i < ssr_end; i += dims.y) {
        const index_t sr_start = sr_ptr[i];
        const index_t sr_end = sr_ptr[i + 1];
        for (index_t tx = 0; tx < dims.x; ++tx) {
          for (index_t j = sr_start + tx; j < sr_end; j += dims.x) {
            value_t temp = 0.0;
            for (index_t k = rp[j]; k < rp[j + 1]; ++k)
              temp += vals[k] * x[ci[k]];
            out.y[j] = temp;
            out.trace.rows.push_back(RowAssignment{j, block, 0, ty, tx, tx + 1,
                                                   (i - ssr_start) / dims.y,
                                                   (j - sr_start) / dims.x, 0});
          }
        }
      }
    }
  }
  return out;
}

EmulationResult emulate_gpu_spmv35(const CsrKMatrix &m, std::span<const value_t> x,
                                   const BlockDims &dims) {
  validate_block_dims(dims);
  check_inputs(m, x, "emulate_gpu_spmv35");

  const auto &rp = m.base().row_ptr();
  const auto &ci = m.base().col_idx();
  const auto &vals = m.base().vals();
  const auto &sr_ptr = m.sr_ptr();
  const auto &ssr_ptr = m.ssr_ptr();

  EmulationResult out;
  out.y.assign(m.base().n_rows(), 0.0);
  out.trace.dims = dims;
  out.trace.grid_blocks = m.num_super_super_rows();
  out.trace.rows.reserve(m.base().n_rows());

  std::vector<value_t> temp(dims.x);
  for (index_t block = 0; block < out.trace.grid_blocks; ++block) {
    const index_t ssr_start = ssr_ptr[block];
    const index_t ssr_end = ssr_ptr[block + 1];
    for (index_t tz = 0; tz < dims.z; ++tz) {
      for (index_t i = ssr_start + tz; i < ssr_end; i += dims.z) {
        const index_t sr_start = sr_ptr[i];
        const index_t sr_end = sr_ptr[i + 1];
        for (index_t ty = 0; ty < dims.y; ++ty) {
          for (index_t j = sr_start + ty; j < sr_end; j += dims.y) {
            std::fill(temp.begin(), temp.end(), 0.0);
            const index_t r_start = rp[j];
            const index_t r_end = rp[j + 1];
            for (index_t tx = 0; tx < dims.x; ++tx)
              for (index_t k = r_start + tx; k < r_end; k += dims.x)
                temp[tx] += vals[k] * x[ci[k]];
            const index_t depth = tree_reduce(temp);
            out.y[j] = temp[0];
            out.trace.rows.push_back(RowAssignment{j, block, tz, ty, 0,
                                                   std::min(dims.x, r_end - r_start),
                                                   (i - ssr_start) / dims.z,
                                                   (j - sr_start) / dims.y, depth});
          }
        }
      }
    }
  }
  return out;
}

} // namespace csrk
