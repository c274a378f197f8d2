#include "masr/rnn/prune.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "masr/common/error.hpp"
#include "masr/rnn/quantize.hpp"

namespace masr::rnn {

DenseMatrix prune_magnitude(const DenseMatrix& dense, double target_nz) {
  if (dense.size() == 0) throw DimensionError("cannot prune an empty matrix");
  if (!(target_nz > 0.0) || target_nz > 1.0) throw ParameterError("target_nz must be in (0, 1]");
  const std::size_t keep = std::min(
      dense.size(), static_cast<std::size_t>(std::ceil(target_nz * static_cast<double>(dense.size()) - 1e-9)));
  std::vector<std::size_t> order(dense.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(dense.data[a]) > std::abs(dense.data[b]);
  });
  DenseMatrix out(dense.rows, dense.cols);
  for (std::size_t k = 0; k < keep; ++k) out.data[order[k]] = dense.data[order[k]];
  return out;
}

CompactMatrix prune_and_quantize(const DenseMatrix& dense, double target_nz, int bits) {
  return quantize(prune_magnitude(dense, target_nz), bits).first;
}

}  // namespace masr::rnn
