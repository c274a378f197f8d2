#include "masr/rnn/kernels.hpp"

#include <algorithm>

#include "masr/common/error.hpp"

namespace masr::rnn {

double to_real(const SplitAccumulator& acc, const QuantParams& weights,
               const QuantParams& activations) noexcept {
  const double denom = static_cast<double>(weights.max_code()) * activations.max_code();
  const double pos = weights.s_pos * activations.s_pos * acc.pp - weights.s_pos * activations.s_neg * acc.pn;
  const double neg = weights.s_neg * activations.s_pos * acc.np - weights.s_neg * activations.s_neg * acc.nn;
  return (pos - neg) / denom;
}

namespace {

void check_dims(const CompactMatrix& w, const CompactVector& a, std::size_t out_size) {
  if (a.dim() != w.rows()) {
    throw DimensionError("matvec: activation length " + std::to_string(a.dim()) + " vs matrix rows " +
                         std::to_string(w.rows()));
  }
  if (out_size != w.cols()) throw DimensionError("matvec: output span has the wrong length");
}

SplitAccumulator column_dot(const CompactVector& col, const CompactVector& a) {
  SplitAccumulator acc;
  const auto wv = col.values();
  const auto av = a.values();
  sparse::for_each_and_bit(col.mask(), a.mask(), 0, a.dim(), [&](std::size_t r) {
    acc.add(wv[col.address(r)], av[a.address(r)]);
  });
  return acc;
}

}  // namespace

void matvec_serial(const CompactMatrix& w, const CompactVector& a, std::span<SplitAccumulator> out) {
  check_dims(w, a, out.size());
  for (std::size_t c = 0; c < w.cols(); ++c) out[c] = column_dot(w.column(c), a);
}

void matvec_parallel(const CompactMatrix& w, const CompactVector& a, std::span<SplitAccumulator> out) {
  check_dims(w, a, out.size());
  const auto cols = static_cast<std::ptrdiff_t>(w.cols());
#pragma omp parallel for schedule(static) if (cols >= 256)
  for (std::ptrdiff_t c = 0; c < cols; ++c) {
    out[static_cast<std::size_t>(c)] = column_dot(w.column(static_cast<std::size_t>(c)), a);
  }
}

void matvec_columns(const CompactMatrix& w, const CompactVector& a, std::span<const char> active,
                    std::span<SplitAccumulator> out) {
  check_dims(w, a, out.size());
  if (active.size() != w.cols()) throw DimensionError("matvec_columns: predicate has the wrong length");
  for (std::size_t c = 0; c < w.cols(); ++c) {
    out[c] = active[c] ? column_dot(w.column(c), a) : SplitAccumulator{};
  }
}

void matvec_dense_reference(const sparse::DenseCodes& w, std::span<const Code> a,
                            std::span<SplitAccumulator> out) {
  if (a.size() != w.rows || out.size() != w.cols) throw DimensionError("dense matvec: shape mismatch");
  std::fill(out.begin(), out.end(), SplitAccumulator{});
  for (std::size_t r = 0; r < w.rows; ++r) {
    for (std::size_t c = 0; c < w.cols; ++c) out[c].add(w(r, c), a[r]);
  }
}

std::uint64_t work_mask_macs(const CompactMatrix& w, const CompactVector& a) {
  std::uint64_t n = 0;
  for (std::size_t c = 0; c < w.cols(); ++c) {
    n += sparse::and_popcount_range(w.column(c).mask(), a.mask(), 0, a.dim());
  }
  return n;
}

}  // namespace masr::rnn
