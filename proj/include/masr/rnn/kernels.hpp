#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "masr/rnn/types.hpp"

namespace masr::rnn {

/// Integer partial sums split by (weight sign, activation sign). Each bucket holds a sum of
/// magnitude products, so the four scale combinations can be applied once at the end.
struct SplitAccumulator {
  std::int32_t pp = 0;
  std::int32_t pn = 0;
  std::int32_t np = 0;
  std::int32_t nn = 0;

  void add(Code w, Code a) noexcept {
    const std::int32_t prod = std::int32_t{w < 0 ? -w : w} * std::int32_t{a < 0 ? -a : a};
    if (w >= 0) {
      (a >= 0 ? pp : pn) += prod;
    } else {
      (a >= 0 ? np : nn) += prod;
    }
  }
  SplitAccumulator& operator+=(const SplitAccumulator& o) noexcept {
    pp += o.pp;
    pn += o.pn;
    np += o.np;
    nn += o.nn;
    return *this;
  }
  friend bool operator==(const SplitAccumulator&, const SplitAccumulator&) = default;
};

/// Scale-combine of a split accumulator into a real intermediate.
[[nodiscard]] double to_real(const SplitAccumulator& acc, const QuantParams& weights,
                             const QuantParams& activations) noexcept;

/// Pre-activation in the fixed evaluation order shared by the golden model and the simulator.
[[nodiscard]] inline double combine(double bias, double input_intermediate,
                                    double hidden_intermediate) noexcept {
  return (bias + hidden_intermediate) + input_intermediate;
}

/// Serial reference: walks the work mask of every column.
void matvec_serial(const CompactMatrix& w, const CompactVector& a, std::span<SplitAccumulator> out);

/// OpenMP over output columns; identical results to matvec_serial.
void matvec_parallel(const CompactMatrix& w, const CompactVector& a, std::span<SplitAccumulator> out);

/// Only columns with active[c] set are computed; the rest are left zero.
void matvec_columns(const CompactMatrix& w, const CompactVector& a, std::span<const char> active,
                    std::span<SplitAccumulator> out);

/// Dense reference over decoded codes, visiting every (row, column) pair.
void matvec_dense_reference(const sparse::DenseCodes& w, std::span<const Code> a,
                            std::span<SplitAccumulator> out);

/// Number of MACs a matvec needs: sum over columns of popcount(column mask & activation mask).
[[nodiscard]] std::uint64_t work_mask_macs(const CompactMatrix& w, const CompactVector& a);

}  // namespace masr::rnn
