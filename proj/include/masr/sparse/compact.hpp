#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "masr/common/quant.hpp"
#include "masr/sparse/bitmask.hpp"

namespace masr::sparse {

/// Signed fixed-point code: sign plus magnitude, never zero when stored.
using Code = std::int16_t;

/// Nonzero codes packed in index order plus the mask that locates them.
class CompactVector {
 public:
  CompactVector() = default;
  /// All-zero vector of the given dimension.
  explicit CompactVector(std::size_t dim);
  /// Throws StructuralError unless values.size() == popcount(mask) and no value is zero.
  CompactVector(BitMask mask, std::vector<Code> values);

  [[nodiscard]] std::size_t dim() const noexcept { return mask_.size(); }
  [[nodiscard]] std::size_t nnz() const noexcept { return values_.size(); }
  [[nodiscard]] const BitMask& mask() const noexcept { return mask_; }
  [[nodiscard]] std::span<const Code> values() const noexcept { return values_; }

  /// Compact-storage address of element i (exclusive prefix popcount), O(1).
  [[nodiscard]] std::size_t address(std::size_t i) const noexcept {
    const std::size_t w = i / BitMask::kWordBits;
    const std::size_t bit = i % BitMask::kWordBits;
    const BitMask::Word below = bit == 0 ? 0 : (mask_.words()[w] & ((BitMask::Word{1} << bit) - 1));
    return rank_[w] + static_cast<std::size_t>(std::popcount(below));
  }
  /// Dense read; zero when the mask bit is clear.
  [[nodiscard]] Code at(std::size_t i) const noexcept {
    return mask_.test(i) ? values_[address(i)] : Code{0};
  }

  [[nodiscard]] std::vector<Code> decode() const;

  friend bool operator==(const CompactVector& a, const CompactVector& b) {
    return a.mask_ == b.mask_ && a.values_ == b.values_;
  }

 private:
  void build_rank();

  BitMask mask_;
  std::vector<Code> values_;
  std::vector<std::uint32_t> rank_;
};

[[nodiscard]] CompactVector encode_vector(std::span<const Code> dense);
[[nodiscard]] std::vector<Code> decode_vector(const CompactVector& v);

/// Dense code matrix, row-major. Rows index inputs, columns index output neurons.
struct DenseCodes {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Code> data;

  DenseCodes() = default;
  DenseCodes(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  [[nodiscard]] Code& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  [[nodiscard]] Code operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  friend bool operator==(const DenseCodes&, const DenseCodes&) = default;
};

/// Weight matrix stored column by column: column c holds the weights feeding output
/// neuron c, masked over the input dimension.
class CompactMatrix {
 public:
  CompactMatrix() = default;
  CompactMatrix(std::size_t rows, std::size_t cols, std::vector<CompactVector> columns,
                QuantParams quant = {});

  static CompactMatrix encode(const DenseCodes& dense, QuantParams quant = {});

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return columns_.size(); }
  [[nodiscard]] const CompactVector& column(std::size_t c) const { return columns_[c]; }
  [[nodiscard]] std::span<const CompactVector> columns() const noexcept { return columns_; }
  [[nodiscard]] const QuantParams& quant() const noexcept { return quant_; }
  [[nodiscard]] std::size_t nnz() const noexcept;
  [[nodiscard]] Code at(std::size_t r, std::size_t c) const { return columns_[c].at(r); }

  [[nodiscard]] DenseCodes decode() const;

  friend bool operator==(const CompactMatrix&, const CompactMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<CompactVector> columns_;
  QuantParams quant_;
};

}  // namespace masr::sparse
