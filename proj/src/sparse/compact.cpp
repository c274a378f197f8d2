#include "masr/sparse/compact.hpp"

#include <string>

#include "masr/common/error.hpp"

namespace masr::sparse {

CompactVector::CompactVector(std::size_t dim) : mask_(dim) { build_rank(); }

CompactVector::CompactVector(BitMask mask, std::vector<Code> values)
    : mask_(std::move(mask)), values_(std::move(values)) {
  if (values_.size() != mask_.popcount()) {
    throw StructuralError("compact vector holds " + std::to_string(values_.size()) +
                          " values but its mask has " + std::to_string(mask_.popcount()) +
                          " set bits");
  }
  for (Code v : values_) {
    if (v == 0) throw StructuralError("compact vector stores a zero code");
  }
  build_rank();
}

void CompactVector::build_rank() {
  const auto words = mask_.words();
  rank_.assign(words.size() + 1, 0);
  for (std::size_t w = 0; w < words.size(); ++w) {
    rank_[w + 1] = rank_[w] + static_cast<std::uint32_t>(std::popcount(words[w]));
  }
}

std::vector<Code> CompactVector::decode() const {
  std::vector<Code> dense(dim(), 0);
  std::size_t k = 0;
  for_each_and_bit(mask_, mask_, 0, dim(), [&](std::size_t i) { dense[i] = values_[k++]; });
  return dense;
}

CompactVector encode_vector(std::span<const Code> dense) {
  BitMask mask(dense.size());
  std::vector<Code> values;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) {
      mask.set(i);
      values.push_back(dense[i]);
    }
  }
  return CompactVector(std::move(mask), std::move(values));
}

std::vector<Code> decode_vector(const CompactVector& v) { return v.decode(); }

CompactMatrix::CompactMatrix(std::size_t rows, std::size_t cols, std::vector<CompactVector> columns,
                             QuantParams quant)
    : rows_(rows), columns_(std::move(columns)), quant_(quant) {
  if (columns_.size() != cols) throw DimensionError("compact matrix column count mismatch");
  for (const auto& col : columns_) {
    if (col.dim() != rows_) throw DimensionError("compact matrix column has wrong length");
  }
}

CompactMatrix CompactMatrix::encode(const DenseCodes& dense, QuantParams quant) {
  std::vector<CompactVector> columns;
  columns.reserve(dense.cols);
  std::vector<Code> col(dense.rows);
  for (std::size_t c = 0; c < dense.cols; ++c) {
    for (std::size_t r = 0; r < dense.rows; ++r) col[r] = dense(r, c);
    columns.push_back(encode_vector(col));
  }
  return CompactMatrix(dense.rows, dense.cols, std::move(columns), quant);
}

std::size_t CompactMatrix::nnz() const noexcept {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.nnz();
  return n;
}

DenseCodes CompactMatrix::decode() const {
  DenseCodes dense(rows_, cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    const auto& col = columns_[c];
    std::size_t k = 0;
    for_each_and_bit(col.mask(), col.mask(), 0, rows_,
                     [&](std::size_t r) { dense(r, c) = col.values()[k++]; });
  }
  return dense;
}

}  // namespace masr::sparse
