#include "masr/common/error.hpp"
#include "masr/sparse/csr.hpp"

namespace masr::sparse {

RunLengthMatrix::RunLengthMatrix(std::size_t rows, std::vector<std::vector<StepEntry>> columns,
                                 int step_bits, int value_bits)
    : rows_(rows), columns_(std::move(columns)), step_bits_(step_bits), value_bits_(value_bits) {}

std::size_t RunLengthMatrix::stored_entries() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

std::size_t RunLengthMatrix::padding_entries() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_) {
    for (const auto& e : c) n += e.value == 0 ? 1 : 0;
  }
  return n;
}

std::uint64_t RunLengthMatrix::column_index_bits() const noexcept {
  return static_cast<std::uint64_t>(stored_entries()) * static_cast<std::uint64_t>(step_bits_);
}

std::uint64_t RunLengthMatrix::value_bits() const noexcept {
  return static_cast<std::uint64_t>(stored_entries()) * static_cast<std::uint64_t>(value_bits_);
}

DenseCodes RunLengthMatrix::decode() const {
  DenseCodes dense(rows_, columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    std::size_t pos = 0;
    for (const auto& e : columns_[c]) {
      pos += e.delta;
      if (e.value != 0) dense(pos, c) = e.value;
      ++pos;
    }
  }
  return dense;
}

RunLengthMatrix encode_runlength(const CompactMatrix& m, int step_bits, int value_bits) {
  if (step_bits < 1 || step_bits > 15) throw ParameterError("step_bits must be in [1, 15]");
  std::vector<std::vector<StepEntry>> columns(m.cols());
  std::vector<std::size_t> positions;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto& col = m.column(c);
    positions.clear();
    for_each_and_bit(col.mask(), col.mask(), 0, col.dim(),
                     [&](std::size_t r) { positions.push_back(r); });
    append_step_entries(positions, col.values(), step_bits, columns[c]);
  }
  return RunLengthMatrix(m.rows(), std::move(columns), step_bits, value_bits);
}

}  // namespace masr::sparse
