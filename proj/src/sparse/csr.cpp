#include "masr/sparse/csr.hpp"

#include <bit>

#include "masr/common/error.hpp"

namespace masr::sparse {

int bits_for(std::uint64_t n) noexcept {
  return n == 0 ? 1 : static_cast<int>(std::bit_width(n));
}

void append_step_entries(std::span<const std::size_t> positions, std::span<const Code> codes,
                         int step_bits, std::vector<StepEntry>& out) {
  const std::size_t max_step = (std::size_t{1} << step_bits) - 1;
  std::size_t next = 0;  // position the next delta is measured from
  for (std::size_t k = 0; k < positions.size(); ++k) {
    while (positions[k] - next > max_step) {
      out.push_back({static_cast<std::uint16_t>(max_step), 0});
      next += max_step + 1;
    }
    out.push_back({static_cast<std::uint16_t>(positions[k] - next), codes[k]});
    next = positions[k] + 1;
  }
}

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<Partition> partitions,
                     CsrOptions options)
    : rows_(rows), cols_(cols), partitions_(std::move(partitions)), options_(options) {}

std::size_t CsrMatrix::stored_entries() const noexcept {
  std::size_t n = 0;
  for (const auto& p : partitions_) n += p.entries.size();
  return n;
}

std::size_t CsrMatrix::padding_entries() const noexcept {
  std::size_t n = 0;
  for (const auto& p : partitions_) {
    for (const auto& e : p.entries) n += e.value == 0 ? 1 : 0;
  }
  return n;
}

std::uint64_t CsrMatrix::row_offset_bits() const noexcept {
  std::uint64_t bits = 0;
  for (const auto& p : partitions_) {
    bits += static_cast<std::uint64_t>(p.row_offsets.size()) * static_cast<std::uint64_t>(p.offset_bits);
  }
  return bits;
}

std::uint64_t CsrMatrix::column_index_bits() const noexcept {
  return static_cast<std::uint64_t>(stored_entries()) * static_cast<std::uint64_t>(options_.step_bits);
}

std::uint64_t CsrMatrix::value_bits() const noexcept {
  return static_cast<std::uint64_t>(stored_entries()) * static_cast<std::uint64_t>(options_.value_bits);
}

DenseCodes CsrMatrix::decode() const {
  DenseCodes dense(rows_, cols_);
  const std::size_t num_parts = partitions_.size();
  for (std::size_t p = 0; p < num_parts; ++p) {
    const auto& part = partitions_[p];
    for (std::size_t r = 0; r < rows_; ++r) {
      std::size_t local = 0;
      for (std::uint32_t k = part.row_offsets[r]; k < part.row_offsets[r + 1]; ++k) {
        local += part.entries[k].delta;
        if (part.entries[k].value != 0) dense(r, local * num_parts + p) = part.entries[k].value;
        ++local;
      }
    }
  }
  return dense;
}

CsrMatrix encode_csr(const CompactMatrix& m, std::size_t num_partitions, const CsrOptions& options) {
  if (num_partitions == 0) throw ParameterError("encode_csr needs at least one partition");
  if (options.step_bits < 1 || options.step_bits > 15) throw ParameterError("step_bits out of range");
  const DenseCodes dense = m.decode();
  std::vector<CsrMatrix::Partition> parts(num_partitions);
  std::vector<std::size_t> positions;
  std::vector<Code> codes;
  for (std::size_t p = 0; p < num_partitions; ++p) {
    auto& part = parts[p];
    part.local_cols = p < m.cols() ? (m.cols() - p + num_partitions - 1) / num_partitions : 0;
    part.row_offsets.reserve(m.rows() + 1);
    part.row_offsets.push_back(0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      positions.clear();
      codes.clear();
      for (std::size_t local = 0; local < part.local_cols; ++local) {
        const Code v = dense(r, local * num_partitions + p);
        if (v != 0) {
          positions.push_back(local);
          codes.push_back(v);
        }
      }
      append_step_entries(positions, codes, options.step_bits, part.entries);
      part.row_offsets.push_back(static_cast<std::uint32_t>(part.entries.size()));
    }
    part.offset_bits = options.offset_bits > 0 ? options.offset_bits : bits_for(part.entries.size());
  }
  return CsrMatrix(m.rows(), m.cols(), std::move(parts), options);
}

}  // namespace masr::sparse
