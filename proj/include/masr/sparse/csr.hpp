#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "masr/sparse/compact.hpp"

namespace masr::sparse {

/// Widths used by the pointer-based baseline encodings.
struct CsrOptions {
  /// Relative-index width; gaps wider than 2^step_bits - 1 are bridged with zero-valued padding.
  int step_bits = 4;
  /// Row-offset width. 0 sizes each partition's offsets from its own entry count.
  int offset_bits = 16;
  int value_bits = 10;
};

/// One stored entry: distance from the previous entry (+1) and its code. Padding has code 0.
struct StepEntry {
  std::uint16_t delta = 0;
  Code value = 0;
  friend bool operator==(const StepEntry&, const StepEntry&) = default;
};

/// EIE-style compressed rows. Output columns are interleaved across partitions
/// (column c lives in partition c % P at local index c / P), and every partition keeps its
/// own rows + 1 offsets into its entry list, so offset storage grows with P.
class CsrMatrix {
 public:
  struct Partition {
    std::size_t local_cols = 0;
    std::vector<std::uint32_t> row_offsets;  // rows + 1
    std::vector<StepEntry> entries;
    int offset_bits = 0;
  };

  CsrMatrix(std::size_t rows, std::size_t cols, std::vector<Partition> partitions, CsrOptions options);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t num_partitions() const noexcept { return partitions_.size(); }
  [[nodiscard]] const Partition& partition(std::size_t p) const { return partitions_[p]; }
  [[nodiscard]] const CsrOptions& options() const noexcept { return options_; }

  [[nodiscard]] std::size_t stored_entries() const noexcept;
  [[nodiscard]] std::size_t padding_entries() const noexcept;
  [[nodiscard]] std::uint64_t row_offset_bits() const noexcept;
  [[nodiscard]] std::uint64_t column_index_bits() const noexcept;
  [[nodiscard]] std::uint64_t value_bits() const noexcept;

  [[nodiscard]] DenseCodes decode() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Partition> partitions_;
  CsrOptions options_;
};

[[nodiscard]] CsrMatrix encode_csr(const CompactMatrix& m, std::size_t num_partitions,
                                   const CsrOptions& options = {});

/// Step-index encoding over each output column, no partitioning.
class RunLengthMatrix {
 public:
  RunLengthMatrix(std::size_t rows, std::vector<std::vector<StepEntry>> columns, int step_bits,
                  int value_bits);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return columns_.size(); }
  [[nodiscard]] const std::vector<StepEntry>& column(std::size_t c) const { return columns_[c]; }
  [[nodiscard]] int step_bits() const noexcept { return step_bits_; }

  [[nodiscard]] std::size_t stored_entries() const noexcept;
  [[nodiscard]] std::size_t padding_entries() const noexcept;
  [[nodiscard]] std::uint64_t column_index_bits() const noexcept;
  [[nodiscard]] std::uint64_t value_bits() const noexcept;

  [[nodiscard]] DenseCodes decode() const;

 private:
  std::size_t rows_;
  std::vector<std::vector<StepEntry>> columns_;
  int step_bits_;
  int value_bits_;
};

[[nodiscard]] RunLengthMatrix encode_runlength(const CompactMatrix& m, int step_bits = 4,
                                               int value_bits = 10);

/// Appends step entries for the ascending positions in `positions` (with codes in `codes`),
/// inserting padding whenever a gap exceeds the step range.
void append_step_entries(std::span<const std::size_t> positions, std::span<const Code> codes,
                         int step_bits, std::vector<StepEntry>& out);

/// Smallest width that can hold every value in [0, n].
[[nodiscard]] int bits_for(std::uint64_t n) noexcept;

}  // namespace masr::sparse
