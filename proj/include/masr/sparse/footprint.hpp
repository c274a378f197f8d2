#pragma once

#include <cstdint>
#include <string_view>

#include "masr/sparse/compact.hpp"
#include "masr/sparse/csr.hpp"

namespace masr::sparse {

enum class Format { bitmask, csr, runlength };

[[nodiscard]] std::string_view to_string(Format f) noexcept;
[[nodiscard]] Format parse_format(std::string_view s);

/// Exact storage bits of one encoded matrix.
struct EncodingFootprint {
  std::uint64_t value_bits = 0;
  std::uint64_t mask_bits = 0;
  std::uint64_t row_offset_bits = 0;
  std::uint64_t column_index_bits = 0;
  std::uint64_t total_bits = 0;

  [[nodiscard]] std::uint64_t metadata_bits() const noexcept {
    return mask_bits + row_offset_bits + column_index_bits;
  }
  EncodingFootprint& operator+=(const EncodingFootprint& o) noexcept;
  friend bool operator==(const EncodingFootprint&, const EncodingFootprint&) = default;
};

/// Bits needed to hold `m` in the given format. num_partitions only affects CSR.
[[nodiscard]] EncodingFootprint metadata_footprint(Format format, const CompactMatrix& m,
                                                   std::size_t num_partitions,
                                                   const CsrOptions& options = {});

}  // namespace masr::sparse
