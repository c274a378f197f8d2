#include "masr/sparse/footprint.hpp"

#include <string>

#include "masr/common/error.hpp"

namespace masr::sparse {

std::string_view to_string(Format f) noexcept {
  switch (f) {
    case Format::bitmask: return "bitmask";
    case Format::csr: return "csr";
    case Format::runlength: return "runlength";
  }
  return "?";
}

Format parse_format(std::string_view s) {
  if (s == "bitmask") return Format::bitmask;
  if (s == "csr") return Format::csr;
  if (s == "runlength") return Format::runlength;
  throw ParameterError("unknown encoding format '" + std::string(s) + "'");
}

EncodingFootprint& EncodingFootprint::operator+=(const EncodingFootprint& o) noexcept {
  value_bits += o.value_bits;
  mask_bits += o.mask_bits;
  row_offset_bits += o.row_offset_bits;
  column_index_bits += o.column_index_bits;
  total_bits += o.total_bits;
  return *this;
}

EncodingFootprint metadata_footprint(Format format, const CompactMatrix& m, std::size_t num_partitions,
                                     const CsrOptions& options) {
  EncodingFootprint fp;
  switch (format) {
    case Format::bitmask:
      fp.value_bits = static_cast<std::uint64_t>(m.nnz()) * static_cast<std::uint64_t>(options.value_bits);
      fp.mask_bits = static_cast<std::uint64_t>(m.rows()) * static_cast<std::uint64_t>(m.cols());
      break;
    case Format::csr: {
      const CsrMatrix csr = encode_csr(m, num_partitions, options);
      fp.value_bits = csr.value_bits();
      fp.row_offset_bits = csr.row_offset_bits();
      fp.column_index_bits = csr.column_index_bits();
      break;
    }
    case Format::runlength: {
      const RunLengthMatrix rl = encode_runlength(m, options.step_bits, options.value_bits);
      fp.value_bits = rl.value_bits();
      fp.column_index_bits = rl.column_index_bits();
      break;
    }
  }
  fp.total_bits = fp.value_bits + fp.mask_bits + fp.row_offset_bits + fp.column_index_bits;
  return fp;
}

}  // namespace masr::sparse
