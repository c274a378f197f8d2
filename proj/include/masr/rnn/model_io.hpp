#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "masr/rnn/types.hpp"

namespace masr::rnn {

/// Unquantised layer as it may appear in a model file. Loading folds `bn` into the weights
/// and quantises each matrix at `bits`.
struct DenseLayerRecord {
  DenseLayer layer;
  std::optional<BatchNormParams> bn;
  double act_scale = 1.0;
  int bits = 10;
};

inline constexpr std::uint32_t kModelFormatVersion = 1;

void write_network(std::ostream& os, const RnnNetwork& net);
void write_dense_network(std::ostream& os, const std::string& name, Direction direction,
                         const std::vector<DenseLayerRecord>& layers);
/// Throws IoError on a bad header or truncated stream, StructuralError on inconsistent payloads.
[[nodiscard]] RnnNetwork read_network(std::istream& is);

void write_utterance(std::ostream& os, const Utterance& u);
[[nodiscard]] Utterance read_utterance(std::istream& is);

void save_network(const RnnNetwork& net, const std::filesystem::path& path);
[[nodiscard]] RnnNetwork load_network(const std::filesystem::path& path);
void save_utterance(const Utterance& u, const std::filesystem::path& path);
[[nodiscard]] Utterance load_utterance(const std::filesystem::path& path);

}  // namespace masr::rnn
