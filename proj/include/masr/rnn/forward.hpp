#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "masr/rnn/kernels.hpp"
#include "masr/rnn/types.hpp"

namespace masr::rnn {

/// ReLU of the combined pre-activation, re-quantised to a hidden-state code.
[[nodiscard]] Code activate(double bias, double input_intermediate, double hidden_intermediate,
                            const QuantParams& act) noexcept;

/// y = h + g in the code domain, saturating at the maximum code.
[[nodiscard]] CompactVector merge_directions(const CompactVector& h, const CompactVector& g,
                                             std::int32_t max_code);

/// Scale of a layer's outputs when they feed the next layer.
[[nodiscard]] QuantParams output_quant(const RnnLayer& layer) noexcept;

struct PredicationStats {
  std::uint64_t neurons = 0;     // output neurons evaluated (per timestep, per direction)
  std::uint64_t skipped = 0;     // neurons whose input dot product was skipped
  std::uint64_t mismatches = 0;  // hidden codes that differ from the unpredicated pass
  std::uint64_t macs_skipped = 0;

  [[nodiscard]] double skip_fraction() const noexcept {
    return neurons == 0 ? 0.0 : static_cast<double>(skipped) / static_cast<double>(neurons);
  }
  [[nodiscard]] double mismatch_rate() const noexcept {
    return neurons == 0 ? 0.0 : static_cast<double>(mismatches) / static_cast<double>(neurons);
  }
  PredicationStats& operator+=(const PredicationStats& o) noexcept;
};

struct LayerResult {
  std::vector<CompactVector> outputs;          // y^t
  std::vector<CompactVector> forward_states;   // h^t
  std::vector<CompactVector> backward_states;  // g^t, empty when unidirectional
  std::uint64_t macs = 0;
};

struct ForwardOptions {
  bool parallel = true;
  /// Skip the input dot product of neurons whose hidden intermediate is below theta.
  std::optional<double> theta;
};

/// One layer over a whole utterance. Every timestep runs W_h h^{t-1} first, then W_x x^t,
/// then bias add + ReLU; the backward pass mirrors it from t = T down to 1.
[[nodiscard]] LayerResult forward_layer(const RnnLayer& layer, std::span<const CompactVector> inputs,
                                        const QuantParams& input_quant, Direction direction,
                                        const ForwardOptions& options = {});

struct PredicatedResult {
  LayerResult result;
  PredicationStats stats;
};

/// Predicated pass plus its comparison against the plain pass. theta must be <= 0.
[[nodiscard]] PredicatedResult forward_predicated(const RnnLayer& layer,
                                                  std::span<const CompactVector> inputs,
                                                  const QuantParams& input_quant, Direction direction,
                                                  double theta);

struct LayerActivity {
  double input_nz = 0.0;
  double hidden_nz = 0.0;
  std::uint64_t macs = 0;
};

struct NetworkResult {
  std::vector<CompactVector> outputs;
  QuantParams output_quant;
  std::vector<LayerActivity> layers;
  PredicationStats predication;
};

[[nodiscard]] NetworkResult forward_network(const RnnNetwork& net, const Utterance& utterance,
                                            const ForwardOptions& options = {});

/// Average nonzero fraction over a sequence of compact vectors.
[[nodiscard]] double mean_density(std::span<const CompactVector> vs) noexcept;

}  // namespace masr::rnn
