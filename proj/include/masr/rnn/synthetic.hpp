#pragma once

#include <cstdint>
#include <vector>

#include "masr/rnn/types.hpp"

namespace masr::rnn {

/// Recipe for a random network whose post-ReLU hidden density is calibrated to act_nz.
struct SyntheticSpec {
  std::size_t hidden = 800;
  std::size_t layers = 5;
  std::size_t input_dim = 0;  // 0: same as hidden
  std::size_t timesteps = 16;
  double weight_nz = 0.33;
  double act_nz = 0.20;
  double input_nz = 0.40;  // density of the layer-0 utterance
  Direction direction = Direction::bidirectional;
  int bits = 10;
  std::uint64_t seed = 1;
  /// Mean of the recurrent weights, in units of their standard deviation. Negative values
  /// make hidden intermediates lean negative, which is what output predication exploits.
  double recurrent_mean = -1.0;
  double recurrent_gain = 1.0;
  /// Per-neuron bias spread relative to the pre-activation spread; spreads firing rates.
  double bias_jitter = 0.5;
  double calibration_tolerance = 0.02;
};

struct SyntheticModel {
  RnnNetwork net;
  Utterance utterance;
  std::vector<double> hidden_nz;  // realised post-ReLU density per layer
};

/// Deterministic for a given spec (including seed). Throws CalibrationError if a layer's
/// density cannot be brought within calibration_tolerance of act_nz.
[[nodiscard]] SyntheticModel generate_synthetic(const SyntheticSpec& spec);

/// Signed random input sequence with the given density, quantised with its own scales.
[[nodiscard]] Utterance random_utterance(std::size_t dim, std::size_t timesteps, double density, int bits,
                                         std::uint64_t seed);

}  // namespace masr::rnn
