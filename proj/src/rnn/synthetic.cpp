#include "masr/rnn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "masr/common/error.hpp"
#include "masr/rnn/forward.hpp"
#include "masr/rnn/kernels.hpp"
#include "masr/rnn/quantize.hpp"

namespace masr::rnn {

namespace {

// Smallest weight magnitude relative to the weight spread. Keeps every sampled nonzero
// above half a code step, so the realised mask density is the Bernoulli density.
constexpr double kMinMagnitude = 0.02;

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), 0x6d617372u};
    gen_.seed(seq);
  }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

 private:
  std::mt19937_64 gen_;
};

double floor_magnitude(double v, double floor) {
  if (std::abs(v) >= floor) return v;
  return v < 0.0 ? -floor : floor;
}

DenseMatrix random_weights(std::size_t rows, std::size_t cols, double nz, double mean, double gain,
                           Rng& rng) {
  DenseMatrix m(rows, cols);
  const double sd = gain / std::sqrt(std::max(1.0, static_cast<double>(rows) * nz));
  for (double& w : m.data) {
    if (rng.uniform() < nz) w = floor_magnitude(mean + rng.normal(), kMinMagnitude) * sd;
  }
  return m;
}

double state_density(const LayerResult& r) {
  double sum = mean_density(r.forward_states) * static_cast<double>(r.forward_states.size());
  sum += mean_density(r.backward_states) * static_cast<double>(r.backward_states.size());
  const auto n = r.forward_states.size() + r.backward_states.size();
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

Code max_state_code(const LayerResult& r) {
  Code m = 0;
  for (const auto* seq : {&r.forward_states, &r.backward_states}) {
    for (const auto& v : *seq) {
      for (Code c : v.values()) m = std::max(m, c);
    }
  }
  return m;
}

// RMS of the input intermediate over the first few timesteps; sets the bias scale.
double input_spread(const CompactMatrix& wx, std::span<const CompactVector> inputs, const QuantParams& iq) {
  std::vector<SplitAccumulator> acc(wx.cols());
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t t = 0; t < std::min<std::size_t>(inputs.size(), 4); ++t) {
    std::fill(acc.begin(), acc.end(), SplitAccumulator{});
    matvec_serial(wx, inputs[t], acc);
    for (const auto& a : acc) {
      const double v = to_real(a, wx.quant(), iq);
      sum += v * v;
      ++n;
    }
  }
  const double rms = n == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(n));
  return rms > 0.0 ? rms : 1.0;
}

struct Calibrator {
  RnnLayer layer;
  std::vector<double> jitter_fwd, jitter_bwd;
  std::span<const CompactVector> inputs;
  QuantParams input_quant;
  Direction direction;

  LayerResult run(double shift, double scale) {
    for (std::size_t j = 0; j < layer.hidden(); ++j) {
      layer.b_fwd[j] = shift + jitter_fwd[j];
      layer.b_bwd[j] = shift + jitter_bwd[j];
    }
    layer.act = QuantParams{layer.act.bits, scale, scale};
    ForwardOptions opts;
    opts.parallel = false;
    return forward_layer(layer, inputs, input_quant, direction, opts);
  }
};

}  // namespace

Utterance random_utterance(std::size_t dim, std::size_t timesteps, double density, int bits,
                           std::uint64_t seed) {
  if (!(density > 0.0 && density <= 1.0)) throw ParameterError("input density must be in (0, 1]");
  Rng rng(seed, 0xffff);
  std::vector<std::vector<double>> xs(timesteps, std::vector<double>(dim, 0.0));
  QuantParams q;
  q.bits = bits;
  for (auto& x : xs) {
    for (double& v : x) {
      if (rng.uniform() < density) v = floor_magnitude(rng.normal(), kMinMagnitude);
      if (v > 0.0) q.s_pos = std::max(q.s_pos, v);
      if (v < 0.0) q.s_neg = std::max(q.s_neg, -v);
    }
  }
  Utterance u;
  u.quant = q;
  for (const auto& x : xs) u.inputs.push_back(quantize_vector(x, q));
  return u;
}

SyntheticModel generate_synthetic(const SyntheticSpec& spec) {
  auto frac_ok = [](double f) { return f > 0.0 && f <= 1.0; };
  if (!frac_ok(spec.weight_nz) || !frac_ok(spec.act_nz) || !frac_ok(spec.input_nz)) {
    throw ParameterError("synthetic densities must be in (0, 1]");
  }
  if (spec.hidden == 0 || spec.hidden > 4096) throw ParameterError("synthetic hidden size must be in [1, 4096]");
  if (spec.layers == 0) throw ParameterError("synthetic network needs at least one layer");
  if (spec.timesteps == 0) throw ParameterError("synthetic utterance needs at least one timestep");

  SyntheticModel out;
  out.net.name = "synthetic-h" + std::to_string(spec.hidden) + "-l" + std::to_string(spec.layers);
  out.net.direction = spec.direction;
  const std::size_t in0 = spec.input_dim == 0 ? spec.hidden : spec.input_dim;
  out.utterance = random_utterance(in0, spec.timesteps, spec.input_nz, spec.bits, spec.seed);

  std::vector<CompactVector> inputs = out.utterance.inputs;
  QuantParams input_quant = out.utterance.quant;
  const double tol = spec.calibration_tolerance;

  for (std::size_t l = 0; l < spec.layers; ++l) {
    Rng rng(spec.seed, l + 1);
    const std::size_t in = l == 0 ? in0 : spec.hidden;
    const std::size_t h = spec.hidden;
    Calibrator cal;
    cal.inputs = inputs;
    cal.input_quant = input_quant;
    cal.direction = spec.direction;
    cal.layer.wx = quantize(random_weights(in, h, spec.weight_nz, 0.0, 1.0, rng), spec.bits).first;
    cal.layer.wh = quantize(random_weights(h, h, spec.weight_nz, spec.recurrent_mean, spec.recurrent_gain, rng),
                            spec.bits).first;
    cal.layer.vx = quantize(random_weights(in, h, spec.weight_nz, 0.0, 1.0, rng), spec.bits).first;
    cal.layer.vh = quantize(random_weights(h, h, spec.weight_nz, spec.recurrent_mean, spec.recurrent_gain, rng),
                            spec.bits).first;
    cal.layer.b_fwd.assign(h, 0.0);
    cal.layer.b_bwd.assign(h, 0.0);
    cal.layer.act.bits = spec.bits;

    const double sigma = input_spread(cal.layer.wx, inputs, input_quant);
    cal.jitter_fwd.resize(h);
    cal.jitter_bwd.resize(h);
    for (std::size_t j = 0; j < h; ++j) cal.jitter_fwd[j] = rng.normal() * spec.bias_jitter * sigma;
    for (std::size_t j = 0; j < h; ++j) cal.jitter_bwd[j] = rng.normal() * spec.bias_jitter * sigma;

    const std::int32_t max_code = cal.layer.act.max_code();
    double scale = 8.0 * sigma;
    bool done = false;
    bool have_shift = false;
    double shift = 0.0;
    LayerResult accepted;
    for (int round = 0; round < 10 && !done; ++round) {
      if (!have_shift) {
        // density rises with the bias shift; bisect on it
        double lo = -40.0 * sigma;
        double hi = 40.0 * sigma;
        double best_err = 2.0;
        auto probe = [&](double s) {
          const double nz = state_density(cal.run(s, scale));
          const double err = std::abs(nz - spec.act_nz);
          if (err < best_err) {
            best_err = err;
            shift = s;
          }
          return nz;
        };
        if (probe(hi) < spec.act_nz - tol) break;
        if (best_err > tol / 2 && probe(lo) > spec.act_nz + tol) break;
        for (int it = 0; it < 60 && best_err > tol / 2; ++it) {
          const double mid = 0.5 * (lo + hi);
          (probe(mid) < spec.act_nz ? lo : hi) = mid;
        }
        have_shift = true;
        // states reach roughly the bias plus a few spreads
        scale = std::max(scale, std::abs(shift) + 8.0 * sigma);
      }
      LayerResult r = cal.run(shift, scale);
      const Code peak = max_state_code(r);
      if (peak >= max_code) {
        // saturated: the state range is unknown, widen and look again
        scale *= 4.0;
        continue;
      }
      if (peak > 0) {
        scale = scale * peak / max_code;
        r = cal.run(shift, scale);
      }
      if (std::abs(state_density(r) - spec.act_nz) <= tol) {
        accepted = std::move(r);
        done = true;
      } else {
        have_shift = false;
      }
    }
    if (!done) {
      throw CalibrationError("layer " + std::to_string(l) + ": cannot bring hidden density to " +
                             std::to_string(spec.act_nz));
    }
    out.hidden_nz.push_back(state_density(accepted));
    inputs = std::move(accepted.outputs);
    input_quant = output_quant(cal.layer);
    out.net.layers.push_back(std::move(cal.layer));
  }
  out.net.validate();
  return out;
}

}  // namespace masr::rnn
