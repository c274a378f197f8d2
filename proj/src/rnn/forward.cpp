#include "masr/rnn/forward.hpp"

#include <algorithm>
#include <string>

#include "masr/common/error.hpp"
#include "masr/rnn/quantize.hpp"

namespace masr::rnn {

void RnnLayer::validate() const {
  const std::size_t in = input_dim();
  const std::size_t h = hidden();
  auto expect = [](const CompactMatrix& m, std::size_t r, std::size_t c, const char* name) {
    if (m.rows() != r || m.cols() != c) {
      throw DimensionError(std::string(name) + " is " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" +
                           std::to_string(c));
    }
  };
  expect(wh, h, h, "W_h");
  expect(vx, in, h, "V_x");
  expect(vh, h, h, "V_h");
  if (b_fwd.size() != h || b_bwd.size() != h) throw DimensionError("bias length differs from hidden size");
}

void RnnNetwork::validate() const {
  if (layers.empty()) throw DimensionError("network has no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].validate();
    if (l > 0 && layers[l].input_dim() != layers[l - 1].hidden()) {
      throw DimensionError("layer " + std::to_string(l) + " takes " + std::to_string(layers[l].input_dim()) +
                           " inputs but layer " + std::to_string(l - 1) + " produces " +
                           std::to_string(layers[l - 1].hidden()));
    }
  }
}

std::size_t RnnNetwork::param_count() const noexcept {
  std::size_t n = 0;
  for (const auto& l : layers) {
    n += 2 * (l.wx.rows() * l.wx.cols() + l.wh.rows() * l.wh.cols());
  }
  return direction == Direction::bidirectional ? n : n / 2;
}

std::size_t RnnNetwork::nonzero_count() const noexcept {
  std::size_t n = 0;
  for (const auto& l : layers) {
    n += l.wx.nnz() + l.wh.nnz();
    if (direction == Direction::bidirectional) n += l.vx.nnz() + l.vh.nnz();
  }
  return n;
}

Code activate(double bias, double input_intermediate, double hidden_intermediate,
              const QuantParams& act) noexcept {
  return quantize_activation(combine(bias, input_intermediate, hidden_intermediate), act.s_pos,
                             act.max_code());
}

CompactVector merge_directions(const CompactVector& h, const CompactVector& g, std::int32_t max_code) {
  if (h.dim() != g.dim()) throw DimensionError("merge_directions: length mismatch");
  std::vector<Code> y(h.dim());
  for (std::size_t j = 0; j < y.size(); ++j) {
    y[j] = static_cast<Code>(std::min<std::int32_t>(max_code, std::int32_t{h.at(j)} + g.at(j)));
  }
  return sparse::encode_vector(y);
}

QuantParams output_quant(const RnnLayer& layer) noexcept {
  return QuantParams{layer.act.bits, layer.act.s_pos, layer.act.s_pos};
}

PredicationStats& PredicationStats::operator+=(const PredicationStats& o) noexcept {
  neurons += o.neurons;
  skipped += o.skipped;
  mismatches += o.mismatches;
  macs_skipped += o.macs_skipped;
  return *this;
}

double mean_density(std::span<const CompactVector> vs) noexcept {
  std::size_t nnz = 0;
  std::size_t dim = 0;
  for (const auto& v : vs) {
    nnz += v.nnz();
    dim += v.dim();
  }
  return dim == 0 ? 0.0 : static_cast<double>(nnz) / static_cast<double>(dim);
}

namespace {

struct DirectionWeights {
  const CompactMatrix& input;
  const CompactMatrix& hidden;
  const std::vector<double>& bias;
};

std::vector<CompactVector> run_direction(const DirectionWeights& w, const QuantParams& act,
                                         std::span<const CompactVector> inputs,
                                         const QuantParams& input_quant, bool reverse,
                                         const ForwardOptions& options, PredicationStats* pstats,
                                         std::uint64_t& macs) {
  const std::size_t n = w.hidden.cols();
  const std::size_t steps = inputs.size();
  std::vector<CompactVector> states(steps);
  CompactVector state(n);
  std::vector<SplitAccumulator> hid(n), inp(n);
  std::vector<char> active(n, 1);
  std::vector<Code> codes(n);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t t = reverse ? steps - 1 - k : k;
    const CompactVector& x = inputs[t];
    if (x.dim() != w.input.rows()) {
      throw DimensionError("input at timestep " + std::to_string(t) + " has " + std::to_string(x.dim()) +
                           " elements, layer expects " + std::to_string(w.input.rows()));
    }
    if (options.parallel) {
      matvec_parallel(w.hidden, state, hid);
    } else {
      matvec_serial(w.hidden, state, hid);
    }
    macs += work_mask_macs(w.hidden, state);
    std::vector<double> hid_real(n);
    for (std::size_t j = 0; j < n; ++j) hid_real[j] = to_real(hid[j], w.hidden.quant(), act);

    if (options.theta) {
      for (std::size_t j = 0; j < n; ++j) {
        active[j] = hid_real[j] < *options.theta ? 0 : 1;
        if (!active[j]) {
          ++pstats->skipped;
          pstats->macs_skipped += sparse::and_popcount_range(w.input.column(j).mask(), x.mask(), 0, x.dim());
        }
      }
      pstats->neurons += n;
      matvec_columns(w.input, x, active, inp);
    } else if (options.parallel) {
      matvec_parallel(w.input, x, inp);
    } else {
      matvec_serial(w.input, x, inp);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!active[j]) {
        codes[j] = 0;
        continue;
      }
      macs += sparse::and_popcount_range(w.input.column(j).mask(), x.mask(), 0, x.dim());
      codes[j] = activate(w.bias[j], to_real(inp[j], w.input.quant(), input_quant), hid_real[j], act);
    }
    state = sparse::encode_vector(codes);
    states[t] = state;
  }
  return states;
}

}  // namespace

LayerResult forward_layer(const RnnLayer& layer, std::span<const CompactVector> inputs,
                          const QuantParams& input_quant, Direction direction, const ForwardOptions& options) {
  layer.validate();
  if (options.theta && *options.theta > 0.0) throw ParameterError("predication threshold must be <= 0");
  PredicationStats scratch;
  LayerResult res;
  res.forward_states = run_direction({layer.wx, layer.wh, layer.b_fwd}, layer.act, inputs, input_quant, false,
                                     options, &scratch, res.macs);
  if (direction == Direction::bidirectional) {
    res.backward_states = run_direction({layer.vx, layer.vh, layer.b_bwd}, layer.act, inputs, input_quant,
                                        true, options, &scratch, res.macs);
    res.outputs.reserve(inputs.size());
    for (std::size_t t = 0; t < inputs.size(); ++t) {
      res.outputs.push_back(
          merge_directions(res.forward_states[t], res.backward_states[t], layer.act.max_code()));
    }
  } else {
    res.outputs = res.forward_states;
  }
  return res;
}

namespace {

std::uint64_t count_mismatches(const std::vector<CompactVector>& a, const std::vector<CompactVector>& b) {
  std::uint64_t n = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t j = 0; j < a[t].dim(); ++j) n += a[t].at(j) != b[t].at(j) ? 1 : 0;
  }
  return n;
}

}  // namespace

PredicatedResult forward_predicated(const RnnLayer& layer, std::span<const CompactVector> inputs,
                                    const QuantParams& input_quant, Direction direction, double theta) {
  if (theta > 0.0) throw ParameterError("predication threshold must be <= 0, got " + std::to_string(theta));
  layer.validate();
  PredicatedResult out;
  ForwardOptions opts;
  opts.theta = theta;
  auto& res = out.result;
  res.forward_states = run_direction({layer.wx, layer.wh, layer.b_fwd}, layer.act, inputs, input_quant, false,
                                     opts, &out.stats, res.macs);
  if (direction == Direction::bidirectional) {
    res.backward_states = run_direction({layer.vx, layer.vh, layer.b_bwd}, layer.act, inputs, input_quant,
                                        true, opts, &out.stats, res.macs);
    for (std::size_t t = 0; t < inputs.size(); ++t) {
      res.outputs.push_back(
          merge_directions(res.forward_states[t], res.backward_states[t], layer.act.max_code()));
    }
  } else {
    res.outputs = res.forward_states;
  }
  const LayerResult plain = forward_layer(layer, inputs, input_quant, direction);
  out.stats.mismatches = count_mismatches(plain.forward_states, res.forward_states);
  if (direction == Direction::bidirectional) {
    out.stats.mismatches += count_mismatches(plain.backward_states, res.backward_states);
  }
  return out;
}

NetworkResult forward_network(const RnnNetwork& net, const Utterance& utterance, const ForwardOptions& options) {
  net.validate();
  if (utterance.dim() != net.input_dim() && utterance.timesteps() > 0) {
    throw DimensionError("utterance has " + std::to_string(utterance.dim()) + " features, network expects " +
                         std::to_string(net.input_dim()));
  }
  NetworkResult out;
  std::vector<CompactVector> current = utterance.inputs;
  QuantParams quant = utterance.quant;
  for (const auto& layer : net.layers) {
    LayerActivity activity;
    activity.input_nz = mean_density(current);
    LayerResult res;
    if (options.theta) {
      auto pred = forward_predicated(layer, current, quant, net.direction, *options.theta);
      out.predication += pred.stats;
      res = std::move(pred.result);
    } else {
      res = forward_layer(layer, current, quant, net.direction, options);
    }
    const double fwd = mean_density(res.forward_states);
    activity.hidden_nz =
        net.direction == Direction::bidirectional ? 0.5 * (fwd + mean_density(res.backward_states)) : fwd;
    activity.macs = res.macs;
    out.layers.push_back(activity);
    current = std::move(res.outputs);
    quant = output_quant(layer);
  }
  out.outputs = std::move(current);
  out.output_quant = quant;
  return out;
}

}  // namespace masr::rnn
