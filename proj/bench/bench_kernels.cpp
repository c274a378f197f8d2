#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "masr/rnn/kernels.hpp"
#include "masr/sim/simulator.hpp"
#include "masr/rnn/synthetic.hpp"

using namespace masr;

namespace {

struct Operands {
  rnn::CompactMatrix w;
  rnn::CompactVector a;
};

Operands make(std::size_t n, double wnz, double anz) {
  std::mt19937_64 g(n);
  std::bernoulli_distribution kw(wnz), ka(anz);
  std::uniform_int_distribution<int> mag(-511, 511);
  sparse::DenseCodes d(n, n);
  for (auto& c : d.data) {
    if (kw(g)) c = static_cast<sparse::Code>(mag(g) | 1);
  }
  std::vector<sparse::Code> a(n, 0);
  for (auto& c : a) {
    if (ka(g)) c = static_cast<sparse::Code>(mag(g) & 511 | 1);
  }
  return {sparse::CompactMatrix::encode(d, QuantParams{10, 1.0, 1.0}), sparse::encode_vector(a)};
}

template <void (*Kernel)(const rnn::CompactMatrix&, const rnn::CompactVector&, std::span<rnn::SplitAccumulator>)>
void bm_matvec(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Operands op = make(n, 0.33, 0.2);
  std::vector<rnn::SplitAccumulator> out(n);
  for (auto _ : st) {
    std::fill(out.begin(), out.end(), rnn::SplitAccumulator{});
    Kernel(op.w, op.a, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.counters["macs"] = static_cast<double>(rnn::work_mask_macs(op.w, op.a));
}

void bm_simulate(benchmark::State& st) {
  rnn::SyntheticSpec s;
  s.hidden = static_cast<std::size_t>(st.range(0));
  s.layers = 1;
  s.timesteps = 4;
  const auto m = rnn::generate_synthetic(s);
  const auto cfg = sim::table4_config("LANESx256");
  for (auto _ : st) benchmark::DoNotOptimize(sim::simulate_network(m.net, m.utterance, cfg).stats.total_cycles);
}

}  // namespace

BENCHMARK(bm_matvec<rnn::matvec_serial>)->Name("matvec_serial")->Arg(800)->Arg(2048);
BENCHMARK(bm_matvec<rnn::matvec_parallel>)->Name("matvec_parallel")->Arg(800)->Arg(2048);
BENCHMARK(bm_simulate)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
