// One PASS/FAIL line per criterion. Every tolerance is a named constant below.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <bit>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "masr/cost/baseline.hpp"
#include "masr/cost/cost_model.hpp"
#include "masr/dse/experiments.hpp"
#include "masr/dse/sweep.hpp"
#include "masr/rnn/batchnorm.hpp"
#include "masr/rnn/float_reference.hpp"
#include "masr/rnn/forward.hpp"
#include "masr/rnn/quantize.hpp"
#include "masr/sim/simulator.hpp"
#include "masr/sparse/bitmask.hpp"
#include "masr/sparse/footprint.hpp"

using namespace masr;

namespace tol {
constexpr int kGoldenTriples = 200;
constexpr double kBatchNormRel = 1e-5;
constexpr int kBatchNormTrials = 100;
constexpr double kLbSpeedup = 1.2;
constexpr double kUtilBand = 0.15;
constexpr double kUtilTarget64 = 0.90, kUtilTarget256 = 0.80, kUtilTarget1024 = 0.50;
constexpr double kVvaddDrop = 0.20;
constexpr double kVvaddAt1 = 0.35, kVvaddBand = 0.10;
constexpr double kStallDrop = 0.10;
constexpr double kSpeedup10Lo = 53, kSpeedup10Hi = 99;
constexpr double kSpeedup25Lo = 10, kSpeedup25Hi = 19;
constexpr double kTransferBand = 0.20;
constexpr double kMetaAreaRatio = 2.0;
constexpr double kEseEnergyRatio = 2.5;
constexpr double kMaxMismatch = 0.01;
constexpr double kMinPredReduction = 0.05;
}  // namespace tol

namespace {

struct Verdict {
  int number;
  std::string name;
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

rnn::RnnLayer random_layer(std::size_t in, std::size_t hidden, double nz, std::mt19937_64& g) {
  std::bernoulli_distribution keep(nz);
  std::normal_distribution<double> n(0.0, 1.0);
  auto dense = [&](std::size_t r, std::size_t c, double sd) {
    rnn::DenseMatrix m(r, c);
    for (double& w : m.data) {
      if (keep(g)) w = n(g) * sd;
    }
    return rnn::quantize(m, 10).first;
  };
  const double sd = 1.0 / std::sqrt(std::max(1.0, static_cast<double>(in) * nz));
  rnn::RnnLayer l;
  l.wx = dense(in, hidden, sd);
  l.wh = dense(hidden, hidden, 0.5 * sd);
  l.vx = dense(in, hidden, sd);
  l.vh = dense(hidden, hidden, 0.5 * sd);
  for (std::size_t j = 0; j < hidden; ++j) l.b_fwd.push_back(0.3 * n(g));
  for (std::size_t j = 0; j < hidden; ++j) l.b_bwd.push_back(0.3 * n(g));
  l.act = QuantParams{10, 3.0, 3.0};
  return l;
}

std::uint64_t golden_macs(const rnn::NetworkResult& g) {
  std::uint64_t m = 0;
  for (const auto& l : g.layers) m += l.macs;
  return m;
}

// ---------------------------------------------------------------------------------------

Verdict c1_worked_example() {
  using sparse::BitMask;
  const BitMask w = BitMask::from_string("0011");
  const BitMask a = BitMask::from_string("1110");
  const BitMask work = sparse::work_mask(w, a);
  const auto first = work.lnzd(0);
  const bool ok = work.to_string() == "0010" && first == 2u && w.prefix_popcount(2) == 0 && a.prefix_popcount(2) == 2;
  return {1, "worked example", ok,
          "work=" + work.to_string() + fmt(" lnzd=%d addr=(%zu,%zu)", first ? static_cast<int>(*first) : -1,
                                           w.prefix_popcount(2), a.prefix_popcount(2))};
}

struct GoldenTally {
  int runs = 0, matches = 0, conserved = 0;
  int min_lanes = 1 << 20, max_lanes = 0;
};

GoldenTally golden_triples() {
  std::mt19937_64 g(2024);
  const int dims[] = {1, 2, 4, 8, 16, 32};
  const int qs[] = {1, 2, 4, 8};
  const sim::LoadBalance modes[] = {sim::LoadBalance::none, sim::LoadBalance::horizontal,
                                    sim::LoadBalance::vertical, sim::LoadBalance::both};
  auto pick = [&](auto const& arr) { return arr[g() % std::size(arr)]; };
  GoldenTally t;
  for (int i = 0; i < tol::kGoldenTriples; ++i) {
    sim::AcceleratorConfig c;
    c.horiz_lanes = i == 0 ? 1 : i == 1 ? 32 : pick(dims);
    c.vert_lanes = i == 0 ? 1 : i == 1 ? 32 : pick(dims);
    c.horiz_pes = 1 << (g() % (std::countr_zero(static_cast<unsigned>(c.horiz_lanes)) + 1));
    c.queue_depth = pick(qs);
    c.act_banks = pick(qs);
    c.load_balance = modes[i % 4];
    c.steal_both_ways = (g() & 1) != 0;
    c.dup_fraction = 0.05 * static_cast<double>(1 + g() % 6);

    const std::size_t in = 8 + g() % 48, hidden = 8 + g() % 56, layers = 1 + g() % 2;
    const double nz = 0.1 + 0.8 * std::uniform_real_distribution<double>(0, 1)(g);
    rnn::RnnNetwork net;
    net.name = "triple" + std::to_string(i);
    net.direction = (g() & 1) ? rnn::Direction::bidirectional : rnn::Direction::unidirectional;
    for (std::size_t l = 0; l < layers; ++l) net.layers.push_back(random_layer(l == 0 ? in : hidden, hidden, nz, g));
    const auto utt = rnn::random_utterance(in, 2 + g() % 5, 0.2 + 0.7 * (g() % 100) / 100.0, 10, g());

    const auto golden = rnn::forward_network(net, utt);
    const auto r = sim::simulate_network(net, utt, c);
    ++t.runs;
    t.matches += r.outputs == golden.outputs ? 1 : 0;
    t.conserved += r.stats.mac_count == r.stats.work_mask_popcount && r.stats.mac_count == golden_macs(golden) ? 1 : 0;
    t.min_lanes = std::min(t.min_lanes, c.total_lanes());
    t.max_lanes = std::max(t.max_lanes, c.total_lanes());
  }
  return t;
}

Verdict c4_encoding() {
  std::mt19937_64 g(800);
  std::bernoulli_distribution keep(0.33);
  std::uniform_int_distribution<int> mag(1, 511);
  sparse::DenseCodes d(800, 800);
  for (auto& c : d.data) {
    if (keep(g)) c = static_cast<sparse::Code>((g() & 1) ? mag(g) : -mag(g));
  }
  const auto m = sparse::CompactMatrix::encode(d, QuantParams{10, 1.0, 1.0});
  const std::vector<std::size_t> parts{32, 64, 128, 256, 512};
  std::vector<sparse::EncodingFootprint> bm, csr;
  for (auto p : parts) {
    bm.push_back(sparse::metadata_footprint(sparse::Format::bitmask, m, p));
    csr.push_back(sparse::metadata_footprint(sparse::Format::csr, m, p));
  }
  bool ok = true;
  for (const auto& f : bm) ok &= f.metadata_bits() == bm.front().metadata_bits();
  const bool eight = csr[4].row_offset_bits == 8 * csr[1].row_offset_bits;
  bool below = true;
  for (std::size_t i = 2; i < parts.size(); ++i) below &= bm[i].metadata_bits() < csr[i].metadata_bits();
  return {4, "encoding scaling", ok && eight && below,
          fmt("bitmask meta=%llu (constant=%d) csr offsets p64=%llu p512=%llu (x%.2f) csr meta p128=%llu",
              static_cast<unsigned long long>(bm[0].metadata_bits()), ok,
              static_cast<unsigned long long>(csr[1].row_offset_bits),
              static_cast<unsigned long long>(csr[4].row_offset_bits),
              static_cast<double>(csr[4].row_offset_bits) / static_cast<double>(csr[1].row_offset_bits),
              static_cast<unsigned long long>(csr[2].metadata_bits()))};
}

Verdict c5_batchnorm() {
  std::mt19937_64 g(55);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.1, 2.0), s(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < tol::kBatchNormTrials; ++trial) {
    const std::size_t in = 4 + g() % 20, hidden = 3 + g() % 20;
    auto dense = [&](std::size_t r, std::size_t c, double sd) {
      rnn::DenseMatrix m(r, c);
      for (double& w : m.data) w = (g() % 10 < 7) ? n(g) * sd : 0.0;
      return m;
    };
    rnn::DenseLayer l;
    l.wx = dense(in, hidden, 0.5);
    l.wh = dense(hidden, hidden, 0.3);
    l.vx = dense(in, hidden, 0.5);
    l.vh = dense(hidden, hidden, 0.3);
    for (std::size_t j = 0; j < hidden; ++j) {
      l.b_fwd.push_back(n(g));
      l.b_bwd.push_back(n(g));
    }
    rnn::BatchNormParams bn;
    for (std::size_t i = 0; i < in; ++i) {
      bn.mu.push_back(s(g));
      bn.sigma2.push_back(u(g));
      bn.gamma.push_back(2.0 * s(g));
      bn.beta.push_back(s(g));
    }
    rnn::RealSequence x(5, std::vector<double>(in));
    for (auto& v : x) {
      for (auto& e : v) e = n(g);
    }
    if (trial % 4 == 1) {
      for (auto& v : x) {
        for (auto& e : v) e = -std::abs(e);
      }
    }
    if (trial % 4 == 2) x.assign(5, std::vector<double>(in, 0.0));
    const auto ref = rnn::forward_float(l, x, rnn::Direction::bidirectional, &bn);
    const auto got = rnn::forward_float(rnn::refactor_batchnorm(l, bn), x, rnn::Direction::bidirectional);
    for (std::size_t t = 0; t < ref.size(); ++t) {
      for (std::size_t i = 0; i < ref[t].size(); ++i) {
        worst = std::max(worst, std::abs(got[t][i] - ref[t][i]) / std::max(1.0, std::abs(ref[t][i])));
      }
    }
  }
  return {5, "batch-norm refactoring", worst <= tol::kBatchNormRel,
          fmt("%d layers, worst relative error %.3g (limit %.0e)", tol::kBatchNormTrials, worst, tol::kBatchNormRel)};
}

Verdict c6_quantization() {
  std::mt19937_64 g(66);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = 0.0;  // error / bound
  std::uint64_t checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    rnn::DenseMatrix d(50 + g() % 50, 50 + g() % 50);
    const double sd = 0.01 + 0.5 * (g() % 100) / 100.0;
    for (double& w : d.data) w = (g() % 3 == 0) ? 0.0 : n(g) * sd;
    const auto [m, q] = rnn::quantize(d, 10);
    for (std::size_t r = 0; r < d.rows; ++r) {
      for (std::size_t c = 0; c < d.cols; ++c) {
        const double w = d(r, c);
        const double bound = (w < 0 ? q.s_neg : q.s_pos) / (2.0 * 511.0);
        const double err = std::abs(w - rnn::dequantize(m.at(r, c), q));
        worst = std::max(worst, bound > 0 ? err / bound : (err > 0 ? 2.0 : 0.0));
        ++checked;
      }
    }
  }
  return {6, "quantization bound", worst <= 1.0 + 1e-9,
          fmt("%llu weights, worst error %.6f of s/(2*511)", static_cast<unsigned long long>(checked), worst)};
}

double util_of(const std::vector<dse::BreakdownPoint>& ps, const std::string& id) {
  for (const auto& p : ps) {
    if (p.id == id) return p.utilization;
  }
  return -1.0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string out_path;
  std::string only;
  app.add_option("--out", out_path, "also write the verdict lines here");
  app.add_option("--only", only, "comma-separated criterion numbers");
  CLI11_PARSE(app, argc, argv);

  std::vector<int> selected;
  {
    std::stringstream ss(only);
    for (std::string tok; std::getline(ss, tok, ',');) {
      if (!tok.empty()) selected.push_back(std::stoi(tok));
    }
  }
  auto wanted = [&](int n) {
    // 2 and 3 are measured by the same runs
    auto has = [&](int k) { return std::find(selected.begin(), selected.end(), k) != selected.end(); };
    return selected.empty() || has(n) || (n == 2 && has(3));
  };

  std::vector<Verdict> verdicts;
  auto report = [&](Verdict v, double seconds) {
    std::printf("%s criterion %2d (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", v.number, v.name.c_str(),
                v.detail.c_str(), seconds);
    std::fflush(stdout);
    verdicts.push_back(std::move(v));
  };
  auto timed = [&](int n, const std::function<std::vector<Verdict>()>& fn) {
    if (!wanted(n)) return;
    const auto t0 = std::chrono::steady_clock::now();
    auto vs = fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& v : vs) report(std::move(v), s);
  };

  timed(1, [] { return std::vector{c1_worked_example()}; });
  timed(2, [] {
    const GoldenTally t = golden_triples();
    return std::vector{
        Verdict{2, "golden equivalence", t.matches == t.runs,
                fmt("%d/%d bit-identical, lanes %d..%d", t.matches, t.runs, t.min_lanes, t.max_lanes)},
        Verdict{3, "work-mask exactness", t.conserved == t.runs,
                fmt("%d/%d runs with MACs == popcount(weight & act) == reference MACs", t.conserved, t.runs)}};
  });
  timed(4, [] { return std::vector{c4_encoding()}; });
  timed(5, [] { return std::vector{c5_batchnorm()}; });
  timed(6, [] { return std::vector{c6_quantization()}; });

  const bool need_std = std::any_of(selected.begin(), selected.end(), [](int n) { return n >= 7; }) || selected.empty();
  std::optional<dse::Workload> std_w;
  if (need_std) {
    const auto t0 = std::chrono::steady_clock::now();
    dse::WorkloadSpec spec;
    spec.synthetic = dse::standard_workload_spec();
    std_w = dse::prepare_workload(spec, 1);
    std::printf("standard workload: %zu layers x %zu, hidden nz", std_w->net.layers.size(),
                std_w->net.layers[0].hidden());
    for (const auto& l : std_w->golden.layers) std::printf(" %.3f", l.hidden_nz);
    std::printf(" [%.1fs]\n", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  const auto& w = *std_w;

  timed(7, [&] {
    const std::vector<std::string> designs{"LANESx1024"};
    const std::vector<sim::LoadBalance> modes{sim::LoadBalance::none, sim::LoadBalance::horizontal,
                                              sim::LoadBalance::vertical};
    const auto ps = dse::balance_experiment(w, designs, modes);
    const double un = ps[0].utilization, uh = ps[1].utilization, uv = ps[2].utilization;
    const double speedup = static_cast<double>(ps[0].cycles) / static_cast<double>(ps[2].cycles);
    bool golden = true;
    for (const auto& p : ps) golden &= p.golden_match;
    return std::vector{Verdict{7, "load balancing", golden && speedup >= tol::kLbSpeedup && uv >= uh && uh >= un,
                               fmt("speedup VLB/none %.3f (need >= %.2f); util none %.3f hlb %.3f vlb %.3f", speedup,
                                   tol::kLbSpeedup, un, uh, uv)}};
  });

  timed(8, [&] {
    const auto names = sim::table4_names();
    std::vector<sim::AcceleratorConfig> cfgs;
    for (const auto& n : names) cfgs.push_back(dse::experiment_config(n));
    const auto ps = dse::breakdowns(w, cfgs);
    bool monotone = true, golden = true;
    for (std::size_t i = 1; i < ps.size(); ++i) monotone &= ps[i].utilization <= ps[i - 1].utilization;
    for (const auto& p : ps) golden &= p.golden_match;
    const double u64 = ps[1].utilization, u256 = ps[3].utilization, u1024 = ps[5].utilization;
    const bool band = std::abs(u64 - tol::kUtilTarget64) <= tol::kUtilBand &&
                      std::abs(u256 - tol::kUtilTarget256) <= tol::kUtilBand &&
                      std::abs(u1024 - tol::kUtilTarget1024) <= tol::kUtilBand;
    std::string all;
    for (const auto& p : ps) all += fmt(" %.3f", p.utilization);
    return std::vector{Verdict{8, "utilization targets", golden && band && monotone,
                               fmt("x64 %.3f x256 %.3f x1024 %.3f (targets .90/.80/.50 +-%.2f); all:", u64, u256,
                                   u1024, tol::kUtilBand) +
                                   all + (monotone ? " non-increasing" : " NOT monotone")}};
  });

  timed(9, [&] {
    const std::vector<int> banks{1, 8};
    const auto ps = dse::bank_experiment(w, dse::experiment_config("LANESx1024"), banks);
    const double v1 = ps[0].breakdown.vvadd, v8 = ps[1].breakdown.vvadd;
    const bool ok = ps[0].golden_match && ps[1].golden_match && v1 - v8 >= tol::kVvaddDrop &&
                    ps[1].utilization > ps[0].utilization && std::abs(v1 - tol::kVvaddAt1) <= tol::kVvaddBand;
    return std::vector{Verdict{9, "activation banking", ok,
                               fmt("vvadd fraction %.3f -> %.3f (drop %.3f, need %.2f; at 1 bank %.2f+-%.2f); "
                                   "util %.3f -> %.3f",
                                   v1, v8, v1 - v8, tol::kVvaddDrop, tol::kVvaddAt1, tol::kVvaddBand,
                                   ps[0].utilization, ps[1].utilization)}};
  });

  timed(10, [&] {
    const std::vector<int> depths{1, 8};
    const auto ps = dse::queue_experiment(w, dse::experiment_config("LANESx1024"), depths);
    const auto& a = ps[0].breakdown;
    const auto& b = ps[1].breakdown;
    // breakdowns() fails the run if any lane's cycle categories do not close
    const bool closes = std::abs(a.sum() - 1.0) < 1e-12 && std::abs(b.sum() - 1.0) < 1e-12;
    const bool ok = ps[0].golden_match && ps[1].golden_match && closes && a.stall - b.stall >= tol::kStallDrop &&
                    b.idle > a.idle;
    return std::vector{Verdict{10, "queue depth", ok,
                               fmt("stall %.3f -> %.3f (drop %.3f, need %.2f); idle %.3f -> %.3f; accounting %s",
                                   a.stall, b.stall, a.stall - b.stall, tol::kStallDrop, a.idle, b.idle,
                                   closes ? "closes" : "OPEN")}};
  });

  timed(11, [] {
    const std::vector<std::size_t> hiddens{1024, 3072};
    const std::vector<double> nzs{0.10, 0.25};
    const auto ps = dse::sparsity_scaling(hiddens, nzs, dse::experiment_config("LANESx256"));
    auto at = [&](std::size_t h, double nz) {
      for (const auto& p : ps) {
        if (p.hidden == h && p.nz == nz) return p.speedup;
      }
      return 0.0;
    };
    bool golden = true;
    for (const auto& p : ps) golden &= p.golden_match;
    const double s10 = at(3072, 0.10), s25 = at(3072, 0.25), s10_small = at(1024, 0.10);
    const bool ok = golden && s10 >= tol::kSpeedup10Lo && s10 <= tol::kSpeedup10Hi && s25 >= tol::kSpeedup25Lo &&
                    s25 <= tol::kSpeedup25Hi && s10 > s10_small;
    return std::vector{Verdict{11, "sparsity scaling", ok,
                               fmt("h3072: %.1fx at nz .10 [53,99], %.1fx at nz .25 [10,19]; h1024 at .10: %.1fx",
                                   s10, s25, s10_small)}};
  });

  timed(12, [&] {
    const std::vector<std::size_t> ts{250, 333, 400};
    const auto ps = dse::double_buffer_experiment(w.net, dse::experiment_config("LANESx1024"), ts, 0.4, 7);
    const bool near = std::abs(ps[0].ratio - 1.0) <= tol::kTransferBand;
    bool hidden = true, golden = true;
    for (const auto& p : ps) {
      golden &= p.golden_match;
      if (p.timesteps >= 333) hidden &= p.exposed_cycles == 0;
    }
    return std::vector{Verdict{12, "double buffering", golden && near && hidden,
                               fmt("T=250: transfer %llu vs compute %llu cycles (ratio %.3f, need 1+-%.2f); exposed "
                                   "stalls T=333 %llu, T=400 %llu",
                                   static_cast<unsigned long long>(ps[0].transfer_cycles),
                                   static_cast<unsigned long long>(ps[0].compute_cycles), ps[0].ratio,
                                   tol::kTransferBand, static_cast<unsigned long long>(ps[1].exposed_cycles),
                                   static_cast<unsigned long long>(ps[2].exposed_cycles))}};
  });

  timed(13, [&] {
    const auto units = cost::UnitCosts::defaults();
    const auto names = sim::table4_names();
    const auto masr = dse::design_costs(w, names, units);
    std::size_t best = 0;
    for (std::size_t i = 1; i < masr.size(); ++i) {
      if (masr[i].cost.onchip_energy() < masr[best].cost.onchip_energy()) best = i;
    }
    const std::vector<int> pes{128, 256, 512, 1024};
    const auto base = dse::baseline_costs(w, pes, units);
    double worst_area = 1e300, worst_energy = 1e300;
    for (std::size_t k = 0; k < pes.size(); ++k) {
      const auto& m = masr[2 + k].cost;  // LANESx128 onwards
      const auto& eie = base[2 * k].cost;
      const auto& ese = base[2 * k + 1].cost;
      worst_area = std::min(worst_area, eie.metadata_and_act_area() / m.metadata_and_act_area());
      worst_energy = std::min(worst_energy, ese.onchip_energy() / m.onchip_energy());
    }
    bool golden = true;
    for (const auto& p : masr) golden &= p.golden_match;
    const bool ok = golden && names[best] == "LANESx256" && worst_area >= tol::kMetaAreaRatio &&
                    worst_energy >= tol::kEseEnergyRatio;
    return std::vector{Verdict{13, "cost-model orderings", ok,
                               fmt("lowest on-chip energy: %s; EIE/MASR metadata+act area >= %.2fx (need %.1f); "
                                   "ESE/MASR on-chip energy >= %.2fx (need %.1f)",
                                   names[best].c_str(), worst_area, tol::kMetaAreaRatio, worst_energy,
                                   tol::kEseEnergyRatio)}};
  });

  timed(14, [&] {
    const std::vector<double> thetas{-0.05, -0.1, -0.2, -0.3, -0.5, -0.75, -1.0};
    auto cfg = sim::table4_config("LANESx32");
    cfg.stream_weights = false;
    const auto ps = dse::predication_experiment(w, cfg, thetas);
    const auto* best = dse::best_predication(ps, tol::kMaxMismatch);
    bool golden = true;
    for (const auto& p : ps) golden &= p.golden_match;
    if (best == nullptr) return std::vector{Verdict{14, "output predication", false, "no theta within 1% mismatch"}};
    return std::vector{Verdict{14, "output predication", golden && best->reduction >= tol::kMinPredReduction,
                               fmt("theta %.2f: cycles -%.1f%% (need %.0f%%), skipped %.1f%%, mismatch %.3f%%",
                                   best->theta, 100 * best->reduction, 100 * tol::kMinPredReduction,
                                   100 * best->skip_fraction, 100 * best->mismatch_rate)}};
  });

  int passed = 0;
  for (const auto& v : verdicts) passed += v.pass ? 1 : 0;
  const std::string summary = fmt("evaluated %zu of 14 criteria, %d passed", verdicts.size(), passed);
  std::printf("%s\n", summary.c_str());
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    std::sort(verdicts.begin(), verdicts.end(), [](const auto& a, const auto& b) { return a.number < b.number; });
    for (const auto& v : verdicts) {
      os << (v.pass ? "PASS" : "FAIL") << " criterion " << v.number << " (" << v.name << "): " << v.detail << '\n';
    }
    os << summary << '\n';
  }
  return passed == static_cast<int>(verdicts.size()) ? 0 : 1;
}
