#include "masr/rnn/model_io.hpp"

#include <array>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "masr/common/error.hpp"
#include "masr/rnn/batchnorm.hpp"
#include "masr/rnn/quantize.hpp"

static_assert(std::endian::native == std::endian::little, "model files are little-endian");

namespace masr::rnn {

namespace {

using sparse::BitMask;

constexpr std::array<char, 8> kNetMagic{'M', 'A', 'S', 'R', 'N', 'E', 'T', '\0'};
constexpr std::array<char, 8> kUttMagic{'M', 'A', 'S', 'R', 'U', 'T', 'T', '\0'};
constexpr std::uint32_t kCompact = 0;
constexpr std::uint32_t kDense = 1;
// guards against absurd allocations from corrupt headers
constexpr std::uint32_t kMaxDim = 1u << 20;

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}
  template <class T>
  void put(T v) {
    os_.write(reinterpret_cast<const char*>(&v), sizeof v);
  }
  void u32(std::size_t v) { put(static_cast<std::uint32_t>(v)); }
  void bytes(const char* p, std::size_t n) { os_.write(p, static_cast<std::streamsize>(n)); }
  void reals(std::span<const double> v) {
    for (double d : v) put(d);
  }
  void compact(const CompactVector& v) {
    for (auto w : v.mask().words()) put(w);
    u32(v.nnz());
    for (Code c : v.values()) put(c);
  }
  void check() {
    if (!os_) throw IoError("write failed");
  }

 private:
  std::ostream& os_;
};

class Reader {
 public:
  explicit Reader(std::istream& is) : is_(is) {}
  template <class T>
  T get() {
    T v{};
    is_.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is_) throw IoError("unexpected end of file");
    return v;
  }
  std::uint32_t u32() { return get<std::uint32_t>(); }
  std::uint32_t dim(const char* what) {
    const auto v = u32();
    if (v > kMaxDim) throw IoError(std::string(what) + " out of range: " + std::to_string(v));
    return v;
  }
  std::vector<double> reals(std::size_t n) {
    std::vector<double> v(n);
    for (double& d : v) d = get<double>();
    return v;
  }
  CompactVector compact(std::size_t dim) {
    std::vector<BitMask::Word> words(sparse::word_count(dim));
    for (auto& w : words) w = get<BitMask::Word>();
    const auto nnz = u32();
    if (nnz > dim) throw StructuralError("vector holds more values than its dimension");
    std::vector<Code> values(nnz);
    for (Code& c : values) c = get<Code>();
    return CompactVector(BitMask::from_words(dim, std::move(words)), std::move(values));
  }
  void magic(const std::array<char, 8>& expected, const char* kind) {
    std::array<char, 8> m{};
    is_.read(m.data(), m.size());
    if (!is_ || m != expected) throw IoError(std::string("not a ") + kind + " file");
    const auto version = u32();
    if (version != kModelFormatVersion) {
      throw IoError("unsupported " + std::string(kind) + " version " + std::to_string(version));
    }
  }

 private:
  std::istream& is_;
};

void write_header(Writer& w, const std::string& name, Direction direction, std::size_t layers) {
  w.bytes(kNetMagic.data(), kNetMagic.size());
  w.u32(kModelFormatVersion);
  w.u32(direction == Direction::bidirectional ? 1u : 0u);
  w.u32(name.size());
  w.bytes(name.data(), name.size());
  w.u32(layers);
}

void write_compact_matrix(Writer& w, const CompactMatrix& m) {
  w.put(m.quant().s_pos);
  w.put(m.quant().s_neg);
  w.u32(m.rows());
  w.u32(m.cols());
  for (const auto& col : m.columns()) w.compact(col);
}

CompactMatrix read_compact_matrix(Reader& r, int bits) {
  QuantParams q;
  q.bits = bits;
  q.s_pos = r.get<double>();
  q.s_neg = r.get<double>();
  const auto rows = r.dim("rows");
  const auto cols = r.dim("cols");
  std::vector<CompactVector> columns;
  columns.reserve(cols);
  for (std::uint32_t c = 0; c < cols; ++c) columns.push_back(r.compact(rows));
  for (const auto& col : columns) {
    for (Code v : col.values()) {
      if (std::abs(v) > q.max_code()) throw StructuralError("weight code exceeds the declared bit width");
    }
  }
  return CompactMatrix(rows, cols, std::move(columns), q);
}

void write_dense_matrix(Writer& w, const DenseMatrix& m) {
  w.u32(m.rows);
  w.u32(m.cols);
  w.reals(m.data);
}

DenseMatrix read_dense_matrix(Reader& r) {
  const auto rows = r.dim("rows");
  const auto cols = r.dim("cols");
  DenseMatrix m(rows, cols);
  for (double& d : m.data) d = r.get<double>();
  return m;
}

void write_bn(Writer& w, const std::optional<BatchNormParams>& bn) {
  w.u32(bn ? 1 : 0);
  if (!bn) return;
  w.u32(bn->dim());
  w.reals(bn->mu);
  w.reals(bn->sigma2);
  w.reals(bn->gamma);
  w.reals(bn->beta);
  w.put(bn->epsilon);
}

std::optional<BatchNormParams> read_bn(Reader& r) {
  if (r.u32() == 0) return std::nullopt;
  const auto n = r.dim("batch-norm length");
  BatchNormParams bn;
  bn.mu = r.reals(n);
  bn.sigma2 = r.reals(n);
  bn.gamma = r.reals(n);
  bn.beta = r.reals(n);
  bn.epsilon = r.get<double>();
  return bn;
}

RnnLayer read_layer(Reader& r) {
  const auto kind = r.u32();
  const auto bits = static_cast<int>(r.u32());
  if (bits < 2 || bits > 16) throw StructuralError("layer bit width out of range");
  const double act_scale = r.get<double>();
  auto bn = read_bn(r);
  const auto hidden = r.dim("hidden size");
  std::vector<double> b_fwd = r.reals(hidden);
  std::vector<double> b_bwd = r.reals(hidden);

  RnnLayer layer;
  if (kind == kCompact) {
    if (bn) throw StructuralError("batch norm must be folded before a layer is stored compactly");
    layer.wx = read_compact_matrix(r, bits);
    layer.wh = read_compact_matrix(r, bits);
    layer.vx = read_compact_matrix(r, bits);
    layer.vh = read_compact_matrix(r, bits);
    layer.b_fwd = std::move(b_fwd);
    layer.b_bwd = std::move(b_bwd);
  } else if (kind == kDense) {
    DenseLayer d;
    d.wx = read_dense_matrix(r);
    d.wh = read_dense_matrix(r);
    d.vx = read_dense_matrix(r);
    d.vh = read_dense_matrix(r);
    d.b_fwd = std::move(b_fwd);
    d.b_bwd = std::move(b_bwd);
    if (bn) d = refactor_batchnorm(d, *bn);
    layer.wx = quantize(d.wx, bits).first;
    layer.wh = quantize(d.wh, bits).first;
    layer.vx = quantize(d.vx, bits).first;
    layer.vh = quantize(d.vh, bits).first;
    layer.b_fwd = std::move(d.b_fwd);
    layer.b_bwd = std::move(d.b_bwd);
  } else {
    throw StructuralError("unknown layer storage kind " + std::to_string(kind));
  }
  layer.act = QuantParams{bits, act_scale, act_scale};
  if (layer.hidden() != hidden) throw StructuralError("declared hidden size disagrees with weights");
  layer.validate();
  return layer;
}

}  // namespace

void write_network(std::ostream& os, const RnnNetwork& net) {
  net.validate();
  Writer w(os);
  write_header(w, net.name, net.direction, net.layers.size());
  for (const auto& l : net.layers) {
    w.u32(kCompact);
    w.u32(static_cast<std::uint32_t>(l.act.bits));
    w.put(l.act.s_pos);
    write_bn(w, std::nullopt);
    w.u32(l.hidden());
    w.reals(l.b_fwd);
    w.reals(l.b_bwd);
    for (const auto* m : {&l.wx, &l.wh, &l.vx, &l.vh}) write_compact_matrix(w, *m);
  }
  w.check();
}

void write_dense_network(std::ostream& os, const std::string& name, Direction direction,
                         const std::vector<DenseLayerRecord>& layers) {
  Writer w(os);
  write_header(w, name, direction, layers.size());
  for (const auto& rec : layers) {
    w.u32(kDense);
    w.u32(static_cast<std::uint32_t>(rec.bits));
    w.put(rec.act_scale);
    write_bn(w, rec.bn);
    w.u32(rec.layer.hidden());
    w.reals(rec.layer.b_fwd);
    w.reals(rec.layer.b_bwd);
    for (const auto* m : {&rec.layer.wx, &rec.layer.wh, &rec.layer.vx, &rec.layer.vh}) write_dense_matrix(w, *m);
  }
  w.check();
}

RnnNetwork read_network(std::istream& is) {
  Reader r(is);
  r.magic(kNetMagic, "model");
  RnnNetwork net;
  net.direction = (r.u32() & 1u) != 0 ? Direction::bidirectional : Direction::unidirectional;
  const auto name_len = r.dim("name length");
  net.name.resize(name_len);
  for (char& c : net.name) c = r.get<char>();
  const auto layers = r.dim("layer count");
  for (std::uint32_t l = 0; l < layers; ++l) net.layers.push_back(read_layer(r));
  net.validate();
  return net;
}

void write_utterance(std::ostream& os, const Utterance& u) {
  Writer w(os);
  w.bytes(kUttMagic.data(), kUttMagic.size());
  w.u32(kModelFormatVersion);
  w.u32(static_cast<std::uint32_t>(u.quant.bits));
  w.put(u.quant.s_pos);
  w.put(u.quant.s_neg);
  w.u32(u.timesteps());
  w.u32(u.dim());
  for (const auto& x : u.inputs) w.compact(x);
  w.check();
}

Utterance read_utterance(std::istream& is) {
  Reader r(is);
  r.magic(kUttMagic, "utterance");
  Utterance u;
  u.quant.bits = static_cast<int>(r.u32());
  if (u.quant.bits < 2 || u.quant.bits > 16) throw StructuralError("utterance bit width out of range");
  u.quant.s_pos = r.get<double>();
  u.quant.s_neg = r.get<double>();
  const auto t = r.dim("timesteps");
  const auto dim = r.dim("input dimension");
  for (std::uint32_t i = 0; i < t; ++i) u.inputs.push_back(r.compact(dim));
  return u;
}

void save_network(const RnnNetwork& net, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_network(os, net);
}

RnnNetwork load_network(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open model file " + path.string());
  return read_network(is);
}

void save_utterance(const Utterance& u, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_utterance(os, u);
}

Utterance load_utterance(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open utterance file " + path.string());
  return read_utterance(is);
}

}  // namespace masr::rnn
