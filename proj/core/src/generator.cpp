#include "gauss2d/generator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "gauss2d/coord_rom.hpp"
#include "gauss2d/errors.hpp"

namespace gauss2d {

KernelSpec KernelSpec::three_scale() {
  KernelSpec spec;
  const auto ps = design_scales();
  spec.scales.assign(ps.begin(), ps.end());
  return spec;
}

KernelSpec KernelSpec::single(unsigned sigma, std::uint32_t rows, std::uint32_t cols) {
  KernelSpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.scales = {ScaleShift::from_sigma(sigma)};
  return spec;
}

void KernelSpec::validate() const {
  if (rows < 1 || cols < 1) throw ConfigError("kernel geometry must be at least 1x1");
  if (rows > 65536 || cols > 65536) throw ConfigError("kernel geometry limited to 65536 per axis");
  if (scales.empty() || scales.size() > kMaxScales) {
    throw ConfigError("a kernel spec carries between 1 and 3 scales");
  }
}

namespace {

unsigned signed_bits(int lo, int hi) {
  unsigned b = 1;
  while (lo < -(1LL << (b - 1)) || hi > (1LL << (b - 1)) - 1) ++b;
  return b;
}

std::uint32_t square(std::int32_t c) {
  const std::uint32_t m = static_cast<std::uint32_t>(c < 0 ? -c : c);
  return m * m;
}

}  // namespace

DatapathWidths DatapathWidths::for_spec(const KernelSpec& spec) {
  const int mag_max = std::max({-spec.x_min(), spec.x_max(), -spec.y_min(), spec.y_max()});
  DatapathWidths w{};
  w.coord_bits = std::max(signed_bits(spec.x_min(), spec.x_max()),
                          signed_bits(spec.y_min(), spec.y_max()));
  w.mag_bits = std::max(1u, static_cast<unsigned>(std::bit_width(static_cast<unsigned>(mag_max))));
  w.product_bits = 2 * w.mag_bits;
  w.sum_bits = w.product_bits + 1;
  return w;
}

Gauss2D::Gauss2D(const KernelSpec& spec, const Latencies& lat, const ExpLut& lut)
    : scales_(spec.scales),
      n_scales_(spec.scales.size()),
      lat_(lat),
      lut_(&lut),
      samples_(spec.samples()),
      rows_(spec.rows),
      cols_(spec.cols),
      mults_(lat.mult),
      adder_(lat.add),
      scalers_(lat.scale),
      exps_(lat.exp),
      valid_(lat.fill()) {
  spec.validate();
  lat.validate();
  scales_.resize(kMaxScales, scales_.back());
  if (spec.is_hardware_geometry()) {
    const CoordRom rom;
    for (const Coord8 w : rom.words()) xs_.push_back(w.value);
    ys_ = xs_;
  } else {
    xs_.resize(spec.cols);
    ys_.resize(spec.rows);
    std::iota(xs_.begin(), xs_.end(), spec.x_min());
    std::iota(ys_.begin(), ys_.end(), spec.y_min());
  }
}

void Gauss2D::start() {
  addr1_ = addr2_ = 0;
  accepted_ = tick_ = 0;
  enable_ = true;
  mults_.reset();
  adder_.reset();
  scalers_.reset();
  exps_.reset();
  valid_.reset();
}

TickRecord Gauss2D::step() {
  TickRecord r;
  step_many(std::span<TickRecord>(&r, 1));
  return r;
}

void Gauss2D::step_many(std::span<TickRecord> out) {
  // Work on local copies so the register state stays out of reach of the
  // byte-typed stores into `out`, then commit it once at the end.
  auto mults = mults_;
  auto adder = adder_;
  auto scalers = scalers_;
  auto exps = exps_;
  auto valid = valid_;
  const std::array<ScaleShift, kMaxScales> scales{scales_[0], scales_[1], scales_[2]};
  const ExpLut& lut = *lut_;
  const std::int32_t* xs = xs_.data();
  const std::int32_t* ys = ys_.data();
  const std::size_t n_scales = n_scales_;
  const std::uint32_t rows = rows_;
  const std::uint32_t cols = cols_;
  const std::uint64_t samples = samples_;
  std::uint32_t addr1 = addr1_;
  std::uint32_t addr2 = addr2_;
  bool enable = enable_;
  std::uint64_t accepted = accepted_;
  std::uint64_t tick = tick_;

  for (TickRecord& r : out) {
    r.tick = tick;
    r.addr1 = addr1;
    r.addr2 = addr2;
    r.dout1 = xs[addr1];
    r.dout2 = ys[addr2];

    // Every stage latches its input on this edge and exposes the value
    // latched `latency` edges ago, so outputs are read front to back.
    const Squares sq = mults.tick({square(r.dout1), square(r.dout2)});
    r.x2 = sq.x2;
    r.y2 = sq.y2;
    r.sum = adder.tick(sq.x2 + sq.y2);
    // All three chains are always clocked; slots beyond scale_count() repeat
    // the last configured scale and are blanked in the record.
    std::array<ExpArg, kMaxScales> u_in;
    for (std::size_t s = 0; s < kMaxScales; ++s) u_in[s] = scale_down_wide(r.sum, scales[s]);
    const auto u = scalers.tick(u_in);
    std::array<UQ8, kMaxScales> g_in;
    for (std::size_t s = 0; s < kMaxScales; ++s) g_in[s] = lut(u[s]);
    const auto g = exps.tick(g_in);
    r.u = u;
    r.g = g;
    for (std::size_t s = n_scales; s < kMaxScales; ++s) {
      r.u[s] = ExpArg{};
      r.g[s] = UQ8{};
    }
    r.valid = valid.tick(enable);

    if (enable) {
      if (++addr1 == cols) {
        addr1 = 0;
        if (++addr2 == rows) addr2 = 0;
      }
      if (++accepted == samples) enable = false;
    }
    ++tick;
  }

  mults_ = mults;
  adder_ = adder;
  scalers_ = scalers;
  exps_ = exps;
  valid_ = valid;
  addr1_ = addr1;
  addr2_ = addr2;
  enable_ = enable;
  accepted_ = accepted;
  tick_ = tick;
}

namespace {

MultiScaleResult run_machine(const KernelSpec& spec, const GenOptions& opts) {
  Gauss2D machine(spec, opts.latencies);
  MultiScaleResult out;
  for (const ScaleShift& sc : spec.scales) {
    KernelTile t;
    t.rows = spec.rows;
    t.cols = spec.cols;
    t.x_min = spec.x_min();
    t.y_min = spec.y_min();
    t.scale = sc;
    t.data.reserve(spec.samples());
    out.tiles.push_back(std::move(t));
  }
  std::vector<TickRecord> batch(4096);
  machine.start();
  while (!machine.frame_done()) {
    const auto n = std::min<std::uint64_t>(batch.size(), machine.frame_ticks() - machine.tick());
    machine.step_many(std::span(batch.data(), n));
    for (std::size_t i = 0; i < n; ++i) {
      if (!batch[i].valid) continue;
      for (std::size_t s = 0; s < out.tiles.size(); ++s) out.tiles[s].data.push_back(batch[i].g[s]);
    }
  }
  out.report = machine.report();
  return out;
}

}  // namespace

std::pair<KernelTile, CycleReport> generate_tile(const KernelSpec& spec, const ScaleShift& sc,
                                                 const GenOptions& opts) {
  KernelSpec one = spec;
  one.scales = {sc};
  MultiScaleResult r = run_machine(one, opts);
  return {std::move(r.tiles.front()), r.report};
}

MultiScaleResult generate_all_scales(const KernelSpec& spec, const GenOptions& opts) {
  spec.validate();
  if (opts.shared_front_end) return run_machine(spec, opts);
  MultiScaleResult out;
  for (const ScaleShift& sc : spec.scales) {
    auto [tile, report] = generate_tile(spec, sc, opts);
    out.tiles.push_back(std::move(tile));
    out.report = report;
  }
  return out;
}

NormConstant normalize(const KernelTile& tile) {
  std::uint64_t k_raw = 0;
  for (const UQ8 v : tile.data) k_raw += v.value;
  if (k_raw == 0) throw DegenerateKernelError("kernel tile sums to zero; cannot normalise");
  return {tile.scale, k_raw, 256.0 / static_cast<double>(k_raw)};
}

OracleTile oracle_tile(const KernelSpec& spec, double sigma) {
  if (!(sigma > 0.0)) throw ContractError("oracle sigma must be positive");
  spec.validate();
  OracleTile o;
  o.rows = spec.rows;
  o.cols = spec.cols;
  o.x_min = spec.x_min();
  o.y_min = spec.y_min();
  o.sigma = sigma;
  o.values.reserve(spec.samples());
  const double denom = 2.0 * sigma * sigma;
  long double total = 0;
  for (int y = spec.y_min(); y <= spec.y_max(); ++y) {
    for (int x = spec.x_min(); x <= spec.x_max(); ++x) {
      const double r2 = static_cast<double>(x) * x + static_cast<double>(y) * y;
      const double v = std::exp(-r2 / denom);
      o.values.push_back(v);
      total += v;
    }
  }
  o.normalized.reserve(o.values.size());
  for (const double v : o.values) {
    o.normalized.push_back(static_cast<double>(static_cast<long double>(v) / total));
  }
  return o;
}

ErrorReport error_report(const KernelTile& hw, const OracleTile& oracle) {
  if (hw.rows != oracle.rows || hw.cols != oracle.cols || hw.x_min != oracle.x_min ||
      hw.y_min != oracle.y_min || hw.data.size() != oracle.values.size()) {
    throw ShapeMismatchError("hardware tile and oracle differ in shape");
  }
  ErrorReport rep;
  long double sse = 0;
  for (std::size_t k = 0; k < hw.data.size(); ++k) {
    const double d = std::abs(hw.data[k].real() - oracle.values[k]);
    sse += static_cast<long double>(d) * d;
    if (d > rep.max_abs) {
      rep.max_abs = d;
      rep.argmax_index = k;
    }
  }
  if (!hw.data.empty()) {
    rep.rmse = static_cast<double>(std::sqrt(sse / static_cast<long double>(hw.data.size())));
  }
  rep.argmax_x = hw.x_min + static_cast<int>(rep.argmax_index % hw.cols);
  rep.argmax_y = hw.y_min + static_cast<int>(rep.argmax_index / hw.cols);
  return rep;
}

std::optional<double> oracle_error_ceiling(unsigned sigma) {
  switch (sigma) {
    case 16:
      return 1.0 / 256;  // the centre clamp of 1.0 to 255/256 is the worst sample
    case 64:
    case 128:
      return 2.0 / 256;
    default:
      return std::nullopt;
  }
}

std::string tile_csv(const KernelTile& tile) {
  std::string out;
  out.reserve(tile.data.size() * 4);
  for (std::uint32_t r = 0; r < tile.rows; ++r) {
    for (std::uint32_t c = 0; c < tile.cols; ++c) {
      if (c) out += ',';
      out += std::to_string(unsigned{tile.data[std::size_t{r} * tile.cols + c].value});
    }
    out += '\n';
  }
  return out;
}

}  // namespace gauss2d
