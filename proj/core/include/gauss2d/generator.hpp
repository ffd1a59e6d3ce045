#pragma once

// The gauss2D machine: coordinate ROM -> squaring multipliers -> adder ->
// per-scale scale-down -> exponent LUT, stepped one clock at a time, plus the
// double-precision reference surface and the normalisation/error utilities
// built on top of it.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gauss2d/datapath.hpp"
#include "gauss2d/fxp.hpp"
#include "gauss2d/pipe_stage.hpp"

namespace gauss2d {

inline constexpr std::size_t kMaxScales = 3;

/// Kernel geometry and the scales produced per coordinate. Coordinates run
/// from -floor(n/2) to n - 1 - floor(n/2) along each axis, raster order.
struct KernelSpec {
  std::uint32_t rows = 256;
  std::uint32_t cols = 256;
  std::vector<ScaleShift> scales;

  static KernelSpec three_scale();
  static KernelSpec single(unsigned sigma, std::uint32_t rows = 256, std::uint32_t cols = 256);

  /// Throws ConfigError for empty geometry, more than 65536 per axis, or a
  /// scale count outside [1, 3].
  void validate() const;

  bool is_hardware_geometry() const { return rows == 256 && cols == 256; }
  std::uint64_t samples() const { return std::uint64_t{rows} * cols; }
  int x_min() const { return -static_cast<int>(cols / 2); }
  int y_min() const { return -static_cast<int>(rows / 2); }
  int x_max() const { return x_min() + static_cast<int>(cols) - 1; }
  int y_max() const { return y_min() + static_cast<int>(rows) - 1; }
};

/// Register widths implied by a kernel geometry. The 256x256 geometry gives
/// the 8/8/16/17 widths of the reference design.
struct DatapathWidths {
  unsigned coord_bits;
  unsigned mag_bits;
  unsigned product_bits;
  unsigned sum_bits;

  static DatapathWidths for_spec(const KernelSpec& spec);
  friend bool operator==(const DatapathWidths&, const DatapathWidths&) = default;
};

struct GenOptions {
  Latencies latencies;
  bool shared_front_end = true;  // false runs one full machine per scale
};

struct CycleReport {
  std::uint64_t samples = 0;
  std::uint64_t total_ticks = 0;
  std::uint64_t fill_latency = 0;

  double throughput_samples_per_tick() const {
    return total_ticks == 0 ? 0.0 : static_cast<double>(samples) / static_cast<double>(total_ticks);
  }
};

/// Every observable register of the machine during one tick.
struct TickRecord {
  std::uint64_t tick = 0;
  bool valid = false;  // g[] carries a real sample
  std::uint32_t addr1 = 0;
  std::uint32_t addr2 = 0;
  std::int32_t dout1 = 0;
  std::int32_t dout2 = 0;
  std::uint32_t x2 = 0;  // multiplier outputs
  std::uint32_t y2 = 0;
  std::uint32_t sum = 0;  // adder output; < 2^31 for any geometry up to 65536
  std::array<ExpArg, kMaxScales> u{};
  std::array<UQ8, kMaxScales> g{};
};

/// Cycle-stepped model of the top-level gauss2D design.
///
/// start() resets every register and raises enable; each step() is one
/// rising clock edge. The controller lowers enable after rows*cols accepted
/// coordinates; the frame completes fill() ticks later.
class Gauss2D {
 public:
  Gauss2D(const KernelSpec& spec, const Latencies& lat, const ExpLut& lut = ExpLut::shared());

  void start();
  TickRecord step();
  /// Clocks out.size() consecutive edges, one record per edge.
  void step_many(std::span<TickRecord> out);

  bool frame_done() const { return tick_ >= frame_ticks(); }
  std::uint64_t tick() const { return tick_; }
  std::uint64_t frame_ticks() const { return samples_ + lat_.fill(); }
  std::size_t scale_count() const { return n_scales_; }
  CycleReport report() const { return {samples_, frame_ticks(), lat_.fill()}; }

 private:
  std::vector<std::int32_t> xs_;
  std::vector<std::int32_t> ys_;
  std::vector<ScaleShift> scales_;  // padded to kMaxScales
  std::size_t n_scales_;
  Latencies lat_;
  const ExpLut* lut_;
  std::uint64_t samples_;
  std::uint32_t rows_;
  std::uint32_t cols_;

  std::uint32_t addr1_ = 0;
  std::uint32_t addr2_ = 0;
  bool enable_ = false;
  std::uint64_t accepted_ = 0;
  std::uint64_t tick_ = 0;

  struct Squares {
    std::uint32_t x2 = 0;
    std::uint32_t y2 = 0;
  };

  // The two multipliers, and the three scaler / exponent units, run in
  // lock-step with identical latencies and share one register chain each.
  PipeStage<Squares> mults_;
  PipeStage<std::uint32_t> adder_;
  PipeStage<std::array<ExpArg, kMaxScales>> scalers_;
  PipeStage<std::array<UQ8, kMaxScales>> exps_;
  PipeStage<bool> valid_;
};

/// Raster M x N array of UQ8 samples of e^(-(x^2+y^2)/2 sigma^2), unnormalised.
struct KernelTile {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  int x_min = 0;
  int y_min = 0;
  ScaleShift scale = ScaleShift::from_sigma(16);
  std::vector<UQ8> data;

  UQ8 at(int x, int y) const {
    return data[static_cast<std::size_t>(y - y_min) * cols + static_cast<std::size_t>(x - x_min)];
  }
  std::span<const std::byte> bytes() const { return std::as_bytes(std::span(data)); }
};

struct MultiScaleResult {
  std::vector<KernelTile> tiles;  // one per spec.scales entry, same order
  CycleReport report;
};

/// Runs one frame for a single scale. The scale need not be in spec.scales.
std::pair<KernelTile, CycleReport> generate_tile(const KernelSpec& spec, const ScaleShift& sc,
                                                 const GenOptions& opts = {});

/// Runs one frame producing every scale in spec.scales.
MultiScaleResult generate_all_scales(const KernelSpec& spec, const GenOptions& opts = {});

struct NormConstant {
  ScaleShift scale;
  std::uint64_t k_raw;  // sum of samples in UQ8 units
  double k_real;        // 256 / k_raw
};

/// Throws DegenerateKernelError when every sample is zero.
NormConstant normalize(const KernelTile& tile);

/// Double-precision reference surface on the same coordinate grid.
struct OracleTile {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  int x_min = 0;
  int y_min = 0;
  double sigma = 0;
  std::vector<double> values;      // e^(-(x^2+y^2)/2 sigma^2)
  std::vector<double> normalized;  // values / sum(values)

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y - y_min) * cols + static_cast<std::size_t>(x - x_min)];
  }
};

/// Throws ContractError for sigma <= 0.
OracleTile oracle_tile(const KernelSpec& spec, double sigma);

struct ErrorReport {
  double max_abs = 0;
  double rmse = 0;
  std::size_t argmax_index = 0;  // raster index, first occurrence
  int argmax_x = 0;
  int argmax_y = 0;
};

/// Compares hw/256 against the reference. Throws ShapeMismatchError.
ErrorReport error_report(const KernelTile& hw, const OracleTile& oracle);

/// Regression ceiling on error_report().max_abs for the 256x256 tile at a
/// design scale (2/256 for sigma 64 and 128, 1/256 for sigma 16); nullopt for
/// other scales.
std::optional<double> oracle_error_ceiling(unsigned sigma);

/// One comma-separated line per kernel row.
std::string tile_csv(const KernelTile& tile);

}  // namespace gauss2d
