#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "gauss2d/errors.hpp"
#include "gauss2d/file_util.hpp"
#include "gauss2d/generator.hpp"
#include "test_support.hpp"

using namespace gauss2d;

namespace {

const KernelTile& default_tile(std::size_t i) {
  static const MultiScaleResult all = generate_all_scales(KernelSpec::three_scale());
  return all.tiles.at(i);
}

// Bit model as a plain function of the coordinate, with no clocking.
UQ8 composed(int x, int y, const ScaleShift& sc) {
  const UMag8 mx = coord_abs(Coord8{static_cast<std::int8_t>(x)});
  const UMag8 my = coord_abs(Coord8{static_cast<std::int8_t>(y)});
  return exp_lut(scale_down(add_sq(mult8x8(mx, mx), mult8x8(my, my)), sc));
}

}  // namespace

TEST(GenerateTile, Examples) {
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(default_tile(i).at(0, 0).value, 255);
  EXPECT_EQ(default_tile(1).at(-128, -128).value, 5);
  EXPECT_EQ(default_tile(0).at(16, 0).value, 155);
  EXPECT_EQ(default_tile(2).at(-128, -128).value, 94);
}

TEST(GenerateTile, RasterLayout) {
  const KernelTile& t = default_tile(0);
  EXPECT_EQ(t.rows, 256u);
  EXPECT_EQ(t.cols, 256u);
  EXPECT_EQ(t.x_min, -128);
  EXPECT_EQ(t.y_min, -128);
  EXPECT_EQ(t.data.size(), 65536u);
  EXPECT_EQ(t.data[128 * 256 + 128].value, 255);
}

TEST(GenerateTile, HashesMatchOracle) {
  EXPECT_EQ(sha256_hex(default_tile(0).bytes()), fixtures::golden("tile.sigma16"));
  EXPECT_EQ(sha256_hex(default_tile(1).bytes()), fixtures::golden("tile.sigma64"));
  EXPECT_EQ(sha256_hex(default_tile(2).bytes()), fixtures::golden("tile.sigma128"));
}

TEST(GenerateTile, EqualsUnclockedComposition) {
  for (std::size_t i = 0; i < 3; ++i) {
    const KernelTile& t = default_tile(i);
    for (int y = -128; y < 128; ++y)
      for (int x = -128; x < 128; ++x) ASSERT_EQ(t.at(x, y), composed(x, y, t.scale)) << x << "," << y;
  }
}

TEST(GenerateTile, FourFoldSymmetry) {
  for (std::size_t i = 0; i < 3; ++i) {
    const KernelTile& t = default_tile(i);
    for (int y = -127; y <= 127; ++y)
      for (int x = -127; x <= 127; ++x) {
        const UQ8 v = t.at(x, y);
        ASSERT_EQ(v, t.at(-x, y));
        ASSERT_EQ(v, t.at(x, -y));
        ASSERT_EQ(v, t.at(-x, -y));
      }
  }
}

TEST(GenerateTile, RadiallyNonIncreasing) {
  for (std::size_t i = 0; i < 3; ++i) {
    const KernelTile& t = default_tile(i);
    // Largest sample seen at each squared radius; must be non-increasing in r^2.
    std::vector<int> by_r2(32769, -1);
    for (int y = -128; y < 128; ++y)
      for (int x = -128; x < 128; ++x) {
        const int r2 = x * x + y * y;
        const int v = t.at(x, y).value;
        if (by_r2[r2] >= 0) ASSERT_EQ(by_r2[r2], v) << "same radius, different sample";
        by_r2[r2] = v;
      }
    int prev = 256;
    for (const int v : by_r2) {
      if (v < 0) continue;
      ASSERT_LE(v, prev);
      prev = v;
    }
  }
}

TEST(GenerateTile, Deterministic) {
  const auto a = generate_tile(KernelSpec::single(64), ScaleShift::from_sigma(64));
  const auto b = generate_tile(KernelSpec::single(64), ScaleShift::from_sigma(64));
  EXPECT_EQ(a.first.data, b.first.data);
  EXPECT_EQ(a.first.data, default_tile(1).data);
}

TEST(GenerateTile, IndependentOfMultiplierLatency) {
  GenOptions slow;
  slow.latencies = Latencies::with_mult(8);
  const auto [tile, rep] = generate_tile(KernelSpec::single(16), ScaleShift::from_sigma(16), slow);
  EXPECT_EQ(tile.data, default_tile(0).data);
  EXPECT_EQ(rep.fill_latency, 11u);
  EXPECT_EQ(rep.total_ticks, 65547u);
}

TEST(GenerateAllScales, SharedFrontEndMatchesIndependentMachines) {
  GenOptions indep;
  indep.shared_front_end = false;
  const auto r = generate_all_scales(KernelSpec::three_scale(), indep);
  ASSERT_EQ(r.tiles.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.tiles[i].data, default_tile(i).data);
}

TEST(CycleModel, TotalTicksAndFillForBothLatencies) {
  for (const unsigned mult : {5u, 8u}) {
    const Latencies lat = Latencies::with_mult(mult);
    const unsigned fill = mult + 3;
    Gauss2D m(KernelSpec::three_scale(), lat);
    m.start();
    std::uint64_t first_valid = ~0ull, valid = 0, ticks = 0, last_valid = 0;
    while (!m.frame_done()) {
      const TickRecord r = m.step();
      ASSERT_EQ(r.tick, ticks);
      if (r.valid) {
        if (first_valid == ~0ull) first_valid = r.tick;
        last_valid = r.tick;
        ++valid;
      }
      ++ticks;
    }
    EXPECT_EQ(ticks, 65536u + fill);
    EXPECT_EQ(first_valid, fill);
    EXPECT_EQ(last_valid, 65535u + fill);
    EXPECT_EQ(valid, 65536u);
    const CycleReport rep = m.report();
    EXPECT_EQ(rep.total_ticks, 65536u + fill);
    EXPECT_EQ(rep.fill_latency, fill);
    EXPECT_EQ(rep.samples, 65536u);
  }
}

TEST(CycleModel, ThroughputApproachesOnePerTick) {
  CycleReport small{16, 16 + 8, 8};
  CycleReport frame{65536, 65544, 8};
  EXPECT_LT(small.throughput_samples_per_tick(), frame.throughput_samples_per_tick());
  EXPECT_GT(frame.throughput_samples_per_tick(), 0.9998);
  EXPECT_LT(frame.throughput_samples_per_tick(), 1.0);
}

TEST(CycleModel, ValidSamplesFollowRasterOrder) {
  Gauss2D m(KernelSpec::three_scale(), Latencies{});
  m.start();
  std::uint64_t k = 0;
  while (!m.frame_done()) {
    const TickRecord r = m.step();
    if (!r.valid) continue;
    const int x = static_cast<int>(k % 256) - 128;
    const int y = static_cast<int>(k / 256) - 128;
    ASSERT_EQ(r.g[0], default_tile(0).at(x, y));
    ASSERT_EQ(r.g[2], default_tile(2).at(x, y));
    ++k;
  }
}

TEST(CycleModel, StepManyMatchesSingleSteps) {
  Gauss2D a(KernelSpec::three_scale(), Latencies::with_mult(7));
  Gauss2D b(KernelSpec::three_scale(), Latencies::with_mult(7));
  a.start();
  b.start();
  std::vector<TickRecord> batch(1000);
  while (!a.frame_done()) {
    const auto n = std::min<std::uint64_t>(batch.size(), a.frame_ticks() - a.tick());
    a.step_many(std::span(batch.data(), n));
    for (std::size_t i = 0; i < n; ++i) {
      const TickRecord r = b.step();
      ASSERT_EQ(r.tick, batch[i].tick);
      ASSERT_EQ(r.valid, batch[i].valid);
      ASSERT_EQ(r.sum, batch[i].sum);
      ASSERT_EQ(r.u, batch[i].u);
      ASSERT_EQ(r.g, batch[i].g);
    }
  }
  EXPECT_TRUE(b.frame_done());
}

TEST(CycleModel, RestartReproducesFrame) {
  Gauss2D m(KernelSpec::single(16), Latencies{});
  std::vector<std::uint8_t> first, second;
  for (auto* out : {&first, &second}) {
    m.start();
    while (!m.frame_done()) {
      const TickRecord r = m.step();
      if (r.valid) out->push_back(r.g[0].value);
    }
  }
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.size(), 65536u);
}

TEST(CycleModel, UnusedScaleSlotsAreZero) {
  Gauss2D m(KernelSpec::single(64), Latencies{});
  m.start();
  while (!m.frame_done()) {
    const TickRecord r = m.step();
    ASSERT_EQ(r.g[1].value, 0);
    ASSERT_EQ(r.g[2].value, 0);
    ASSERT_EQ(r.u[1].raw, 0);
  }
}

TEST(KernelSpec, Validation) {
  KernelSpec s = KernelSpec::three_scale();
  s.scales.push_back(ScaleShift::from_sigma(32));
  EXPECT_THROW(s.validate(), ConfigError);
  s.scales.clear();
  EXPECT_THROW(s.validate(), ConfigError);
  EXPECT_THROW(KernelSpec::single(16, 0, 4).validate(), ConfigError);
  EXPECT_THROW(KernelSpec::single(24), ConfigError);
}

TEST(KernelSpec, DatapathWidths) {
  EXPECT_EQ(DatapathWidths::for_spec(KernelSpec::three_scale()), (DatapathWidths{8, 8, 16, 17}));
  const DatapathWidths w = DatapathWidths::for_spec(KernelSpec::single(16, 1024, 1024));
  EXPECT_EQ(w.coord_bits, 10u);
  EXPECT_EQ(w.mag_bits, 10u);
  EXPECT_EQ(w.sum_bits, 21u);
}

TEST(KernelSpec, SmallGeometryCoordinates) {
  const auto [t, rep] = generate_tile(KernelSpec::single(2, 5, 7), ScaleShift::from_sigma(2));
  EXPECT_EQ(t.x_min, -3);
  EXPECT_EQ(t.y_min, -2);
  EXPECT_EQ(rep.samples, 35u);
  EXPECT_EQ(rep.total_ticks, 43u);
  for (int y = -2; y <= 2; ++y)
    for (int x = -3; x <= 3; ++x) {
      // sigma 2: u = floor((x^2 + y^2) * 1024 / 8)
      const auto u = ExpArg{static_cast<std::uint16_t>((x * x + y * y) * 128)};
      EXPECT_EQ(t.at(x, y), exp_lut(u));
    }
}

TEST(KernelSpec, LargeGeometryUsesWideLanes) {
  const auto [t, rep] = generate_tile(KernelSpec::single(512, 1024, 1024), ScaleShift::from_sigma(512));
  EXPECT_EQ(t.at(0, 0).value, 255);
  // (-512)^2 * 2 / (2 * 512^2) = 1.0
  EXPECT_EQ(t.at(-512, -512).value, 94);
  EXPECT_EQ(rep.samples, 1u << 20);
}

TEST(Normalize, KRawValues) {
  EXPECT_EQ(normalize(default_tile(0)).k_raw, 411251u);
  EXPECT_EQ(normalize(default_tile(1)).k_raw, 6004358u);
  EXPECT_EQ(normalize(default_tile(2)).k_raw, 12287655u);
}

TEST(Normalize, Sigma16NearContinuousIntegral) {
  const double continuous = 2 * std::numbers::pi * 16 * 16 * 256;
  const double k = static_cast<double>(normalize(default_tile(0)).k_raw);
  EXPECT_NEAR(k / continuous, 1.0, 0.02);
}

TEST(Normalize, SingleSampleAndDegenerate) {
  KernelTile one;
  one.rows = one.cols = 1;
  one.data = {UQ8{255}};
  const NormConstant n = normalize(one);
  EXPECT_EQ(n.k_raw, 255u);
  EXPECT_DOUBLE_EQ(255 * n.k_real / 256, 1.0);

  KernelTile zeros;
  zeros.rows = zeros.cols = 2;
  zeros.data.assign(4, UQ8{0});
  EXPECT_THROW(normalize(zeros), DegenerateKernelError);
}

TEST(Normalize, NormalizedTileSumsToOne) {
  const NormConstant n = normalize(default_tile(1));
  long double s = 0;
  for (const UQ8 v : default_tile(1).data) s += v.value * static_cast<long double>(n.k_real) / 256;
  EXPECT_NEAR(static_cast<double>(s), 1.0, 1e-12);
}

TEST(OracleTile, Examples) {
  const OracleTile o16 = oracle_tile(KernelSpec::three_scale(), 16);
  const OracleTile o64 = oracle_tile(KernelSpec::three_scale(), 64);
  EXPECT_DOUBLE_EQ(o16.at(0, 0), 1.0);
  EXPECT_NEAR(o64.at(-128, -128), std::exp(-4.0), 1e-15);
  const long double sum = std::accumulate(o16.normalized.begin(), o16.normalized.end(), 0.0L);
  EXPECT_NEAR(static_cast<double>(sum), 1.0, 1e-12);
  EXPECT_THROW(oracle_tile(KernelSpec::three_scale(), 0.0), ContractError);
}

TEST(ErrorReport, IdenticalTilesGiveZero) {
  const KernelSpec spec = KernelSpec::single(64, 4, 4);
  OracleTile o = oracle_tile(spec, 64);
  KernelTile t;
  t.rows = t.cols = 4;
  t.x_min = t.y_min = -2;
  t.data.assign(16, UQ8{128});
  o.values.assign(16, 0.5);
  const ErrorReport r = error_report(t, o);
  EXPECT_EQ(r.max_abs, 0.0);
  EXPECT_EQ(r.rmse, 0.0);
  EXPECT_EQ(r.argmax_index, 0u);
  EXPECT_EQ(r.argmax_x, -2);
  EXPECT_EQ(r.argmax_y, -2);
}

TEST(ErrorReport, ShapeMismatch) {
  const OracleTile o = oracle_tile(KernelSpec::single(16, 8, 8), 16);
  EXPECT_THROW(error_report(default_tile(0), o), ShapeMismatchError);
}

TEST(ErrorReport, QuantizedOracleWithinHalfLsbAwayFromClamp) {
  const KernelSpec spec = KernelSpec::three_scale();
  for (const double sigma : {16.0, 64.0, 128.0}) {
    const OracleTile o = oracle_tile(spec, sigma);
    KernelTile q;
    q.rows = q.cols = 256;
    q.x_min = q.y_min = -128;
    for (const double v : o.values) q.data.push_back(uq8_encode(v));
    double unclamped = 0;
    for (std::size_t k = 0; k < q.data.size(); ++k)
      if (q.data[k].value < 255) unclamped = std::max(unclamped, std::abs(q.data[k].real() - o.values[k]));
    EXPECT_LE(unclamped, 1.0 / 512);
    EXPECT_LE(error_report(q, o).max_abs, 1.0 / 256);
  }
}

TEST(ErrorReport, FullDatapathWithinPinnedCeilings) {
  const KernelSpec spec = KernelSpec::three_scale();
  const double rmse_expect[] = {0.00050081531, 0.00114200771, 0.00121116659};
  for (std::size_t i = 0; i < 3; ++i) {
    const unsigned sigma = default_tile(i).scale.sigma();
    const ErrorReport r = error_report(default_tile(i), oracle_tile(spec, sigma));
    const auto ceiling = oracle_error_ceiling(sigma);
    ASSERT_TRUE(ceiling.has_value());
    EXPECT_LE(r.max_abs, *ceiling);
    EXPECT_LE(r.max_abs, 2.0 / 256);
    EXPECT_NEAR(r.rmse, rmse_expect[i], 1e-10);
    // The worst sample is the centre, where 1.0 is stored as 255/256.
    EXPECT_DOUBLE_EQ(r.max_abs, 1.0 / 256);
    EXPECT_EQ(r.argmax_x, 0);
    EXPECT_EQ(r.argmax_y, 0);
  }
  EXPECT_FALSE(oracle_error_ceiling(32).has_value());
}

TEST(TileCsv, RowPerLine) {
  const auto [t, rep] = generate_tile(KernelSpec::single(2, 3, 3), ScaleShift::from_sigma(2));
  EXPECT_EQ(tile_csv(t), "199,226,199\n226,255,226\n199,226,199\n");
}
