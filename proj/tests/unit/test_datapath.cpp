#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "gauss2d/datapath.hpp"
#include "gauss2d/errors.hpp"
#include "gauss2d/file_util.hpp"
#include "gauss2d/pipe_stage.hpp"
#include "test_support.hpp"

using namespace gauss2d;

TEST(Mult8x8, Examples) {
  EXPECT_EQ(mult8x8(UMag8{0}, UMag8{77}).value, 0);
  EXPECT_EQ(mult8x8(UMag8{128}, UMag8{128}).value, 16384);
  EXPECT_EQ(mult8x8(UMag8{255}, UMag8{255}).value, 65025);
}

TEST(Mult8x8, ExhaustiveAgainstIntegerProduct) {
  for (unsigned a = 0; a < 256; ++a)
    for (unsigned b = 0; b < 256; ++b)
      ASSERT_EQ(mult8x8(UMag8{static_cast<std::uint8_t>(a)}, UMag8{static_cast<std::uint8_t>(b)}).value, a * b);
}

TEST(AddSq, Examples) {
  EXPECT_EQ(add_sq(UProd16{0}, UProd16{0}).value, 0u);
  EXPECT_EQ(add_sq(UProd16{16384}, UProd16{16384}).value, 32768u);
  EXPECT_EQ(add_sq(UProd16{16129}, UProd16{0}).value, 16129u);
}

TEST(AddSq, NeverExceeds32768ForCoordinateSquares) {
  for (int x = -128; x < 128; ++x) {
    const UMag8 m = coord_abs(Coord8{static_cast<std::int8_t>(x)});
    const UProd16 sq = mult8x8(m, m);
    EXPECT_LE(add_sq(sq, UProd16{16384}).value, 32768u);
  }
}

TEST(ScaleShift, DesignScales) {
  const auto s = design_scales();
  EXPECT_EQ(s[0].sigma(), 16u);
  EXPECT_EQ(s[0].shift(), 9u);
  EXPECT_EQ(s[1].sigma(), 64u);
  EXPECT_EQ(s[1].shift(), 13u);
  EXPECT_EQ(s[2].sigma(), 128u);
  EXPECT_EQ(s[2].shift(), 15u);
}

TEST(ScaleShift, RejectsNonPowerOfTwo) {
  EXPECT_THROW(ScaleShift::from_sigma(0), ConfigError);
  EXPECT_THROW(ScaleShift::from_sigma(24), ConfigError);
  EXPECT_THROW(ScaleShift::from_sigma(100), ConfigError);
  EXPECT_EQ(ScaleShift::from_sigma(1).shift(), 1u);
  EXPECT_EQ(ScaleShift::from_sigma(32).shift(), 11u);
}

TEST(ScaleDown, Examples) {
  const auto s = design_scales();
  EXPECT_DOUBLE_EQ(scale_down(USum17{32768}, s[1]).real(), 4.0);
  EXPECT_DOUBLE_EQ(scale_down(USum17{32768}, s[2]).real(), 1.0);
  // 32768 / 512 = 64, far beyond the 13-bit argument range.
  EXPECT_EQ(scale_down(USum17{32768}, s[0]).raw, ExpArg::kMaxRaw);
  EXPECT_EQ(exp_lut(scale_down(USum17{32768}, s[0])).value, 0);
}

TEST(ScaleDown, ExhaustiveAgainstRationalDivision) {
  // floor(s / (2 sigma^2) * 2^10), computed by integer division rather than shifts.
  for (const ScaleShift& sc : design_scales()) {
    const std::uint64_t denom = 2ull * sc.sigma() * sc.sigma();
    for (std::uint32_t s = 0; s <= 32768; ++s) {
      const std::uint64_t expect = std::min<std::uint64_t>((std::uint64_t{s} * 1024) / denom, 8191);
      ASSERT_EQ(scale_down(USum17{s}, sc).raw, expect) << "sigma " << sc.sigma() << " s " << s;
    }
  }
}

TEST(ExpArgFromReal, RoundsAndSaturates) {
  EXPECT_EQ(exp_arg_from_real(0.0).raw, 0);
  EXPECT_EQ(exp_arg_from_real(1.0).raw, 1024);
  EXPECT_EQ(exp_arg_from_real(8.0).raw, 8191);
  EXPECT_EQ(exp_arg_from_real(100.0).raw, 8191);
  EXPECT_THROW(exp_arg_from_real(-0.5), ContractError);
}

TEST(ExpLut, Examples) {
  EXPECT_EQ(exp_lut(exp_arg_from_real(0.0)).value, 255);
  EXPECT_EQ(exp_lut(exp_arg_from_real(1.0)).value, 94);
  EXPECT_EQ(exp_lut(exp_arg_from_real(0.5)).value, 155);
  EXPECT_EQ(exp_lut(exp_arg_from_real(4.0)).value, 5);
  EXPECT_EQ(exp_lut(exp_arg_from_real(8.0)).value, 0);
}

TEST(ExpLut, MatchesOracleDigest) {
  // Sum, first zero and digest of the 8192-entry table as derived by the
  // high-precision oracle script.
  const auto e = ExpLut::shared().entries();
  unsigned long sum = 0;
  std::size_t first_zero = e.size();
  for (std::size_t i = 0; i < e.size(); ++i) {
    sum += e[i].value;
    if (e[i].value == 0 && first_zero == e.size()) first_zero = i;
  }
  EXPECT_EQ(sum, 261921u);
  EXPECT_EQ(first_zero, 6389u);
  EXPECT_EQ(sha256_hex(std::as_bytes(e)), fixtures::golden("explut"));
}

TEST(ExpLut, MonotoneNonIncreasing) {
  const auto e = ExpLut::shared().entries();
  for (std::size_t i = 1; i < e.size(); ++i) ASSERT_LE(e[i].value, e[i - 1].value) << i;
}

TEST(ExpLut, CsvDump) {
  const std::string csv = explut_csv(ExpLut::shared());
  EXPECT_EQ(csv.rfind("index,argument,value\n0,0.0000000000,255\n", 0), 0u);
  EXPECT_NE(csv.find("\n1024,1.0000000000,94\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8193);
}

TEST(Latencies, FillAndValidation) {
  EXPECT_EQ(Latencies{}.fill(), 8u);
  EXPECT_EQ(Latencies::with_mult(8).fill(), 11u);
  EXPECT_THROW(Latencies::with_mult(4), ConfigError);
  EXPECT_THROW(Latencies::with_mult(9), ConfigError);
}

TEST(PipeStage, DelaysByLatencyForRandomStreams) {
  std::mt19937 rng(5);
  for (unsigned lat = 1; lat <= 15; ++lat) {
    PipeStage<std::uint32_t> p(lat);
    std::deque<std::uint32_t> model(lat, 0u);  // reset contents
    for (int i = 0; i < 10000; ++i) {
      const std::uint32_t in = rng();
      model.push_back(in);
      ASSERT_EQ(p.peek(), model.front());
      ASSERT_EQ(p.tick(in), model.front()) << "latency " << lat << " tick " << i;
      model.pop_front();
    }
  }
}

TEST(PipeStage, RejectsBadLatency) {
  EXPECT_THROW(PipeStage<int>(0), ConfigError);
  EXPECT_THROW(PipeStage<int>(16), ConfigError);
}

TEST(PipeStage, ResetClearsRegisters) {
  PipeStage<int> p(2);
  p.tick(5);
  p.tick(6);
  p.reset();
  EXPECT_EQ(p.tick(1), 0);
  EXPECT_EQ(p.tick(2), 0);
  EXPECT_EQ(p.tick(3), 1);
}

TEST(ExpArgFromReal, HalfStepBoundaryIsExact) {
  const double half = 0.5 / 1024;
  EXPECT_EQ(exp_arg_from_real(half).raw, 1);
  EXPECT_EQ(exp_arg_from_real(std::nextafter(half, 0.0)).raw, 0);
}
