#include "gauss2d/blur.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>

#include "gauss2d/errors.hpp"

namespace gauss2d {

Boundary parse_boundary(std::string_view name) {
  if (name == "replicate") return Boundary::Replicate;
  if (name == "reflect") return Boundary::Reflect;
  if (name == "zero") return Boundary::Zero;
  throw ConfigError("unknown boundary '" + std::string(name) + "'");
}

ConvMode parse_mode(std::string_view name) {
  if (name == "separable") return ConvMode::Separable;
  if (name == "direct2d") return ConvMode::Direct2d;
  throw ConfigError("unknown convolution mode '" + std::string(name) + "'");
}

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GAUSS2D_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

long boundary_index(long i, long n, Boundary b) {
  if (i >= 0 && i < n) return i;
  switch (b) {
    case Boundary::Replicate:
      return i < 0 ? 0 : n - 1;
    case Boundary::Reflect: {
      // Edge sample repeated: ... c b a | a b c ... c b a | a b c
      const long period = 2 * n;
      const long m = ((i % period) + period) % period;
      return m < n ? m : period - 1 - m;
    }
    case Boundary::Zero:
      return -1;
  }
  return -1;
}

namespace {

constexpr int kGridMin = -128;
constexpr int kGridMax = 127;

// Splits [0, n) into contiguous chunks, one per worker. Every output element
// is computed by the same instruction sequence whichever chunk owns it.
void parallel_rows(std::size_t n, unsigned threads, const std::function<void(std::size_t, std::size_t)>& fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = t * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    workers.emplace_back([&fn, b, e] { fn(b, e); });
  }
}

std::uint8_t quantize(float v) {
  const float r = std::floor(v + 0.5f);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0f, 255.0f));
}

constexpr std::size_t kStrip = 256;

// acc[t] = w0*c[t] + sum_k w[k] * (lo[k][t] + hi[k][t]) + sum_e we[e] * ex[e][t]
template <std::size_t N>
inline void fir_strip(float* __restrict acc, std::size_t n, const float* center, float w0,
                      const float* const* lo, const float* const* hi, const float* w, std::size_t pairs,
                      const float* const* ex, const float* we, std::size_t extras) {
  const std::size_t len = N ? N : n;
  for (std::size_t t = 0; t < len; ++t) acc[t] = w0 * center[t];
  for (std::size_t k = 0; k < pairs; ++k) {
    const float* __restrict a = lo[k];
    const float* __restrict b = hi[k];
    const float wk = w[k];
    for (std::size_t t = 0; t < len; ++t) acc[t] += wk * (a[t] + b[t]);
  }
  for (std::size_t e = 0; e < extras; ++e) {
    const float* __restrict a = ex[e];
    const float wk = we[e];
    for (std::size_t t = 0; t < len; ++t) acc[t] += wk * a[t];
  }
}

void fir(float* acc, std::size_t n, const float* center, float w0, const float* const* lo,
         const float* const* hi, const float* w, std::size_t pairs, const float* const* ex,
         const float* we, std::size_t extras) {
  if (n == kStrip) {
    fir_strip<kStrip>(acc, n, center, w0, lo, hi, w, pairs, ex, we, extras);
  } else {
    fir_strip<0>(acc, n, center, w0, lo, hi, w, pairs, ex, we, extras);
  }
}

// Tap layout shared by both passes: symmetric pairs 1..pairs, then the
// unmatched taps on the longer side.
struct TapPlan {
  float w0;
  std::vector<float> pair_w;
  std::vector<int> extra_off;  // signed offsets
  std::vector<float> extra_w;
};

TapPlan plan_taps(const SeparableProfile& p) {
  TapPlan plan;
  plan.w0 = p.at(0);
  const int pairs = std::min(p.left, p.right);
  for (int k = 1; k <= pairs; ++k) plan.pair_w.push_back(p.at(k));
  for (int k = pairs + 1; k <= p.left; ++k) {
    plan.extra_off.push_back(-k);
    plan.extra_w.push_back(p.at(-k));
  }
  for (int k = pairs + 1; k <= p.right; ++k) {
    plan.extra_off.push_back(k);
    plan.extra_w.push_back(p.at(k));
  }
  return plan;
}

void check_image(const Image& img) {
  if (img.width == 0 || img.height == 0 || img.data.empty()) throw ImageFormatError("empty image");
  img.validate();
}

}  // namespace

SeparableProfile SeparableProfile::make(unsigned sigma, bool normalize) {
  (void)ScaleShift::from_sigma(sigma);
  std::vector<double> p;
  for (int x = kGridMin; x <= kGridMax; ++x) {
    p.push_back(std::exp(-static_cast<double>(x) * x / (2.0 * sigma * sigma)));
  }
  double total = 0;
  for (const double v : p) total += v;

  int left = -kGridMin;
  int right = kGridMax;
  const double budget = total * std::ldexp(1.0, -16);
  double dropped = 0;
  // Shrink from the outside in, dropping the lighter outermost tap first.
  while (left > 0 || right > 0) {
    const bool take_left = left >= right && left > 0;
    const double w = take_left ? p[static_cast<std::size_t>(-left - kGridMin)]
                               : p[static_cast<std::size_t>(right - kGridMin)];
    if (dropped + w > budget) break;
    dropped += w;
    if (take_left) {
      --left;
    } else {
      --right;
    }
  }

  SeparableProfile prof;
  prof.sigma = sigma;
  prof.left = left;
  prof.right = right;
  prof.normalized = normalize;
  const double kept = total - dropped;
  for (int x = -left; x <= right; ++x) {
    const double v = p[static_cast<std::size_t>(x - kGridMin)];
    prof.weights.push_back(static_cast<float>(normalize ? v / kept : v));
  }
  return prof;
}

Image blur_separable(const Image& img, const SeparableProfile& profile, Boundary boundary,
                     unsigned threads) {
  check_image(img);
  threads = resolve_threads(threads);
  const TapPlan plan = plan_taps(profile);
  const std::size_t C = img.channels;
  const long W = img.width;
  const long H = img.height;
  const std::size_t row_len = img.row_stride();
  const std::size_t pairs = plan.pair_w.size();
  const std::size_t extras = plan.extra_w.size();

  // Horizontal pass into a float plane.
  std::vector<float> plane(row_len * static_cast<std::size_t>(H));
  parallel_rows(static_cast<std::size_t>(H), threads, [&](std::size_t r0, std::size_t r1) {
    const long pad_l = profile.left;
    const long pad_r = profile.right;
    std::vector<float> padded(static_cast<std::size_t>(W + pad_l + pad_r) * C);
    std::vector<const float*> lo(pairs), hi(pairs), ex(extras);
    const std::uint8_t* base = img.data.data();
    for (std::size_t r = r0; r < r1; ++r) {
      const std::uint8_t* src = base + r * row_len;
      for (long i = -pad_l; i < W + pad_r; ++i) {
        const long s = boundary_index(i, W, boundary);
        float* dst = padded.data() + static_cast<std::size_t>(i + pad_l) * C;
        for (std::size_t c = 0; c < C; ++c) dst[c] = s < 0 ? 0.0f : src[static_cast<std::size_t>(s) * C + c];
      }
      float* out = plane.data() + r * row_len;
      const float* origin = padded.data() + static_cast<std::size_t>(pad_l) * C;
      for (std::size_t j = 0; j < row_len; j += kStrip) {
        const std::size_t n = std::min(kStrip, row_len - j);
        for (std::size_t k = 0; k < pairs; ++k) {
          lo[k] = origin + j - (k + 1) * C;
          hi[k] = origin + j + (k + 1) * C;
        }
        for (std::size_t e = 0; e < extras; ++e) {
          ex[e] = origin + static_cast<std::ptrdiff_t>(j) + plan.extra_off[e] * static_cast<std::ptrdiff_t>(C);
        }
        fir(out + j, n, origin + j, plan.w0, lo.data(), hi.data(), plan.pair_w.data(), pairs, ex.data(),
            plan.extra_w.data(), extras);
      }
    }
  });

  // Vertical pass, partitioned by output row.
  Image out(img.width, img.height, img.channels);
  const std::vector<float> zero_row(row_len, 0.0f);
  auto row_ptr = [&](long y) -> const float* {
    const long s = boundary_index(y, H, boundary);
    return s < 0 ? zero_row.data() : plane.data() + static_cast<std::size_t>(s) * row_len;
  };
  parallel_rows(static_cast<std::size_t>(H), threads, [&](std::size_t r0, std::size_t r1) {
    std::vector<const float*> lo(pairs), hi(pairs), ex(extras);
    std::vector<const float*> lo_rows(pairs), hi_rows(pairs), ex_rows(extras);
    alignas(64) float acc[kStrip];
    for (std::size_t r = r0; r < r1; ++r) {
      const long y = static_cast<long>(r);
      for (std::size_t k = 0; k < pairs; ++k) {
        lo_rows[k] = row_ptr(y - static_cast<long>(k + 1));
        hi_rows[k] = row_ptr(y + static_cast<long>(k + 1));
      }
      for (std::size_t e = 0; e < extras; ++e) ex_rows[e] = row_ptr(y + plan.extra_off[e]);
      const float* center = row_ptr(y);
      std::uint8_t* dst = out.data.data() + r * row_len;
      for (std::size_t j = 0; j < row_len; j += kStrip) {
        const std::size_t n = std::min(kStrip, row_len - j);
        for (std::size_t k = 0; k < pairs; ++k) {
          lo[k] = lo_rows[k] + j;
          hi[k] = hi_rows[k] + j;
        }
        for (std::size_t e = 0; e < extras; ++e) ex[e] = ex_rows[e] + j;
        fir(acc, n, center + j, plan.w0, lo.data(), hi.data(), plan.pair_w.data(), pairs, ex.data(),
            plan.extra_w.data(), extras);
        for (std::size_t t = 0; t < n; ++t) dst[j + t] = quantize(acc[t]);
      }
    }
  });
  return out;
}

Image blur_direct2d(const Image& img, const KernelTile& tile, Boundary boundary, bool normalize,
                    unsigned threads) {
  check_image(img);
  if (tile.data.size() != std::size_t{tile.rows} * tile.cols || tile.data.empty()) {
    throw ShapeMismatchError("kernel tile buffer does not match its geometry");
  }
  threads = resolve_threads(threads);
  const std::uint64_t k_raw = normalize ? gauss2d::normalize(tile).k_raw : 0;
  const std::size_t C = img.channels;
  const long W = img.width;
  const long H = img.height;
  const std::size_t row_len = img.row_stride();
  const long tc = tile.cols;

  // Per tile row: the span of non-zero columns, so empty tails are skipped.
  struct RowSpan {
    long first = 0;
    long last = -1;
  };
  std::vector<RowSpan> spans(tile.rows);
  std::vector<std::int32_t> w(tile.data.size());
  for (std::size_t ty = 0; ty < tile.rows; ++ty) {
    for (long tx = 0; tx < tc; ++tx) {
      const std::int32_t v = tile.data[ty * static_cast<std::size_t>(tc) + static_cast<std::size_t>(tx)].value;
      w[ty * static_cast<std::size_t>(tc) + static_cast<std::size_t>(tx)] = v;
      if (v) {
        if (spans[ty].last < 0) spans[ty].first = tx;
        spans[ty].last = tx;
      }
    }
  }

  // Horizontally pre-padded copy of every input row: index (j + tx) * C + c
  // holds input column j + x_min + tx.
  const std::size_t padded_len = static_cast<std::size_t>(W + tc - 1) * C;
  std::vector<std::int32_t> padded(padded_len * static_cast<std::size_t>(H));
  for (long r = 0; r < H; ++r) {
    const std::uint8_t* src = img.data.data() + static_cast<std::size_t>(r) * row_len;
    std::int32_t* dst = padded.data() + static_cast<std::size_t>(r) * padded_len;
    for (long jj = 0; jj < W + tc - 1; ++jj) {
      const long s = boundary_index(jj + tile.x_min, W, boundary);
      for (std::size_t c = 0; c < C; ++c) {
        dst[static_cast<std::size_t>(jj) * C + c] = s < 0 ? 0 : src[static_cast<std::size_t>(s) * C + c];
      }
    }
  }

  Image out(img.width, img.height, img.channels);
  parallel_rows(static_cast<std::size_t>(H), threads, [&](std::size_t r0, std::size_t r1) {
    std::vector<std::int64_t> total(row_len);
    std::vector<std::int32_t> acc(row_len);
    for (std::size_t r = r0; r < r1; ++r) {
      std::fill(total.begin(), total.end(), 0);
      for (std::size_t ty = 0; ty < tile.rows; ++ty) {
        if (spans[ty].last < 0) continue;
        const long s = boundary_index(static_cast<long>(r) + tile.y_min + static_cast<long>(ty), H, boundary);
        if (s < 0) continue;
        const std::int32_t* src = padded.data() + static_cast<std::size_t>(s) * padded_len;
        const std::int32_t* wrow = w.data() + ty * static_cast<std::size_t>(tc);
        std::fill(acc.begin(), acc.end(), 0);
        // At most 256 * 255 * 255 per tile row, inside int32.
        for (long tx = spans[ty].first; tx <= spans[ty].last; ++tx) {
          const std::int32_t wt = wrow[tx];
          if (!wt) continue;
          const std::int32_t* __restrict a = src + static_cast<std::size_t>(tx) * C;
          std::int32_t* __restrict o = acc.data();
          for (std::size_t t = 0; t < row_len; ++t) o[t] += wt * a[t];
        }
        for (std::size_t t = 0; t < row_len; ++t) total[t] += acc[t];
      }
      std::uint8_t* dst = out.data.data() + r * row_len;
      for (std::size_t t = 0; t < row_len; ++t) {
        const std::uint64_t sum = static_cast<std::uint64_t>(total[t]);
        const std::uint64_t q = normalize ? (2 * sum + k_raw) / (2 * k_raw) : (sum + 128) >> 8;
        dst[t] = static_cast<std::uint8_t>(std::min<std::uint64_t>(q, 255));
      }
    }
  });
  return out;
}

Image blur(const Image& img, const ConvConfig& cfg) {
  check_image(img);
  if (cfg.mode == ConvMode::Separable) {
    return blur_separable(img, SeparableProfile::make(cfg.sigma, cfg.normalize), cfg.boundary, cfg.threads);
  }
  const KernelSpec spec = KernelSpec::single(cfg.sigma);
  const auto [tile, report] = generate_tile(spec, spec.scales.front());
  return blur_direct2d(img, tile, cfg.boundary, cfg.normalize, cfg.threads);
}

}  // namespace gauss2d
