#ifndef ARS_KERNELS_HPP
#define ARS_KERNELS_HPP

#include "ars/error.hpp"
#include "ars/parallel.hpp"
#include "ars/raster.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace ars {

enum class KernelTag { NearestNeighbor, Bilinear, CubicConvolution, KaiserSinc16, CubicBSpline };

/**
 * Interpolation kernel and its parameter.
 *
 * Support (half-width in source pixels): 0.5 for nearest neighbour, 1 for
 * bilinear, 2 for cubic convolution and the cubic B-spline, 8 for the
 * 16-tap Kaiser-windowed sinc. `param` is the shape parameter `a` of cubic
 * convolution (in [-1, 0)) or the Kaiser window `beta` (> 0); unused
 * otherwise.
 */
class KernelSpec
{
public:
  static constexpr double kDefaultCubicA = -0.5;
  static constexpr double kDefaultKaiserBeta = 4.0;

  static KernelSpec nearest() { return KernelSpec(KernelTag::NearestNeighbor, 0.0); }
  static KernelSpec bilinear() { return KernelSpec(KernelTag::Bilinear, 0.0); }
  static KernelSpec cubic(double a = kDefaultCubicA)
  {
    if (!(a >= -1.0 && a < 0.0))
      throw InvalidArgument("cubic convolution parameter a must lie in [-1, 0)");
    return KernelSpec(KernelTag::CubicConvolution, a);
  }
  static KernelSpec kaiser_sinc16(double beta = kDefaultKaiserBeta)
  {
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw InvalidArgument("Kaiser beta must be positive");
    return KernelSpec(KernelTag::KaiserSinc16, beta);
  }
  static KernelSpec cubic_bspline() { return KernelSpec(KernelTag::CubicBSpline, 0.0); }

  KernelTag tag() const noexcept { return tag_; }
  double param() const noexcept { return param_; }

  double support() const noexcept
  {
    switch (tag_) {
      case KernelTag::NearestNeighbor: return 0.5;
      case KernelTag::Bilinear: return 1.0;
      case KernelTag::CubicConvolution:
      case KernelTag::CubicBSpline: return 2.0;
      case KernelTag::KaiserSinc16: return 8.0;
    }
    return 0.0;
  }

  /// Number of taps produced by weights_1d.
  int tap_count() const noexcept
  {
    return tag_ == KernelTag::NearestNeighbor ? 1 : 2 * static_cast<int>(support());
  }

  /// Reproduces stored samples at integer positions.
  bool interpolating() const noexcept { return tag_ != KernelTag::CubicBSpline; }

  std::string name() const
  {
    switch (tag_) {
      case KernelTag::NearestNeighbor: return "nn";
      case KernelTag::Bilinear: return "bl";
      case KernelTag::CubicConvolution: return "cc";
      case KernelTag::KaiserSinc16: return "kd16";
      case KernelTag::CubicBSpline: return "bspline";
    }
    return "?";
  }

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

private:
  KernelSpec(KernelTag tag, double param) : tag_(tag), param_(param) {}

  KernelTag tag_;
  double param_;
};

namespace detail {

// Zero exactly at non-zero integers so windowed-sinc taps vanish there.
inline double sinc(double t)
{
  if (t == 0.0)
    return 1.0;
  if (t == std::round(t))
    return 0.0;
  const double x = std::numbers::pi * t;
  return std::sin(x) / x;
}

inline double kaiser(double u, double beta)
{
  const double r = 1.0 - u * u;
  if (r <= 0.0)
    return 0.0;
  return std::cyl_bessel_i(0.0, beta * std::sqrt(r)) / std::cyl_bessel_i(0.0, beta);
}

} // namespace detail

/// Raw (un-normalized) kernel weight at signed offset t, in source pixels.
/// Exactly zero for |t| >= support; even in t.
inline double weight(const KernelSpec& spec, double t)
{
  const double x = std::abs(t);
  if (x >= spec.support())
    return 0.0;
  switch (spec.tag()) {
    case KernelTag::NearestNeighbor:
      return 1.0;
    case KernelTag::Bilinear:
      return 1.0 - x;
    case KernelTag::CubicConvolution: {
      const double a = spec.param();
      if (x < 1.0)
        return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
      return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
    }
    case KernelTag::KaiserSinc16:
      return detail::sinc(x) * detail::kaiser(x / spec.support(), spec.param());
    case KernelTag::CubicBSpline: {
      if (x < 1.0)
        return 2.0 / 3.0 - x * x + 0.5 * x * x * x;
      const double u = 2.0 - x;
      return u * u * u / 6.0;
    }
  }
  return 0.0;
}

/// Taps for one axis. Tap k applies to source index floor(pos) + start + k.
struct Taps
{
  static constexpr int kMaxTaps = 16;

  int start = 0;
  int count = 0;
  std::array<double, kMaxTaps> w{};

  double sum() const
  {
    double s = 0.0;
    for (int k = 0; k < count; ++k)
      s += w[k];
    return s;
  }
};

/**
 * Separable taps for a fractional position `phase` in [0, 1) past a sample.
 *
 * Nearest neighbour yields a single unit tap; a phase of exactly 0.5 picks
 * the lower index. Other kernels evaluate `weight` at each of the
 * 2*support neighbours and divide by the sum, so the taps form an exact
 * partition of unity even for the truncated windowed sinc.
 */
inline Taps weights_1d(const KernelSpec& spec, double phase)
{
  Taps taps;
  if (spec.tag() == KernelTag::NearestNeighbor) {
    taps.start = phase <= 0.5 ? 0 : 1;
    taps.count = 1;
    taps.w[0] = 1.0;
    return taps;
  }
  const int s = static_cast<int>(spec.support());
  taps.start = 1 - s;
  taps.count = 2 * s;
  double total = 0.0;
  for (int k = 0; k < taps.count; ++k) {
    taps.w[k] = weight(spec, phase - static_cast<double>(taps.start + k));
    total += taps.w[k];
  }
  if (total != 1.0)
    for (int k = 0; k < taps.count; ++k)
      taps.w[k] /= total;
  return taps;
}

enum class BoundaryPolicy { Mirror, Clamp };

inline std::string_view to_string(BoundaryPolicy bp)
{
  return bp == BoundaryPolicy::Mirror ? "mirror" : "clamp";
}

inline BoundaryPolicy parse_boundary(std::string_view s)
{
  if (s == "mirror")
    return BoundaryPolicy::Mirror;
  if (s == "clamp")
    return BoundaryPolicy::Clamp;
  throw InvalidArgument("unknown boundary policy '" + std::string(s) + "'");
}

/// Maps any integer index into [0, n). Mirror reflects about the edge
/// pixel centres (-1 -> 1, n -> n-2); clamp repeats the edge pixel.
inline std::size_t boundary_index(long long i, std::size_t n, BoundaryPolicy bp)
{
  const auto last = static_cast<long long>(n) - 1;
  if (i >= 0 && i <= last)
    return static_cast<std::size_t>(i);
  if (bp == BoundaryPolicy::Clamp || n == 1)
    return static_cast<std::size_t>(i < 0 ? 0 : last);
  const long long period = 2 * last;
  long long m = i % period;
  if (m < 0)
    m += period;
  if (m > last)
    m = period - m;
  return static_cast<std::size_t>(m);
}

/// Separable evaluation at source position (x, y): horizontal taps along
/// each contributing row, then vertical taps across rows.
inline double sample(const Raster& r, double x, double y, const KernelSpec& spec,
                     BoundaryPolicy bp = BoundaryPolicy::Mirror)
{
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const Taps tx = weights_1d(spec, x - fx);
  const Taps ty = weights_1d(spec, y - fy);
  const auto bx = static_cast<long long>(fx) + tx.start;
  const auto by = static_cast<long long>(fy) + ty.start;

  std::array<std::size_t, Taps::kMaxTaps> cols{};
  for (int i = 0; i < tx.count; ++i)
    cols[i] = boundary_index(bx + i, r.width(), bp);

  double acc = 0.0;
  for (int j = 0; j < ty.count; ++j) {
    const auto row = r.row(boundary_index(by + j, r.height(), bp));
    double h = 0.0;
    for (int i = 0; i < tx.count; ++i)
      h += tx.w[i] * row[cols[i]];
    acc += ty.w[j] * h;
  }
  return acc;
}

/// Backward-mapped resampling: output pixel (i, j) takes sample(r, t(i, j)).
inline Raster resample(const Raster& r, const GridTransform& t, std::size_t out_w,
                       std::size_t out_h, const KernelSpec& spec,
                       BoundaryPolicy bp = BoundaryPolicy::Mirror)
{
  t.require_invertible();
  Raster out(out_w, out_h);
  parallel_rows(out_h, [&](std::size_t j) {
    auto dst = out.row(j);
    for (std::size_t i = 0; i < out_w; ++i) {
      const auto [x, y] = t.apply(static_cast<double>(i), static_cast<double>(j));
      dst[i] = sample(r, x, y, spec, bp);
    }
  });
  return out;
}

namespace detail {

// Solves (c[i-1] + 4 c[i] + c[i+1]) / 6 = f[i] with mirrored coefficients
// (c[-1] = c[1], c[n] = c[n-2]) by Thomas elimination, in place.
inline void bspline_solve_line(std::vector<double>& f, std::vector<double>& scratch)
{
  const std::size_t n = f.size();
  if (n == 1)
    return;
  scratch.assign(n, 0.0);
  // Row i of the scaled system: sub * c[i-1] + 4 c[i] + sup * c[i+1] = 6 f[i].
  auto sup = [n](std::size_t i) { return i == 0 ? 2.0 : (i + 1 < n ? 1.0 : 0.0); };
  auto sub = [n](std::size_t i) { return i + 1 == n ? 2.0 : (i > 0 ? 1.0 : 0.0); };

  double denom = 4.0;
  scratch[0] = sup(0) / denom;
  f[0] = 6.0 * f[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = 4.0 - sub(i) * scratch[i - 1];
    scratch[i] = sup(i) / denom;
    f[i] = (6.0 * f[i] - sub(i) * f[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;)
    f[i] -= scratch[i] * f[i + 1];
}

} // namespace detail

/**
 * Cubic B-spline coefficients of r under mirror boundaries. Sampling the
 * result with KernelSpec::cubic_bspline() and BoundaryPolicy::Mirror
 * interpolates r: the stored values are reproduced at integer positions.
 */
inline Raster bspline_coefficients(const Raster& r)
{
  Raster c = r;
  std::vector<double> line, scratch;
  for (std::size_t y = 0; y < c.height(); ++y) {
    auto row = c.row(y);
    line.assign(row.begin(), row.end());
    detail::bspline_solve_line(line, scratch);
    std::copy(line.begin(), line.end(), row.begin());
  }
  line.resize(c.height());
  for (std::size_t x = 0; x < c.width(); ++x) {
    line.resize(c.height());
    for (std::size_t y = 0; y < c.height(); ++y)
      line[y] = c.at(x, y);
    detail::bspline_solve_line(line, scratch);
    for (std::size_t y = 0; y < c.height(); ++y)
      c.at(x, y) = line[y];
  }
  return c;
}

/// Interpolating cubic spline resampling: prefilter then B-spline sampling.
inline Raster resample_cubic_spline(const Raster& r, const GridTransform& t, std::size_t out_w,
                                    std::size_t out_h)
{
  return resample(bspline_coefficients(r), t, out_w, out_h, KernelSpec::cubic_bspline(),
                  BoundaryPolicy::Mirror);
}

} // namespace ars

#endif // ARS_KERNELS_HPP
