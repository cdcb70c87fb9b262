#ifndef ARS_PYRAMID_HPP
#define ARS_PYRAMID_HPP

// Burt-Adelson Gaussian/Laplacian pyramid with the 5-tap generating kernel
// (parameter 0.4) and mirror boundaries. Odd sizes halve with ceil; the band
// dimensions themselves record the expand targets, so reconstruction never
// has to guess.

#include "ars/error.hpp"
#include "ars/kernels.hpp"
#include "ars/parallel.hpp"
#include "ars/raster.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace ars {

inline constexpr std::array<double, 5> kPyramidTaps = {0.05, 0.25, 0.40, 0.25, 0.05};

inline std::size_t half_ceil(std::size_t n) { return (n + 1) / 2; }

/// Blur with kPyramidTaps then keep every second sample (even indices).
inline Raster reduce(const Raster& r)
{
  if (r.width() < 2 || r.height() < 2)
    throw InvalidArgument("reduce needs at least a 2x2 raster, got " + std::to_string(r.width()) +
                          "x" + std::to_string(r.height()));
  const std::size_t ow = half_ceil(r.width()), oh = half_ceil(r.height());
  const auto bp = BoundaryPolicy::Mirror;

  Raster tmp(ow, r.height());
  parallel_rows(r.height(), [&](std::size_t y) {
    const auto src = r.row(y);
    auto dst = tmp.row(y);
    for (std::size_t i = 0; i < ow; ++i) {
      double acc = 0.0;
      for (int m = -2; m <= 2; ++m)
        acc += kPyramidTaps[m + 2] *
               src[boundary_index(2 * static_cast<long long>(i) + m, r.width(), bp)];
      dst[i] = acc;
    }
  });

  Raster out(ow, oh);
  parallel_rows(oh, [&](std::size_t j) {
    auto dst = out.row(j);
    for (int m = -2; m <= 2; ++m) {
      const auto src = tmp.row(boundary_index(2 * static_cast<long long>(j) + m, r.height(), bp));
      for (std::size_t i = 0; i < ow; ++i)
        dst[i] += kPyramidTaps[m + 2] * src[i];
    }
  });
  return out;
}

namespace detail {

// One axis of EXPAND: the zero-inserted signal u (u[2k] = src[k], odd = 0)
// of length `target`, mirrored at its own ends, blurred with 2 * taps.
inline double expand_tap_sum(std::size_t target, long long pos,
                             const auto& source_at /* (k) -> double */)
{
  if (target == 1)
    return source_at(0);
  double acc = 0.0;
  for (int m = -2; m <= 2; ++m) {
    const auto k = boundary_index(pos - m, target, BoundaryPolicy::Mirror);
    if (k % 2 == 0)
      acc += 2.0 * kPyramidTaps[m + 2] * source_at(k / 2);
  }
  return acc;
}

inline void check_expand_target(std::size_t from, std::size_t to, const char* axis)
{
  if (to != 2 * from && to + 1 != 2 * from)
    throw InvalidArgument(std::string("expand target ") + axis + " " + std::to_string(to) +
                          " must be 2*" + std::to_string(from) + " or 2*" +
                          std::to_string(from) + "-1");
}

} // namespace detail

/// Zero-insert upsample to (target_w, target_h), then blur with doubled taps.
inline Raster expand(const Raster& r, std::size_t target_w, std::size_t target_h)
{
  detail::check_expand_target(r.width(), target_w, "width");
  detail::check_expand_target(r.height(), target_h, "height");

  Raster tmp(target_w, r.height());
  parallel_rows(r.height(), [&](std::size_t y) {
    const auto src = r.row(y);
    auto dst = tmp.row(y);
    for (std::size_t x = 0; x < target_w; ++x)
      dst[x] = detail::expand_tap_sum(target_w, static_cast<long long>(x),
                                      [&](std::size_t k) { return src[k]; });
  });

  Raster out(target_w, target_h);
  parallel_rows(target_h, [&](std::size_t y) {
    auto dst = out.row(y);
    for (std::size_t x = 0; x < target_w; ++x)
      dst[x] = detail::expand_tap_sum(target_h, static_cast<long long>(y),
                                      [&](std::size_t k) { return tmp.at(x, k); });
  });
  return out;
}

/// Band-pass levels L_0..L_{K-1} (L_0 at full resolution) and the low-pass
/// residual G_K.
struct LaplacianPyramid
{
  std::vector<Raster> bands;
  Raster residual;

  std::size_t levels() const noexcept { return bands.size(); }
};

/// True when a w x h raster can be decomposed into `levels` bands, i.e.
/// every Gaussian level G_0..G_{levels-1} is at least 2x2.
inline bool supports_levels(std::size_t w, std::size_t h, std::size_t levels)
{
  for (std::size_t k = 0; k < levels; ++k) {
    if (w < 2 || h < 2)
      return false;
    w = half_ceil(w);
    h = half_ceil(h);
  }
  return true;
}

inline LaplacianPyramid build(const Raster& r, std::size_t levels)
{
  if (levels < 1)
    throw InvalidArgument("pyramid needs at least one level");
  if (!supports_levels(r.width(), r.height(), levels))
    throw InvalidArgument("raster " + std::to_string(r.width()) + "x" +
                          std::to_string(r.height()) + " is too small for " +
                          std::to_string(levels) + " pyramid levels");
  LaplacianPyramid p;
  p.bands.reserve(levels);
  Raster g = r;
  for (std::size_t k = 0; k < levels; ++k) {
    Raster next = reduce(g);
    p.bands.push_back(g - expand(next, g.width(), g.height()));
    g = std::move(next);
  }
  p.residual = std::move(g);
  return p;
}

inline Raster reconstruct(const LaplacianPyramid& p)
{
  if (p.bands.empty())
    throw InvalidArgument("pyramid has no bands");
  for (std::size_t k = 0; k < p.levels(); ++k) {
    const Raster& below = k + 1 < p.levels() ? p.bands[k + 1] : p.residual;
    if (below.empty() || below.width() != half_ceil(p.bands[k].width()) ||
        below.height() != half_ceil(p.bands[k].height()))
      throw InvalidArgument("inconsistent pyramid dimensions at level " + std::to_string(k + 1));
  }
  Raster g = p.residual;
  for (std::size_t k = p.levels(); k-- > 0;)
    g = p.bands[k] + expand(g, p.bands[k].width(), p.bands[k].height());
  return g;
}

} // namespace ars

#endif // ARS_PYRAMID_HPP
