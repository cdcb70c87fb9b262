#ifndef ARS_RESAMPLER_HPP
#define ARS_RESAMPLER_HPP

#include "ars/context.hpp"
#include "ars/error.hpp"
#include "ars/kernels.hpp"
#include "ars/pyramid.hpp"
#include "ars/raster.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ars {

struct HybridOptions
{
  std::size_t levels = 3;
  /// Kernel for band L_0.
  KernelSpec fine = KernelSpec::nearest();
  /// Kernel for bands L_1.. and the residual. CubicBSpline here means
  /// interpolating cubic spline (coefficients prefiltered first); any other
  /// kernel is applied directly.
  KernelSpec coarse = KernelSpec::cubic_bspline();
};

/// Resamples one pyramid level with the level-kernel convention above.
inline Raster resample_level(const Raster& r, const GridTransform& t, std::size_t w,
                             std::size_t h, const KernelSpec& spec)
{
  if (spec.tag() == KernelTag::CubicBSpline)
    return resample_cubic_spline(r, t, w, h);
  return resample(r, t, w, h, spec, BoundaryPolicy::Mirror);
}

/// The transform seen by level k: t_k(i, j) = t(2^k i, 2^k j) / 2^k.
inline GridTransform level_transform(const GridTransform& t, std::size_t k)
{
  const double s = std::ldexp(1.0, -static_cast<int>(k));
  return {t.a, t.b, t.c * s, t.d, t.e, t.f * s};
}

/**
 * Pyramid-hybrid resampling.
 *
 * The source is decomposed into a Laplacian pyramid. Band L_0 carries the
 * finest detail, including features narrower than a pixel after
 * resampling, and is resampled with nearest neighbour so that local
 * contrast is moved rather than averaged away. Deeper bands and the
 * residual carry large-scale structure and use cubic spline interpolation.
 * Each level k is resampled onto level k of the output pyramid (dims follow
 * the ceil-halving chain of out_w x out_h) and the output pyramid is then
 * collapsed.
 */
inline Raster hybrid_resample(const Raster& r, const GridTransform& t, std::size_t out_w,
                              std::size_t out_h, const HybridOptions& opt = {})
{
  t.require_invertible();
  if (!supports_levels(out_w, out_h, opt.levels))
    throw InvalidArgument("output " + std::to_string(out_w) + "x" + std::to_string(out_h) +
                          " is too small for " + std::to_string(opt.levels) +
                          " pyramid levels");
  const LaplacianPyramid src = build(r, opt.levels);

  LaplacianPyramid dst;
  std::size_t w = out_w, h = out_h;
  for (std::size_t k = 0; k < src.levels(); ++k) {
    const KernelSpec& spec = k == 0 ? opt.fine : opt.coarse;
    dst.bands.push_back(resample_level(src.bands[k], level_transform(t, k), w, h, spec));
    w = half_ceil(w);
    h = half_ceil(h);
  }
  dst.residual = resample_level(src.residual, level_transform(t, src.levels()), w, h, opt.coarse);
  return reconstruct(dst);
}

/// Per-pixel convex blend w * sharp + (1 - w) * smooth of two rasters on
/// the same grid.
inline Raster blend(const Raster& sharp, const Raster& smooth, const Raster& w)
{
  require_same_dims(sharp, smooth, "blend");
  require_same_dims(sharp, w, "blend");
  Raster out(sharp.width(), sharp.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double a = std::clamp(w.data()[i], 0.0, 1.0);
    out.data()[i] = a * sharp.data()[i] + (1.0 - a) * smooth.data()[i];
  }
  return out;
}

/// Selection weights carried onto the output grid by bilinear sampling at
/// t(i, j). A uniform map stays exactly uniform.
inline Raster selection_on_grid(const SelectionMap& sel, const GridTransform& t,
                                std::size_t out_w, std::size_t out_h)
{
  const auto d = sel.weights.data();
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  if (*lo == *hi)
    return Raster::filled(out_w, out_h, *lo);
  return resample(sel.weights, t, out_w, out_h, KernelSpec::bilinear(), BoundaryPolicy::Mirror);
}

/**
 * Contextually adaptive resampling:
 *
 *   out(i, j) = w * NN(t(i, j)) + (1 - w) * CC(t(i, j))
 *
 * with w the selection weight sampled bilinearly at t(i, j). An all-ones
 * map reduces to nearest neighbour, an all-zeros map to cubic convolution.
 */
inline Raster adaptive_resample(const Raster& r, const GridTransform& t, std::size_t out_w,
                                std::size_t out_h, const SelectionMap& sel,
                                BoundaryPolicy bp = BoundaryPolicy::Mirror,
                                const KernelSpec& smooth = KernelSpec::cubic())
{
  require_same_dims(r, sel.weights, "adaptive_resample");
  t.require_invertible();
  const Raster sharp = resample(r, t, out_w, out_h, KernelSpec::nearest(), bp);
  const Raster soft = resample(r, t, out_w, out_h, smooth, bp);
  return blend(sharp, soft, selection_on_grid(sel, t, out_w, out_h));
}

// ---------------------------------------------------------------------------
// Method dispatch
// ---------------------------------------------------------------------------

struct ClassicMethod
{
  KernelSpec kernel = KernelSpec::cubic();
  BoundaryPolicy boundary = BoundaryPolicy::Mirror;
};

struct HybridMethod
{
  HybridOptions options;
};

struct AdaptiveMethod
{
  SelectionParams selection;
  KernelSpec smooth = KernelSpec::cubic();
  BoundaryPolicy boundary = BoundaryPolicy::Mirror;
  /// When set, the sharp branch is the pyramid-hybrid output with this many
  /// levels instead of plain nearest neighbour.
  std::optional<std::size_t> hybrid_levels;
};

using MethodSpec = std::variant<ClassicMethod, HybridMethod, AdaptiveMethod>;

inline std::string method_name(const MethodSpec& m)
{
  struct Namer
  {
    std::string operator()(const ClassicMethod& c) const { return c.kernel.name(); }
    std::string operator()(const HybridMethod&) const { return "hybrid"; }
    std::string operator()(const AdaptiveMethod& a) const
    {
      return a.hybrid_levels ? "adaptive-hybrid" : "adaptive";
    }
  };
  return std::visit(Namer{}, m);
}

inline Raster run(const Raster& r, const GridTransform& t, std::size_t out_w, std::size_t out_h,
                  const MethodSpec& m)
{
  struct Dispatch
  {
    const Raster& r;
    const GridTransform& t;
    std::size_t w, h;

    Raster operator()(const ClassicMethod& c) const
    {
      return resample(r, t, w, h, c.kernel, c.boundary);
    }
    Raster operator()(const HybridMethod& hm) const
    {
      if (hm.options.levels < 1)
        throw InvalidArgument("hybrid method needs at least one level");
      return hybrid_resample(r, t, w, h, hm.options);
    }
    Raster operator()(const AdaptiveMethod& a) const
    {
      const SelectionMap sel = selection_map(r, a.selection);
      if (!a.hybrid_levels)
        return adaptive_resample(r, t, w, h, sel, a.boundary, a.smooth);
      t.require_invertible();
      HybridOptions opt;
      opt.levels = *a.hybrid_levels;
      const Raster sharp = hybrid_resample(r, t, w, h, opt);
      const Raster soft = resample(r, t, w, h, a.smooth, a.boundary);
      return blend(sharp, soft, selection_on_grid(sel, t, w, h));
    }
  };
  return std::visit(Dispatch{r, t, out_w, out_h}, m);
}

} // namespace ars

#endif // ARS_RESAMPLER_HPP
