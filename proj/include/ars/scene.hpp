#ifndef ARS_SCENE_HPP
#define ARS_SCENE_HPP

// Synthetic ground-truth scenes for benchmarking.
//
// Randomness comes from std::mt19937_64 seeded with SceneSpec::seed. Its
// output sequence is fixed by the C++ standard, and integers are drawn as
// `engine() % n` rather than through std::uniform_int_distribution (whose
// algorithm is implementation-defined), so scenes are identical across
// compilers and platforms.

#include "ars/error.hpp"
#include "ars/raster.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ars {

enum class SceneKind { Constant, Ramp, Checkerboard, ThinLines, PointTargets, Mixed };

inline std::string_view to_string(SceneKind k)
{
  switch (k) {
    case SceneKind::Constant: return "constant";
    case SceneKind::Ramp: return "ramp";
    case SceneKind::Checkerboard: return "checkerboard";
    case SceneKind::ThinLines: return "thin-lines";
    case SceneKind::PointTargets: return "point-targets";
    case SceneKind::Mixed: return "mixed";
  }
  return "?";
}

inline SceneKind parse_scene_kind(std::string_view s)
{
  for (auto k : {SceneKind::Constant, SceneKind::Ramp, SceneKind::Checkerboard,
                 SceneKind::ThinLines, SceneKind::PointTargets, SceneKind::Mixed})
    if (to_string(k) == s)
      return k;
  throw InvalidArgument("unknown scene kind '" + std::string(s) + "'");
}

struct SceneSpec
{
  SceneKind kind = SceneKind::Constant;
  std::size_t size = 64;
  double contrast = 0.8;
  std::uint64_t seed = 0;
};

/// A scene plus the mask of its small features (1-pixel lines and point
/// targets); mask is 1 on feature pixels, 0 elsewhere.
struct Scene
{
  Raster image;
  Raster feature_mask;
};

namespace detail {

class SceneRng
{
public:
  explicit SceneRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
  std::mt19937_64 engine_;
};

// Picks up to `count` positions in [lo, hi] at least `spacing` apart.
inline std::vector<std::size_t> spaced_positions(SceneRng& rng, std::size_t count, std::size_t lo,
                                                 std::size_t hi, std::size_t spacing)
{
  std::vector<std::size_t> picked;
  for (int attempt = 0; attempt < 64 && picked.size() < count; ++attempt) {
    const auto p = lo + rng.below(hi - lo + 1);
    bool ok = true;
    for (auto q : picked)
      if ((p > q ? p - q : q - p) < spacing)
        ok = false;
    if (ok)
      picked.push_back(p);
  }
  return picked;
}

inline void draw_lines(Raster& img, Raster& mask, SceneRng& rng, double value,
                       const Raster* background = nullptr, double contrast = 0.0)
{
  const std::size_t n = img.width();
  const std::size_t lo = 3, hi = n - 4;
  const auto rows = spaced_positions(rng, 1 + rng.below(3), lo, hi, 6);
  const auto cols = spaced_positions(rng, rng.below(3), lo, hi, 6);
  auto set = [&](std::size_t x, std::size_t y) {
    img.at(x, y) = background ? background->at(x, y) + contrast : value;
    mask.at(x, y) = 1.0;
  };
  for (auto y : rows)
    for (std::size_t x = 0; x < n; ++x)
      set(x, y);
  for (auto x : cols)
    for (std::size_t y = 0; y < n; ++y)
      set(x, y);
}

inline void draw_points(Raster& img, Raster& mask, SceneRng& rng, std::size_t count,
                        const Raster& background, double contrast)
{
  const std::size_t n = img.width();
  for (std::size_t placed = 0, attempt = 0; placed < count && attempt < 16 * count; ++attempt) {
    const auto x = 2 + rng.below(n - 4);
    const auto y = 2 + rng.below(n - 4);
    // Isolated: no other feature pixel in the 5x5 neighbourhood.
    bool free = true;
    for (std::size_t yy = y - 2; yy <= y + 2; ++yy)
      for (std::size_t xx = x - 2; xx <= x + 2; ++xx)
        if (mask.at(xx, yy) != 0.0)
          free = false;
    if (!free)
      continue;
    img.at(x, y) = background.at(x, y) + contrast;
    mask.at(x, y) = 1.0;
    ++placed;
  }
}

} // namespace detail

/**
 * Builds a scene and its feature mask.
 *
 * - constant: every pixel equals `contrast`.
 * - ramp: pixel (x, y) = x / (size - 1).
 * - checkerboard: cells of max(2, size/8) pixels alternating 0.5 +- contrast/2.
 * - thin-lines: background (1 - contrast)/2 with 1-pixel-wide horizontal and
 *   vertical lines exactly `contrast` brighter.
 * - point-targets: same background with isolated single bright pixels.
 * - mixed: smooth gradient, a large disc, thin lines and point targets.
 */
inline Scene synth_scene_with_mask(const SceneSpec& spec)
{
  if (spec.size < 8)
    throw InvalidArgument("scene size must be at least 8");
  if (!(spec.contrast >= 0.0 && spec.contrast <= 1.0))
    throw InvalidArgument("scene contrast must lie in [0,1]");

  const std::size_t n = spec.size;
  const double c = spec.contrast;
  Raster mask(n, n);
  detail::SceneRng rng(spec.seed);

  switch (spec.kind) {
    case SceneKind::Constant:
      return {Raster::filled(n, n, c), mask};

    case SceneKind::Ramp: {
      Raster img(n, n);
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
          img.at(x, y) = static_cast<double>(x) / static_cast<double>(n - 1);
      return {img, mask};
    }

    case SceneKind::Checkerboard: {
      const std::size_t cell = std::max<std::size_t>(2, n / 8);
      Raster img(n, n);
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
          img.at(x, y) = ((x / cell + y / cell) % 2 == 0) ? 0.5 + c / 2 : 0.5 - c / 2;
      return {img, mask};
    }

    case SceneKind::ThinLines: {
      const double bg = (1.0 - c) / 2.0;
      Raster img = Raster::filled(n, n, bg);
      detail::draw_lines(img, mask, rng, bg + c);
      return {img, mask};
    }

    case SceneKind::PointTargets: {
      const Raster bg = Raster::filled(n, n, (1.0 - c) / 2.0);
      Raster img = bg;
      detail::draw_points(img, mask, rng, std::max<std::size_t>(1, n * n / 128), bg, c);
      return {img, mask};
    }

    case SceneKind::Mixed: {
      Raster bg(n, n);
      const double span = static_cast<double>(2 * (n - 1));
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
          bg.at(x, y) = (1.0 - c) * (0.25 + 0.5 * static_cast<double>(x + y) / span);
      Raster img = bg;
      // Large low-frequency object.
      const double cx = static_cast<double>(n / 4 + rng.below(n / 2));
      const double cy = static_cast<double>(n / 4 + rng.below(n / 2));
      const double radius = static_cast<double>(n) / 6.0;
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x) {
          const double dx = static_cast<double>(x) - cx, dy = static_cast<double>(y) - cy;
          if (dx * dx + dy * dy <= radius * radius)
            img.at(x, y) = bg.at(x, y) + c / 2;
        }
      detail::draw_lines(img, mask, rng, 0.0, &bg, c);
      detail::draw_points(img, mask, rng, std::max<std::size_t>(1, n * n / 256), bg, c);
      return {img, mask};
    }
  }
  throw InvalidArgument("unknown scene kind");
}

inline Raster synth_scene(const SceneSpec& spec) { return synth_scene_with_mask(spec).image; }

} // namespace ars

#endif // ARS_SCENE_HPP
