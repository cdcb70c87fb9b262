#ifndef ARS_RASTER_HPP
#define ARS_RASTER_HPP

#include "ars/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ars {

/**
 * Single-band scalar raster.
 *
 * Pixels are stored row-major with the origin at the top-left corner; the
 * pixel at column x, row y lives at data()[y * width() + x]. Pixel centres
 * sit at integer coordinates. Intensities are normalized to [0,1] on ingest,
 * but intermediate rasters (pyramid bands, differences) may hold any finite
 * value.
 */
class Raster
{
public:
  Raster() = default;

  /// Zero-filled raster.
  Raster(std::size_t width, std::size_t height)
    : width_(width), height_(height), data_(checked_area(width, height), 0.0)
  {}

  Raster(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data))
  {
    if (data_.size() != checked_area(width, height))
      throw InvalidArgument("raster data length " + std::to_string(data_.size()) +
                            " does not match " + std::to_string(width) + "x" +
                            std::to_string(height));
    for (double v : data_)
      if (!std::isfinite(v))
        throw InvalidArgument("raster values must be finite");
  }

  static Raster filled(std::size_t width, std::size_t height, double value)
  {
    if (!std::isfinite(value))
      throw InvalidArgument("raster values must be finite");
    Raster r(width, height);
    std::fill(r.data_.begin(), r.data_.end(), value);
    return r;
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
  double& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  std::span<const double> row(std::size_t y) const
  {
    return std::span<const double>(data_).subspan(y * width_, width_);
  }
  std::span<double> row(std::size_t y)
  {
    return std::span<double>(data_).subspan(y * width_, width_);
  }

  bool same_dims(const Raster& o) const noexcept
  {
    return width_ == o.width_ && height_ == o.height_;
  }

  friend bool operator==(const Raster&, const Raster&) = default;

private:
  static std::size_t checked_area(std::size_t w, std::size_t h)
  {
    if (w == 0 || h == 0)
      throw InvalidArgument("raster dimensions must be at least 1x1");
    return w * h;
  }

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

inline void require_same_dims(const Raster& a, const Raster& b, const char* what)
{
  if (!a.same_dims(b))
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                          " vs " + std::to_string(b.width()) + "x" +
                          std::to_string(b.height()) + ")");
}

inline Raster operator+(const Raster& a, const Raster& b)
{
  require_same_dims(a, b, "raster add");
  Raster out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i)
    out.data()[i] = a.data()[i] + b.data()[i];
  return out;
}

inline Raster operator-(const Raster& a, const Raster& b)
{
  require_same_dims(a, b, "raster subtract");
  Raster out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i)
    out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

/// s * r + offset, pixelwise.
inline Raster affine(const Raster& r, double s, double offset = 0.0)
{
  Raster out(r.width(), r.height());
  for (std::size_t i = 0; i < r.size(); ++i)
    out.data()[i] = s * r.data()[i] + offset;
  return out;
}

inline double max_abs_diff(const Raster& a, const Raster& b)
{
  require_same_dims(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// Clamps every value into [0,1]; used only when exporting final images.
inline Raster clamp_unit(const Raster& r)
{
  Raster out(r.width(), r.height());
  for (std::size_t i = 0; i < r.size(); ++i)
    out.data()[i] = std::clamp(r.data()[i], 0.0, 1.0);
  return out;
}

/**
 * Affine map from output pixel coordinates to source pixel coordinates:
 *
 *   x_src = a * x_out + b * y_out + c
 *   y_src = d * x_out + e * y_out + f
 */
struct GridTransform
{
  double a = 1, b = 0, c = 0;
  double d = 0, e = 1, f = 0;

  static GridTransform identity() { return {}; }

  static GridTransform translation(double tx, double ty) { return {1, 0, tx, 0, 1, ty}; }

  /// Output pixel x samples source position factor * x + offset (both axes).
  static GridTransform scaling(double factor, double offset = 0.0)
  {
    return {factor, 0, offset, 0, factor, offset};
  }

  /// Pixel-centre aligned downsampling by an integer factor: output pixel i
  /// covers source pixels [s*i, s*i + s - 1] and samples their centre.
  static GridTransform downsample(int s) { return scaling(s, (s - 1) / 2.0); }

  /// Exact inverse of downsample(s).
  static GridTransform upsample(int s) { return scaling(1.0 / s, -(s - 1) / (2.0 * s)); }

  double determinant() const noexcept { return a * e - b * d; }

  bool invertible() const noexcept
  {
    const double det = determinant();
    return std::isfinite(det) && det != 0.0;
  }

  void require_invertible() const
  {
    if (!invertible())
      throw InvalidArgument("grid transform is not invertible (determinant 0)");
  }

  std::pair<double, double> apply(double x, double y) const noexcept
  {
    return {a * x + b * y + c, d * x + e * y + f};
  }

  friend bool operator==(const GridTransform&, const GridTransform&) = default;
};

} // namespace ars

#endif // ARS_RASTER_HPP
