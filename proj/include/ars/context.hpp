#ifndef ARS_CONTEXT_HPP
#define ARS_CONTEXT_HPP

#include "ars/error.hpp"
#include "ars/kernels.hpp"
#include "ars/parallel.hpp"
#include "ars/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace ars {

/// Per-pixel standard deviation over a window x window neighbourhood
/// (mirror boundaries), divided by the global intensity range (or 1 for a
/// constant raster). Invariant to affine intensity rescaling.
inline Raster contrast_map(const Raster& r, std::size_t window = 3)
{
  if (window < 3 || window % 2 == 0)
    throw InvalidArgument("contrast window must be odd and at least 3, got " +
                          std::to_string(window));
  const auto [lo, hi] = std::minmax_element(r.data().begin(), r.data().end());
  const double range = *hi - *lo;
  const double norm = range > 0.0 ? range : 1.0;
  const long long half = static_cast<long long>(window / 2);
  const double count = static_cast<double>(window * window);

  Raster out(r.width(), r.height());
  parallel_rows(r.height(), [&](std::size_t y) {
    for (std::size_t x = 0; x < r.width(); ++x) {
      // Shifted by the centre value so that flat windows give exactly 0.
      const double centre = r.at(x, y);
      double sum = 0.0, ss = 0.0;
      for (long long dy = -half; dy <= half; ++dy) {
        const auto row = r.row(boundary_index(static_cast<long long>(y) + dy, r.height(),
                                              BoundaryPolicy::Mirror));
        for (long long dx = -half; dx <= half; ++dx) {
          const double d = row[boundary_index(static_cast<long long>(x) + dx, r.width(),
                                              BoundaryPolicy::Mirror)] -
                           centre;
          sum += d;
          ss += d * d;
        }
      }
      const double mean = sum / count;
      out.at(x, y) = std::sqrt(std::max(0.0, ss / count - mean * mean)) / norm;
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Cellular neural network (Chua-Yang)
// ---------------------------------------------------------------------------

/**
 * Space-invariant 3x3 cloning template. Cell dynamics:
 *
 *   dx/dt = -x + sum(A * y) + sum(B * u) + z,   y = (|x + 1| - |x - 1|) / 2
 *
 * integrated by forward Euler with step h, all cells updated synchronously.
 * A and B are row-major with the centre at index 4.
 */
struct CnnTemplate
{
  std::array<double, 9> A{};
  std::array<double, 9> B{};
  double z = 0.0;
  double h = 0.1;
  int max_iters = 500;
  double tol = 1e-5;

  void validate() const
  {
    if (!(h > 0.0))
      throw InvalidArgument("CNN step h must be positive");
    if (!(tol > 0.0))
      throw InvalidArgument("CNN tolerance must be positive");
    if (max_iters < 1)
      throw InvalidArgument("CNN max_iters must be at least 1");
  }

  /// Bistable thresholding template with no neighbour coupling: A centre 2,
  /// B = 0, z = 0. A cell started at u settles to +1 when u > -z, else -1.
  static CnnTemplate selection_default()
  {
    CnnTemplate t;
    t.A[4] = 2.0;
    return t;
  }

  /// Classic edge extraction: A centre 2; B centre 8, neighbours -1; z = -1.
  static CnnTemplate edge_detection()
  {
    CnnTemplate t;
    t.A[4] = 2.0;
    t.B = {-1, -1, -1, -1, 8, -1, -1, -1, -1};
    t.z = -1.0;
    return t;
  }

  friend bool operator==(const CnnTemplate&, const CnnTemplate&) = default;
};

/// Piecewise-linear saturation (|x + 1| - |x - 1|) / 2.
inline double cnn_output(double x) { return std::clamp(x, -1.0, 1.0); }

struct CnnResult
{
  Raster state;
  Raster outputs;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline Raster correlate3x3(const Raster& r, const std::array<double, 9>& k)
{
  Raster out(r.width(), r.height());
  parallel_rows(r.height(), [&](std::size_t y) {
    for (std::size_t x = 0; x < r.width(); ++x) {
      double acc = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        const auto row = r.row(boundary_index(static_cast<long long>(y) + dy, r.height(),
                                              BoundaryPolicy::Mirror));
        for (int dx = -1; dx <= 1; ++dx)
          acc += k[(dy + 1) * 3 + (dx + 1)] *
                 row[boundary_index(static_cast<long long>(x) + dx, r.width(),
                                    BoundaryPolicy::Mirror)];
      }
      out.at(x, y) = acc;
    }
  });
  return out;
}

} // namespace detail

/// Runs the network until the largest per-cell state change in an
/// iteration drops below t.tol, or t.max_iters iterations have run.
inline CnnResult cnn_run(const CnnTemplate& t, const Raster& input, const Raster& state0)
{
  t.validate();
  require_same_dims(input, state0, "cnn_run");

  // B * u + z is fixed for the whole run.
  Raster drive = detail::correlate3x3(input, t.B);
  for (double& v : drive.data())
    v += t.z;

  CnnResult res;
  res.state = state0;
  Raster y(input.width(), input.height());
  Raster next(input.width(), input.height());
  std::vector<double> row_delta(input.height());

  for (int it = 1; it <= t.max_iters; ++it) {
    for (std::size_t i = 0; i < y.size(); ++i)
      y.data()[i] = cnn_output(res.state.data()[i]);
    const Raster feedback = detail::correlate3x3(y, t.A);

    parallel_rows(input.height(), [&](std::size_t r) {
      double m = 0.0;
      const auto xs = res.state.row(r);
      const auto fb = feedback.row(r);
      const auto dr = drive.row(r);
      auto nx = next.row(r);
      for (std::size_t c = 0; c < xs.size(); ++c) {
        const double dx = t.h * (-xs[c] + fb[c] + dr[c]);
        nx[c] = xs[c] + dx;
        m = std::max(m, std::abs(dx));
      }
      row_delta[r] = m;
    });
    std::swap(res.state, next);
    res.iterations = it;
    if (*std::max_element(row_delta.begin(), row_delta.end()) < t.tol) {
      res.converged = true;
      break;
    }
  }

  res.outputs = Raster(input.width(), input.height());
  for (std::size_t i = 0; i < res.state.size(); ++i)
    res.outputs.data()[i] = cnn_output(res.state.data()[i]);
  return res;
}

// ---------------------------------------------------------------------------
// Hilbert-Schmidt independence criterion
// ---------------------------------------------------------------------------

/// Dense row-major matrix of per-sample descriptors (rows = samples).
struct Matrix
{
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  static Matrix column(std::vector<double> values)
  {
    Matrix m;
    m.rows = values.size();
    m.cols = 1;
    m.data = std::move(values);
    return m;
  }

  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }

  /// Rows `idx` in the given order.
  Matrix select_rows(const std::vector<std::size_t>& idx) const
  {
    Matrix out(idx.size(), cols);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t c = 0; c < cols; ++c)
        out(i, c) = (*this)(idx[i], c);
    return out;
  }
};

struct SampleSet
{
  Matrix features; // n x d
  Matrix labels;   // n x 1 (or n x q)

  std::size_t size() const noexcept { return features.rows; }

  void validate() const
  {
    if (features.rows < 2)
      throw InvalidArgument("sample set needs at least 2 samples");
    if (labels.rows != features.rows)
      throw InvalidArgument("features and labels disagree on sample count");
    for (double v : features.data)
      if (!std::isfinite(v))
        throw InvalidArgument("non-finite feature value");
    for (double v : labels.data)
      if (!std::isfinite(v))
        throw InvalidArgument("non-finite label value");
  }
};

namespace detail {

inline double squared_distance(const Matrix& m, std::size_t i, std::size_t j)
{
  double s = 0.0;
  for (std::size_t c = 0; c < m.cols; ++c) {
    const double d = m(i, c) - m(j, c);
    s += d * d;
  }
  return s;
}

// H K H with H = I - 11'/n, for a Gaussian Gram matrix K.
inline std::vector<double> centered_gram(const Matrix& m, double sigma)
{
  const std::size_t n = m.rows;
  std::vector<double> k(n * n);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t i = 0; i < n; ++i) {
    k[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j)
      k[i * n + j] = k[j * n + i] = std::exp(-squared_distance(m, i, j) * inv);
  }
  std::vector<double> row_mean(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      row_mean[i] += k[i * n + j];
    total += row_mean[i];
    row_mean[i] /= static_cast<double>(n);
  }
  total /= static_cast<double>(n * n);
  // K symmetric, so column means equal row means.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      k[i * n + j] = k[i * n + j] - row_mean[i] - row_mean[j] + total;
  return k;
}

} // namespace detail

/**
 * Empirical HSIC with Gaussian kernels:
 *
 *   HSIC = trace(K H L H) / (n - 1)^2
 *
 * evaluated as sum_ij (HKH)_ij (HLH)_ij, which is exactly symmetric in the
 * two arguments and non-negative up to rounding.
 */
inline double hsic(const Matrix& x, const Matrix& y, double sigma_x, double sigma_y)
{
  if (x.rows != y.rows)
    throw InvalidArgument("hsic: sample counts differ");
  if (x.rows < 2)
    throw InvalidArgument("hsic needs at least 2 samples");
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0))
    throw InvalidArgument("hsic bandwidths must be positive");
  const auto kc = detail::centered_gram(x, sigma_x);
  const auto lc = detail::centered_gram(y, sigma_y);
  double acc = 0.0;
  for (std::size_t i = 0; i < kc.size(); ++i)
    acc += kc[i] * lc[i];
  const double n1 = static_cast<double>(x.rows - 1);
  return acc / (n1 * n1);
}

/// Median pairwise Euclidean distance between rows; 1 when all rows coincide.
inline double median_bandwidth(const Matrix& m)
{
  std::vector<double> d;
  d.reserve(m.rows * (m.rows - 1) / 2);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = i + 1; j < m.rows; ++j)
      d.push_back(std::sqrt(detail::squared_distance(m, i, j)));
  if (d.empty())
    return 1.0;
  const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  double med = *mid;
  if (d.size() % 2 == 0) {
    const double lower = *std::max_element(d.begin(), mid);
    med = 0.5 * (med + lower);
  }
  return med > 0.0 ? med : 1.0;
}

/// HSIC between features and labels restricted to the samples in `idx`.
inline double subset_hsic(const SampleSet& s, const std::vector<std::size_t>& idx, double sigma)
{
  return hsic(s.features.select_rows(idx), s.labels.select_rows(idx), sigma, sigma);
}

/**
 * Greedy forward selection of k training samples.
 *
 * Starts from the pair with the largest subset HSIC, then repeatedly adds
 * the sample that maximizes the HSIC of the grown subset. Ties go to the
 * lowest index (lexicographically lowest pair for the seed). Returns the
 * chosen indices sorted ascending.
 */
inline std::vector<std::size_t> select_samples(const SampleSet& s, std::size_t k, double sigma)
{
  s.validate();
  const std::size_t n = s.size();
  if (k < 2 || k > n)
    throw InvalidArgument("select_samples: k must satisfy 2 <= k <= " + std::to_string(n) +
                          ", got " + std::to_string(k));
  if (!(sigma > 0.0))
    throw InvalidArgument("select_samples: bandwidth must be positive");

  std::vector<std::size_t> chosen;
  if (k == n) {
    chosen.resize(n);
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    return chosen;
  }

  double best = -std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bj = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = subset_hsic(s, {i, j}, sigma);
      if (v > best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  chosen = {bi, bj};

  std::vector<bool> used(n, false);
  used[bi] = used[bj] = true;
  while (chosen.size() < k) {
    double step_best = -std::numeric_limits<double>::infinity();
    std::size_t pick = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c])
        continue;
      chosen.push_back(c);
      const double v = subset_hsic(s, chosen, sigma);
      chosen.pop_back();
      if (v > step_best) {
        step_best = v;
        pick = c;
      }
    }
    chosen.push_back(pick);
    used[pick] = true;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

/// Per-pixel descriptors for HSIC-based sample selection: local contrast at
/// window 3 and 5, plus the intensity itself. One row per pixel.
inline Matrix pixel_features(const Raster& r)
{
  const Raster c3 = contrast_map(r, 3);
  const Raster c5 = contrast_map(r, 5);
  Matrix m(r.size(), 3);
  for (std::size_t i = 0; i < r.size(); ++i) {
    m(i, 0) = c3.data()[i];
    m(i, 1) = c5.data()[i];
    m(i, 2) = r.data()[i];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Selection map
// ---------------------------------------------------------------------------

/// Blend weights in [0,1] per source pixel: 1 selects the sharp
/// (nearest-neighbour) resampler, 0 the smooth (cubic) one.
struct SelectionMap
{
  Raster weights;
};

struct SelectionParams
{
  CnnTemplate cnn = CnnTemplate::selection_default();
  std::size_t window = 3;
  double threshold = 0.5;
  /// Snap weights to {0, 1} at 0.5 after the network settles.
  bool hard = false;
};

/**
 * Contrast map -> cell input u = 4c - 1 (contrast of [0, 0.5] onto
 * [-1, 1], clamped) -> network run with state0 = u -> w = (y + 1) / 2.
 *
 * The threshold enters as a bias shift of 1 - 2*threshold, so with the
 * default template a pixel is sharp exactly when 2c > threshold.
 * Thresholds <= 0 and >= 1 saturate to all-sharp and all-smooth maps.
 */
inline SelectionMap selection_map(const Raster& r, const SelectionParams& p)
{
  if (!std::isfinite(p.threshold))
    throw InvalidArgument("selection threshold must be finite");
  if (p.threshold <= 0.0)
    return {Raster::filled(r.width(), r.height(), 1.0)};
  if (p.threshold >= 1.0) {
    (void)contrast_map(r, p.window); // still validates the window
    return {Raster::filled(r.width(), r.height(), 0.0)};
  }

  const Raster contrast = contrast_map(r, p.window);
  Raster u(r.width(), r.height());
  for (std::size_t i = 0; i < u.size(); ++i)
    u.data()[i] = std::clamp(4.0 * contrast.data()[i] - 1.0, -1.0, 1.0);

  CnnTemplate t = p.cnn;
  t.z += 1.0 - 2.0 * p.threshold;
  const CnnResult run = cnn_run(t, u, u);

  Raster w(r.width(), r.height());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double v = std::clamp((run.outputs.data()[i] + 1.0) / 2.0, 0.0, 1.0);
    w.data()[i] = p.hard ? (v >= 0.5 ? 1.0 : 0.0) : v;
  }
  return {w};
}

} // namespace ars

#endif // ARS_CONTEXT_HPP
