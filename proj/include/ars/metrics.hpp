#ifndef ARS_METRICS_HPP
#define ARS_METRICS_HPP

#include "ars/error.hpp"
#include "ars/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ars {

/// Pairwise (cascade) summation; fixed evaluation order.
inline double pairwise_sum(std::span<const double> v)
{
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v)
      s += x;
    return s;
  }
  const std::size_t mid = v.size() / 2;
  return pairwise_sum(v.first(mid)) + pairwise_sum(v.subspan(mid));
}

/// D(j, i) = interp(j, i) - truth(j, i).
inline Raster diff_map(const Raster& interp, const Raster& truth)
{
  require_same_dims(interp, truth, "diff_map");
  return interp - truth;
}

/// Mean of |interp - truth| over all pixels.
inline double avg_diff_error(const Raster& interp, const Raster& truth)
{
  require_same_dims(interp, truth, "avg_diff_error");
  std::vector<double> a(interp.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = std::abs(interp.data()[i] - truth.data()[i]);
  return pairwise_sum(a) / static_cast<double>(a.size());
}

inline double signed_mean_diff(const Raster& interp, const Raster& truth)
{
  const Raster d = diff_map(interp, truth);
  return pairwise_sum(d.data()) / static_cast<double>(d.size());
}

/// Shannon entropy in bits of a `bins`-bin histogram over [0, 1]. Values
/// outside [0, 1] fall into the edge bins.
inline double entropy(const Raster& r, std::size_t bins = 256)
{
  if (bins < 2)
    throw InvalidArgument("entropy needs at least 2 bins");
  std::vector<std::size_t> hist(bins, 0);
  for (double v : r.data()) {
    const double pos = std::clamp(v, 0.0, 1.0) * static_cast<double>(bins);
    hist[std::min(bins - 1, static_cast<std::size_t>(pos))]++;
  }
  const double n = static_cast<double>(r.size());
  std::vector<double> terms;
  terms.reserve(bins);
  for (auto c : hist) {
    if (c == 0)
      continue;
    const double p = static_cast<double>(c) / n;
    terms.push_back(-p * std::log2(p));
  }
  return std::max(0.0, pairwise_sum(terms));
}

inline double entropy_deviation(const Raster& a, const Raster& b, std::size_t bins = 256)
{
  return std::abs(entropy(a, bins) - entropy(b, bins));
}

/// Pearson product-moment correlation. Throws UndefinedMetric when either
/// raster has zero variance.
inline double correlation(const Raster& a, const Raster& b)
{
  require_same_dims(a, b, "correlation");
  const double n = static_cast<double>(a.size());
  const double ma = pairwise_sum(a.data()) / n;
  const double mb = pairwise_sum(b.data()) / n;
  std::vector<double> sab(a.size()), saa(a.size()), sbb(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a.data()[i] - ma, db = b.data()[i] - mb;
    sab[i] = da * db;
    saa[i] = da * da;
    sbb[i] = db * db;
  }
  const double vaa = pairwise_sum(saa), vbb = pairwise_sum(sbb);
  if (!(vaa > 0.0) || !(vbb > 0.0))
    throw UndefinedMetric("correlation undefined: zero variance input");
  return std::clamp(pairwise_sum(sab) / std::sqrt(vaa * vbb), -1.0, 1.0);
}

/// One row of the comparison table: method, correlation, entropy
/// deviation, average difference error, plus supporting statistics.
struct MetricsReport
{
  std::string method_id;
  double correlation = 0.0;
  double entropy_src = 0.0;
  double entropy_out = 0.0;
  double entropy_deviation = 0.0;
  double avg_diff_error = 0.0;
  double max_diff = 0.0;
  double signed_mean = 0.0;
};

inline MetricsReport report(const Raster& interp, const Raster& truth, std::string method_id,
                            std::size_t bins = 256)
{
  MetricsReport m;
  m.method_id = std::move(method_id);
  m.correlation = correlation(interp, truth);
  m.entropy_src = entropy(truth, bins);
  m.entropy_out = entropy(interp, bins);
  m.entropy_deviation = std::abs(m.entropy_src - m.entropy_out);
  m.avg_diff_error = avg_diff_error(interp, truth);
  m.max_diff = max_abs_diff(interp, truth);
  m.signed_mean = signed_mean_diff(interp, truth);
  return m;
}

} // namespace ars

#endif // ARS_METRICS_HPP
