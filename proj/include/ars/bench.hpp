#ifndef ARS_BENCH_HPP
#define ARS_BENCH_HPP

// Benchmark harness: every (scene, method) cell degrades the pristine scene
// by `scale` with the method, restores it to the original grid with the
// same method, and scores the result against the pristine scene.
//
// Config grammar (docs/bench-config.md has the full reference):
//
//   # comment
//   key = value
//
// Lists are comma separated. Scenes are `kind:size:contrast[:seed]`; a
// missing seed defaults to `seed + index`.

#include "ars/context.hpp"
#include "ars/error.hpp"
#include "ars/io.hpp"
#include "ars/kernels.hpp"
#include "ars/metrics.hpp"
#include "ars/resampler.hpp"
#include "ars/scene.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace ars {

struct BenchConfig
{
  std::vector<SceneSpec> scenes;
  std::vector<MethodSpec> methods;
  int scale = 2;
  std::size_t bins = 256;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "bench_out";

  void validate() const
  {
    if (scenes.empty())
      throw InvalidArgument("bench config lists no scenes");
    if (methods.empty())
      throw InvalidArgument("bench config lists no methods");
    if (scale < 2)
      throw InvalidArgument("bench scale must be an integer >= 2");
    if (bins < 2)
      throw InvalidArgument("bench bins must be >= 2");
  }
};

/// Knobs shared by every method built from a name.
struct MethodParams
{
  double cubic_a = KernelSpec::kDefaultCubicA;
  double kaiser_beta = KernelSpec::kDefaultKaiserBeta;
  BoundaryPolicy boundary = BoundaryPolicy::Mirror;
  std::size_t levels = 3;
  SelectionParams selection;
};

/// Builds a method from its CLI/config name:
/// nn | bl | cc | kd16 | hybrid | adaptive | adaptive-hybrid.
inline MethodSpec make_method(std::string_view name, const MethodParams& p = {})
{
  if (name == "nn")
    return ClassicMethod{KernelSpec::nearest(), p.boundary};
  if (name == "bl")
    return ClassicMethod{KernelSpec::bilinear(), p.boundary};
  if (name == "cc")
    return ClassicMethod{KernelSpec::cubic(p.cubic_a), p.boundary};
  if (name == "kd16")
    return ClassicMethod{KernelSpec::kaiser_sinc16(p.kaiser_beta), p.boundary};
  if (name == "hybrid") {
    HybridMethod h;
    h.options.levels = p.levels;
    return h;
  }
  if (name == "adaptive" || name == "adaptive-hybrid") {
    AdaptiveMethod a;
    a.selection = p.selection;
    a.smooth = KernelSpec::cubic(p.cubic_a);
    a.boundary = p.boundary;
    if (name == "adaptive-hybrid")
      a.hybrid_levels = p.levels;
    return a;
  }
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Text helpers
// ---------------------------------------------------------------------------

inline std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, std::string_view what)
{
  T v{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+')
    ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty())
    throw InvalidArgument("invalid " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

/// Fixed-point with `digits` decimals, '.' separator regardless of locale.
inline std::string format_fixed(double v, int digits = 4)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  std::string s(buf, ec == std::errc() ? ptr : buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-')
    s.erase(0, 1);
  return s;
}

inline std::string scene_label(const SceneSpec& s)
{
  return std::string(to_string(s.kind)) + "-" + std::to_string(s.size) + "-c" +
         format_fixed(s.contrast) + "-s" + std::to_string(s.seed);
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

inline std::array<double, 9> parse_template_values(std::string_view v, std::string_view key)
{
  const auto parts = split(v, ',');
  if (parts.size() != 9)
    throw InvalidArgument(std::string(key) + " needs 9 comma-separated values");
  std::array<double, 9> out{};
  for (std::size_t i = 0; i < 9; ++i)
    out[i] = parse_number<double>(parts[i], key);
  return out;
}

inline bool parse_bool(std::string_view v, std::string_view key)
{
  if (v == "true" || v == "1" || v == "yes")
    return true;
  if (v == "false" || v == "0" || v == "no")
    return false;
  throw InvalidArgument("invalid boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

inline BenchConfig parse_bench_config(std::string_view text)
{
  BenchConfig cfg;
  MethodParams params;
  std::vector<std::string> scene_items, method_items;
  std::vector<bool> seen_seed;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty())
      continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string val = trim(std::string_view(body).substr(eq + 1));
    try {
      if (key == "scenes")
        scene_items = split(val, ',');
      else if (key == "methods")
        method_items = split(val, ',');
      else if (key == "scale")
        cfg.scale = parse_number<int>(val, key);
      else if (key == "bins")
        cfg.bins = parse_number<std::size_t>(val, key);
      else if (key == "seed")
        cfg.seed = parse_number<std::uint64_t>(val, key);
      else if (key == "output_dir")
        cfg.output_dir = val;
      else if (key == "levels")
        params.levels = parse_number<std::size_t>(val, key);
      else if (key == "a")
        params.cubic_a = parse_number<double>(val, key);
      else if (key == "beta")
        params.kaiser_beta = parse_number<double>(val, key);
      else if (key == "boundary")
        params.boundary = parse_boundary(val);
      else if (key == "window")
        params.selection.window = parse_number<std::size_t>(val, key);
      else if (key == "threshold")
        params.selection.threshold = parse_number<double>(val, key);
      else if (key == "hard")
        params.selection.hard = parse_bool(val, key);
      else if (key == "cnn.A")
        params.selection.cnn.A = parse_template_values(val, key);
      else if (key == "cnn.B")
        params.selection.cnn.B = parse_template_values(val, key);
      else if (key == "cnn.z")
        params.selection.cnn.z = parse_number<double>(val, key);
      else if (key == "cnn.h")
        params.selection.cnn.h = parse_number<double>(val, key);
      else if (key == "cnn.tol")
        params.selection.cnn.tol = parse_number<double>(val, key);
      else if (key == "cnn.max_iters")
        params.selection.cnn.max_iters = parse_number<int>(val, key);
      else
        throw InvalidArgument("unknown key '" + key + "'");
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }

  for (std::size_t i = 0; i < scene_items.size(); ++i) {
    const auto f = split(scene_items[i], ':');
    if (f.size() < 3 || f.size() > 4)
      throw InvalidArgument("scene '" + scene_items[i] + "' must be kind:size:contrast[:seed]");
    SceneSpec s;
    s.kind = parse_scene_kind(f[0]);
    s.size = parse_number<std::size_t>(f[1], "scene size");
    s.contrast = parse_number<double>(f[2], "scene contrast");
    s.seed = f.size() == 4 ? parse_number<std::uint64_t>(f[3], "scene seed") : cfg.seed + i;
    cfg.scenes.push_back(s);
  }
  params.selection.cnn.validate();
  for (const auto& m : method_items)
    cfg.methods.push_back(make_method(m, params));
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

struct BenchRow
{
  std::string scene;
  std::string method;
  std::optional<double> correlation;
  std::optional<double> entropy_deviation;
  std::optional<double> avg_diff_error;
  std::optional<double> max_diff;
  std::optional<double> signed_mean;
  std::string error;

  bool failed() const { return !error.empty(); }

  static BenchRow empty(std::string scene, std::string method)
  {
    BenchRow row;
    row.scene = std::move(scene);
    row.method = std::move(method);
    return row;
  }
};

inline constexpr std::string_view kCsvHeader =
  "scene,method,correlation,entropy_deviation,avg_diff_error,max_diff,signed_mean,error";

/// Degrade by `scale` then restore to the original grid, both with `m`.
inline Raster roundtrip(const Raster& truth, const MethodSpec& m, int scale)
{
  const std::size_t dw = (truth.width() + scale - 1) / scale;
  const std::size_t dh = (truth.height() + scale - 1) / scale;
  const Raster down = run(truth, GridTransform::downsample(scale), dw, dh, m);
  return run(down, GridTransform::upsample(scale), truth.width(), truth.height(), m);
}

inline std::string sanitize_csv(std::string s)
{
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"')
      c = ';';
  return s;
}

/// Scores one restored raster. Metrics that are defined are filled in even
/// when another one (typically correlation) is not.
inline BenchRow score_cell(const Raster& out, const Raster& truth, std::string scene,
                           std::string method, std::size_t bins)
{
  BenchRow row = BenchRow::empty(std::move(scene), std::move(method));
  row.entropy_deviation = entropy_deviation(truth, out, bins);
  row.avg_diff_error = avg_diff_error(out, truth);
  row.max_diff = max_abs_diff(out, truth);
  row.signed_mean = signed_mean_diff(out, truth);
  try {
    row.correlation = correlation(out, truth);
  } catch (const UndefinedMetric& e) {
    row.error = sanitize_csv(e.what());
  }
  return row;
}

struct BenchResult
{
  std::vector<BenchRow> rows;

  bool any_failed() const
  {
    for (const auto& r : rows)
      if (r.failed())
        return true;
    return false;
  }
};

/// Runs every cell in config order. When `write_outputs` is set, each
/// restored raster goes to output_dir/<scene>_<method>.rsf.
inline BenchResult run_bench(const BenchConfig& cfg, bool write_outputs = true)
{
  cfg.validate();
  if (write_outputs)
    std::filesystem::create_directories(cfg.output_dir);
  BenchResult result;
  for (const auto& spec : cfg.scenes) {
    const std::string label = scene_label(spec);
    std::optional<Raster> truth;
    std::string scene_error;
    try {
      truth = synth_scene(spec);
    } catch (const Error& e) {
      scene_error = e.what();
    }
    for (const auto& m : cfg.methods) {
      const std::string name = method_name(m);
      if (!truth) {
        BenchRow row = BenchRow::empty(label, name);
        row.error = sanitize_csv(scene_error);
        result.rows.push_back(std::move(row));
        continue;
      }
      try {
        const Raster out = roundtrip(*truth, m, cfg.scale);
        result.rows.push_back(score_cell(out, *truth, label, name, cfg.bins));
        if (write_outputs)
          save_raster(cfg.output_dir / (label + "_" + name + ".rsf"), out);
      } catch (const Error& e) {
        BenchRow row = BenchRow::empty(label, name);
        row.error = sanitize_csv(e.what());
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

inline std::string to_csv(const BenchResult& r)
{
  auto num = [](const std::optional<double>& v) { return v ? format_fixed(*v) : std::string(); };
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : r.rows) {
    out += row.scene + ',' + row.method + ',' + num(row.correlation) + ',' +
           num(row.entropy_deviation) + ',' + num(row.avg_diff_error) + ',' + num(row.max_diff) +
           ',' + num(row.signed_mean) + ',' + row.error + '\n';
  }
  return out;
}

/// Comparison table per scene: Method | Correlation Coefficient | Entropy
/// Deviation | Average Difference Error.
inline std::string to_markdown(const BenchResult& r)
{
  auto num = [](const std::optional<double>& v) { return v ? format_fixed(*v) : std::string("n/a"); };
  std::string out;
  std::string current;
  for (const auto& row : r.rows) {
    if (row.scene != current) {
      current = row.scene;
      if (!out.empty())
        out += '\n';
      out += "### " + current + "\n\n";
      out += "| Method | Correlation Coefficient | Entropy Deviation | Average Difference Error |\n";
      out += "|---|---|---|---|\n";
    }
    out += "| " + row.method + " | " + num(row.correlation) + " | " + num(row.entropy_deviation) +
           " | " + num(row.avg_diff_error) + " |";
    if (row.failed())
      out += " (" + row.error + ")";
    out += '\n';
  }
  return out;
}

/**
 * Mean over feature pixels of |out - local background|, where the local
 * background of a feature pixel is the mean of the non-feature truth pixels
 * in its 5x5 neighbourhood. Measures how much sub-pixel contrast survives.
 */
inline double retained_contrast(const Raster& out, const Raster& truth, const Raster& mask)
{
  require_same_dims(out, truth, "retained_contrast");
  require_same_dims(out, mask, "retained_contrast");
  std::vector<double> terms;
  const auto w = static_cast<long long>(truth.width());
  const auto h = static_cast<long long>(truth.height());
  for (long long y = 0; y < h; ++y)
    for (long long x = 0; x < w; ++x) {
      if (mask.at(x, y) == 0.0)
        continue;
      double sum = 0.0;
      int count = 0;
      for (long long yy = std::max(0LL, y - 2); yy <= std::min(h - 1, y + 2); ++yy)
        for (long long xx = std::max(0LL, x - 2); xx <= std::min(w - 1, x + 2); ++xx)
          if (mask.at(xx, yy) == 0.0) {
            sum += truth.at(xx, yy);
            ++count;
          }
      if (count == 0)
        continue;
      terms.push_back(std::abs(out.at(x, y) - sum / count));
    }
  if (terms.empty())
    throw UndefinedMetric("retained_contrast: no feature pixels with background neighbours");
  return pairwise_sum(terms) / static_cast<double>(terms.size());
}

} // namespace ars

#endif // ARS_BENCH_HPP
