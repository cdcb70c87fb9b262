// arsample: command-line front end for the ars library.
//
//   arsample resample --in a.pgm --out b.rsf --method hybrid --transform 2,0,0.5,0,2,0.5 --size 32x32
//   arsample bench    --config configs/roundtrip.conf [--markdown] [--csv out.csv]
//   arsample pyramid  --in a.pgm --levels 3 --out-dir pyr [--reconstruct]
//   arsample synth    --kind thin-lines --size 64 --contrast 0.8 --seed 1 --out lines.pgm
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include "ars/ars.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

ars::GridTransform parse_transform(const std::string& s)
{
  const auto parts = ars::split(s, ',');
  if (parts.size() != 6)
    throw UsageError("--transform needs six comma-separated numbers a,b,c,d,e,f");
  double v[6];
  try {
    for (int i = 0; i < 6; ++i)
      v[i] = ars::parse_number<double>(parts[i], "transform coefficient");
  } catch (const ars::InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& s)
{
  const auto x = s.find('x');
  if (x == std::string::npos)
    throw UsageError("--size must look like WxH, got '" + s + "'");
  try {
    const auto w = ars::parse_number<std::size_t>(s.substr(0, x), "width");
    const auto h = ars::parse_number<std::size_t>(s.substr(x + 1), "height");
    if (w == 0 || h == 0)
      throw UsageError("--size dimensions must be positive");
    return {w, h};
  } catch (const ars::InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> scene_kind_names()
{
  std::vector<std::string> out;
  for (auto k : {ars::SceneKind::Constant, ars::SceneKind::Ramp, ars::SceneKind::Checkerboard,
                 ars::SceneKind::ThinLines, ars::SceneKind::PointTargets, ars::SceneKind::Mixed})
    out.emplace_back(ars::to_string(k));
  return out;
}

std::string format_sci(double v)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 3);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

struct ResampleArgs
{
  std::string in, out, method, transform, size, boundary = "mirror";
  std::size_t levels = 3;
  double beta = ars::KernelSpec::kDefaultKaiserBeta;
  double a = ars::KernelSpec::kDefaultCubicA;
  double threshold = 0.5;
  std::size_t window = 3;
  unsigned maxval = 255;
};

int cmd_resample(const ResampleArgs& args)
{
  const auto t = parse_transform(args.transform);
  const auto [w, h] = parse_size(args.size);
  ars::MethodParams p;
  p.levels = args.levels;
  p.kaiser_beta = args.beta;
  p.cubic_a = args.a;
  p.boundary = ars::parse_boundary(args.boundary);
  p.selection.threshold = args.threshold;
  p.selection.window = args.window;
  const ars::MethodSpec m = ars::make_method(args.method, p);
  const ars::Raster src = ars::load_raster(args.in);
  ars::save_raster(args.out, ars::run(src, t, w, h, m), args.maxval);
  return kOk;
}

struct BenchArgs
{
  std::string config, csv, out_dir;
  std::optional<std::uint64_t> seed;
  bool markdown = false;
};

int cmd_bench(const BenchArgs& args)
{
  const auto bytes = ars::read_file(args.config);
  std::string text(bytes.begin(), bytes.end());
  if (args.seed)
    text += "\nseed = " + std::to_string(*args.seed) + "\n";
  ars::BenchConfig cfg;
  try {
    cfg = ars::parse_bench_config(text);
  } catch (const ars::InvalidArgument& e) {
    throw UsageError(args.config + ": " + e.what());
  }
  if (!args.out_dir.empty())
    cfg.output_dir = args.out_dir;

  const ars::BenchResult res = ars::run_bench(cfg, true);
  const std::string csv = ars::to_csv(res);
  if (!args.csv.empty()) {
    ars::write_file(args.csv, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
  } else if (!args.markdown) {
    std::cout << csv;
  }
  if (args.markdown)
    std::cout << ars::to_markdown(res);
  for (const auto& row : res.rows)
    if (row.failed())
      std::cerr << "cell " << row.scene << "/" << row.method << " failed: " << row.error << "\n";
  return res.any_failed() ? kFailure : kOk;
}

struct PyramidArgs
{
  std::string in, out_dir;
  std::size_t levels = 3;
  bool reconstruct = false;
};

int cmd_pyramid(const PyramidArgs& args)
{
  const ars::Raster src = ars::load_raster(args.in);
  const ars::LaplacianPyramid p = ars::build(src, args.levels);
  const std::filesystem::path dir = args.out_dir;
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < p.levels(); ++k)
    ars::save_raster(dir / ("level_" + std::to_string(k) + ".rsf"), p.bands[k]);
  ars::save_raster(dir / "residual.rsf", p.residual);
  if (args.reconstruct) {
    const ars::Raster rebuilt = ars::reconstruct(p);
    ars::save_raster(dir / "reconstructed.rsf", rebuilt);
    std::cout << "max_abs_error " << format_sci(ars::max_abs_diff(rebuilt, src)) << "\n";
  }
  return kOk;
}

struct SynthArgs
{
  std::string kind, out;
  std::size_t size = 64;
  double contrast = 0.8;
  std::uint64_t seed = 0;
};

int cmd_synth(const SynthArgs& args)
{
  const ars::SceneSpec spec{ars::parse_scene_kind(args.kind), args.size, args.contrast, args.seed};
  ars::save_raster(args.out, ars::synth_scene(spec));
  return kOk;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Raster resampling: classic kernels, pyramid-hybrid and context-adaptive methods"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  ResampleArgs ra;
  auto* resample = app.add_subcommand("resample", "Resample one raster through a grid transform");
  resample->add_option("--in", ra.in, "Input raster (.pgm or .rsf)")->required();
  resample->add_option("--out", ra.out, "Output raster (.pgm or .rsf)")->required();
  resample->add_option("--method", ra.method, "Resampling method")
    ->required()
    ->check(CLI::IsMember({"nn", "bl", "cc", "kd16", "hybrid", "adaptive", "adaptive-hybrid"}));
  resample->add_option("--transform", ra.transform, "a,b,c,d,e,f: source x = a*i + b*j + c, y = d*i + e*j + f")
    ->required();
  resample->add_option("--size", ra.size, "Output size WxH")->required();
  resample->add_option("--levels", ra.levels, "Pyramid levels (hybrid)")->check(CLI::PositiveNumber);
  resample->add_option("--beta", ra.beta, "Kaiser window beta (kd16)");
  resample->add_option("--a", ra.a, "Cubic convolution parameter (cc)");
  resample->add_option("--boundary", ra.boundary, "Boundary policy")
    ->check(CLI::IsMember({"mirror", "clamp"}));
  resample->add_option("--threshold", ra.threshold, "Selection threshold (adaptive)");
  resample->add_option("--window", ra.window, "Contrast window (adaptive)");
  resample->add_option("--maxval", ra.maxval, "PGM output maxval")->check(CLI::IsMember({255, 65535}));
  resample->add_option("--threads", threads, "Worker threads (0 = all cores)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run the scene x method benchmark and print CSV");
  bench->add_option("--config", ba.config, "Benchmark config file")->required();
  bench->add_option("--seed", ba.seed, "Override the config seed");
  bench->add_option("--csv", ba.csv, "Write CSV here instead of stdout");
  bench->add_option("--out-dir", ba.out_dir, "Override output_dir");
  bench->add_flag("--markdown", ba.markdown, "Print per-scene comparison tables");
  bench->add_option("--threads", threads, "Worker threads (0 = all cores)");

  PyramidArgs pa;
  auto* pyramid = app.add_subcommand("pyramid", "Dump Laplacian pyramid levels as RSF1");
  pyramid->add_option("--in", pa.in, "Input raster")->required();
  pyramid->add_option("--levels", pa.levels, "Number of band levels K")->required();
  pyramid->add_option("--out-dir", pa.out_dir, "Output directory")->required();
  pyramid->add_flag("--reconstruct", pa.reconstruct, "Also rebuild and report the error");
  pyramid->add_option("--threads", threads, "Worker threads (0 = all cores)");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Write a synthetic test scene");
  synth->add_option("--kind", sa.kind, "Scene kind")->required()->check(CLI::IsMember(scene_kind_names()));
  synth->add_option("--size", sa.size, "Side length in pixels");
  synth->add_option("--contrast", sa.contrast, "Feature contrast in [0,1]");
  synth->add_option("--seed", sa.seed, "Random seed");
  synth->add_option("--out", sa.out, "Output raster (.pgm or .rsf)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    ars::set_thread_count(threads);
    if (*resample)
      return cmd_resample(ra);
    if (*bench)
      return cmd_bench(ba);
    if (*pyramid)
      return cmd_pyramid(pa);
    return cmd_synth(sa);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
