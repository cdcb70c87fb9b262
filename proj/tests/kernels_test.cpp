#include "ars/kernels.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace ars;

namespace {

std::vector<KernelSpec> all_kernels()
{
  return {KernelSpec::nearest(), KernelSpec::bilinear(), KernelSpec::cubic(-0.5),
          KernelSpec::cubic(-0.75), KernelSpec::kaiser_sinc16(4.0), KernelSpec::kaiser_sinc16(8.0),
          KernelSpec::cubic_bspline()};
}

std::vector<KernelSpec> interpolating_kernels()
{
  return {KernelSpec::nearest(), KernelSpec::bilinear(), KernelSpec::cubic(-0.5),
          KernelSpec::kaiser_sinc16(4.0)};
}

Raster x_ramp(std::size_t w, std::size_t h, double slope = 1.0, double offset = 0.0)
{
  Raster r(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x)
      r.at(x, y) = slope * x + offset;
  return r;
}

} // namespace

TEST(KernelSpec, SupportAndValidation)
{
  EXPECT_EQ(KernelSpec::nearest().support(), 0.5);
  EXPECT_EQ(KernelSpec::bilinear().support(), 1.0);
  EXPECT_EQ(KernelSpec::cubic().support(), 2.0);
  EXPECT_EQ(KernelSpec::cubic_bspline().support(), 2.0);
  EXPECT_EQ(KernelSpec::kaiser_sinc16().support(), 8.0);
  EXPECT_EQ(KernelSpec::nearest().tap_count(), 1);
  EXPECT_EQ(KernelSpec::kaiser_sinc16().tap_count(), 16);
  EXPECT_THROW(KernelSpec::cubic(0.0), InvalidArgument);
  EXPECT_THROW(KernelSpec::cubic(-1.5), InvalidArgument);
  EXPECT_NO_THROW(KernelSpec::cubic(-1.0));
  EXPECT_THROW(KernelSpec::kaiser_sinc16(0.0), InvalidArgument);
  EXPECT_EQ(KernelSpec::cubic().param(), -0.5);
  EXPECT_EQ(KernelSpec::kaiser_sinc16().param(), 4.0);
}

TEST(Weight, ReferenceValues)
{
  EXPECT_EQ(weight(KernelSpec::bilinear(), 0.5), 0.5);
  // Two-piece cubic convolution polynomial with a = -0.5, evaluated by hand
  // and by a scripted closed-form evaluation.
  EXPECT_DOUBLE_EQ(weight(KernelSpec::cubic(-0.5), 0.5), 0.5625);
  EXPECT_DOUBLE_EQ(weight(KernelSpec::cubic(-0.5), 1.5), -0.0625);
  EXPECT_DOUBLE_EQ(weight(KernelSpec::cubic(-0.5), -1.5), -0.0625);
  EXPECT_EQ(weight(KernelSpec::cubic(), 0.0), 1.0);
  EXPECT_EQ(weight(KernelSpec::cubic(), 1.0), 0.0);
  EXPECT_DOUBLE_EQ(weight(KernelSpec::cubic_bspline(), 0.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(weight(KernelSpec::cubic_bspline(), 1.0), 1.0 / 6.0);
}

TEST(Weight, KaiserSincZerosAndUnity)
{
  const auto k = KernelSpec::kaiser_sinc16(4.0);
  EXPECT_EQ(weight(k, 0.0), 1.0);
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(weight(k, n), 0.0) << n;
    EXPECT_EQ(weight(k, -n), 0.0) << n;
  }
  EXPECT_GT(weight(k, 0.5), 0.0);
  EXPECT_LT(weight(k, 1.5), 0.0);
}

TEST(Weight, NearestNeighbour)
{
  const auto nn = KernelSpec::nearest();
  EXPECT_EQ(weight(nn, 0.0), 1.0);
  EXPECT_EQ(weight(nn, 0.49), 1.0);
  EXPECT_EQ(weight(nn, 0.5), 0.0);
  EXPECT_EQ(weight(nn, -0.5), 0.0);
}

TEST(Weight, SymmetryAndCompactSupport)
{
  for (const auto& k : all_kernels()) {
    for (int i = 0; i <= 2000; ++i) {
      const double t = i * 0.005;
      EXPECT_EQ(weight(k, t), weight(k, -t)) << k.name() << " t=" << t;
      if (t >= k.support()) {
        EXPECT_EQ(weight(k, t), 0.0) << k.name() << " t=" << t;
      }
    }
    EXPECT_EQ(weight(k, k.support()), 0.0);
    EXPECT_EQ(weight(k, 1e6), 0.0);
  }
}

TEST(Weights1d, ReferenceTaps)
{
  const Taps bl = weights_1d(KernelSpec::bilinear(), 0.25);
  ASSERT_EQ(bl.count, 2);
  EXPECT_EQ(bl.start, 0);
  EXPECT_EQ(bl.w[0], 0.75);
  EXPECT_EQ(bl.w[1], 0.25);

  const Taps cc = weights_1d(KernelSpec::cubic(-0.5), 0.0);
  ASSERT_EQ(cc.count, 4);
  EXPECT_EQ(cc.start, -1);
  EXPECT_EQ(cc.w[0], 0.0);
  EXPECT_EQ(cc.w[1], 1.0);
  EXPECT_EQ(cc.w[2], 0.0);
  EXPECT_EQ(cc.w[3], 0.0);

  const Taps kd = weights_1d(KernelSpec::kaiser_sinc16(4.0), 0.5);
  ASSERT_EQ(kd.count, 16);
  EXPECT_EQ(kd.start, -7);
  EXPECT_NEAR(kd.sum(), 1.0, 1e-12);
}

TEST(Weights1d, NearestTieGoesToLowerIndex)
{
  EXPECT_EQ(weights_1d(KernelSpec::nearest(), 0.5).start, 0);
  EXPECT_EQ(weights_1d(KernelSpec::nearest(), 0.4999).start, 0);
  EXPECT_EQ(weights_1d(KernelSpec::nearest(), 0.5001).start, 1);
  const Raster r(3, 1, {10, 20, 30});
  EXPECT_EQ(sample(r, 0.5, 0, KernelSpec::nearest()), 10);
  EXPECT_EQ(sample(r, 1.5, 0, KernelSpec::nearest()), 20);
}

TEST(Weights1d, PartitionOfUnity)
{
  for (const auto& k : all_kernels())
    for (int i = 0; i < 1000; ++i) {
      const Taps t = weights_1d(k, i / 1000.0);
      EXPECT_EQ(t.count, k.tap_count());
      EXPECT_NEAR(t.sum(), 1.0, 1e-12) << k.name() << " phase " << i / 1000.0;
    }
}

TEST(Boundary, MirrorAndClamp)
{
  EXPECT_EQ(boundary_index(-1, 5, BoundaryPolicy::Mirror), 1u);
  EXPECT_EQ(boundary_index(-2, 5, BoundaryPolicy::Mirror), 2u);
  EXPECT_EQ(boundary_index(5, 5, BoundaryPolicy::Mirror), 3u);
  EXPECT_EQ(boundary_index(-9, 5, BoundaryPolicy::Mirror), 1u);
  EXPECT_EQ(boundary_index(13, 5, BoundaryPolicy::Mirror), 3u);
  EXPECT_EQ(boundary_index(-3, 1, BoundaryPolicy::Mirror), 0u);
  EXPECT_EQ(boundary_index(-1, 5, BoundaryPolicy::Clamp), 0u);
  EXPECT_EQ(boundary_index(9, 5, BoundaryPolicy::Clamp), 4u);
  for (long long i = -40; i < 40; ++i)
    EXPECT_EQ(boundary_index(i, 7, BoundaryPolicy::Mirror), oracle::mirror(i, 7));
}

TEST(Sample, ConstantIsPreserved)
{
  const Raster c = Raster::filled(9, 7, 0.37);
  for (const auto& k : all_kernels())
    for (auto bp : {BoundaryPolicy::Mirror, BoundaryPolicy::Clamp})
      for (double x : {-3.3, 0.0, 2.5, 4.71, 10.2})
        EXPECT_NEAR(sample(c, x, x * 0.5, k, bp), 0.37, 1e-12) << k.name();
}

TEST(Sample, BilinearReproducesRamp)
{
  const Raster r = x_ramp(8, 4);
  EXPECT_DOUBLE_EQ(sample(r, 2.3, 1.0, KernelSpec::bilinear()), 2.3);
}

TEST(Sample, CubicImpulseResponse)
{
  // 1xN impulse row, sampled 1.5 pixels from the impulse. The brute-force
  // convolution oracle gives the same answer.
  Raster r(11, 1);
  r.at(5, 0) = 1.0;
  const auto cc = KernelSpec::cubic(-0.5);
  EXPECT_DOUBLE_EQ(sample(r, 6.5, 0.0, cc), -0.0625);
  EXPECT_DOUBLE_EQ(sample(r, 3.5, 0.0, cc), -0.0625);
  EXPECT_DOUBLE_EQ(oracle::sample_2d(r, 6.5, 0.0, cc), -0.0625);
  EXPECT_DOUBLE_EQ(sample(r, 5.5, 0.0, cc), 0.5625);
}

TEST(Sample, InterpolationExactnessAtIntegers)
{
  const Raster r = oracle::random_raster(24, 24, 5);
  for (const auto& k : interpolating_kernels())
    for (std::size_t y = 8; y < 16; ++y)
      for (std::size_t x = 8; x < 16; ++x)
        EXPECT_NEAR(sample(r, x, y, k), r.at(x, y), 1e-9) << k.name();
  // The B-spline smooths unless prefiltered.
  EXPECT_GT(std::abs(sample(r, 12, 12, KernelSpec::cubic_bspline()) - r.at(12, 12)), 1e-6);
}

TEST(Sample, SeparableEqualsBruteForce2d)
{
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Raster r = oracle::random_raster(16, 16, seed);
    std::mt19937_64 rng(seed + 99);
    std::uniform_real_distribution<double> pos(-2.0, 18.0);
    for (const auto& k : all_kernels())
      for (int i = 0; i < 40; ++i) {
        const double x = pos(rng), y = pos(rng);
        EXPECT_NEAR(sample(r, x, y, k), oracle::sample_2d(r, x, y, k), 1e-9) << k.name();
      }
  }
}

TEST(Sample, LinearReproductionInInterior)
{
  Raster plane(20, 20);
  for (std::size_t y = 0; y < 20; ++y)
    for (std::size_t x = 0; x < 20; ++x)
      plane.at(x, y) = 0.1 + 0.02 * x - 0.03 * y;
  for (const auto& k : {KernelSpec::bilinear(), KernelSpec::cubic(-0.5)})
    for (double x = 4.0; x < 15.0; x += 0.37)
      for (double y = 4.0; y < 15.0; y += 0.41)
        EXPECT_NEAR(sample(plane, x, y, k), 0.1 + 0.02 * x - 0.03 * y, 1e-12) << k.name();
}

TEST(Resample, IdentityReproducesInput)
{
  const Raster r = oracle::random_raster(13, 9, 3);
  for (const auto& k : interpolating_kernels()) {
    const Raster out = resample(r, GridTransform::identity(), 13, 9, k);
    // NN, cubic and windowed sinc have exactly one unit tap at phase 0.
    if (k.tag() == KernelTag::Bilinear)
      EXPECT_LE(max_abs_diff(out, r), 1e-15);
    else
      EXPECT_EQ(out, r) << k.name();
  }
}

TEST(Resample, TranslationOfRamp)
{
  const Raster r = x_ramp(12, 5, 0.05);
  const Raster out = resample(r, GridTransform::translation(1, 0), 12, 5, KernelSpec::bilinear());
  for (std::size_t y = 0; y < 5; ++y)
    for (std::size_t x = 0; x + 1 < 12; ++x)
      EXPECT_DOUBLE_EQ(out.at(x, y), r.at(x + 1, y));
}

TEST(Resample, RejectsSingularTransform)
{
  const Raster r(4, 4);
  EXPECT_THROW(resample(r, GridTransform{1, 1, 0, 1, 1, 0}, 4, 4, KernelSpec::bilinear()),
               InvalidArgument);
}

TEST(Resample, ClampBoundaryDiffersFromMirror)
{
  const Raster r = x_ramp(6, 1);
  EXPECT_DOUBLE_EQ(sample(r, -1.0, 0, KernelSpec::bilinear(), BoundaryPolicy::Mirror), 1.0);
  EXPECT_DOUBLE_EQ(sample(r, -1.0, 0, KernelSpec::bilinear(), BoundaryPolicy::Clamp), 0.0);
}

TEST(Resample, ThreadCountIndependent)
{
  const Raster r = oracle::random_raster(40, 33, 8);
  const GridTransform t{0.7, 0.2, 1.3, -0.1, 0.9, 2.2};
  set_thread_count(1);
  const Raster a = resample(r, t, 37, 29, KernelSpec::kaiser_sinc16());
  set_thread_count(4);
  const Raster b = resample(r, t, 37, 29, KernelSpec::kaiser_sinc16());
  set_thread_count(1);
  EXPECT_EQ(a, b);
}

TEST(BSpline, PrefilterMakesSplineInterpolating)
{
  for (std::size_t w : {1u, 2u, 3u, 9u}) {
    const Raster r = oracle::random_raster(w, 5, w);
    const Raster out = resample_cubic_spline(r, GridTransform::identity(), w, 5);
    EXPECT_LE(max_abs_diff(out, r), 1e-12) << w;
  }
  const Raster c = Raster::filled(6, 6, 0.3);
  const Raster out = resample_cubic_spline(c, GridTransform{0.5, 0, 0.3, 0, 0.5, 0.1}, 11, 11);
  for (double v : out.data())
    EXPECT_NEAR(v, 0.3, 1e-12);
}

TEST(BSpline, ReproducesLinearRampAwayFromEdges)
{
  // Linear data is reproduced; mirrored ends perturb only a few pixels.
  const Raster r = x_ramp(30, 3, 0.1);
  const Raster out =
    resample_cubic_spline(r, GridTransform{1, 0, 0.5, 0, 1, 0}, 29, 3);
  for (std::size_t x = 8; x < 20; ++x)
    EXPECT_NEAR(out.at(x, 1), 0.1 * (x + 0.5), 1e-6);
}
