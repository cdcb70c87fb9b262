#include "ars/pyramid.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ars;

TEST(Reduce, ConstantStaysConstant)
{
  const Raster out = reduce(Raster::filled(9, 6, 0.4));
  EXPECT_EQ(out.width(), 5u);
  EXPECT_EQ(out.height(), 3u);
  for (double v : out.data())
    EXPECT_NEAR(v, 0.4, 1e-15);
}

TEST(Reduce, CeilDimensions)
{
  EXPECT_EQ(reduce(Raster(5, 5)).width(), 3u);
  EXPECT_EQ(reduce(Raster(5, 5)).height(), 3u);
  EXPECT_EQ(reduce(Raster(2, 7)).width(), 1u);
  EXPECT_EQ(reduce(Raster(2, 7)).height(), 4u);
  EXPECT_THROW(reduce(Raster(1, 4)), InvalidArgument);
}

TEST(Reduce, RampMatchesBruteForce)
{
  Raster ramp(4, 4);
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 4; ++x)
      ramp.at(x, y) = x / 3.0;
  const Raster got = reduce(ramp);
  const Raster want = oracle::reduce(ramp);
  ASSERT_TRUE(got.same_dims(want));
  EXPECT_LE(max_abs_diff(got, want), 1e-12);
}

TEST(Expand, ConstantAndTargets)
{
  const Raster c = Raster::filled(3, 4, 0.7);
  for (auto [w, h] : {std::pair{5u, 7u}, {6u, 8u}, {5u, 8u}}) {
    const Raster e = expand(c, w, h);
    EXPECT_EQ(e.width(), w);
    for (double v : e.data())
      EXPECT_NEAR(v, 0.7, 1e-15);
  }
  EXPECT_THROW(expand(c, 7, 8), InvalidArgument);
  EXPECT_THROW(expand(c, 6, 9), InvalidArgument);
}

TEST(Expand, ImpulseMatchesBruteForce)
{
  Raster impulse(2, 2);
  impulse.at(0, 0) = 1.0;
  const Raster got = expand(impulse, 4, 4);
  const Raster want = oracle::expand(impulse, 4, 4);
  EXPECT_LE(max_abs_diff(got, want), 1e-12);
  // Odd target as well.
  EXPECT_LE(max_abs_diff(expand(impulse, 3, 3), oracle::expand(impulse, 3, 3)), 1e-12);
}

TEST(Expand, IsLinear)
{
  const Raster a = oracle::random_raster(5, 4, 1);
  const Raster b = oracle::random_raster(5, 4, 2);
  const Raster lhs = expand(affine(a, 2.0) + b, 9, 8);
  const Raster rhs = affine(expand(a, 9, 8), 2.0) + expand(b, 9, 8);
  EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12);
}

TEST(Expand, ExpandOfReducedConstant)
{
  const Raster c = Raster::filled(7, 10, 0.25);
  const Raster e = expand(reduce(c), 7, 10);
  for (double v : e.data())
    EXPECT_NEAR(v, 0.25, 1e-15);
}

TEST(Build, ConstantImageHasZeroBands)
{
  const LaplacianPyramid p = build(Raster::filled(20, 13, 0.6), 3);
  ASSERT_EQ(p.levels(), 3u);
  for (const auto& band : p.bands)
    for (double v : band.data())
      EXPECT_NEAR(v, 0.0, 1e-15);
  for (double v : p.residual.data())
    EXPECT_NEAR(v, 0.6, 1e-15);
}

TEST(Build, SingleLevelDefinition)
{
  const Raster r = oracle::random_raster(11, 8, 4);
  const LaplacianPyramid p = build(r, 1);
  const Raster g1 = reduce(r);
  EXPECT_EQ(p.residual, g1);
  EXPECT_EQ(p.bands[0], r - expand(g1, 11, 8));
}

TEST(Build, MatchesNaivePyramid)
{
  const Raster r = oracle::random_raster(32, 32, 12);
  const LaplacianPyramid p = build(r, 3);
  const oracle::Pyramid q = oracle::build(r, 3);
  for (int k = 0; k < 3; ++k)
    EXPECT_LE(max_abs_diff(p.bands[k], q.bands[k]), 1e-9) << "level " << k;
  EXPECT_LE(max_abs_diff(p.residual, q.residual), 1e-9);
}

TEST(Build, MatchesNaivePyramidOddSizes)
{
  const Raster r = oracle::random_raster(17, 23, 13);
  const LaplacianPyramid p = build(r, 3);
  const oracle::Pyramid q = oracle::build(r, 3);
  for (int k = 0; k < 3; ++k)
    EXPECT_LE(max_abs_diff(p.bands[k], q.bands[k]), 1e-9) << "level " << k;
}

TEST(Build, DimensionChainAndLevelLimit)
{
  const LaplacianPyramid p = build(Raster(17, 9), 3);
  EXPECT_EQ(p.bands[1].width(), 9u);
  EXPECT_EQ(p.bands[1].height(), 5u);
  EXPECT_EQ(p.bands[2].width(), 5u);
  EXPECT_EQ(p.bands[2].height(), 3u);
  EXPECT_EQ(p.residual.width(), 3u);
  EXPECT_EQ(p.residual.height(), 2u);
  EXPECT_TRUE(supports_levels(4, 4, 2));
  EXPECT_FALSE(supports_levels(4, 4, 3));
  EXPECT_THROW(build(Raster(4, 4), 3), InvalidArgument);
  EXPECT_THROW(build(Raster(4, 4), 0), InvalidArgument);
}

TEST(Reconstruct, PerfectForRandomImages)
{
  std::uint64_t seed = 0;
  for (auto [w, h] : {std::pair{16u, 16u}, {17u, 31u}, {33u, 9u}, {64u, 64u}})
    for (std::size_t k = 1; k <= 4; ++k) {
      if (!supports_levels(w, h, k))
        continue;
      const Raster r = oracle::random_raster(w, h, ++seed);
      EXPECT_LE(max_abs_diff(reconstruct(build(r, k)), r), 1e-5) << w << "x" << h << " K=" << k;
    }
}

TEST(Reconstruct, ZeroBandsGiveExpandChain)
{
  LaplacianPyramid p = build(oracle::random_raster(12, 12, 3), 2);
  for (auto& b : p.bands)
    b = Raster(b.width(), b.height());
  const Raster want = expand(expand(p.residual, 6, 6), 12, 12);
  EXPECT_LE(max_abs_diff(reconstruct(p), want), 1e-15);
}

TEST(Reconstruct, ScalesLinearly)
{
  const Raster r = oracle::random_raster(20, 14, 6);
  LaplacianPyramid p = build(r, 3);
  for (auto& b : p.bands)
    b = affine(b, -2.5);
  p.residual = affine(p.residual, -2.5);
  EXPECT_LE(max_abs_diff(reconstruct(p), affine(r, -2.5)), 1e-12);
}

TEST(Reconstruct, BuildIsAdditive)
{
  const Raster a = oracle::random_raster(15, 15, 1);
  const Raster b = oracle::random_raster(15, 15, 2);
  const LaplacianPyramid pa = build(a, 2), pb = build(b, 2), ps = build(a + b, 2);
  for (std::size_t k = 0; k < 2; ++k)
    EXPECT_LE(max_abs_diff(ps.bands[k], pa.bands[k] + pb.bands[k]), 1e-12);
}

TEST(Reconstruct, RejectsInconsistentDims)
{
  LaplacianPyramid p = build(Raster(16, 16), 2);
  p.residual = Raster(5, 4);
  EXPECT_THROW(reconstruct(p), InvalidArgument);
  EXPECT_THROW(reconstruct(LaplacianPyramid{}), InvalidArgument);
}
