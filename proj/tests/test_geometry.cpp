#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "l1p/geometry.hpp"
#include "l1p/random.hpp"

using namespace l1p;
using namespace l1p::geometry;

namespace {

EstimatorConfig cfg(std::size_t samples, std::uint64_t seed = 1,
                    SamplingMethod m = SamplingMethod::automatic) {
  EstimatorConfig c;
  c.sample_count = samples;
  c.seed = seed;
  c.method = m;
  return c;
}

double brute_diameter(const std::vector<Point>& v) {
  double d = 0;
  for (const auto& a : v)
    for (const auto& b : v) d = std::max(d, vec::distance(a, b));
  return d;
}

// Uniform points on the simplex by normalized exponentials (Dirichlet(1,..,1)),
// independent of the rejection and hit-and-run samplers.
std::vector<Point> dirichlet_simplex_points(const ConvexBody& s, std::size_t count, std::uint64_t seed) {
  const auto& verts = s.as<RegularSimplex>()->vertices;
  Rng rng(seed, 99);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> e(verts.size());
    double sum = 0;
    for (double& x : e) sum += x = -std::log(1.0 - rng.uniform());
    Point p(s.dimension(), 0.0);
    for (std::size_t i = 0; i < verts.size(); ++i) p = vec::axpy(p, e[i] / sum, verts[i]);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

TEST(RegularSimplex, OneDimensionalIsUnitSegment) {
  const auto s = make_regular_simplex(1);
  EXPECT_DOUBLE_EQ(diameter(s), 1.0);
  EXPECT_NEAR(exact_volume(s).value(), 1.0, 1e-15);
}

TEST(RegularSimplex, PairwiseDistancesAreOne) {
  for (int n : {2, 3, 10, 14, 20}) {
    const auto s = make_regular_simplex(n);
    const auto& v = s.as<RegularSimplex>()->vertices;
    ASSERT_EQ(v.size(), std::size_t(n + 1));
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) EXPECT_NEAR(vec::distance(v[i], v[j]), 1.0, 1e-12);
    Point avg(n, 0.0);
    for (const auto& p : v) avg = vec::axpy(avg, 1.0 / (n + 1), p);
    EXPECT_NEAR(vec::norm(avg), 0.0, 1e-12);
  }
}

TEST(RegularSimplex, TriangleAreaAndCentroid) {
  const auto s = make_regular_simplex(2);
  EXPECT_NEAR(exact_volume(s).value(), std::sqrt(3.0) / 4, 1e-15);
  EXPECT_TRUE(contains(s, centroid(s)));
}

TEST(RegularSimplex, RejectsBadDimension) {
  EXPECT_THROW(make_regular_simplex(0), Error);
  EXPECT_THROW(simplex_second_moment(0), Error);
}

TEST(Contains, SpecExamples) {
  EXPECT_TRUE(contains(ConvexBody::ball({0, 0, 0}, 1), Point{0, 0, 0}));
  EXPECT_FALSE(contains(ConvexBody::box({0, 0}, {1, 0.01}), Point{2, 0}));
  EXPECT_THROW(contains(ConvexBody::ball({0, 0}, 1), Point{0, 0, 0}), Error);
}

TEST(Contains, PolytopeAgreesWithBoxWhenSame) {
  const auto poly = ConvexBody::polytope({{0, 0, 0}, {1, 0, 0}, {0, 2, 0}, {1, 2, 0},
                                          {0, 0, 3}, {1, 0, 3}, {0, 2, 3}, {1, 2, 3}});
  const auto box = ConvexBody::box({0, 0, 0}, {1, 2, 3});
  Rng rng(2, 0);
  for (int t = 0; t < 500; ++t) {
    Point p{rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 2.5), rng.uniform(-0.5, 3.5)};
    EXPECT_EQ(contains(poly, p), contains(box, p));
  }
}

TEST(Diameter, SpecExamples) {
  EXPECT_NEAR(diameter(ConvexBody::box({0, 0}, {1, 0.01})), std::sqrt(1.0001), 1e-15);
  EXPECT_DOUBLE_EQ(diameter(ConvexBody::ball({0, 0}, 0.5)), 1.0);
  EXPECT_NEAR(diameter(ConvexBody::polytope({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), std::sqrt(2.0), 1e-15);
  for (int n : {2, 5, 12}) EXPECT_DOUBLE_EQ(diameter(make_regular_simplex(n)), 1.0);
}

TEST(Diameter, PolytopeMatchesBruteForce) {
  Rng rng(11, 0);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int t = 0; t < 30; ++t) {
      std::vector<Point> v;
      for (std::size_t k = 0; k < n + 6; ++k) {
        Point p(n);
        for (double& x : p) x = rng.normal();
        v.push_back(p);
      }
      EXPECT_NEAR(diameter(ConvexBody::polytope(v)), brute_diameter(v), 1e-12);
    }
  }
}

TEST(Polytope, WarnsWhenNormalizingOrientation) {
  std::vector<std::string> warnings;
  const auto p = ConvexBody::polytope({{0, 0}, {0, 1}, {1, 1}, {1, 0}},
                                      [&](std::string_view m) { warnings.emplace_back(m); });
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_NEAR(exact_volume(p).value(), 1.0, 1e-15);
  warnings.clear();
  ConvexBody::polytope({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, [&](std::string_view m) { warnings.emplace_back(m); });
  EXPECT_TRUE(warnings.empty());
}

TEST(Polytope, DegenerateInputsAreRejected) {
  EXPECT_THROW(ConvexBody::polytope({{0, 0}, {1, 1}, {2, 2}}), Error);
  EXPECT_THROW(ConvexBody::polytope({{0, 0}, {1, 0}}), Error);
  EXPECT_THROW(ConvexBody::polytope({{0, 0}, {1, 0, 0}, {0, 1}}), Error);
  EXPECT_THROW(ConvexBody::ball({0, 0}, 0.0), Error);
  EXPECT_THROW(ConvexBody::box({0, 0}, {1, 0}), Error);
  try {
    ConvexBody::polytope({{0, 0}, {1, 1}, {2, 2}});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_body);
  }
}

TEST(Centroid, ExactCases) {
  const auto c = centroid(ConvexBody::box({0, 0}, {1, 1}));
  EXPECT_DOUBLE_EQ(c[0], 0.5);
  EXPECT_DOUBLE_EQ(c[1], 0.5);
  const auto t = centroid(ConvexBody::polytope({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_NEAR(t[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(t[1], 1.0 / 3, 1e-15);
}

TEST(Centroid, TriangleMonteCarloAgrees) {
  const auto tri = ConvexBody::polytope({{0, 0}, {1, 0}, {0, 1}});
  const auto pts = sample_uniform(tri, cfg(40000, 3));
  const auto mc = centroid_from_samples(pts);
  // coordinate variance of this triangle is 1/18
  const double se = std::sqrt(1.0 / 18 / pts.size());
  EXPECT_NEAR(mc[0], 1.0 / 3, 4 * se);
  EXPECT_NEAR(mc[1], 1.0 / 3, 4 * se);
}

TEST(Centroid, MonteCarloForGeneralPolytopeIsInside) {
  const auto p = ConvexBody::polytope({{0, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  EXPECT_FALSE(exact_centroid(p).has_value());
  EXPECT_TRUE(contains(p, centroid(p, cfg(20000))));
}

TEST(Volume, SpecExamples) {
  EXPECT_NEAR(volume(ConvexBody::box({0, 0}, {1, 0.01})).value, 0.01, 1e-17);
  EXPECT_NEAR(volume(ConvexBody::ball({0, 0, 0}, 1)).value, 4 * std::numbers::pi / 3, 1e-14);
  EXPECT_NEAR(volume(make_regular_simplex(3)).value, 1 / (6 * std::sqrt(2.0)), 1e-15);
}

TEST(Volume, MonteCarloPolytopeWithinThreeSigma) {
  // unit cube given by its vertices: no closed form path for 3D polytopes
  std::vector<Point> v;
  for (int m = 0; m < 8; ++m) v.push_back({double(m & 1), double((m >> 1) & 1), double((m >> 2) & 1)});
  const auto cube = ConvexBody::polytope(v);
  const auto vol = volume(cube, cfg(20000));
  EXPECT_FALSE(vol.exact);
  EXPECT_NEAR(vol.value, 1.0, 3 * vol.std_error + 1e-12);
}

TEST(Sampling, BoxPointsInsideWithCenteredMean) {
  const auto b = ConvexBody::box({0, -1}, {2, 3});
  const auto pts = sample_uniform(b, cfg(20000, 4));
  ASSERT_EQ(pts.size(), 20000u);
  const auto c = centroid_from_samples(pts);
  for (const auto& p : pts) ASSERT_TRUE(contains(b, p));
  EXPECT_NEAR(c[0], 1.0, 3 * 2 / std::sqrt(12.0 * pts.size()));
  EXPECT_NEAR(c[1], 1.0, 3 * 4 / std::sqrt(12.0 * pts.size()));
}

TEST(Sampling, SameSeedSameSamples) {
  for (auto m : {SamplingMethod::rejection, SamplingMethod::hit_and_run}) {
    const auto s = make_regular_simplex(4);
    EXPECT_EQ(sample_uniform(s, cfg(2000, 17, m)), sample_uniform(s, cfg(2000, 17, m)));
    EXPECT_NE(sample_uniform(s, cfg(2000, 17, m)), sample_uniform(s, cfg(2000, 18, m)));
  }
}

TEST(Sampling, HitAndRunStaysInside) {
  const auto s = make_regular_simplex(9);
  for (const auto& p : sample_uniform(s, cfg(5000, 2, SamplingMethod::hit_and_run))) ASSERT_TRUE(contains(s, p));
}

TEST(Sampling, RejectionFailsFastOnHopelessAcceptance) {
  // 20-simplex occupies a tiny fraction of its bounding box
  try {
    sample_uniform(make_regular_simplex(20), cfg(1000, 1, SamplingMethod::rejection));
    FAIL() << "expected sampling failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::sampling_failure);
  }
}

TEST(Sampling, ConfigValidation) {
  EXPECT_THROW(sample_uniform(make_regular_simplex(2), cfg(99)), Error);
}

TEST(MeanDistance, SegmentIsExactQuarter) {
  const auto seg = make_regular_simplex(1);
  const auto m = mean_dist_to_centroid(seg, cfg(1000));
  EXPECT_TRUE(m.exact);
  EXPECT_DOUBLE_EQ(m.value, 0.25);
  EXPECT_NEAR(second_moment_root(seg, cfg(1000)).value, std::sqrt(1.0 / 12), 1e-15);
}

TEST(MeanDistance, DiskMatchesRadialIntegral) {
  const auto disk = ConvexBody::ball({0, 0}, 1);
  const auto m = mean_dist_to_centroid(disk, cfg(100000, 5));
  EXPECT_NEAR(m.value, 2.0 / 3, 3 * m.std_error);
}

TEST(MeanDistance, BallMatchesClosedFormAcrossDimensions) {
  for (std::size_t n : {3u, 5u, 8u}) {
    const auto b = ConvexBody::ball(Point(n, 0.3), 1.5);
    const auto m = mean_dist_to_centroid(b, cfg(40000, n));
    EXPECT_NEAR(m.value, 1.5 * n / (n + 1.0), 4 * m.std_error) << "n=" << n;
  }
}

TEST(MeanDistance, SimplexAgreesWithDirichletOracle) {
  for (int n : {2, 5, 10}) {
    const auto s = make_regular_simplex(n);
    const auto m = mean_dist_to_centroid(s, cfg(60000, 21));
    const auto oracle = dirichlet_simplex_points(s, 60000, 8);
    std::vector<double> d;
    for (const auto& p : oracle) d.push_back(vec::norm(p));
    const auto ref = batch_mean(d);
    EXPECT_NEAR(m.value, ref.mean, 4 * std::hypot(m.std_error, ref.std_error)) << "n=" << n;
    EXPECT_LE(m.value, simplex_second_moment(n) + 3 * m.std_error);
  }
}

TEST(SecondMoment, ClosedForms) {
  EXPECT_NEAR(simplex_second_moment(2), std::sqrt(1.0 / 12), 1e-15);
  EXPECT_NEAR(simplex_second_moment(10), std::sqrt(10.0 / 264), 1e-15);
  EXPECT_NEAR(second_moment_root(ConvexBody::box({0, 0}, {1, 1}), cfg(1000)).value, std::sqrt(1.0 / 6), 1e-15);
}

TEST(SecondMoment, SimplexClosedFormMatchesSampling) {
  for (int n : {3, 7}) {
    const auto s = make_regular_simplex(n);
    std::vector<double> r2;
    for (const auto& p : dirichlet_simplex_points(s, 50000, n)) r2.push_back(vec::dot(p, p));
    const auto m = batch_mean(r2);
    const double target = simplex_second_moment(n);
    EXPECT_NEAR(m.mean, target * target, 4 * m.std_error);
  }
}

TEST(SecondMoment, SimplexSequenceDecreasesLikeInverseRoot) {
  for (int n = 2; n < 200; ++n) EXPECT_LT(simplex_second_moment(n + 1), simplex_second_moment(n));
  for (int n : {1000, 100000}) EXPECT_NEAR(simplex_second_moment(n) * std::sqrt(2.0 * n), 1.0, 3.0 / n);
}

TEST(Summary, InvariantsHoldAcrossBodies) {
  const std::vector<ConvexBody> bodies{
      make_regular_simplex(3), make_regular_simplex(8), ConvexBody::ball({1, 2}, 0.5),
      ConvexBody::box({0, 0, 0}, {1, 2, 0.5}),
      ConvexBody::polytope({{0, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})};
  for (const auto& b : bodies) {
    for (std::uint64_t seed : {1u, 2u}) {
      const auto s = summarize(b, cfg(20000, seed));
      EXPECT_GT(s.volume.value, 0.0);
      EXPECT_LE(s.mean_dist_to_centroid.value, s.diameter);
      EXPECT_LE(s.mean_dist_to_centroid.value,
                s.second_moment_root.value +
                    3 * std::hypot(s.mean_dist_to_centroid.std_error, s.second_moment_root.std_error));
      EXPECT_TRUE(contains(b, s.centroid));
    }
  }
}

TEST(Summary, BitwiseDeterministic) {
  const auto b = ConvexBody::polytope({{0, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  const auto a = summarize(b, cfg(5000, 9)), c = summarize(b, cfg(5000, 9));
  EXPECT_EQ(a.centroid, c.centroid);
  EXPECT_EQ(a.volume.value, c.volume.value);
  EXPECT_EQ(a.mean_dist_to_centroid.value, c.mean_dist_to_centroid.value);
  EXPECT_EQ(a.second_moment_root.value, c.second_moment_root.value);
}

TEST(Summary, MonteCarloCentroidCarriesUncertainty) {
  std::vector<Point> v;
  for (int m = 0; m < 8; ++m) v.push_back({double(m & 1), 2.0 * ((m >> 1) & 1), double((m >> 2) & 1)});
  const auto s = summarize(ConvexBody::polytope(v), cfg(20000, 6));
  EXPECT_FALSE(s.centroid_exact);
  ASSERT_EQ(s.centroid_std_error.size(), 3u);
  const Point truth{0.5, 1.0, 0.5};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_GT(s.centroid_std_error[i], 0.0);
    EXPECT_NEAR(s.centroid[i], truth[i], 4 * s.centroid_std_error[i]);
  }
  const auto exact = summarize(ConvexBody::ball({1, 2}, 1), cfg(1000));
  EXPECT_EQ(exact.centroid_std_error, (Point{0, 0}));
}
