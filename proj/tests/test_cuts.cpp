#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "l1p/cuts.hpp"
#include "l1p/random.hpp"

using namespace l1p;
using namespace l1p::cuts;
using geometry::ConvexBody;

namespace {

geometry::EstimatorConfig cfg(std::size_t samples, std::uint64_t seed = 1) {
  geometry::EstimatorConfig c;
  c.sample_count = samples;
  c.seed = seed;
  return c;
}

const ConvexBody kSquare = ConvexBody::polytope({{0, 0}, {1, 0}, {1, 1}, {0, 1}});

ConvexBody thin_rect(double eps) { return ConvexBody::box({0, 0}, {1, eps}); }

}  // namespace

TEST(Cut, NormalMustBeUnit) {
  EXPECT_THROW(make_cut({1, 1}, 0), Error);
  const auto c = normalized_cut({3, 4}, 5);
  EXPECT_NEAR(c.normal[0], 0.6, 1e-15);
  EXPECT_NEAR(c.offset, 1.0, 1e-15);
}

TEST(Evaluate, ThinRectangleHalfCut) {
  const auto e = evaluate_cut(thin_rect(0.01), make_cut({1, 0}, 0.5), cfg(1000));
  EXPECT_EQ(e.method, EvalMethod::exact);
  EXPECT_NEAR(e.vol_S, 0.005, 1e-15);
  EXPECT_NEAR(e.vol_comp, 0.005, 1e-15);
  EXPECT_NEAR(e.cut_area, 0.01, 1e-15);
  EXPECT_NEAR(quotient(e), 0.01 / 4, 1e-15);
}

TEST(Evaluate, DiskCenterCut) {
  const auto e = evaluate_cut(ConvexBody::ball({0, 0}, 1), make_cut({0, 1}, 0), cfg(1000));
  EXPECT_NEAR(e.vol_S, std::numbers::pi / 2, 1e-14);
  EXPECT_NEAR(e.vol_comp, std::numbers::pi / 2, 1e-14);
  EXPECT_NEAR(e.cut_area, 2.0, 1e-15);
  EXPECT_NEAR(quotient(e), std::pow(std::numbers::pi / 2, 2) / 2, 1e-13);
}

TEST(Evaluate, SquareDiagonal) {
  const auto e = evaluate_cut(kSquare, normalized_cut({1, 1}, 1), cfg(1000));
  EXPECT_NEAR(e.vol_S, 0.5, 1e-15);
  EXPECT_NEAR(e.cut_area, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(quotient(evaluate_cut(kSquare, make_cut({1, 0}, 0.5), cfg(1000))), 0.25, 1e-15);
}

TEST(Evaluate, BallCapMatchesClosedForm) {
  // 3-ball cap of height h: pi h^2 (3r - h) / 3
  const double r = 2.0, t = 0.7, h = r - t;
  const auto e = evaluate_cut(ConvexBody::ball({0, 0, 0}, r), make_cut({0, 0, 1}, t), cfg(1000));
  EXPECT_NEAR(e.vol_comp, std::numbers::pi * h * h * (3 * r - h) / 3, 1e-12);
  EXPECT_NEAR(e.cut_area, std::numbers::pi * (r * r - t * t), 1e-12);
}

TEST(Evaluate, ErrorsOnMissAndMismatch) {
  try {
    evaluate_cut(kSquare, make_cut({1, 0}, 3.0), cfg(1000));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_side);
  }
  EXPECT_THROW(evaluate_cut(kSquare, make_cut({1, 0, 0}, 0.5), cfg(1000)), Error);
}

TEST(Evaluate, MonteCarloAgreesWithExact) {
  struct Case {
    ConvexBody body;
    HyperplaneCut cut;
  };
  const std::vector<Case> cases{
      {kSquare, normalized_cut({1, 2}, 1.0)},
      {ConvexBody::ball({0, 0, 0}, 1), normalized_cut({1, 1, 1}, 0.3)},
      {ConvexBody::box({0, 0, 0}, {1, 2, 3}), make_cut({0, 1, 0}, 0.5)},
      {ConvexBody::ball(Point(5, 0.0), 1), make_cut({1, 0, 0, 0, 0}, -0.2)},
      {ConvexBody::ball(Point(8, 0.0), 1), make_cut({0, 0, 1, 0, 0, 0, 0, 0}, 0.1)},
  };
  for (const auto& c : cases) {
    const auto exact = evaluate_cut(c.body, c.cut, cfg(1000));
    ASSERT_EQ(exact.method, EvalMethod::exact);
    const auto mc = evaluate_cut(c.body, c.cut, cfg(200000, 3), {.force_monte_carlo = true});
    ASSERT_EQ(mc.method, EvalMethod::monte_carlo);
    EXPECT_NEAR(mc.vol_S, exact.vol_S, 3 * mc.vol_stderr + 1e-12);
    EXPECT_NEAR(mc.vol_comp, exact.vol_comp, 3 * mc.vol_stderr + 1e-12);
    EXPECT_NEAR(mc.cut_area, exact.cut_area, 3 * mc.area_stderr + 1e-12) << "dim " << c.body.dimension();
  }
}

TEST(Evaluate, VolumesPartitionBody) {
  const auto s = geometry::make_regular_simplex(4);
  const auto e = evaluate_cut(s, normalized_cut({1, 0.5, -0.2, 0.1}, 0.05), cfg(50000));
  EXPECT_NEAR(e.vol_S + e.vol_comp, geometry::volume(s).value, std::max(1e-9, 3 * e.vol_stderr));
}

TEST(Bounds, LovaszSimonovitsExamples) {
  const double d = std::sqrt(1.0001);
  const auto e = evaluate_cut(thin_rect(0.01), make_cut({1, 0}, 0.5), cfg(1000));
  const auto ls = check_lovasz_simonovits(e, d);
  EXPECT_NEAR(ls.bound, 0.005 / d, 1e-15);
  EXPECT_NEAR(*ls.margin, 2.0 * d, 1e-12);
  const auto disk = evaluate_cut(ConvexBody::ball({0, 0}, 1), make_cut({1, 0}, 0), cfg(1000));
  EXPECT_NEAR(check_lovasz_simonovits(disk, 2).bound, std::numbers::pi / 4, 1e-14);
  EXPECT_NEAR(*check_lovasz_simonovits(disk, 2).margin, 8 / std::numbers::pi, 1e-12);
  CutEvaluation zero{0.0, 1.0, 0.5, EvalMethod::exact, 0, 0};
  EXPECT_FALSE(check_lovasz_simonovits(zero, 1).margin.has_value());
}

TEST(Bounds, DyerFriezeExamples) {
  const auto e = evaluate_cut(thin_rect(0.01), make_cut({1, 0}, 0.5), cfg(1000));
  EXPECT_NEAR(*check_dyer_frieze(e, std::sqrt(1.0001)).margin, std::sqrt(1.0001), 1e-12);
  const auto disk = evaluate_cut(ConvexBody::ball({0, 0}, 1), make_cut({1, 0}, 0), cfg(1000));
  EXPECT_NEAR(*check_dyer_frieze(disk, 2).margin, 4 / std::numbers::pi, 1e-12);
  const auto q = evaluate_cut(kSquare, make_cut({1, 0}, 0.25), cfg(1000));
  const auto df = check_dyer_frieze(q, std::sqrt(2.0));
  EXPECT_NEAR(df.bound, 0.5 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(*df.margin, 2 * std::sqrt(2.0), 1e-12);
}

TEST(Bounds, ProductFormExamples) {
  const auto e = evaluate_cut(thin_rect(0.01), make_cut({1, 0}, 0.5), cfg(1000));
  const auto pf = check_product_form(e, std::sqrt(1.0001), 0.01);
  EXPECT_NEAR(pf.bound, 4 * 0.005 * 0.005 / (std::sqrt(1.0001) * 0.01), 1e-15);
  const auto q = evaluate_cut(kSquare, make_cut({1, 0}, 0.25), cfg(1000));
  const auto pq = check_product_form(q, std::sqrt(2.0), 1.0);
  EXPECT_NEAR(pq.bound, 4 * 0.25 * 0.75 / std::sqrt(2.0), 1e-15);
  EXPECT_LT(*pq.margin, *check_dyer_frieze(q, std::sqrt(2.0)).margin);
  EXPECT_THROW(check_product_form(q, 1.0, 0.0), Error);
}

TEST(Bounds, RewriteIdentity) {
  CutEvaluation e{0.3, 0.7, 1.0, EvalMethod::exact, 0, 0};
  EXPECT_NEAR(check_product_form(e, 1, 1).bound, 0.84, 1e-15);
  EXPECT_TRUE(rewrite_identity_check(e, 1, 1));
  CutEvaluation bal{0.5, 0.5, 1.0, EvalMethod::exact, 0, 0};
  EXPECT_DOUBLE_EQ(check_product_form(bal, 2, 1).bound, check_dyer_frieze(bal, 2).bound);
}

TEST(Bounds, RandomPolygonCutsNeverViolate) {
  Rng rng(77, 0);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Point> v;
    const int k = 3 + int(rng.index(10));
    for (int i = 0; i < k; ++i) v.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    ConvexBody body = ConvexBody::box({0, 0}, {1, 1});
    try {
      body = ConvexBody::polytope(v);
    } catch (const Error&) {
      continue;
    }
    const auto dir = rng.direction(2);
    const auto [lo, hi] = body.support(dir);
    const auto cut = make_cut(dir, rng.uniform(lo, hi));
    CutEvaluation e;
    try {
      e = evaluate_cut(body, cut, cfg(1000));
    } catch (const Error&) {
      continue;
    }
    const double d = geometry::diameter(body), vol = e.vol_S + e.vol_comp;
    const auto rep = cut_report(e, d, vol);
    for (const auto& b : rep.entries) EXPECT_GE(*b.margin, 1 - 1e-9) << b.name;
    EXPECT_LE(*rep.find("product_form")->margin, *rep.find("dyer_frieze")->margin * (1 + 1e-12));
    EXPECT_TRUE(rewrite_identity_check(e, d, vol));
  }
}

TEST(Quotient, ZeroAreaThrows) {
  CutEvaluation e{0.5, 0.5, 0.0, EvalMethod::exact, 0, 0};
  EXPECT_THROW(quotient(e), Error);
}

TEST(Quotient, RigidMotionAndDilation) {
  Rng rng(12, 0);
  const std::vector<Point> v{{0, 0}, {2, 0}, {2.5, 1}, {0.5, 1.5}};
  const auto base = evaluate_cut(ConvexBody::polytope(v), normalized_cut({1, 0.3}, 1.0), cfg(1000));
  const double a = 0.7, c = std::cos(a), s = std::sin(a), lam = 1.7;
  const Point shift{3, -2};
  std::vector<Point> w;
  for (const auto& p : v) w.push_back({lam * (c * p[0] - s * p[1]) + shift[0], lam * (s * p[0] + c * p[1]) + shift[1]});
  const auto n0 = normalized_cut({1, 0.3}, 1.0);
  const Point n1{c * n0.normal[0] - s * n0.normal[1], s * n0.normal[0] + c * n0.normal[1]};
  const auto moved = evaluate_cut(ConvexBody::polytope(w), make_cut(n1, lam * n0.offset + vec::dot(n1, shift)), cfg(1000));
  EXPECT_NEAR(quotient(moved), std::pow(lam, 3) * quotient(base), 1e-12);
}

TEST(Bokowski, Values) {
  EXPECT_NEAR(bokowski_bound(2, 1), 0.25, 1e-15);
  EXPECT_NEAR(bokowski_bound(3, 1), 7.0 / 8 * 2.0 / 12 * std::numbers::pi, 1e-14);
  for (int n : {2, 3, 6}) EXPECT_NEAR(bokowski_bound(n, 2) / bokowski_bound(n, 1), std::pow(2.0, n + 1), 1e-9);
  EXPECT_THROW(bokowski_bound(1, 1), Error);
}

TEST(Search, UnitSquare) {
  const auto r = search_max_quotient(kSquare);
  EXPECT_NEAR(r.quotient, 0.25, 1e-9);
  EXPECT_NEAR(std::abs(r.cut.normal[0] * r.cut.normal[1]), 0.0, 1e-6);
  const auto* q = r.report.find("diam_quarter");
  ASSERT_NE(q, nullptr);
  EXPECT_NEAR(q->bound, std::sqrt(2.0) / 4, 1e-15);
}

TEST(Search, ThinRectangleApproachesQuarterBound) {
  const double eps = 0.01;
  const auto r = search_max_quotient(thin_rect(eps));
  EXPECT_NEAR(r.quotient, eps / 4, 1e-12);
  EXPECT_NEAR(r.quotient / (r.diameter * eps / 4), 1 / std::sqrt(1 + eps * eps), 1e-9);
}

TEST(Search, DiskAllCenterCutsTie) {
  const auto r = search_max_quotient(ConvexBody::ball({0, 0}, 1));
  EXPECT_NEAR(r.quotient, std::pow(std::numbers::pi / 2, 2) / 2, 1e-9);
  EXPECT_NEAR(r.cut.offset, 0.0, 1e-6);
}

TEST(Search, EquilateralTriangleParallelCut) {
  // best cut is parallel to a side at height fraction 1/sqrt(3) from a vertex
  const double a = std::sqrt(3.0) / 4;
  const auto r = search_max_quotient(geometry::make_regular_simplex(2));
  EXPECT_NEAR(r.quotient, a * a * 2 / (3 * std::sqrt(3.0)), 1e-9);
}

TEST(Search, ResultRespectsUpperBoundsInHigherDimension) {
  SearchConfig sc;
  sc.random_directions = 96;
  sc.offsets = 40;
  sc.estimator = cfg(20000, 5);
  for (const auto& body : {ConvexBody::ball({0, 0, 0}, 1), ConvexBody::box({0, 0, 0}, {1, 2, 0.5}),
                           geometry::make_regular_simplex(4)}) {
    const auto r = search_max_quotient(body, sc);
    for (const auto& e : r.report.entries) {
      if (e.kind != BoundKind::upper) continue;
      EXPECT_LE(r.quotient, e.bound + 3 * std::hypot(r.quotient_stderr, e.bound_stderr)) << e.name;
    }
  }
}

TEST(Search, BallSearchFindsCenterCut) {
  SearchConfig sc;
  sc.random_directions = 64;
  sc.offsets = 50;
  const auto r = search_max_quotient(ConvexBody::ball({0, 0, 0}, 1), sc);
  // center cut: (2 pi / 3)^2 / pi
  EXPECT_NEAR(r.quotient, 4 * std::numbers::pi / 9, 1e-3);
}

TEST(Search, DeterministicGivenSeed) {
  SearchConfig sc;
  sc.random_directions = 48;
  sc.offsets = 30;
  sc.estimator = cfg(10000, 8);
  const auto body = geometry::make_regular_simplex(3);
  const auto a = search_max_quotient(body, sc), b = search_max_quotient(body, sc);
  EXPECT_EQ(a.cut.normal, b.cut.normal);
  EXPECT_EQ(a.quotient, b.quotient);
}

TEST(Search, GridKeptOnRequest) {
  SearchConfig sc;
  sc.angular_directions = 12;
  sc.planar_offsets = 10;
  sc.keep_grid = true;
  const auto r = search_max_quotient(kSquare, sc);
  EXPECT_TRUE(r.planar_grid);
  EXPECT_EQ(r.grid.size(), 120u);
}
