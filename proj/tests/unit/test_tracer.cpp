#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "strebel/geometry.hpp"
#include "strebel/tracer.hpp"
#include "unit/expect_error.hpp"
#include "unit/fixtures.hpp"

using strebel::cplx;
using Sig = std::vector<std::size_t>;

namespace {

std::vector<Sig> signatures(const std::vector<strebel::ClosedCurve>& comps) {
  std::vector<Sig> out;
  for (const auto& c : comps) out.push_back(c.enclosed_poles);
  return out;
}

double max_level_error(const strebel::QuadDifferential& qd, const strebel::ClosedCurve& c) {
  double e = 0.0;
  for (const auto z : c.points) e = std::max(e, std::abs(qd.log_modulus(z) - std::log(c.level)));
  return e;
}

}  // namespace

TEST(TraceLevelCurve, ProperLemniscateOfTwoPoles) {
  const auto qd = fixtures::two_poles();
  // |z^2 - 1| = 2 meets the positive real axis at sqrt 3.
  const auto c = strebel::trace_level_curve(qd, std::sqrt(3.0), 2.0);
  EXPECT_EQ(c.enclosed_poles, (Sig{0, 1}));
  EXPECT_GT(strebel::geometry::signed_area(c.points), 0.0);
  EXPECT_LE(c.closure_gap, 1e-8);
  for (const auto z : c.points) EXPECT_NEAR(std::abs(z * z - 1.0), 2.0, 1e-10);
  EXPECT_TRUE(strebel::geometry::is_simple(c.points));
  EXPECT_EQ(c.arc_param.size(), c.points.size());
  EXPECT_DOUBLE_EQ(c.arc_param.front(), 0.0);
}

TEST(TraceLevelCurve, SinglePoleCircle) {
  const auto c = strebel::trace_level_curve(fixtures::single_pole(), cplx(0.0, 2.0), 2.0);
  for (const auto z : c.points) EXPECT_NEAR(std::abs(z), 2.0, 1e-12);
  EXPECT_NEAR(c.length(), 4 * std::numbers::pi, 1e-2);
  EXPECT_EQ(c.points.front(), cplx(0.0, 2.0));
}

TEST(TraceLevelCurve, RunningConfigurationRingCurve) {
  const auto qd = fixtures::running();
  // Between pole 0 and pole 1, the level-1 curve crosses the imaginary
  // direction above 0.5; locate it by bisection along that vertical.
  double lo = 0.0, hi = 5.0;
  const auto g = [&](double y) { return qd.log_modulus({0.5, y}); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((g(mid) > 0) == (g(hi) > 0) ? hi : lo) = mid;
  }
  const auto c = strebel::trace_level_curve(qd, cplx(0.5, lo), 1.0);
  EXPECT_EQ(c.enclosed_poles, (Sig{0, 2}));
  EXPECT_LE(max_level_error(qd, c), 1e-10);
}

TEST(TraceLevelCurve, RejectsSeedOffLevelAndBadLevel) {
  const auto qd = fixtures::two_poles();
  EXPECT_STREBEL_ERROR(strebel::trace_level_curve(qd, 5.0, 2.0), InvalidArgument);
  EXPECT_STREBEL_ERROR(strebel::trace_level_curve(qd, 5.0, -1.0), InvalidArgument);
}

TEST(TraceLevelCurve, NearCriticalLevelFails) {
  const auto qd = fixtures::two_poles();
  // lambda = 1 passes through the zero at 0 (the figure-eight).
  EXPECT_STREBEL_ERROR(strebel::trace_level_curve(qd, std::sqrt(2.0), 1.0), NearCriticalPoint);
}

TEST(FindComponents, RunningConfigurationCensus) {
  const auto qd = fixtures::running();
  EXPECT_EQ(signatures(strebel::find_components(qd, 0.05)), (std::vector<Sig>{{0}, {2}}));
  EXPECT_EQ(signatures(strebel::find_components(qd, 1.0)), (std::vector<Sig>{{0, 2}}));
  EXPECT_EQ(signatures(strebel::find_components(qd, 9.0)), (std::vector<Sig>{{0, 1, 2}, {1}}));
}

TEST(FindComponents, EveryComponentIsOnLevelAndSimple) {
  const auto qd = fixtures::running();
  for (const double level : {0.05, 1.0, 9.0}) {
    for (const auto& c : strebel::find_components(qd, level)) {
      EXPECT_LE(max_level_error(qd, c), 1e-10 * std::max(1.0, std::abs(std::log(level))));
      EXPECT_TRUE(strebel::geometry::is_simple(c.points));
      EXPECT_GT(strebel::geometry::signed_area(c.points), 0.0);
    }
  }
}

TEST(FindComponents, CriticalLevelIsRefused) {
  const auto qd = fixtures::running();
  const auto cs = strebel::critical_set(qd);
  EXPECT_STREBEL_ERROR(strebel::find_components(qd, cs.points[0].value), NearCriticalPoint);
  EXPECT_STREBEL_ERROR(strebel::find_components(qd, cs.points[1].value * (1 + 1e-8)), NearCriticalPoint);
}

TEST(FindComponents, CountIsPiecewiseConstantBetweenCriticalValues) {
  const auto qd = fixtures::running();
  const auto cs = strebel::critical_set(qd);
  const double w1 = cs.points[0].value, w2 = cs.points[1].value;
  const auto count_at = [&](double l) { return strebel::find_components(qd, l).size(); };
  for (const auto& [lo, hi] : {std::pair{0.01, w1}, std::pair{w1, w2}, std::pair{w2, 40.0}}) {
    const auto first = count_at(lo * 1.01);
    for (int k = 1; k <= 6; ++k) {
      const double l = std::exp(std::log(lo * 1.01) + k * (std::log(hi * 0.99) - std::log(lo * 1.01)) / 6);
      EXPECT_EQ(count_at(l), first) << "level " << l;
    }
  }
}

TEST(Classify, DomainKinds) {
  const auto qd = fixtures::running();
  const auto outer = fixtures::component_at(qd, 9.0, {0, 1, 2});
  EXPECT_EQ(strebel::classify(outer, qd).kind, strebel::DomainClass::Kind::CircleAtInfinity);
  const auto oval = fixtures::component_at(qd, 9.0, {1});
  const auto dc = strebel::classify(oval, qd);
  EXPECT_EQ(dc.kind, strebel::DomainClass::Kind::CircleAtPole);
  EXPECT_EQ(dc.pole, 1u);
  const auto ring = fixtures::component_at(qd, 1.0, {0, 2});
  const auto rc = strebel::classify(ring, qd);
  EXPECT_EQ(rc.kind, strebel::DomainClass::Kind::Ring);
  EXPECT_EQ(rc.inner, (Sig{0, 2}));
  EXPECT_EQ(rc.name(), "ring");

  const auto sp = fixtures::single_pole();
  const auto circ = strebel::find_components(sp, 2.0);
  ASSERT_EQ(circ.size(), 1u);
  EXPECT_EQ(strebel::classify(circ[0], sp).kind, strebel::DomainClass::Kind::CircleAtPole);
}

TEST(TraceOrthogonal, SinglePoleRadialSegment) {
  const auto t = strebel::trace_orthogonal(fixtures::single_pole(), 2.0, 3.0);
  for (const auto z : t.points) EXPECT_NEAR(z.imag(), 0.0, 1e-12);
  EXPECT_NEAR(t.points.back().real(), 5.0, 1e-9);
  EXPECT_EQ(t.end, strebel::OrthogonalTrace::End::ArcLimit);
  const auto down = strebel::trace_orthogonal(fixtures::single_pole(), 2.0, 3.0, strebel::Flow::Descending);
  EXPECT_EQ(down.end, strebel::OrthogonalTrace::End::Pole);
}

TEST(TraceOrthogonal, PotentialIsMonotone) {
  const auto qd = fixtures::two_poles();
  const auto t = strebel::trace_orthogonal(qd, cplx(0.0, 0.5), 2.0);
  for (std::size_t k = 1; k < t.points.size(); ++k)
    EXPECT_GT(qd.log_modulus(t.points[k]), qd.log_modulus(t.points[k - 1]));
}

TEST(TraceOrthogonal, RunningConfigurationFromPointThree) {
  const auto qd = fixtures::running();
  const auto down = strebel::trace_orthogonal(qd, 0.3, 10.0, strebel::Flow::Descending);
  EXPECT_EQ(down.end, strebel::OrthogonalTrace::End::Pole);
  EXPECT_EQ(down.index, 2u);
  const auto up = strebel::trace_orthogonal(qd, 0.3, 10.0, strebel::Flow::Ascending);
  EXPECT_EQ(up.end, strebel::OrthogonalTrace::End::Zero);
  EXPECT_NEAR(up.points.back().real(), (std::sqrt(3.0) - 1) / std::sqrt(2.0), 1e-5);
}

TEST(TraceOrthogonal, PerpendicularToLevelCurves) {
  const auto qd = fixtures::running();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-2.5, 2.5);
  strebel::StepControl fine;
  fine.initial_step = 2e-8;
  fine.max_step = 2e-8;
  constexpr double kEps = 1e-7;
  int tested = 0;
  while (tested < 100) {
    const cplx seed(coord(rng), coord(rng));
    if (qd.nearest_pole(seed).second < 0.1 || std::abs(qd.field(seed)) < 0.05) continue;
    const double level = std::exp(qd.log_modulus(seed));
    // Level-curve chord through points projected from either side of the seed.
    const cplx probe = std::abs(std::cos(std::arg(qd.field(seed)))) > 0.5 ? cplx(0, 1) : cplx(1, 0);
    const cplx level_chord = strebel::project_to_level(qd, seed + kEps * probe, level) -
                             strebel::project_to_level(qd, seed - kEps * probe, level);
    const auto up = strebel::trace_orthogonal(qd, seed, kEps, strebel::Flow::Ascending, fine);
    const auto down = strebel::trace_orthogonal(qd, seed, kEps, strebel::Flow::Descending, fine);
    const cplx ortho_chord = up.points.back() - down.points.back();
    const double angle =
        std::abs(std::remainder(std::arg(ortho_chord / level_chord) - std::numbers::pi / 2, std::numbers::pi));
    EXPECT_LE(angle, 1e-6) << "at " << seed;
    ++tested;
  }
}

TEST(Box, AroundPadsByDiameter) {
  const auto b = strebel::Box::around(fixtures::running());
  EXPECT_DOUBLE_EQ(b.xmin, -7.0);
  EXPECT_DOUBLE_EQ(b.xmax, 7.0);
  EXPECT_DOUBLE_EQ(b.ymin, -6.0);
  EXPECT_TRUE(b.contains(0.0));
  EXPECT_FALSE(b.contains(cplx(8.0, 0.0)));
  EXPECT_DOUBLE_EQ(b.scaled(2.0).xmax, 14.0);
}
