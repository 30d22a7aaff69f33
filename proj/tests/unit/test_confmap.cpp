#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles/ellipse_map.hpp"
#include "strebel/confmap.hpp"
#include "strebel/pipeline.hpp"
#include "unit/expect_error.hpp"
#include "unit/fixtures.hpp"

using strebel::cplx;
constexpr double kPi = std::numbers::pi;

namespace {

double correspondence_error(const strebel::DiskMap& map, const auto& expected_circle_point) {
  double err = 0.0;
  for (std::size_t j = 0; j < map.size(); ++j) {
    const cplx got = std::polar(1.0, map.circle_args()[j]);
    err = std::max(err, std::abs(got - expected_circle_point(map.boundary_nodes()[j])));
  }
  return err;
}

strebel::MapOptions fixed(std::size_t n) {
  strebel::MapOptions o;
  o.nodes = n;
  return o;
}

}  // namespace

TEST(InteriorMap, UnitCircleIsIdentity) {
  const auto map = strebel::interior_map(strebel::circle_sampler(0.0, 1.0), 0.0, fixed(256));
  EXPECT_NEAR(map.derivative_at_center(), 1.0, 1e-12);
  EXPECT_LE(correspondence_error(map, [](cplx z) { return z; }), 1e-12);
  for (const cplx zeta : {cplx(0.3, 0.1), cplx(-0.5, 0.5), cplx(0.0, -0.9)})
    EXPECT_LE(std::abs(map.evaluate(zeta) - zeta), 1e-12);
}

TEST(InteriorMap, ShiftedCircle) {
  const auto map = strebel::interior_map(strebel::circle_sampler(1.0, 2.0), 1.0);
  EXPECT_NEAR(map.derivative_at_center(), 2.0, 1e-12);
  EXPECT_LE(std::abs(map.evaluate({0.25, -0.4}) - (1.0 + 2.0 * cplx(0.25, -0.4))), 1e-12);
  EXPECT_LE(std::abs(map.evaluate_inverse(2.0) - 0.5), 1e-12);
  EXPECT_LE(map.self_test_error(), 1e-8);
}

TEST(InteriorMap, OffCentreCircleIsMobius) {
  // Unit circle with phi(0) = 0.5: phi(zeta) = (zeta + 0.5) / (1 + 0.5 zeta).
  const auto map = strebel::interior_map(strebel::circle_sampler(0.0, 1.0), 0.5, fixed(512));
  EXPECT_NEAR(map.derivative_at_center(), 0.75, 1e-12);
  EXPECT_LE(correspondence_error(map, [](cplx z) { return (z - 0.5) / (1.0 - 0.5 * z); }), 1e-12);
}

TEST(InteriorMap, EllipseMatchesJacobiOracle) {
  const oracle::EllipseMap oracle(2.0, 1.0);
  const auto map = strebel::interior_map(strebel::ellipse_sampler(2.0, 1.0), 0.0);
  EXPECT_LE(correspondence_error(map, oracle), 1e-8);
  for (const cplx z : {cplx(0.5, 0.2), cplx(-1.2, 0.4), cplx(1.7, 0.0), cplx(0.0, -0.8)})
    EXPECT_LE(std::abs(map.evaluate_inverse(z) - oracle(z)), 1e-8);
}

TEST(ExteriorMap, CircleOfRadiusThree) {
  const auto map = strebel::exterior_map(strebel::circle_sampler(0.0, 3.0), 0.0);
  EXPECT_NEAR(map.derivative_at_center(), 3.0, 1e-12);
  EXPECT_LE(correspondence_error(map, [](cplx z) { return z / 3.0; }), 1e-12);
  for (const cplx zeta : {cplx(1.5, 0.0), cplx(-2.0, 3.0)})
    EXPECT_LE(std::abs(map.evaluate(zeta) - 3.0 * zeta), 1e-11);
}

TEST(ExteriorMap, OffCentreInversionGivesSameMap) {
  const auto a = strebel::exterior_map(strebel::circle_sampler(0.0, 3.0), 0.0, fixed(256));
  const auto b = strebel::exterior_map(strebel::circle_sampler(0.0, 3.0), {1.0, 0.5}, fixed(256));
  EXPECT_NEAR(a.derivative_at_center(), b.derivative_at_center(), 1e-12);
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a.circle_args()[j], b.circle_args()[j], 1e-11);
}

TEST(ExteriorMap, ClosedFormOnTwoPoleLemniscate) {
  // |z^2 - 1| = 4: the exterior inverse is sqrt((z^2 - 1)/4).
  const auto qd = fixtures::two_poles();
  const auto curve = fixtures::component_at(qd, 4.0, {0, 1});
  const auto map = strebel::exterior_map(qd, curve);
  EXPECT_NEAR(map.derivative_at_center(), 2.0, 1e-10);
  const auto cf = strebel::closed_form_exterior(qd, 4.0, curve);
  EXPECT_LE(strebel::closed_form_agreement(map, cf).sup_dist, 1e-8);
  for (const cplx z : {cplx(3.0, 1.0), cplx(-0.5, 4.0)}) {
    const cplx expected = std::sqrt((z * z - 1.0) / 4.0);
    const cplx got = map.evaluate_inverse(z);
    EXPECT_LE(std::min(std::abs(got - expected), std::abs(got + expected)), 1e-8);
  }
}

TEST(ExteriorMap, AsymptoticCoefficientIsReal) {
  const auto qd = fixtures::running();
  const auto map = strebel::exterior_map(qd, fixtures::component_at(qd, 9.0, {0, 1, 2}));
  const cplx zeta = 1e4;
  const cplx ratio = map.evaluate(zeta) / zeta;
  EXPECT_NEAR(ratio.imag(), 0.0, 1e-6);
  EXPECT_NEAR(ratio.real(), map.derivative_at_center(), 1e-3);
  // Capacity of the lemniscate |f| = 9 with total weight sqrt 2 is 9^(1/sqrt 2).
  EXPECT_NEAR(map.derivative_at_center(), std::pow(9.0, 1.0 / std::sqrt(2.0)), 1e-9);
}

TEST(LemniscateMaps, RunningOuterCurveConverges) {
  const auto qd = fixtures::running();
  const auto curve = fixtures::component_at(qd, 9.0, {0, 1, 2});
  const cplx p0 = strebel::interior_reference_point(qd, curve);
  const auto coarse = strebel::interior_map(qd, curve, p0, fixed(512));
  const auto fine = strebel::interior_map(qd, curve, p0, fixed(1024));
  EXPECT_LE(coarse.self_test_error(), 1e-8);
  for (std::size_t j = 0; j < coarse.size(); ++j)
    EXPECT_NEAR(coarse.circle_args()[j], fine.circle_args()[2 * j], 1e-9);
  const auto ext = strebel::exterior_map(qd, curve, fixed(512));
  EXPECT_LE(ext.self_test_error(), 1e-8);
}

TEST(LemniscateMaps, RoundTrip) {
  const auto qd = fixtures::running();
  const auto curve = fixtures::component_at(qd, 9.0, {0, 1, 2});
  const auto in = strebel::interior_map(qd, curve, strebel::interior_reference_point(qd, curve));
  const auto out = strebel::exterior_map(qd, curve);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi), rin(0.0, 0.9), rout(1.1, 4.0);
  for (int k = 0; k < 50; ++k) {
    const cplx a = std::polar(rin(rng), angle(rng));
    EXPECT_LE(std::abs(in.evaluate_inverse(in.evaluate(a)) - a), 1e-8);
    const cplx b = std::polar(rout(rng), angle(rng));
    EXPECT_LE(std::abs(out.evaluate_inverse(out.evaluate(b)) - b), 1e-8);
  }
}

TEST(LemniscateMaps, Errors) {
  const auto qd = fixtures::running();
  const auto curve = fixtures::component_at(qd, 9.0, {0, 1, 2});
  const auto in = strebel::interior_map(qd, curve, strebel::interior_reference_point(qd, curve));
  EXPECT_STREBEL_ERROR(strebel::interior_map(qd, curve, {100.0, 0.0}), P0Outside);
  EXPECT_STREBEL_ERROR(in.evaluate(1.5), OutsideDomain);
  EXPECT_STREBEL_ERROR(in.evaluate(1.0 - 1e-9), TooCloseToBoundary);
  EXPECT_STREBEL_ERROR(in.evaluate_inverse(100.0), OutsideDomain);
  EXPECT_STREBEL_ERROR(in.evaluate_inverse(in.boundary_nodes()[3] * (1.0 - 1e-9)), TooCloseToBoundary);
  const auto out = strebel::exterior_map(qd, curve);
  EXPECT_STREBEL_ERROR(strebel::pole_preimages(out, qd), PoleOnWrongSide);
  EXPECT_STREBEL_ERROR(out.evaluate(0.5), OutsideDomain);
}

TEST(PolePreimages, SingleAndTwoPoles) {
  const auto one = fixtures::single_pole();
  const auto circle = fixtures::component_at(one, 2.0, {0});
  const auto in = strebel::interior_map(one, circle, 0.0);
  EXPECT_LE(std::abs(strebel::pole_preimages(in, one)[0]), 1e-12);

  const auto two = fixtures::two_poles();
  const auto oval = fixtures::component_at(two, 4.0, {0, 1});
  const auto map = strebel::interior_map(two, oval, 0.0);
  const auto pre = strebel::pole_preimages(map, two);
  EXPECT_NEAR(pre[0].imag(), 0.0, 1e-12);
  EXPECT_NEAR(pre[0].real(), -pre[1].real(), 1e-12);
  EXPECT_GT(pre[1].real(), 0.0);
  EXPECT_LT(pre[1].real(), 1.0);
}

TEST(PolePreimages, ExteriorOfInnerOval) {
  const auto qd = fixtures::running();
  const auto oval = fixtures::component_at(qd, 9.0, {1});
  const auto out = strebel::exterior_map(qd, oval);
  const std::vector<std::size_t> others{0, 2};
  for (const cplx b : strebel::pole_preimages(out, qd, others)) EXPECT_GT(std::abs(b), 1.0);
  const std::vector<std::size_t> centre{1};
  EXPECT_STREBEL_ERROR(strebel::pole_preimages(out, qd, centre), PoleOnWrongSide);
}

TEST(ClosedForm, UnitModulusOnTheCurve) {
  const auto qd = fixtures::running();
  const auto curve = fixtures::component_at(qd, 0.05, {2});
  const auto cf = strebel::closed_form_interior(qd, 0.05, curve, 2);
  const auto s = strebel::lemniscate_sampler(qd, curve)(64);
  for (const auto w : cf.along(s.points)) EXPECT_NEAR(std::abs(w), 1.0, 1e-12);
  EXPECT_LE(std::abs(cf(qd.poles()[2] + cplx(1e-9, 0.0))), 1e-5);
  const auto bad = fixtures::component_at(qd, 9.0, {0, 1, 2});
  const auto cf_bad = strebel::closed_form_exterior(qd, 9.0, bad);
  const std::vector<cplx> through_pole{cplx(1.0, 0.5), cplx(1.0, -0.5)};
  EXPECT_STREBEL_ERROR(cf_bad.argument_along(through_pole), BranchPathCrossesPole);
}
