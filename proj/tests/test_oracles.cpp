#include <cmath>

#include <gtest/gtest.h>

#include "waveortho/basis.hpp"
#include "waveortho/bem.hpp"
#include "waveortho/errors.hpp"
#include "waveortho/geometry.hpp"
#include "waveortho/kirchhoff.hpp"
#include "waveortho/mie.hpp"

using namespace waveortho;

namespace {

std::vector<double> angle_grid(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

}  // namespace

TEST(Mie, OpticalTheoremHolds) {
  for (const auto bc : {BoundaryCondition::Soft, BoundaryCondition::Hard}) {
    for (const double ka : {0.5, 5.0, 30.0}) {
      const MieResult r = mie_series(bc, ka, {0.0});
      EXPECT_NEAR(r.cross_section_optical, r.cross_section_sum, 1e-10 * r.cross_section_sum) << ka;
    }
  }
}

TEST(Mie, BoundaryConditionHoldsOnSurface) {
  const auto angles = angle_grid(0.0, kPi, 19);
  const MieResult soft = mie_series(BoundaryCondition::Soft, 5.0, angles);
  const MieResult hard = mie_series(BoundaryCondition::Hard, 5.0, angles);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    EXPECT_LT(std::abs(soft.surface_field[i]), 1e-10);
    EXPECT_LT(std::abs(hard.surface_normal_derivative[i]), 1e-9);
  }
}

TEST(Mie, SmallSoftSphereIsIsotropic) {
  // Low-frequency limit f -> -a for a soft sphere.
  const MieResult r = mie_series(BoundaryCondition::Soft, 1e-3, {0.0, kPi});
  EXPECT_NEAR(r.pattern.amplitude[0].real(), -1.0, 2e-3);
  EXPECT_NEAR(r.pattern.amplitude[1].real(), -1.0, 2e-3);
}

TEST(Mie, RejectsUnsupportedSizes) {
  EXPECT_THROW(mie_series(BoundaryCondition::Soft, 0.0, {0.0}), Error);
  EXPECT_THROW(mie_series(BoundaryCondition::Soft, 150.0, {0.0}), Error);
  EXPECT_EQ(mie_truncation(5.0), 17);
}

TEST(Kirchhoff, MatchesClosedFormSinc) {
  const double kd = 10.0;
  const double inc = 0.3;
  const auto angles = angle_grid(-1.4, 1.4, 31);
  const FarFieldPattern p = kirchhoff_pattern(kd, inc, angles);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double x = 0.5 * kd * (std::sin(inc) - std::sin(angles[i]));
    const double sinc = std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x;
    EXPECT_LT(std::abs(p.amplitude[i] - sinc), 1e-12);
  }
}

TEST(BoundaryIntegral, CircleMatchesSeriesSolution) {
  const double k = 5.0;
  const auto angles = angle_grid(-kPi, kPi, 37);
  const Surface s = make_surface(Circle{1.0}, 96);
  const IncidentField u0{Vec3(1.0, 0.0, 0.0), 1.0, k};
  for (const auto bc : {BoundaryCondition::Soft, BoundaryCondition::Hard}) {
    const FarFieldPattern bem = bem_dense_solve(s, bc, k, u0).far_field(angles);
    const FarFieldPattern series = cylinder_series(bc, k, k, angles);
    for (std::size_t i = 0; i < angles.size(); ++i) {
      EXPECT_LT(std::abs(bem.amplitude[i] - series.amplitude[i]), 1e-10) << i;
    }
  }
}

TEST(BoundaryIntegral, StripIsReciprocal) {
  const double k = 4.0 * kPi / 2.0 * 2.0;
  const Surface s = make_surface(Strip{2.0}, 64);
  for (const auto bc : {BoundaryCondition::Soft, BoundaryCondition::Hard}) {
    const double a = 0.7, b = 2.1;
    const IncidentField ua{direction_from_angle(a, 2), 1.0, k};
    const IncidentField ub{direction_from_angle(b + kPi, 2), 1.0, k};
    const Complex fab = bem_dense_solve(s, bc, k, ua).far_field({b}).amplitude[0];
    const Complex fba = bem_dense_solve(s, bc, k, ub).far_field({a + kPi}).amplitude[0];
    EXPECT_LT(std::abs(fab - fba), 1e-10 * std::abs(fab)) << static_cast<int>(bc);
  }
}

TEST(BoundaryIntegral, StripConvergesInOrder) {
  const double k = 8.0 * kPi / 2.0;
  const Surface s = make_surface(Strip{2.0}, 64);
  const IncidentField u0{Vec3(0.0, -1.0, 0.0), 1.0, k};
  const auto angles = angle_grid(0.1, 3.0, 15);
  for (const auto bc : {BoundaryCondition::Soft, BoundaryCondition::Hard}) {
    BemOptions lo, hi;
    lo.strip_order = 40;
    hi.strip_order = 70;
    const auto a = bem_dense_solve(s, bc, k, u0, lo).far_field(angles);
    const auto b = bem_dense_solve(s, bc, k, u0, hi).far_field(angles);
    for (std::size_t i = 0; i < angles.size(); ++i) EXPECT_LT(std::abs(a.amplitude[i] - b.amplitude[i]), 1e-9);
  }
}

TEST(BoundaryIntegral, HardStripPatternIsOddAcrossItsPlane) {
  const double k = 3.0 * kPi;
  const Surface s = make_surface(Strip{2.0}, 32);
  const IncidentField u0{direction_from_angle(-1.2, 2), 1.0, k};
  const auto hard = bem_dense_solve(s, BoundaryCondition::Hard, k, u0);
  const auto soft = bem_dense_solve(s, BoundaryCondition::Soft, k, u0);
  const auto up = hard.far_field({0.8});
  const auto down = hard.far_field({-0.8});
  EXPECT_LT(std::abs(up.amplitude[0] + down.amplitude[0]), 1e-10 * std::abs(up.amplitude[0]));
  const auto sup = soft.far_field({0.8});
  const auto sdown = soft.far_field({-0.8});
  EXPECT_LT(std::abs(sup.amplitude[0] - sdown.amplitude[0]), 1e-10 * std::abs(sup.amplitude[0]));
}

TEST(BoundaryIntegral, RejectsMismatchedInput) {
  const Surface s = make_surface(Strip{2.0}, 16);
  const IncidentField u0{Vec3(0.0, -1.0, 0.0), 1.0, 2.0};
  EXPECT_THROW(bem_dense_solve(s, BoundaryCondition::Soft, 3.0, u0), Error);
  const Surface sphere = make_surface(Sphere{1.0}, 8);
  EXPECT_THROW(bem_dense_solve(sphere, BoundaryCondition::Soft, 2.0, u0), Error);
}
