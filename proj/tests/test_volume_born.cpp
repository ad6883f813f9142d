#include <cmath>

#include <gtest/gtest.h>

#include "waveortho/born.hpp"
#include "waveortho/errors.hpp"
#include "waveortho/geometry.hpp"
#include "waveortho/quadrature.hpp"
#include "waveortho/volume.hpp"

using namespace waveortho;

namespace {

Complex hankel0(double x) { return {std::cyl_bessel_j(0.0, x), std::cyl_neumann(0.0, x)}; }

VolumePotential weak_potential(double strength, int n = 12) {
  const double k = 2.0 * kPi;
  return make_gaussian_potential(2, n, 1.2, strength * k * k, 0.3);
}

const IncidentField kIncident{Vec3(1.0, 0.0, 0.0), 1.0, 2.0 * kPi};

}  // namespace

TEST(SelfCell, TwoDimensionalIntegralMatchesQuadrature) {
  const double k = 3.0, h = 0.2;
  const double r = h / std::sqrt(kPi);
  const auto rule = quad::gauss_legendre(80, 0.0, 1.0);
  Complex sum = 0.0;
  double abs2 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double rho = r * u * u;
    const double jac = 2.0 * kPi * rho * 2.0 * r * u * rule.weights[i];
    sum += Complex(0.0, 0.25) * hankel0(k * rho) * jac;
    abs2 += std::norm(hankel0(k * rho)) / 16.0 * jac;
  }
  EXPECT_LT(std::abs(self_cell_integral(2, k, h) - sum), 1e-12);
  EXPECT_NEAR(self_cell_abs2_integral(2, k, h), abs2, 1e-10 * abs2);
}

TEST(SelfCell, ThreeDimensionalIntegralMatchesQuadrature) {
  const double k = 3.0, h = 0.2;
  const double r = h * std::cbrt(3.0 / (4.0 * kPi));
  const auto rule = quad::gauss_legendre(30, 0.0, r);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * rule.nodes[i] * std::exp(Complex(0.0, k * rule.nodes[i]));
  }
  EXPECT_LT(std::abs(self_cell_integral(3, k, h) - sum), 1e-14);
  EXPECT_NEAR(self_cell_abs2_integral(3, k, h), r / (4.0 * kPi), 1e-16);
}

TEST(Potential, GaussianHasZeroBoundaryLayer) {
  const VolumePotential pot = weak_potential(0.05);
  EXPECT_EQ(pot.size(), 144u);
  EXPECT_EQ(pot.values[0], Complex(0.0));
  EXPECT_NEAR(pot.cell_measure(), 0.04, 1e-15);
  EXPECT_TRUE(pot.covers(Vec3(1.2, -1.2, 0.0)));
  EXPECT_FALSE(pot.covers(Vec3(1.3, 0.0, 0.0)));
  EXPECT_THROW(make_gaussian_potential(2, 3, 1.0, 1.0, 0.3), Error);
}

TEST(LippmannSchwinger, SolvesDiscreteEquation) {
  const VolumePotential pot = weak_potential(0.05);
  const auto ls = lippmann_schwinger(pot, kIncident, kIncident.k);
  EXPECT_LT(ls.residual, 1e-12);
  const CMatrix g = cell_green_matrix(pot, kIncident.k);
  for (std::size_t i = 0; i < pot.size(); i += 17) {
    Complex rhs = kIncident.value(pot.point(i));
    for (std::size_t j = 0; j < pot.size(); ++j) rhs += g(i, j) * pot.values[j] * ls.field[j];
    EXPECT_LT(std::abs(ls.field[i] - rhs), 1e-12);
  }
}

TEST(LippmannSchwinger, DenseFallbackAgreesWithIteration) {
  const VolumePotential pot = weak_potential(2.0);
  const auto ls = lippmann_schwinger(pot, kIncident, kIncident.k);
  EXPECT_TRUE(ls.dense);
  EXPECT_LT(ls.residual, 1e-10);
}

TEST(LippmannSchwinger, ApproachesFirstBornInWeakLimit) {
  const std::vector<Vec3> pts{Vec3(8.0, 3.0, 0.0)};
  double prev = 0.0;
  for (const double s : {1e-2, 1e-3}) {
    const VolumePotential pot = weak_potential(s);
    const auto ls = lippmann_schwinger(pot, kIncident, kIncident.k);
    const Complex u_ls = lippmann_schwinger_field_at(pot, kIncident, kIncident.k, ls.field, pts)[0];
    BornOptions unit;
    unit.unit_beta = true;
    const Complex u_b = born_approximation(pot, kIncident, kIncident.k, BornOrder::First, pts, unit).field[0];
    const double rel = std::abs(u_ls - u_b) / std::abs(u_ls - kIncident.value(pts[0]));
    if (prev > 0.0) EXPECT_LT(rel, 0.2 * prev);
    prev = rel;
  }
  EXPECT_THROW(lippmann_schwinger_field_at(weak_potential(0.01), kIncident, kIncident.k,
                                           std::vector<Complex>(144), {Vec3(0, 0, 0)}),
               Error);
}

TEST(Born, UnitBetaFirstOrderIsStandardFirstBorn) {
  const VolumePotential pot = weak_potential(0.05);
  const std::vector<Vec3> pts{Vec3(5.0, 1.0, 0.0)};
  BornOptions unit;
  unit.unit_beta = true;
  const BornResult r = born_approximation(pot, kIncident, kIncident.k, BornOrder::First, pts, unit);
  Complex expect = kIncident.value(pts[0]);
  for (std::size_t j = 0; j < pot.size(); ++j) {
    const Vec3 p = pot.point(j);
    expect += greens_function(2, kIncident.k, p, pts[0]).value * pot.cell_measure() * pot.values[j] *
              kIncident.value(p);
  }
  EXPECT_LT(std::abs(r.field[0] - expect), 1e-13);
}

TEST(Born, BetaWeightsAreInUnitInterval) {
  const VolumePotential pot = weak_potential(0.5);
  const auto beta = beta_weight(pot, kIncident.k);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    EXPECT_GT(beta[j], 0.0);
    EXPECT_LE(beta[j], 1.0);
    if (pot.values[j] == Complex(0.0)) continue;
  }
  EXPECT_LT(*std::min_element(beta.begin(), beta.end()), 1.0);
}

TEST(Born, ModifiedSecondTermIgnoresGlobalPhase) {
  const VolumePotential pot = weak_potential(0.05);
  const std::vector<Vec3> pts{Vec3(6.0, -2.0, 0.0)};
  const Complex rot = std::polar(1.0, 1.1);
  for (const bool alt : {false, true}) {
    BornOptions o;
    o.alt_reading = alt;
    const auto a = born_approximation(pot, kIncident, kIncident.k, BornOrder::SecondModified, pts, o);
    const auto b = born_approximation(pot.scaled(rot), kIncident, kIncident.k, BornOrder::SecondModified, pts, o);
    EXPECT_LT(std::abs(a.second_term[0] - b.second_term[0]), 1e-14 * std::abs(a.second_term[0]));
  }
  const auto s = born_approximation(pot, kIncident, kIncident.k, BornOrder::SecondStandard, pts);
  const auto sr = born_approximation(pot.scaled(rot), kIncident, kIncident.k, BornOrder::SecondStandard, pts);
  EXPECT_LT(std::abs(sr.second_term[0] - rot * rot * s.second_term[0]), 1e-13 * std::abs(s.second_term[0]));
}

TEST(Born, RejectsPointsInsideSupport) {
  const VolumePotential pot = weak_potential(0.05);
  try {
    born_approximation(pot, kIncident, kIncident.k, BornOrder::First, {Vec3(0.1, 0.1, 0.0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedRegion);
  }
}
