#include <cmath>

#include <gtest/gtest.h>

#include "waveortho/errors.hpp"
#include "waveortho/specfun.hpp"

using namespace waveortho;
using namespace waveortho::specfun;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(SphericalBessel, MatchesStandardLibrary) {
  for (const double x : {1e-3, 0.1, 0.9, 2.5, 7.0, 15.0, 40.0, 95.0}) {
    for (int n = 0; n <= 60; ++n) {
      const double ref = std::sph_bessel(n, x);
      if (std::abs(ref) < 1e-280) continue;
      EXPECT_LT(rel_err(sph_bessel_j(n, x).value, ref), 1e-11) << "n=" << n << " x=" << x;
    }
  }
}

TEST(SphericalBessel, SecondKindMatchesStandardLibraryAboveTurningPoint) {
  for (const double x : {0.5, 3.0, 12.0, 50.0}) {
    for (int n = 0; n <= 30; ++n) {
      const double ref = std::sph_neumann(n, x);
      if (std::abs(ref) > 1e280) continue;
      EXPECT_LT(rel_err(sph_bessel_y(n, x).value, ref), 1e-11) << "n=" << n << " x=" << x;
    }
  }
}

TEST(SphericalBessel, WronskianHolds) {
  for (const double x : {0.3, 1.0, 4.0, 20.0, 80.0}) {
    for (int n = 0; n <= 40; ++n) {
      const auto j = sph_bessel_j(n, x);
      const auto y = sph_bessel_y(n, x);
      const double w = j.value * y.derivative - j.derivative * y.value;
      const double scale = std::abs(j.value * y.derivative) + std::abs(j.derivative * y.value);
      EXPECT_LT(std::abs(w - 1.0 / (x * x)), 1e-12 * std::max(scale, 1.0 / (x * x))) << n << " " << x;
    }
  }
}

TEST(SphericalBessel, ArrayAgreesWithScalar) {
  const auto arr = sph_bessel_j_array(25, 6.5);
  for (int n = 0; n <= 25; ++n) EXPECT_LT(rel_err(arr[n], sph_bessel_j(n, 6.5).value), 1e-13);
}

TEST(SphericalBessel, ZeroArgument) {
  EXPECT_EQ(sph_bessel_j(0, 0.0).value, 1.0);
  EXPECT_EQ(sph_bessel_j(3, 0.0).value, 0.0);
  EXPECT_DOUBLE_EQ(sph_bessel_j(1, 0.0).derivative, 1.0 / 3.0);
}

TEST(SphericalBessel, HankelCombinesBothKinds) {
  const auto h = sph_hankel1(4, 3.3);
  EXPECT_DOUBLE_EQ(h.value.real(), sph_bessel_j(4, 3.3).value);
  EXPECT_DOUBLE_EQ(h.value.imag(), sph_bessel_y(4, 3.3).value);
}

TEST(SphericalBessel, RejectsBadArguments) {
  EXPECT_THROW(sph_bessel_j(201, 1.0), Error);
  EXPECT_THROW(sph_bessel_j(-1, 1.0), Error);
  EXPECT_THROW(sph_bessel_j(2, -1.0), Error);
  EXPECT_THROW(sph_bessel_y(2, 0.0), Error);
  EXPECT_THROW(sph_bessel_j(2, std::nan("")), Error);
  try {
    sph_bessel_j(300, 1.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedOrder);
  }
  try {
    sph_hankel1(1, 0.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Domain);
  }
}

TEST(Legendre, MatchesStandardLibrary) {
  for (const double x : {-1.0, -0.7, 0.0, 0.33, 0.999, 1.0}) {
    for (int n = 0; n <= 50; ++n) {
      EXPECT_NEAR(legendre_p(n, x), std::legendre(n, x), 1e-13) << n << " " << x;
    }
  }
}

TEST(Legendre, DerivativeMatchesFiniteDifference) {
  std::vector<double> v, d;
  legendre_p_array(12, 0.4, v, &d);
  const double h = 1e-6;
  for (int n = 0; n <= 12; ++n) {
    const double fd = (std::legendre(n, 0.4 + h) - std::legendre(n, 0.4 - h)) / (2 * h);
    EXPECT_NEAR(d[n], fd, 1e-6);
  }
}

TEST(Legendre, RejectsOutOfRange) { EXPECT_THROW(legendre_p(2, 1.5), Error); }

TEST(CylinderBessel, MatchesStandardLibraryAcrossBranchSwitch) {
  for (const double x : {1e-4, 0.5, 3.0, 8.0, 16.9, 17.1, 30.0, 250.0}) {
    EXPECT_NEAR(cyl_bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-13) << x;
    EXPECT_NEAR(cyl_bessel_j1(x), std::cyl_bessel_j(1.0, x), 1e-13) << x;
    const auto p0 = cyl_bessel_j0y0(x);
    const auto p1 = cyl_bessel_j1y1(x);
    EXPECT_LT(std::abs(p0.y - std::cyl_neumann(0.0, x)), 1e-13 * std::max(1.0, std::abs(p0.y))) << x;
    EXPECT_LT(std::abs(p1.y - std::cyl_neumann(1.0, x)), 1e-13 * std::max(1.0, std::abs(p1.y))) << x;
  }
}

TEST(CylinderBessel, WronskianHolds) {
  for (const double x : {0.2, 5.0, 17.0, 40.0}) {
    const auto p0 = cyl_bessel_j0y0(x);
    const auto p1 = cyl_bessel_j1y1(x);
    EXPECT_LT(rel_err(p1.j * p0.y - p0.j * p1.y, 2.0 / (kPi * x)), 1e-12) << x;
  }
}

TEST(CylinderBessel, OddSymmetryOfJ1) { EXPECT_DOUBLE_EQ(cyl_bessel_j1(-2.0), -cyl_bessel_j1(2.0)); }
