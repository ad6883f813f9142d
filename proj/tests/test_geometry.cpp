#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "waveortho/errors.hpp"
#include "waveortho/geometry.hpp"

using namespace waveortho;

namespace {

double spheroid_area(double a, double c) {
  const double e = std::sqrt(1.0 - a * a / (c * c));
  return 2.0 * kPi * a * a * (1.0 + c / (a * e) * std::asin(e));
}

}  // namespace

TEST(Surface, MeasuresMatchClosedForms) {
  EXPECT_NEAR(make_surface(Sphere{1.5}, 20).measure(), 4.0 * kPi * 2.25, 1e-12);
  EXPECT_NEAR(make_surface(Sphere{1.5}, 12, 24).measure(), 4.0 * kPi * 2.25, 1e-12);
  EXPECT_NEAR(make_surface(Strip{3.0}, 9).measure(), 3.0, 1e-14);
  EXPECT_NEAR(make_surface(Circle{2.0}, 64).measure(), 4.0 * kPi, 1e-12);
  EXPECT_NEAR(make_surface(Spheroid{1.0, 2.0}, 200).measure(), spheroid_area(1.0, 2.0), 1e-9);
  EXPECT_NEAR(analytic_measure(Spheroid{1.0, 3.0}), spheroid_area(1.0, 3.0), 1e-12);
}

TEST(Surface, NormalsAreOutwardUnitVectors) {
  for (const Shape shape : {Shape{Sphere{1.0}}, Shape{Spheroid{0.5, 1.2}}, Shape{Circle{1.0}}}) {
    const Surface s = make_surface(shape, 16, 1);
    for (const auto& node : s.nodes) {
      EXPECT_NEAR(node.normal.norm(), 1.0, 1e-14);
      EXPECT_GT(node.normal.dot(node.position), 0.0);
    }
  }
}

TEST(Surface, SpheroidNodesLieOnTheSurface) {
  const Surface s = make_surface(Spheroid{1.0, 2.0}, 30, 5);
  for (const auto& node : s.nodes) {
    const Vec3& p = node.position;
    EXPECT_NEAR((p.x() * p.x() + p.y() * p.y()) / 1.0 + p.z() * p.z() / 4.0, 1.0, 1e-13);
  }
}

TEST(Surface, RejectsBadParameters) {
  try {
    make_surface(Sphere{1.0}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooCoarse);
  }
  try {
    make_surface(Spheroid{2.0, 1.0}, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotProlate);
  }
  EXPECT_THROW(make_surface(Sphere{-1.0}, 10), Error);
}

TEST(Contains, InteriorAndExterior) {
  EXPECT_TRUE(contains(Sphere{1.0}, Vec3(0.2, 0.3, 0.1)));
  EXPECT_FALSE(contains(Sphere{1.0}, Vec3(1.0, 0.0, 0.0)));
  EXPECT_TRUE(contains(Spheroid{1.0, 2.0}, Vec3(0.0, 0.0, 1.9)));
  EXPECT_FALSE(contains(Spheroid{1.0, 2.0}, Vec3(0.9, 0.0, 1.9)));
  EXPECT_FALSE(contains(Strip{2.0}, Vec3(0.0, 0.0, 0.0)));
  EXPECT_TRUE(contains(Circle{1.0}, Vec3(0.5, 0.5, 0.0)));
}

TEST(Greens, SatisfiesHelmholtzAwayFromSource) {
  const double k = 3.0;
  const double h = 1e-3;
  for (const int dim : {2, 3}) {
    const Vec3 src(0.1, -0.2, 0.0);
    Vec3 x(1.1, 0.7, dim == 3 ? 0.4 : 0.0);
    Complex lap = 0.0;
    for (int a = 0; a < dim; ++a) {
      Vec3 e = Vec3::Zero();
      e[a] = h;
      lap += greens_function(dim, k, src, x + e).value + greens_function(dim, k, src, x - e).value;
    }
    const Complex g0 = greens_function(dim, k, src, x).value;
    lap = (lap - 2.0 * dim * g0) / (h * h);
    EXPECT_LT(std::abs(lap + k * k * g0), 1e-5 * std::abs(k * k * g0)) << dim;
  }
}

TEST(Greens, GradientMatchesFiniteDifference) {
  const double k = 2.0;
  const double h = 1e-6;
  for (const int dim : {2, 3}) {
    const Vec3 src(0.0, 0.0, 0.0);
    const Vec3 x(0.4, 1.3, dim == 3 ? -0.5 : 0.0);
    const auto g = greens_function(dim, k, src, x);
    for (int a = 0; a < dim; ++a) {
      Vec3 e = Vec3::Zero();
      e[a] = h;
      const Complex fd =
          (greens_function(dim, k, src, x + e).value - greens_function(dim, k, src, x - e).value) / (2 * h);
      EXPECT_LT(std::abs(fd - g.gradient[a]), 1e-8);
    }
  }
}

TEST(Greens, ThreeDimensionalClosedForm) {
  const auto g = greens_function(3, 2.0, Vec3(0, 0, 0), Vec3(0, 0, 1.5));
  EXPECT_LT(std::abs(g.value - std::exp(Complex(0.0, 3.0)) / (4.0 * kPi * 1.5)), 1e-15);
}

TEST(Greens, CoincidentPointsAreSingular) {
  try {
    greens_function(3, 1.0, Vec3(1, 2, 3), Vec3(1, 2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singularity);
  }
}

TEST(InnerProduct, ConjugatesFirstArgumentAndChecksShape) {
  const Surface s = make_surface(Strip{2.0}, 8);
  std::vector<Complex> f(s.size(), Complex(0.0, 1.0)), g(s.size(), 1.0);
  EXPECT_LT(std::abs(surface_inner_product(s, f, g) - Complex(0.0, -2.0)), 1e-14);
  std::vector<Complex> bad(3);
  try {
    surface_inner_product(s, bad, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Shape);
  }
}
