#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace waveortho {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
inline constexpr Complex kI{0.0, 1.0};

/// Acoustic boundary condition on the scatterer.
/// Soft: the field itself vanishes (Dirichlet). Hard: the normal derivative vanishes (Neumann).
enum class BoundaryCondition { Soft, Hard };

/// Plane wave u0(r) = amplitude * exp(i k d . r).
struct IncidentField {
  Vec3 direction{0.0, 0.0, 1.0};
  Complex amplitude{1.0, 0.0};
  double k{1.0};

  Complex value(const Vec3& r) const;
  CVec3 gradient(const Vec3& r) const;
};

/// Far-field samples. 3D: u_s ~ f(theta) e^{ikr}/r, theta is the polar angle in the xz-plane.
/// 2D: u_s ~ f(phi) e^{ikr}/sqrt(r), phi is the polar angle in the xy-plane.
struct FarFieldPattern {
  std::vector<double> angles;
  std::vector<Complex> amplitude;

  std::size_t size() const { return angles.size(); }
};

}  // namespace waveortho
