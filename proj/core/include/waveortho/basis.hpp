#pragma once

#include <string>
#include <variant>
#include <vector>

#include "waveortho/geometry.hpp"
#include "waveortho/types.hpp"

namespace waveortho {

/// Plane waves e^{ik d.r}. 2D directions lie in the xy-plane.
struct PlaneWaves {
  std::vector<Vec3> directions;
};

/// Outgoing Green's functions centred at the given points.
struct PointSources {
  std::vector<Vec3> locations;
};

/// Axisymmetric outgoing spherical waves h_n(kr) P_n(cos theta), n = 0..max_order (3D only).
struct SphericalModes {
  int max_order{0};
};

struct BasisFamily {
  std::variant<PlaneWaves, PointSources, SphericalModes> kind;
  double k{1.0};
  int dim{3};

  std::size_t size() const;
  std::string name() const;

  Complex value(std::size_t i, const Vec3& r) const;
  CVec3 gradient(std::size_t i, const Vec3& r) const;
};

BasisFamily make_plane_waves(std::vector<Vec3> directions, double k, int dim);
BasisFamily make_point_sources(std::vector<Vec3> locations, double k, int dim);
BasisFamily make_spherical_modes(int max_order, double k);

/// Node-by-basis matrices of A D_i(r_j) (trace) and D_i(r_j) (value).
struct BasisTraces {
  CMatrix trace;
  CMatrix value;
  BoundaryCondition bc{BoundaryCondition::Soft};
};

/// Soft: A D = D. Hard: A D = grad D . n.
BasisTraces eval_basis_trace(const BasisFamily& basis, BoundaryCondition bc, const Surface& s);

/// A u0 sampled at the surface nodes.
CVector incident_trace(const IncidentField& u0, BoundaryCondition bc, const Surface& s);

/// Direction angle of a unit vector. 2D: atan2(y, x). 3D: polar angle in the xz-plane, atan2(x, z).
double direction_angle(const Vec3& d, int dim);

/// Unit vector for a direction angle (inverse of direction_angle).
Vec3 direction_from_angle(double angle, int dim);

/// Directions above a strip (y > 0), uniform in cos(alpha) with the given number of
/// directions per wavelength of aperture; grazing directions excluded.
std::vector<Vec3> strip_direction_grid(double k, double width, double per_wavelength);

/// n equispaced directions on the xz great circle at angles -pi + 2 pi i / n.
std::vector<Vec3> great_circle_directions(int n);

}  // namespace waveortho
