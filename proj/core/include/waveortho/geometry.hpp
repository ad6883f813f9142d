#pragma once

#include <span>
#include <variant>
#include <vector>

#include "waveortho/types.hpp"

namespace waveortho {

struct Sphere {
  double radius{1.0};
};

/// Zero-thickness segment of the given width on the x-axis (2D), normal +y.
struct Strip {
  double width{2.0};
};

/// Prolate spheroid rho^2/a^2 + z^2/c^2 = 1 with c > a, symmetry axis z.
struct Spheroid {
  double a{1.0};
  double c{2.0};
};

/// Circle of the given radius in the xy-plane (2D closed curve).
struct Circle {
  double radius{1.0};
};

using Shape = std::variant<Sphere, Strip, Spheroid, Circle>;

struct SurfaceNode {
  Vec3 position;
  Vec3 normal;
  double weight;
};

/// Quadrature-discretized boundary. 2D surfaces live in the xy-plane (z = 0).
/// Axisymmetric 3D surfaces with azimuthal == 1 place one node per ring in the xz-plane
/// carrying the full ring weight.
struct Surface {
  std::vector<SurfaceNode> nodes;
  bool closed{true};
  int dim{3};
  double char_size{0.0};
  Shape shape;
  int resolution{0};
  int azimuthal{1};

  std::size_t size() const { return nodes.size(); }
  double measure() const;
};

/// Builds a surface. resolution is the number of Gauss-Legendre rings (Sphere, Spheroid),
/// segment nodes (Strip) or equispaced nodes (Circle). azimuthal > 1 expands rings into
/// that many equispaced nodes in phi.
Surface make_surface(const Shape& shape, int resolution, int azimuthal = 1);

/// Closed-form measure (area or length) of a shape.
double analytic_measure(const Shape& shape);

/// True if p lies strictly inside the closed body. Always false for Strip.
bool contains(const Shape& shape, const Vec3& p);

struct GreensEval {
  Complex value;
  CVec3 gradient;
};

/// Outgoing free-space Green's function. 3D: e^{ikR}/(4 pi R); 2D: (i/4) H0(kR).
/// Gradient is taken with respect to target.
GreensEval greens_function(int dim, double k, const Vec3& source, const Vec3& target);

/// sum_j w_j conj(f_j) g_j.
Complex surface_inner_product(const Surface& s, std::span<const Complex> f,
                              std::span<const Complex> g);

}  // namespace waveortho
