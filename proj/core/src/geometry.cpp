#include "waveortho/geometry.hpp"

#include <cmath>
#include <string>

#include "waveortho/errors.hpp"
#include "waveortho/quadrature.hpp"
#include "waveortho/specfun.hpp"

namespace waveortho {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::Domain, std::string(what) + " must be positive");
  }
}

// Rings of a surface of revolution: t = cos(theta), rho(t), z(t), meridian normal, ring density.
void add_rings(Surface& s, int resolution, int azimuthal, double a, double c) {
  const quad::Rule rule = quad::gauss_legendre(resolution);
  for (int j = 0; j < resolution; ++j) {
    const double t = rule.nodes[j];
    const double rho = a * std::sqrt(1.0 - t * t);
    const double z = c * t;
    const double density = a * std::sqrt(a * a * t * t + c * c * (1.0 - t * t));
    double nr = rho / (a * a);
    double nz = z / (c * c);
    const double nn = std::hypot(nr, nz);
    nr /= nn;
    nz /= nn;
    if (azimuthal == 1) {
      s.nodes.push_back({Vec3(rho, 0.0, z), Vec3(nr, 0.0, nz), 2.0 * kPi * density * rule.weights[j]});
      continue;
    }
    for (int m = 0; m < azimuthal; ++m) {
      const double phi = 2.0 * kPi * m / azimuthal;
      const double cp = std::cos(phi);
      const double sp = std::sin(phi);
      s.nodes.push_back({Vec3(rho * cp, rho * sp, z), Vec3(nr * cp, nr * sp, nz),
                         2.0 * kPi / azimuthal * density * rule.weights[j]});
    }
  }
}

}  // namespace

double Surface::measure() const {
  double sum = 0.0;
  for (const auto& n : nodes) sum += n.weight;
  return sum;
}

double analytic_measure(const Shape& shape) {
  return std::visit(
      Overloaded{
          [](const Sphere& s) { return 4.0 * kPi * s.radius * s.radius; },
          [](const Strip& s) { return s.width; },
          [](const Circle& s) { return 2.0 * kPi * s.radius; },
          [](const Spheroid& s) {
            const double e = std::sqrt(1.0 - s.a * s.a / (s.c * s.c));
            return 2.0 * kPi * s.a * s.a * (1.0 + s.c / (s.a * e) * std::asin(e));
          },
      },
      shape);
}

bool contains(const Shape& shape, const Vec3& p) {
  return std::visit(
      Overloaded{
          [&](const Sphere& s) { return p.norm() < s.radius; },
          [](const Strip&) { return false; },
          [&](const Circle& s) { return std::hypot(p.x(), p.y()) < s.radius; },
          [&](const Spheroid& s) {
            const double rho2 = p.x() * p.x() + p.y() * p.y();
            return rho2 / (s.a * s.a) + p.z() * p.z() / (s.c * s.c) < 1.0;
          },
      },
      shape);
}

Surface make_surface(const Shape& shape, int resolution, int azimuthal) {
  if (resolution < 4) {
    throw Error(ErrorCode::TooCoarse, "resolution " + std::to_string(resolution) + " < 4");
  }
  if (azimuthal < 1) throw Error(ErrorCode::TooCoarse, "azimuthal count must be >= 1");
  Surface s;
  s.shape = shape;
  s.resolution = resolution;
  s.azimuthal = azimuthal;
  std::visit(Overloaded{
                 [&](const Sphere& sp) {
                   require_positive(sp.radius, "sphere radius");
                   s.dim = 3;
                   s.closed = true;
                   s.char_size = 2.0 * sp.radius;
                   add_rings(s, resolution, azimuthal, sp.radius, sp.radius);
                 },
                 [&](const Spheroid& sp) {
                   require_positive(sp.a, "spheroid a");
                   require_positive(sp.c, "spheroid c");
                   if (sp.c <= sp.a) throw Error(ErrorCode::NotProlate, "spheroid requires c > a");
                   s.dim = 3;
                   s.closed = true;
                   s.char_size = 2.0 * sp.c;
                   add_rings(s, resolution, azimuthal, sp.a, sp.c);
                 },
                 [&](const Strip& st) {
                   require_positive(st.width, "strip width");
                   s.dim = 2;
                   s.closed = false;
                   s.char_size = st.width;
                   const quad::Rule rule = quad::gauss_legendre(resolution, -0.5 * st.width, 0.5 * st.width);
                   for (int j = 0; j < resolution; ++j) {
                     s.nodes.push_back({Vec3(rule.nodes[j], 0.0, 0.0), Vec3(0.0, 1.0, 0.0), rule.weights[j]});
                   }
                 },
                 [&](const Circle& ci) {
                   require_positive(ci.radius, "circle radius");
                   s.dim = 2;
                   s.closed = true;
                   s.char_size = 2.0 * ci.radius;
                   for (int j = 0; j < resolution; ++j) {
                     const double t = 2.0 * kPi * j / resolution;
                     const Vec3 n(std::cos(t), std::sin(t), 0.0);
                     s.nodes.push_back({ci.radius * n, n, 2.0 * kPi * ci.radius / resolution});
                   }
                 },
             },
             shape);
  return s;
}

GreensEval greens_function(int dim, double k, const Vec3& source, const Vec3& target) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::Domain, "dimension must be 2 or 3");
  require_positive(k, "wavenumber");
  const Vec3 d = target - source;
  const double r = d.norm();
  if (r <= 1e-14 * (1.0 + source.norm())) {
    throw Error(ErrorCode::Singularity, "source and target coincide");
  }
  const Vec3 rhat = d / r;
  GreensEval out;
  if (dim == 3) {
    const Complex g = std::exp(kI * (k * r)) / (4.0 * kPi * r);
    out.value = g;
    out.gradient = (g * (kI * k - 1.0 / r)) * rhat.cast<Complex>();
  } else {
    out.value = 0.25 * kI * specfun::cyl_hankel1_0(k * r);
    out.gradient = (-0.25 * kI * k * specfun::cyl_hankel1_1(k * r)) * rhat.cast<Complex>();
  }
  return out;
}

Complex surface_inner_product(const Surface& s, std::span<const Complex> f,
                              std::span<const Complex> g) {
  if (f.size() != s.size() || g.size() != s.size()) {
    throw Error(ErrorCode::Shape, "expected " + std::to_string(s.size()) + " samples, got " +
                                      std::to_string(f.size()) + " and " + std::to_string(g.size()));
  }
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < f.size(); ++j) sum += s.nodes[j].weight * std::conj(f[j]) * g[j];
  return sum;
}

}  // namespace waveortho
