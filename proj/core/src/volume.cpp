#include "waveortho/volume.hpp"

#include <cmath>
#include <string>

#include "waveortho/errors.hpp"
#include "waveortho/geometry.hpp"
#include "waveortho/quadrature.hpp"
#include "waveortho/specfun.hpp"

namespace waveortho {
namespace {

double equal_measure_radius(int dim, double h) {
  return dim == 2 ? h / std::sqrt(kPi) : h * std::cbrt(3.0 / (4.0 * kPi));
}

}  // namespace

double VolumePotential::cell_measure() const { return std::pow(spacing(), dim); }

Vec3 VolumePotential::point(std::size_t index) const {
  const double h = spacing();
  const auto nn = static_cast<std::size_t>(n);
  auto coord = [&](std::size_t i) { return -half_extent + h * (static_cast<double>(i) + 0.5); };
  if (dim == 2) return Vec3(coord(index / nn), coord(index % nn), 0.0);
  return Vec3(coord(index / (nn * nn)), coord((index / nn) % nn), coord(index % nn));
}

bool VolumePotential::covers(const Vec3& p) const {
  const double l = half_extent;
  const bool xy = std::abs(p.x()) <= l && std::abs(p.y()) <= l;
  return dim == 2 ? xy && p.z() == 0.0 : xy && std::abs(p.z()) <= l;
}

VolumePotential VolumePotential::scaled(Complex factor) const {
  VolumePotential out = *this;
  for (auto& v : out.values) v *= factor;
  return out;
}

VolumePotential make_gaussian_potential(int dim, int n, double half_extent, Complex amplitude, double sigma) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::Domain, "potential dimension must be 2 or 3");
  if (n < 4) throw Error(ErrorCode::TooCoarse, "lattice needs at least 4 cells per axis");
  if (!(half_extent > 0.0) || !(sigma > 0.0)) throw Error(ErrorCode::Domain, "extent and width must be positive");
  VolumePotential pot;
  pot.dim = dim;
  pot.n = n;
  pot.half_extent = half_extent;
  const std::size_t total = dim == 2 ? static_cast<std::size_t>(n) * n : static_cast<std::size_t>(n) * n * n;
  pot.values.resize(total);
  const double lim = half_extent - pot.spacing();
  for (std::size_t i = 0; i < total; ++i) {
    const Vec3 p = pot.point(i);
    const bool boundary = std::abs(p.x()) > lim || std::abs(p.y()) > lim || (dim == 3 && std::abs(p.z()) > lim);
    pot.values[i] = boundary ? Complex(0.0, 0.0) : amplitude * std::exp(-p.squaredNorm() / (2.0 * sigma * sigma));
  }
  return pot;
}

Complex self_cell_integral(int dim, double k, double h) {
  const double r = equal_measure_radius(dim, h);
  if (dim == 2) return kI * kPi * r / (2.0 * k) * specfun::cyl_hankel1_1(k * r) - 1.0 / (k * k);
  return ((1.0 - kI * k * r) * std::exp(kI * (k * r)) - 1.0) / (k * k);
}

double self_cell_abs2_integral(int dim, double k, double h) {
  const double r = equal_measure_radius(dim, h);
  if (dim == 3) return r / (4.0 * kPi);
  // rho = r u^2 grades the nodes toward the logarithmic singularity.
  const quad::Rule rule = quad::gauss_legendre(64, 0.0, 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double rho = r * u * u;
    sum += rule.weights[i] * std::norm(specfun::cyl_hankel1_0(k * rho)) / 16.0 * 2.0 * kPi * rho * 2.0 * r * u;
  }
  return sum;
}

CMatrix cell_green_matrix(const VolumePotential& pot, double k) {
  const auto m = static_cast<Eigen::Index>(pot.size());
  const double vol = pot.cell_measure();
  const Complex self = self_cell_integral(pot.dim, k, pot.spacing());
  CMatrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    g(i, i) = self;
    const Vec3 pi = pot.point(static_cast<std::size_t>(i));
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const Complex v = greens_function(pot.dim, k, pot.point(static_cast<std::size_t>(j)), pi).value * vol;
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

LippmannSchwingerResult lippmann_schwinger(const VolumePotential& pot, const IncidentField& u0, double k) {
  if (!(k > 0.0)) throw Error(ErrorCode::Domain, "wavenumber must be positive");
  if (pot.size() > 8000) {
    throw Error(ErrorCode::Domain, "lattice with " + std::to_string(pot.size()) + " cells exceeds the dense-solve budget");
  }
  const auto m = static_cast<Eigen::Index>(pot.size());
  const CMatrix g = cell_green_matrix(pot, k);
  CVector xi(m), inc(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    xi[i] = pot.values[static_cast<std::size_t>(i)];
    inc[i] = u0.value(pot.point(static_cast<std::size_t>(i)));
  }
  const CMatrix kx = g * xi.asDiagonal();
  const double n0 = inc.norm();

  LippmannSchwingerResult out;
  CVector u = inc;
  double prev_step = 0.0;
  bool ok = false;
  for (int it = 1; it <= 500; ++it) {
    const CVector next = inc + kx * u;
    const double step = (next - u).norm();
    u = next;
    out.iterations = it;
    if (it > 1 && prev_step > 0.0) out.contraction = step / prev_step;
    prev_step = step;
    if (step <= 1e-14 * std::max(n0, 1e-300)) {
      ok = true;
      break;
    }
    if (it >= 4 && out.contraction >= 0.9) break;
  }
  if (!ok) {
    const CMatrix a = CMatrix::Identity(m, m) - kx;
    u = a.partialPivLu().solve(inc);
    out.dense = true;
  }
  out.residual = n0 > 0.0 ? (u - inc - kx * u).norm() / n0 : (u - kx * u).norm();
  out.field.assign(u.data(), u.data() + u.size());
  return out;
}

std::vector<Complex> lippmann_schwinger_field_at(const VolumePotential& pot, const IncidentField& u0, double k,
                                                 const std::vector<Complex>& lattice_field,
                                                 const std::vector<Vec3>& points) {
  if (lattice_field.size() != pot.size()) throw Error(ErrorCode::Shape, "lattice field size mismatch");
  const double vol = pot.cell_measure();
  std::vector<Complex> out;
  for (const auto& p : points) {
    if (pot.covers(p)) throw Error(ErrorCode::UnsupportedRegion, "evaluation point inside the potential lattice");
    Complex u = u0.value(p);
    for (std::size_t j = 0; j < pot.size(); ++j) {
      if (pot.values[j] == Complex(0.0, 0.0)) continue;
      u += greens_function(pot.dim, k, pot.point(j), p).value * vol * pot.values[j] * lattice_field[j];
    }
    out.push_back(u);
  }
  return out;
}

}  // namespace waveortho
