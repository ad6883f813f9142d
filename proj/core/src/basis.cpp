#include "waveortho/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "waveortho/errors.hpp"
#include "waveortho/specfun.hpp"

namespace waveortho {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct ModeEval {
  std::vector<Complex> value;
  std::vector<CVec3> gradient;
};

// All spherical modes 0..N at one point.
ModeEval spherical_modes_at(int nmax, double k, const Vec3& r) {
  const double rn = r.norm();
  if (rn == 0.0) throw Error(ErrorCode::Singularity, "spherical modes are singular at the origin");
  const double ct = std::clamp(r.z() / rn, -1.0, 1.0);
  std::vector<Complex> h, hd;
  specfun::sph_hankel1_array(nmax, k * rn, h, hd);
  std::vector<double> p, pd;
  specfun::legendre_p_array(nmax, ct, p, &pd);
  const Vec3 rhat = r / rn;
  const Vec3 tang = (Vec3(0.0, 0.0, 1.0) - ct * rhat) / rn;
  ModeEval out;
  out.value.resize(nmax + 1);
  out.gradient.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    out.value[n] = h[n] * p[n];
    out.gradient[n] = (k * hd[n] * p[n]) * rhat.cast<Complex>() + (h[n] * pd[n]) * tang.cast<Complex>();
  }
  return out;
}

}  // namespace

std::size_t BasisFamily::size() const {
  return std::visit(Overloaded{
                        [](const PlaneWaves& b) { return b.directions.size(); },
                        [](const PointSources& b) { return b.locations.size(); },
                        [](const SphericalModes& b) { return static_cast<std::size_t>(b.max_order + 1); },
                    },
                    kind);
}

std::string BasisFamily::name() const {
  return std::visit(Overloaded{
                        [](const PlaneWaves&) { return std::string("plane-waves"); },
                        [](const PointSources&) { return std::string("point-sources"); },
                        [](const SphericalModes&) { return std::string("spherical-modes"); },
                    },
                    kind);
}

Complex BasisFamily::value(std::size_t i, const Vec3& r) const {
  return std::visit(Overloaded{
                        [&](const PlaneWaves& b) { return std::exp(kI * (k * b.directions[i].dot(r))); },
                        [&](const PointSources& b) { return greens_function(dim, k, b.locations[i], r).value; },
                        [&](const SphericalModes&) {
                          return spherical_modes_at(static_cast<int>(i), k, r).value[i];
                        },
                    },
                    kind);
}

CVec3 BasisFamily::gradient(std::size_t i, const Vec3& r) const {
  return std::visit(Overloaded{
                        [&](const PlaneWaves& b) -> CVec3 {
                          const Complex e = std::exp(kI * (k * b.directions[i].dot(r)));
                          return (kI * k * e) * b.directions[i].cast<Complex>();
                        },
                        [&](const PointSources& b) -> CVec3 {
                          return greens_function(dim, k, b.locations[i], r).gradient;
                        },
                        [&](const SphericalModes&) -> CVec3 {
                          return spherical_modes_at(static_cast<int>(i), k, r).gradient[i];
                        },
                    },
                    kind);
}

BasisFamily make_plane_waves(std::vector<Vec3> directions, double k, int dim) {
  if (!(k > 0.0)) throw Error(ErrorCode::Domain, "wavenumber must be positive");
  if (directions.empty()) throw Error(ErrorCode::InvalidBasis, "empty direction list");
  for (const auto& d : directions) {
    if (std::abs(d.norm() - 1.0) > 1e-12) throw Error(ErrorCode::InvalidBasis, "plane-wave direction not unit length");
    if (dim == 2 && d.z() != 0.0) throw Error(ErrorCode::InvalidBasis, "2D direction has a z component");
  }
  return BasisFamily{PlaneWaves{std::move(directions)}, k, dim};
}

BasisFamily make_point_sources(std::vector<Vec3> locations, double k, int dim) {
  if (!(k > 0.0)) throw Error(ErrorCode::Domain, "wavenumber must be positive");
  if (locations.empty()) throw Error(ErrorCode::InvalidBasis, "empty source list");
  return BasisFamily{PointSources{std::move(locations)}, k, dim};
}

BasisFamily make_spherical_modes(int max_order, double k) {
  if (!(k > 0.0)) throw Error(ErrorCode::Domain, "wavenumber must be positive");
  if (max_order < 0 || max_order > specfun::kMaxOrder) {
    throw Error(ErrorCode::UnsupportedOrder, "spherical-mode order " + std::to_string(max_order));
  }
  return BasisFamily{SphericalModes{max_order}, k, 3};
}

BasisTraces eval_basis_trace(const BasisFamily& basis, BoundaryCondition bc, const Surface& s) {
  if (basis.dim != s.dim) {
    throw Error(ErrorCode::InvalidBasis, "basis dimension " + std::to_string(basis.dim) +
                                             " does not match surface dimension " + std::to_string(s.dim));
  }
  const auto m = static_cast<Eigen::Index>(s.size());
  const auto n = static_cast<Eigen::Index>(basis.size());
  BasisTraces out;
  out.bc = bc;
  out.trace.resize(m, n);
  out.value.resize(m, n);

  if (const auto* ps = std::get_if<PointSources>(&basis.kind)) {
    for (const auto& loc : ps->locations) {
      const bool inside = s.closed ? contains(s.shape, loc) : false;
      if (s.closed && !inside) throw Error(ErrorCode::InvalidBasis, "point source on or outside the surface");
      if (!s.closed) {
        for (const auto& node : s.nodes) {
          if ((node.position - loc).norm() < 1e-12) throw Error(ErrorCode::InvalidBasis, "point source on the surface");
        }
      }
    }
  }

  if (const auto* sm = std::get_if<SphericalModes>(&basis.kind)) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& node = s.nodes[j];
      const ModeEval e = spherical_modes_at(sm->max_order, basis.k, node.position);
      const CVec3 nc = node.normal.cast<Complex>();
      for (Eigen::Index i = 0; i < n; ++i) {
        out.value(j, i) = e.value[i];
        out.trace(j, i) = bc == BoundaryCondition::Soft ? e.value[i] : e.gradient[i].transpose() * nc;
      }
    }
    return out;
  }

  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& node = s.nodes[j];
    const CVec3 nc = node.normal.cast<Complex>();
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (const auto* pw = std::get_if<PlaneWaves>(&basis.kind)) {
        const Vec3& d = pw->directions[idx];
        const Complex e = std::exp(kI * (basis.k * d.dot(node.position)));
        out.value(j, i) = e;
        out.trace(j, i) = bc == BoundaryCondition::Soft ? e : kI * basis.k * d.dot(node.normal) * e;
      } else {
        const auto& src = std::get<PointSources>(basis.kind).locations[idx];
        const GreensEval g = greens_function(basis.dim, basis.k, src, node.position);
        out.value(j, i) = g.value;
        out.trace(j, i) = bc == BoundaryCondition::Soft ? g.value : Complex(g.gradient.transpose() * nc);
      }
    }
  }
  return out;
}

CVector incident_trace(const IncidentField& u0, BoundaryCondition bc, const Surface& s) {
  CVector t(static_cast<Eigen::Index>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto& node = s.nodes[j];
    if (bc == BoundaryCondition::Soft) {
      t[j] = u0.value(node.position);
    } else {
      t[j] = u0.gradient(node.position).transpose() * node.normal.cast<Complex>();
    }
  }
  return t;
}

double direction_angle(const Vec3& d, int dim) {
  return dim == 2 ? std::atan2(d.y(), d.x()) : std::atan2(d.x(), d.z());
}

Vec3 direction_from_angle(double angle, int dim) {
  return dim == 2 ? Vec3(std::cos(angle), std::sin(angle), 0.0) : Vec3(std::sin(angle), 0.0, std::cos(angle));
}

std::vector<Vec3> strip_direction_grid(double k, double width, double per_wavelength) {
  if (!(k > 0.0) || !(width > 0.0) || !(per_wavelength > 0.0)) {
    throw Error(ErrorCode::Domain, "strip direction grid needs positive k, width and density");
  }
  const double lambda = 2.0 * kPi / k;
  const int count = std::max(2, static_cast<int>(std::lround(per_wavelength * width / lambda)));
  const double dc = 2.0 / count;
  const int half = static_cast<int>(std::ceil(1.0 / dc)) - 1;
  std::vector<Vec3> dirs;
  for (int m = half; m >= -half; --m) {
    const double c = m * dc;
    if (std::abs(c) >= 1.0 - 1e-12) continue;
    dirs.emplace_back(c, std::sqrt(1.0 - c * c), 0.0);
  }
  return dirs;
}

std::vector<Vec3> great_circle_directions(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidBasis, "need at least one direction");
  std::vector<Vec3> dirs;
  for (int i = 0; i < n; ++i) dirs.push_back(direction_from_angle(2.0 * kPi * i / n - kPi, 3));
  return dirs;
}

}  // namespace waveortho
