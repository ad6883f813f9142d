#include "waveortho/method.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "waveortho/errors.hpp"
#include "waveortho/specfun.hpp"

namespace waveortho {
namespace {

RVector sqrt_weights(const Surface& s) {
  RVector w(static_cast<Eigen::Index>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) w[j] = std::sqrt(s.nodes[j].weight);
  return w;
}

void check_rows(const BasisTraces& traces, const Surface& s) {
  if (traces.trace.rows() != static_cast<Eigen::Index>(s.size())) {
    throw Error(ErrorCode::Shape, "trace rows do not match surface node count");
  }
}

// B^{1/2} G B^{1/2}, Hermitian with unit diagonal.
CMatrix symmetrized(const GramSystem& sys) {
  const RVector sb = sys.beta.cwiseSqrt();
  return sb.asDiagonal() * sys.G * sb.asDiagonal();
}

}  // namespace

std::string DensitySpectrum::label() const {
  switch (solver) {
    case SolverKind::Diagonal: return "diagonal";
    case SolverKind::Galerkin: return "galerkin(" + std::to_string(lambda) + ")";
    case SolverKind::Iterated: return "iterate:" + std::to_string(steps);
  }
  return "unknown";
}

GramSystem assemble_gram(const BasisTraces& traces, const Surface& s) {
  check_rows(traces, s);
  const CMatrix wt = sqrt_weights(s).asDiagonal() * traces.trace;
  GramSystem sys;
  sys.G = wt.adjoint() * wt;
  const Eigen::Index n = sys.G.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    sys.G(i, i) = Complex(sys.G(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) sys.G(j, i) = std::conj(sys.G(i, j));
  }
  const double dmax = n > 0 ? sys.G.diagonal().real().maxCoeff() : 0.0;
  sys.beta.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = sys.G(i, i).real();
    if (!(d > 1e-300 * dmax) || !(d > 0.0)) {
      throw Error(ErrorCode::DegenerateBasis, "basis function " + std::to_string(i) + " has a vanishing trace on S");
    }
    sys.beta[i] = 1.0 / d;
  }
  return sys;
}

CVector project_incident(const BasisTraces& traces, const Surface& s, const IncidentField& u0,
                         BoundaryCondition bc) {
  check_rows(traces, s);
  const CVector t = incident_trace(u0, bc, s);
  const RVector w = sqrt_weights(s);
  return (w.asDiagonal() * traces.trace).adjoint() * (w.asDiagonal() * t);
}

GramSystem build_system(const BasisTraces& traces, const Surface& s, const IncidentField& u0) {
  GramSystem sys = assemble_gram(traces, s);
  sys.b = project_incident(traces, s, u0, traces.bc);
  return sys;
}

DensitySpectrum solve_diagonal(const GramSystem& sys) {
  DensitySpectrum out;
  out.solver = SolverKind::Diagonal;
  out.v.resize(sys.b.size());
  for (Eigen::Index i = 0; i < sys.b.size(); ++i) out.v[i] = sys.beta[i] * (-sys.b[i]);
  return out;
}

DensitySpectrum solve_galerkin(const GramSystem& sys, double lambda) {
  if (lambda < 0.0) throw Error(ErrorCode::Domain, "regularization parameter must be >= 0");
  const Eigen::Index n = sys.G.rows();
  CMatrix a = sys.G;
  a.diagonal().array() += lambda;
  Eigen::PartialPivLU<CMatrix> lu(a);
  const double rcond = lu.rcond();
  DensitySpectrum out;
  out.solver = SolverKind::Galerkin;
  out.lambda = lambda;
  if (!(rcond > std::numeric_limits<double>::epsilon() * 1e-2) || n == 0) {
    throw Error(ErrorCode::SingularSystem,
                "Gram matrix is numerically singular (rcond " + std::to_string(rcond) + "); retry with lambda > 0");
  }
  out.v = lu.solve(-sys.b);
  if (!out.v.allFinite()) throw Error(ErrorCode::SingularSystem, "non-finite Galerkin solution; retry with lambda > 0");
  return out;
}

RefineResult refine_iterate(const GramSystem& sys, int n_steps) {
  if (n_steps < 1) throw Error(ErrorCode::Domain, "refine_iterate needs at least one step");
  RefineResult out;
  CVector v = CVector::Zero(sys.b.size());
  for (int m = 0; m < n_steps; ++m) {
    const CVector r = -sys.b - sys.G * v;
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] += sys.beta[i] * r[i];
    out.residual_history.push_back((sys.G * v + sys.b).norm());
  }
  out.spectrum.v = v;
  out.spectrum.solver = SolverKind::Iterated;
  out.spectrum.steps = n_steps;
  return out;
}

double iteration_spectral_radius(const GramSystem& sys) {
  const CMatrix gs = symmetrized(sys);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gs, Eigen::EigenvaluesOnly);
  const RVector mu = eig.eigenvalues();
  double rho = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) rho = std::max(rho, std::abs(1.0 - mu[i]));
  return rho;
}

IterationLimit iterate_limit(const GramSystem& sys, double tol, int max_doublings) {
  IterationLimit out;
  out.spectral_radius = iteration_spectral_radius(sys);
  const Eigen::Index n = sys.G.rows();
  const RVector sb = sys.beta.cwiseSqrt();
  CMatrix p = CMatrix::Identity(n, n) - symmetrized(sys);
  // w_1 = c, P = J; w_{2m} = w_m + J^m w_m.
  CVector w = -(sb.asDiagonal() * sys.b);
  long double steps = 1;
  double decay = out.spectral_radius;
  int d = 0;
  while (d < max_doublings && !(decay <= tol)) {
    w += p * w;
    p = (p * p).eval();
    steps *= 2;
    decay *= decay;
    ++d;
  }
  out.doublings = d;
  out.steps = steps;
  out.converged = out.spectral_radius < 1.0 && decay <= tol;
  out.spectrum.v = sb.asDiagonal() * w;
  out.spectrum.solver = SolverKind::Iterated;
  out.spectrum.steps = d >= 31 ? std::numeric_limits<int>::max() : static_cast<int>(steps);
  return out;
}

std::vector<Complex> eval_scattered(const BasisFamily& basis, const DensitySpectrum& v,
                                    const IncidentField& u0, const std::vector<Vec3>& points) {
  if (static_cast<std::size_t>(v.v.size()) != basis.size()) {
    throw Error(ErrorCode::Shape, "coefficient count does not match basis size");
  }
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    Complex u = u0.value(p);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (v.v[static_cast<Eigen::Index>(i)] == Complex(0.0, 0.0)) continue;
      u += v.v[static_cast<Eigen::Index>(i)] * basis.value(i, p);
    }
    out.push_back(u);
  }
  return out;
}

FarFieldPattern far_field(const BasisFamily& basis, const DensitySpectrum& v,
                          const std::vector<double>& angles) {
  if (static_cast<std::size_t>(v.v.size()) != basis.size()) {
    throw Error(ErrorCode::Shape, "coefficient count does not match basis size");
  }
  FarFieldPattern out;
  const double k = basis.k;

  if (const auto* pw = std::get_if<PlaneWaves>(&basis.kind)) {
    std::vector<std::size_t> order(pw->directions.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> ang(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) ang[i] = direction_angle(pw->directions[i], basis.dim);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });
    for (std::size_t i : order) {
      out.angles.push_back(ang[i]);
      out.amplitude.push_back(v.v[static_cast<Eigen::Index>(i)]);
    }
    return out;
  }

  out.angles = angles;
  out.amplitude.assign(angles.size(), Complex(0.0, 0.0));
  if (const auto* sm = std::get_if<SphericalModes>(&basis.kind)) {
    std::vector<double> p;
    for (std::size_t a = 0; a < angles.size(); ++a) {
      specfun::legendre_p_array(sm->max_order, std::clamp(std::cos(angles[a]), -1.0, 1.0), p);
      Complex f{0.0, 0.0};
      Complex phase{0.0, -1.0};  // (-i)^{n+1}
      for (int n = 0; n <= sm->max_order; ++n) {
        f += v.v[n] * phase * p[n];
        phase *= Complex(0.0, -1.0);
      }
      out.amplitude[a] = f / k;
    }
    return out;
  }

  const auto& ps = std::get<PointSources>(basis.kind);
  const Complex scale = basis.dim == 3 ? Complex(1.0 / (4.0 * kPi), 0.0)
                                       : std::exp(kI * (kPi / 4.0)) / std::sqrt(8.0 * kPi * k);
  for (std::size_t a = 0; a < angles.size(); ++a) {
    const Vec3 rhat = direction_from_angle(angles[a], basis.dim);
    Complex f{0.0, 0.0};
    for (std::size_t i = 0; i < ps.locations.size(); ++i) {
      f += v.v[static_cast<Eigen::Index>(i)] * std::exp(-kI * (k * rhat.dot(ps.locations[i])));
    }
    out.amplitude[a] = scale * f;
  }
  return out;
}

double boundary_residual(const Surface& s, const BasisTraces& traces, const CVector& incident,
                         const CVector& v) {
  check_rows(traces, s);
  if (v.size() != traces.trace.cols()) throw Error(ErrorCode::Shape, "coefficient count does not match basis size");
  const RVector w = sqrt_weights(s);
  const double n0 = (w.asDiagonal() * incident).norm();
  if (!(n0 > 0.0)) throw Error(ErrorCode::UndefinedNormalization, "incident trace vanishes on S");
  const CVector r = incident + traces.trace * v;
  return (w.asDiagonal() * r).norm() / n0;
}

double boundary_residual(const Surface& s, const BasisTraces& traces, const IncidentField& u0,
                         const DensitySpectrum& v) {
  return boundary_residual(s, traces, incident_trace(u0, traces.bc, s), v.v);
}

double trace_norm(const Surface& s, const BasisTraces& traces, const CVector& v) {
  check_rows(traces, s);
  return (sqrt_weights(s).asDiagonal() * (traces.trace * v)).norm();
}

CVector kernel_column(const BasisTraces& traces, const RVector& beta, std::size_t anchor) {
  const auto a = static_cast<Eigen::Index>(anchor);
  if (a >= traces.trace.rows()) throw Error(ErrorCode::Shape, "anchor node out of range");
  if (beta.size() != traces.trace.cols()) throw Error(ErrorCode::Shape, "beta length does not match basis size");
  const CVector coeff = beta.cast<Complex>().cwiseProduct(traces.trace.row(a).adjoint());
  return traces.trace * coeff;
}

std::vector<ProfilePoint> kernel_profile(const Surface& s, const BasisTraces& traces,
                                         const RVector& beta, std::size_t anchor) {
  check_rows(traces, s);
  const CVector phi = kernel_column(traces, beta, anchor);
  std::vector<ProfilePoint> out;
  out.reserve(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    out.push_back({(s.nodes[j].position - s.nodes[anchor].position).norm(),
                   std::abs(phi[static_cast<Eigen::Index>(j)])});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ProfilePoint& a, const ProfilePoint& b) { return a.distance < b.distance; });
  return out;
}

double epsilon_diagnostic(const GramSystem& sys, const DensitySpectrum& v) {
  const Eigen::Index n = sys.G.rows();
  if (v.v.size() != n) throw Error(ErrorCode::Shape, "coefficient count does not match Gram size");
  if (n <= 1) return 0.0;
  const double vmax = v.v.cwiseAbs().maxCoeff();
  if (vmax == 0.0) return 0.0;
  double eps = 0.0;
  for (Eigen::Index xi = 0; xi < n; ++xi) {
    const double diag = sys.G(xi, xi).real();
    for (Eigen::Index chi = 0; chi < n; ++chi) {
      if (chi == xi) continue;
      eps = std::max(eps, std::abs(sys.G(chi, xi)) / diag * std::abs(v.v[chi] - v.v[xi]));
    }
  }
  return eps / vmax;
}

}  // namespace waveortho
