#pragma once

#include <string>
#include <vector>

#include "waveortho/basis.hpp"
#include "waveortho/geometry.hpp"
#include "waveortho/types.hpp"

namespace waveortho {

/// Gram matrix of boundary traces, per-index normalizers and projected incident data.
struct GramSystem {
  CMatrix G;
  RVector beta;
  CVector b;

  Eigen::Index size() const { return G.rows(); }
};

enum class SolverKind { Diagonal, Galerkin, Iterated };

struct DensitySpectrum {
  CVector v;
  SolverKind solver{SolverKind::Diagonal};
  double lambda{0.0};
  int steps{0};

  std::string label() const;
};

/// G_ij = <A D_i, A D_j>_S and beta_i = 1 / G_ii. b is left empty.
GramSystem assemble_gram(const BasisTraces& traces, const Surface& s);

/// b_i = <A D_i, A u0>_S.
CVector project_incident(const BasisTraces& traces, const Surface& s, const IncidentField& u0,
                         BoundaryCondition bc);

/// assemble_gram followed by project_incident.
GramSystem build_system(const BasisTraces& traces, const Surface& s, const IncidentField& u0);

/// v_i = -beta_i b_i.
DensitySpectrum solve_diagonal(const GramSystem& sys);

/// (G + lambda I) v = -b.
DensitySpectrum solve_galerkin(const GramSystem& sys, double lambda = 0.0);

struct RefineResult {
  DensitySpectrum spectrum;
  std::vector<double> residual_history;
};

/// v <- v + diag(beta)(-b - G v) from v = 0; residual_history[m] = ||G v^(m+1) + b||.
RefineResult refine_iterate(const GramSystem& sys, int n_steps);

/// Spectral radius of I - diag(beta) G.
double iteration_spectral_radius(const GramSystem& sys);

struct IterationLimit {
  DensitySpectrum spectrum;
  double spectral_radius{0.0};
  int doublings{0};
  long double steps{0};
  bool converged{false};
};

/// Iterate v^(2^p) of refine_iterate by repeated squaring, with p chosen so that
/// rho^(2^p) <= tol. Not converged when rho >= 1 or p exceeds max_doublings.
IterationLimit iterate_limit(const GramSystem& sys, double tol = 1e-12, int max_doublings = 60);

/// Total field u0 + sum_i v_i D_i at the given points.
std::vector<Complex> eval_scattered(const BasisFamily& basis, const DensitySpectrum& v,
                                    const IncidentField& u0, const std::vector<Vec3>& points);

/// Far-field amplitude of sum_i v_i D_i. For PlaneWaves the coefficient vector itself is
/// returned at the direction angles (sorted) and the angles argument is ignored.
FarFieldPattern far_field(const BasisFamily& basis, const DensitySpectrum& v,
                          const std::vector<double>& angles);

/// ||A u0 + sum v_i A D_i||_S / ||A u0||_S.
double boundary_residual(const Surface& s, const BasisTraces& traces, const IncidentField& u0,
                         const DensitySpectrum& v);

/// Same with a precomputed incident trace.
double boundary_residual(const Surface& s, const BasisTraces& traces, const CVector& incident,
                         const CVector& v);

struct ProfilePoint {
  double distance;
  double abs_phi;
};

/// Phi(r_j, r_anchor) = sum_i beta_i conj(A D_i(r_anchor)) A D_i(r_j) for every node j.
CVector kernel_column(const BasisTraces& traces, const RVector& beta, std::size_t anchor);

/// |Phi| against chord distance to the anchor, sorted by distance.
std::vector<ProfilePoint> kernel_profile(const Surface& s, const BasisTraces& traces,
                                         const RVector& beta, std::size_t anchor);

/// max over i != j of (|G_ij| / G_jj) |v_i - v_j| / max |v|.
double epsilon_diagnostic(const GramSystem& sys, const DensitySpectrum& v);

/// L2(S) norm of sum_i v_i A D_i.
double trace_norm(const Surface& s, const BasisTraces& traces, const CVector& v);

}  // namespace waveortho
