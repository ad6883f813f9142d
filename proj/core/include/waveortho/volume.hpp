#pragma once

#include <vector>

#include "waveortho/types.hpp"

namespace waveortho {

/// Disturbance Xi sampled at the centres of a uniform n^dim lattice covering [-L, L]^dim,
/// h = 2L / n. Index order is x-major: ((ix * n) + iy) * n + iz.
struct VolumePotential {
  int dim{2};
  int n{0};
  double half_extent{1.0};
  std::vector<Complex> values;

  double spacing() const { return 2.0 * half_extent / n; }
  double cell_measure() const;
  std::size_t size() const { return values.size(); }
  Vec3 point(std::size_t index) const;
  /// True if p lies in the closed lattice box.
  bool covers(const Vec3& p) const;
  /// Copy with every sample multiplied by factor.
  VolumePotential scaled(Complex factor) const;
};

/// amplitude * exp(-|r|^2 / (2 sigma^2)) with the outermost cell layer set to zero.
VolumePotential make_gaussian_potential(int dim, int n, double half_extent, Complex amplitude, double sigma);

/// Cell-integrated outgoing Green's function between lattice cells: G(r_i, r_j) h^dim off the
/// diagonal and the analytic integral over the equal-measure disk/ball on the diagonal.
CMatrix cell_green_matrix(const VolumePotential& pot, double k);

/// Integral of the outgoing Green's function over the equal-measure disk (2D) or ball (3D).
Complex self_cell_integral(int dim, double k, double h);

/// Integral of |G|^2 over the equal-measure disk (2D) or ball (3D).
double self_cell_abs2_integral(int dim, double k, double h);

struct LippmannSchwingerResult {
  std::vector<Complex> field;
  double residual{0.0};
  double contraction{0.0};
  bool dense{false};
  int iterations{0};
};

/// Solves u = u0 + int G Xi u on the lattice (G the outgoing Green's function of
/// geometry::greens_function, i.e. u = u0 - int G_A Xi u with G_A = -G).
/// Fixed-point iteration first; falls back to a dense LU solve when the contraction
/// estimate is >= 0.9 or the iteration stalls.
LippmannSchwingerResult lippmann_schwinger(const VolumePotential& pot, const IncidentField& u0, double k);

/// u0(r) + sum_j G(r, r_j) h^dim Xi_j u_j at points outside the lattice.
std::vector<Complex> lippmann_schwinger_field_at(const VolumePotential& pot, const IncidentField& u0, double k,
                                                 const std::vector<Complex>& lattice_field,
                                                 const std::vector<Vec3>& points);

}  // namespace waveortho
