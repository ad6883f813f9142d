#pragma once

#include <vector>

#include "waveortho/geometry.hpp"
#include "waveortho/types.hpp"

namespace waveortho {

struct BemOptions {
  /// Strip: number of Chebyshev unknowns (0 = ceil(ka) + 40, a = half-width).
  int strip_order{0};
  /// Strip: Chebyshev quadrature nodes (0 = 2 * order + ceil(2 ka)).
  int strip_quadrature{0};
  /// Solves whose condition number exceeds this fail with an oracle-failure error.
  double max_condition{1e12};
};

/// Dense 2D boundary-integral solution. Closed curves: Nystrom with logarithmic
/// product quadrature (combined field for Soft, single layer for Hard). Strips:
/// Chebyshev collocation on the open arc (single layer for Soft, double layer for Hard).
class BemSolution {
 public:
  /// u_s ~ u_inf(phi) e^{ikr}/sqrt(r), phi the polar angle in the xy-plane.
  FarFieldPattern far_field(const std::vector<double>& angles) const;

  /// Layer density sampled at the surface nodes. Strip Hard: jump of u across the strip.
  const std::vector<Complex>& density() const { return density_; }

  double condition_number() const { return condition_; }
  int unknowns() const { return static_cast<int>(coeff_.size()); }

  // Filled by bem_dense_solve.
  bool strip_{false};
  BoundaryCondition bc_{BoundaryCondition::Soft};
  double k_{1.0};
  double eta_{1.0};
  double half_width_{1.0};
  int quad_nodes_{0};
  std::vector<Complex> coeff_;
  std::vector<Vec3> points_;
  std::vector<Vec3> normals_;
  std::vector<double> ds_;
  std::vector<Complex> density_;
  double condition_{0.0};
};

BemSolution bem_dense_solve(const Surface& s, BoundaryCondition bc, double k, const IncidentField& u0,
                            const BemOptions& options = {});

}  // namespace waveortho
