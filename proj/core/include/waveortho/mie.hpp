#pragma once

#include <vector>

#include "waveortho/types.hpp"

namespace waveortho {

struct MieCoefficients {
  BoundaryCondition bc{BoundaryCondition::Soft};
  double ka{0.0};
  std::vector<Complex> a;
};

struct MieResult {
  MieCoefficients coefficients;
  /// f(theta) with u_s ~ f e^{ikr}/r for incidence along +z.
  FarFieldPattern pattern;
  /// Total field on the sphere surface at the requested angles (Soft: ~0).
  std::vector<Complex> surface_field;
  /// Total field normal derivative on the sphere surface (Hard: ~0).
  std::vector<Complex> surface_normal_derivative;
  /// (4 pi / k) Im f(0).
  double cross_section_optical{0.0};
  /// (4 pi / k^2) sum (2n+1) |a_n|^2.
  double cross_section_sum{0.0};
};

/// Number of partial waves kept by mie_series: ceil(ka) + 12 (orders 0..N).
int mie_truncation(double ka);

/// Partial-wave series for a sphere of the given radius hit by e^{ikz}, k = ka / radius.
MieResult mie_series(BoundaryCondition bc, double ka, const std::vector<double>& angles,
                     double radius = 1.0);

/// Far field of a circular cylinder of radius a = ka / k, incidence along +x,
/// u_s ~ u_inf(phi) e^{ikr}/sqrt(r). Coefficients -J_n/H_n (Soft) or -J_n'/H_n' (Hard).
FarFieldPattern cylinder_series(BoundaryCondition bc, double ka, double k,
                                const std::vector<double>& angles);

}  // namespace waveortho
