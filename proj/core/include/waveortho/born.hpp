#pragma once

#include <vector>

#include "waveortho/types.hpp"
#include "waveortho/volume.hpp"

namespace waveortho {

enum class BornOrder { First, SecondStandard, SecondModified };

struct BornOptions {
  /// Use beta = 1 everywhere instead of beta_weight.
  bool unit_beta{false};
  /// Evaluate u0 at r'' instead of r' in the modified second term.
  bool alt_reading{false};
};

struct BornResult {
  std::vector<Complex> field;
  BornOrder order{BornOrder::First};
  std::vector<double> beta_used;
  std::vector<Complex> first_term;
  std::vector<Complex> second_term;
};

/// beta(r') = 1 / (1 + int |Xi(r'')|^2 |G(r'', r')|^2 dr'').
std::vector<double> beta_weight(const VolumePotential& pot, double k);

/// First: u0 - int beta G_A Xi u0.
/// SecondStandard: u0 - int G_A Xi u0 + int int G_A Xi G_A Xi u0 (beta = 1).
/// SecondModified: u0 - int beta G_A Xi u0 - int int beta(r') G_A(r'', r') G_A(r', r) |Xi(r'')|^2 u0(r').
/// G_A = -G is the kernel of the volume equation u = u0 - int G_A Xi u.
BornResult born_approximation(const VolumePotential& pot, const IncidentField& u0, double k, BornOrder order,
                              const std::vector<Vec3>& points, const BornOptions& options = {});

}  // namespace waveortho
