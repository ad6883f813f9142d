#include "waveortho/kirchhoff.hpp"

#include <algorithm>
#include <cmath>

#include "waveortho/errors.hpp"
#include "waveortho/quadrature.hpp"

namespace waveortho {

FarFieldPattern kirchhoff_pattern(double kd, double incidence_angle, const std::vector<double>& angles) {
  if (!(kd > 0.0) || !std::isfinite(kd)) throw Error(ErrorCode::Domain, "kd must be positive");
  const int n = std::max(32, static_cast<int>(std::ceil(kd)) + 32);
  const quad::Rule rule = quad::gauss_legendre(n, -0.5, 0.5);
  const double si = std::sin(incidence_angle);
  FarFieldPattern out;
  out.angles = angles;
  for (double th : angles) {
    const double q = kd * (si - std::sin(th));
    Complex sum{0.0, 0.0};
    for (int j = 0; j < n; ++j) sum += rule.weights[j] * std::exp(kI * (q * rule.nodes[j]));
    out.amplitude.push_back(sum);
  }
  return out;
}

}  // namespace waveortho
