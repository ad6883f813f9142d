#pragma once

#include <vector>

namespace waveortho::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
Rule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// First-kind Gauss-Chebyshev: nodes cos((2j+1)pi/(2n)), weight pi/n for the 1/sqrt(1-t^2) measure.
Rule gauss_chebyshev_first(int n);

/// Second-kind Gauss-Chebyshev: nodes cos(j pi/(n+1)), weights for the sqrt(1-t^2) measure.
Rule gauss_chebyshev_second(int n);

/// T_0..T_nmax at x in [-1, 1].
std::vector<double> chebyshev_t(int nmax, double x);

/// U_0..U_nmax at x in [-1, 1].
std::vector<double> chebyshev_u(int nmax, double x);

}  // namespace waveortho::quad
