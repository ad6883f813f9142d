#include "waveortho/quadrature.hpp"

#include <cmath>

#include "waveortho/errors.hpp"
#include "waveortho/types.hpp"

namespace waveortho::quad {

Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw Error(ErrorCode::TooCoarse, "Gauss-Legendre needs at least one node");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

Rule gauss_chebyshev_first(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, kPi / n);
  for (int j = 0; j < n; ++j) rule.nodes[j] = std::cos((2.0 * j + 1.0) * kPi / (2.0 * n));
  return rule;
}

Rule gauss_chebyshev_second(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int j = 1; j <= n; ++j) {
    const double th = j * kPi / (n + 1.0);
    rule.nodes[j - 1] = std::cos(th);
    rule.weights[j - 1] = kPi / (n + 1.0) * std::sin(th) * std::sin(th);
  }
  return rule;
}

std::vector<double> chebyshev_t(int nmax, double x) {
  std::vector<double> t(static_cast<std::size_t>(nmax) + 1);
  t[0] = 1.0;
  if (nmax >= 1) t[1] = x;
  for (int n = 1; n < nmax; ++n) t[n + 1] = 2.0 * x * t[n] - t[n - 1];
  return t;
}

std::vector<double> chebyshev_u(int nmax, double x) {
  std::vector<double> u(static_cast<std::size_t>(nmax) + 1);
  u[0] = 1.0;
  if (nmax >= 1) u[1] = 2.0 * x;
  for (int n = 1; n < nmax; ++n) u[n + 1] = 2.0 * x * u[n] - u[n - 1];
  return u;
}

}  // namespace waveortho::quad
