#include "waveortho/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "waveortho/errors.hpp"

namespace waveortho::specfun {
namespace {

void check_order(int n) {
  if (n < 0 || n > kMaxOrder) {
    throw Error(ErrorCode::UnsupportedOrder,
                "order " + std::to_string(n) + " outside [0, " + std::to_string(kMaxOrder) + "]");
  }
}

void check_finite_nonneg(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw Error(ErrorCode::Domain, "argument must be finite and >= 0, got " + std::to_string(x));
  }
}

void check_positive(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw Error(ErrorCode::Domain, "argument must be finite and > 0, got " + std::to_string(x));
  }
}

// j_0 .. j_{nmax} (nmax may be kMaxOrder + 1 internally).
std::vector<double> sph_j_values(int nmax, double x) {
  std::vector<double> j(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  if (x < 1e-6) {
    // Leading two terms of the power series; remainder is O(x^4) relative.
    double t = 1.0;
    for (int n = 0; n <= nmax; ++n) {
      if (n > 0) t *= x / (2.0 * n + 1.0);
      j[n] = t * (1.0 - x * x / (2.0 * (2.0 * n + 3.0)));
    }
    return j;
  }

  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j0 = s / x;
  if (x > nmax && x >= 1.0) {
    j[0] = j0;
    if (nmax >= 1) j[1] = s / (x * x) - c / x;
    for (int n = 1; n < nmax; ++n) j[n + 1] = (2.0 * n + 1.0) / x * j[n] - j[n - 1];
    return j;
  }

  // Miller: start far enough above max(n, x) that j_start is negligible.
  const double top = std::max(static_cast<double>(nmax), x);
  const int start = static_cast<int>(top) + 30 + static_cast<int>(std::sqrt(50.0 * top));
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-30;
  for (int n = start; n >= 1; --n) {
    f[n - 1] = (2.0 * n + 1.0) / x * f[n] - f[n + 1];
    if (std::abs(f[n - 1]) > 1e200) {
      for (int m = n - 1; m <= start; ++m) f[m] *= 1e-200;
    }
  }
  // Normalize against whichever of j_0, j_1 is better conditioned.
  const double j1 = (x < 1e-2) ? x / 3.0 * (1.0 - x * x / 10.0) : (s / x - c) / x;
  const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / f[0] : j1 / f[1];
  for (int n = 0; n <= nmax; ++n) j[n] = f[n] * scale;
  return j;
}

std::vector<double> sph_y_values(int nmax, double x) {
  std::vector<double> y(static_cast<std::size_t>(nmax) + 1, 0.0);
  const double s = std::sin(x);
  const double c = std::cos(x);
  y[0] = -c / x;
  if (nmax >= 1) y[1] = -c / (x * x) - s / x;
  for (int n = 1; n < nmax; ++n) y[n + 1] = (2.0 * n + 1.0) / x * y[n] - y[n - 1];
  return y;
}

// Power series for J0, J1, Y0, Y1 evaluated in extended precision.
struct CylSeries {
  double j0, j1, y0, y1;
};

CylSeries cyl_series(double xd) {
  using ld = long double;
  const ld x = xd;
  const ld q = x * x / 4.0L;
  const ld gamma = static_cast<ld>(kEulerGamma);
  const ld pi = static_cast<ld>(kPi);

  ld j0 = 0, j1 = 0, s0 = 0, s1 = 0;
  ld t0 = 1;  // (-q)^m / (m!)^2
  ld t1 = 1;  // (-q)^m / (m! (m+1)!)
  ld harmonic = 0;
  for (int m = 0; m < 200; ++m) {
    if (m > 0) {
      t0 *= -q / (static_cast<ld>(m) * m);
      t1 *= -q / (static_cast<ld>(m) * (m + 1));
      harmonic += 1.0L / m;
    }
    j0 += t0;
    j1 += t1;
    // Y0 series term: (-1)^{m+1} H_m q^m/(m!)^2 = -H_m * t0
    s0 += -harmonic * t0;
    // psi(m+1) + psi(m+2) = -2 gamma + 2 H_m + 1/(m+1)
    s1 += (-2.0L * gamma + 2.0L * harmonic + 1.0L / (m + 1)) * t1;
    if (m > x && std::abs(t0) < 1e-24L && std::abs(t1) < 1e-24L) break;
  }
  j1 *= x / 2.0L;
  const ld log_half = std::log(x / 2.0L);
  CylSeries out{};
  out.j0 = static_cast<double>(j0);
  out.j1 = static_cast<double>(j1);
  out.y0 = static_cast<double>(2.0L / pi * (log_half + gamma) * j0 + 2.0L / pi * s0);
  out.y1 = static_cast<double>(-2.0L / (pi * x) + 2.0L / pi * log_half * j1 - x / (2.0L * pi) * s1);
  return out;
}

// Hankel large-argument expansion of order nu in {0, 1}.
CylinderPair cyl_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double a = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(a);
    if (mag > prev) break;
    prev = mag;
    // a_k enters P (even k) or Q (odd k) with alternating signs.
    const int r = k % 4;
    if (r == 1) q += a;
    else if (r == 2) p -= a;
    else if (r == 3) q -= a;
    else p += a;
    if (mag < 1e-18) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

constexpr double kSeriesLimit = 17.0;

}  // namespace

std::vector<double> sph_bessel_j_array(int nmax, double x) {
  check_order(nmax);
  check_finite_nonneg(x);
  return sph_j_values(nmax, x);
}

void sph_bessel_j_array(int nmax, double x, std::vector<double>& value,
                        std::vector<double>& derivative) {
  check_order(nmax);
  check_finite_nonneg(x);
  const std::vector<double> j = sph_j_values(nmax + 1, x);
  value.assign(j.begin(), j.begin() + nmax + 1);
  derivative.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    if (nmax >= 1) derivative[1] = 1.0 / 3.0;
    return;
  }
  derivative[0] = -j[1];
  for (int n = 1; n <= nmax; ++n) derivative[n] = j[n - 1] - (n + 1.0) / x * j[n];
}

std::vector<double> sph_bessel_y_array(int nmax, double x) {
  check_order(nmax);
  check_positive(x);
  return sph_y_values(nmax, x);
}

ValueDerivative sph_bessel_j(int n, double x) {
  std::vector<double> v, d;
  sph_bessel_j_array(n, x, v, d);
  return {v[n], d[n]};
}

ValueDerivative sph_bessel_y(int n, double x) {
  check_order(n);
  check_positive(x);
  const std::vector<double> y = sph_y_values(n + 1, x);
  const double deriv = (n == 0) ? -y[1] : y[n - 1] - (n + 1.0) / x * y[n];
  return {y[n], deriv};
}

void sph_hankel1_array(int nmax, double x, std::vector<Complex>& value,
                       std::vector<Complex>& derivative) {
  check_order(nmax);
  check_positive(x);
  std::vector<double> jv, jd;
  sph_bessel_j_array(nmax, x, jv, jd);
  const std::vector<double> y = sph_y_values(nmax + 1, x);
  value.resize(static_cast<std::size_t>(nmax) + 1);
  derivative.resize(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    const double yd = (n == 0) ? -y[1] : y[n - 1] - (n + 1.0) / x * y[n];
    value[n] = Complex(jv[n], y[n]);
    derivative[n] = Complex(jd[n], yd);
  }
}

ComplexValueDerivative sph_hankel1(int n, double x) {
  std::vector<Complex> v, d;
  sph_hankel1_array(n, x, v, d);
  return {v[n], d[n]};
}

void legendre_p_array(int nmax, double x, std::vector<double>& value,
                      std::vector<double>* derivative) {
  if (nmax < 0) throw Error(ErrorCode::UnsupportedOrder, "negative Legendre order");
  if (!(std::abs(x) <= 1.0)) {
    throw Error(ErrorCode::Domain, "Legendre argument must satisfy |x| <= 1, got " + std::to_string(x));
  }
  value.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
  value[0] = 1.0;
  if (nmax >= 1) value[1] = x;
  for (int n = 1; n < nmax; ++n) {
    value[n + 1] = ((2.0 * n + 1.0) * x * value[n] - n * value[n - 1]) / (n + 1.0);
  }
  if (derivative != nullptr) {
    auto& d = *derivative;
    d.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
    if (nmax >= 1) d[1] = 1.0;
    for (int n = 1; n < nmax; ++n) d[n + 1] = d[n - 1] + (2.0 * n + 1.0) * value[n];
  }
}

double legendre_p(int n, double x) {
  std::vector<double> v;
  legendre_p_array(n, x, v);
  return v[n];
}

double cyl_bessel_j0(double x) {
  x = std::abs(x);
  if (x == 0.0) return 1.0;
  return x <= kSeriesLimit ? cyl_series(x).j0 : cyl_asymptotic(0, x).j;
}

double cyl_bessel_j1(double x) {
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  const double v = ax <= kSeriesLimit ? cyl_series(ax).j1 : cyl_asymptotic(1, ax).j;
  return x < 0.0 ? -v : v;
}

CylinderPair cyl_bessel_j0y0(double x) {
  check_positive(x);
  if (x <= kSeriesLimit) {
    const CylSeries s = cyl_series(x);
    return {s.j0, s.y0};
  }
  return cyl_asymptotic(0, x);
}

CylinderPair cyl_bessel_j1y1(double x) {
  check_positive(x);
  if (x <= kSeriesLimit) {
    const CylSeries s = cyl_series(x);
    return {s.j1, s.y1};
  }
  return cyl_asymptotic(1, x);
}

Complex cyl_hankel1_0(double x) {
  const CylinderPair p = cyl_bessel_j0y0(x);
  return {p.j, p.y};
}

Complex cyl_hankel1_1(double x) {
  const CylinderPair p = cyl_bessel_j1y1(x);
  return {p.j, p.y};
}

}  // namespace waveortho::specfun
