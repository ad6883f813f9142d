#include "waveortho/mie.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "waveortho/errors.hpp"
#include "waveortho/specfun.hpp"

namespace waveortho {

int mie_truncation(double ka) { return static_cast<int>(std::ceil(ka)) + 12; }

MieResult mie_series(BoundaryCondition bc, double ka, const std::vector<double>& angles,
                     double radius) {
  if (!(ka > 0.0) || !std::isfinite(ka)) throw Error(ErrorCode::Domain, "ka must be positive, got " + std::to_string(ka));
  if (ka > 100.0) throw Error(ErrorCode::Domain, "ka above 100 is outside the supported range");
  if (!(radius > 0.0)) throw Error(ErrorCode::Domain, "radius must be positive");
  const int nmax = mie_truncation(ka);
  const double k = ka / radius;

  std::vector<double> j, jd;
  std::vector<Complex> h, hd;
  specfun::sph_bessel_j_array(nmax, ka, j, jd);
  specfun::sph_hankel1_array(nmax, ka, h, hd);

  MieResult out;
  out.coefficients.bc = bc;
  out.coefficients.ka = ka;
  out.coefficients.a.resize(nmax + 1);
  double sum = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    const Complex an = bc == BoundaryCondition::Soft ? -j[n] / h[n] : -jd[n] / hd[n];
    out.coefficients.a[n] = an;
    sum += (2.0 * n + 1.0) * std::norm(an);
  }
  out.cross_section_sum = 4.0 * kPi / (k * k) * sum;

  auto amplitude = [&](double theta, Complex& f, Complex& u, Complex& du) {
    std::vector<double> p;
    specfun::legendre_p_array(nmax, std::clamp(std::cos(theta), -1.0, 1.0), p);
    f = u = du = Complex(0.0, 0.0);
    Complex in{1.0, 0.0};
    for (int n = 0; n <= nmax; ++n) {
      const Complex an = out.coefficients.a[n];
      const double w = (2.0 * n + 1.0) * p[n];
      f += w * an;
      u += w * in * (j[n] + an * h[n]);
      du += w * in * k * (jd[n] + an * hd[n]);
      in *= kI;
    }
    f /= (kI * k);
  };

  Complex f0, u, du;
  amplitude(0.0, f0, u, du);
  out.cross_section_optical = 4.0 * kPi / k * f0.imag();

  out.pattern.angles = angles;
  for (double th : angles) {
    Complex f;
    amplitude(th, f, u, du);
    out.pattern.amplitude.push_back(f);
    out.surface_field.push_back(u);
    out.surface_normal_derivative.push_back(du);
  }
  return out;
}

FarFieldPattern cylinder_series(BoundaryCondition bc, double ka, double k,
                                const std::vector<double>& angles) {
  if (!(ka > 0.0) || !(k > 0.0)) throw Error(ErrorCode::Domain, "ka and k must be positive");
  const int nmax = static_cast<int>(std::ceil(ka)) + 20;
  std::vector<Complex> a(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    const double nu = n;
    if (bc == BoundaryCondition::Soft) {
      const Complex hn(std::cyl_bessel_j(nu, ka), std::cyl_neumann(nu, ka));
      a[n] = -std::cyl_bessel_j(nu, ka) / hn;
    } else {
      // Z_n' = (Z_{n-1} - Z_{n+1}) / 2 with Z_{-1} = -Z_1.
      auto j = [&](int m) { return m < 0 ? -std::cyl_bessel_j(1.0, ka) : std::cyl_bessel_j(m, ka); };
      auto y = [&](int m) { return m < 0 ? -std::cyl_neumann(1.0, ka) : std::cyl_neumann(m, ka); };
      const double jd = 0.5 * (j(n - 1) - j(n + 1));
      const double yd = 0.5 * (y(n - 1) - y(n + 1));
      a[n] = -jd / Complex(jd, yd);
    }
  }
  FarFieldPattern out;
  out.angles = angles;
  const Complex scale = std::sqrt(2.0 / (kPi * k)) * std::exp(-kI * (kPi / 4.0));
  for (double phi : angles) {
    Complex s = a[0];
    for (int n = 1; n <= nmax; ++n) s += 2.0 * a[n] * std::cos(n * phi);
    out.amplitude.push_back(scale * s);
  }
  return out;
}

}  // namespace waveortho
