#include "waveortho/bem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "waveortho/errors.hpp"
#include "waveortho/quadrature.hpp"
#include "waveortho/specfun.hpp"

namespace waveortho {
namespace {

constexpr double kInvTwoPi = 1.0 / (2.0 * kPi);

double condition_of(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[sv.size() - 1] == 0.0) return std::numeric_limits<double>::infinity();
  return sv[0] / sv[sv.size() - 1];
}

void check_condition(double cond, double limit) {
  if (!(cond <= limit)) {
    throw Error(ErrorCode::OracleFailure,
                "boundary-integral system is near-singular (condition number " + std::to_string(cond) + ")");
  }
}

Complex far_constant(double k) { return std::exp(kI * (kPi / 4.0)) / std::sqrt(8.0 * kPi * k); }

// Smooth remainder of the 2D kernel after removing -(1/2pi) J0(ka z) log|z|, as a function of z >= 0.
Complex smooth_kernel(double ka, double z) {
  if (z < 1e-12) return Complex(0.25 * 0.0, 0.25) - kInvTwoPi * (std::log(0.5 * ka) + kEulerGamma);
  const specfun::CylinderPair p = specfun::cyl_bessel_j0y0(ka * z);
  return 0.25 * kI * Complex(p.j, p.y) + kInvTwoPi * p.j * std::log(z);
}

// d/dz of smooth_kernel extended as an even function of z.
Complex smooth_kernel_derivative(double ka, double z) {
  const double az = std::abs(z);
  if (az < 1e-12) return Complex(0.0, 0.0);
  const double x = ka * az;
  const specfun::CylinderPair p0 = specfun::cyl_bessel_j0y0(x);
  const specfun::CylinderPair p1 = specfun::cyl_bessel_j1y1(x);
  const Complex d = -0.25 * kI * ka * Complex(p1.j, p1.y) +
                    kInvTwoPi * (-ka * p1.j * std::log(az) + p0.j / az);
  return z < 0.0 ? -d : d;
}

// ---------------------------------------------------------------------------
// Closed circle: Nystrom with Kress logarithmic weights.

BemSolution solve_circle(const Surface& s, double radius, BoundaryCondition bc, double k,
                         const IncidentField& u0, const BemOptions& opt, BemSolution out) {
  const int n2 = static_cast<int>(s.size());
  if (n2 % 2 != 0) throw Error(ErrorCode::TooCoarse, "closed-curve solver needs an even node count");
  const int n = n2 / 2;
  std::vector<double> t(n2);
  std::vector<Vec3> x(n2), xp(n2), xpp(n2);
  for (int j = 0; j < n2; ++j) {
    t[j] = kPi * j / n;
    const double c = std::cos(t[j]);
    const double sn = std::sin(t[j]);
    x[j] = Vec3(radius * c, radius * sn, 0.0);
    xp[j] = Vec3(-radius * sn, radius * c, 0.0);
    xpp[j] = Vec3(-radius * c, -radius * sn, 0.0);
  }
  std::vector<double> rw(n2);
  for (int d = 0; d < n2; ++d) {
    double sum = 0.0;
    for (int m = 1; m < n; ++m) sum += std::cos(m * d * kPi / n) / m;
    rw[d] = -2.0 * kPi / n * sum - kPi / (static_cast<double>(n) * n) * ((d % 2 == 0) ? 1.0 : -1.0);
  }
  const double eta = k;
  const double h = kPi / n;

  CMatrix a(n2, n2);
  CVector rhs(n2);
  for (int i = 0; i < n2; ++i) {
    const double spi = xp[i].norm();
    const Vec3 nu(xp[i].y() / spi, -xp[i].x() / spi, 0.0);
    if (bc == BoundaryCondition::Soft) {
      rhs[i] = -2.0 * u0.value(x[i]);
    } else {
      rhs[i] = -2.0 * Complex(u0.gradient(x[i]).transpose() * nu.cast<Complex>());
    }
    for (int j = 0; j < n2; ++j) {
      const double spj = xp[j].norm();
      Complex k1, k2;
      if (i == j) {
        const double curv = (xp[i].x() * xpp[i].y() - xp[i].y() * xpp[i].x()) / (spi * spi);
        if (bc == BoundaryCondition::Soft) {
          const Complex m2 = (0.5 * kI - kEulerGamma / kPi - std::log(0.5 * k * spi) / kPi) * spi;
          k1 = kI * eta * (-kInvTwoPi * spi);
          k2 = kInvTwoPi * curv + kI * eta * m2;
        } else {
          k1 = 0.0;
          k2 = -kInvTwoPi * curv;
        }
      } else {
        const Vec3 d = x[i] - x[j];
        const double r = d.norm();
        const specfun::CylinderPair p0 = specfun::cyl_bessel_j0y0(k * r);
        const specfun::CylinderPair p1 = specfun::cyl_bessel_j1y1(k * r);
        const Complex h0(p0.j, p0.y);
        const Complex h1(p1.j, p1.y);
        const double sn = std::sin(0.5 * (t[i] - t[j]));
        const double lg = std::log(4.0 * sn * sn);
        if (bc == BoundaryCondition::Soft) {
          const double g = xp[j].y() * (x[j].x() - x[i].x()) - xp[j].x() * (x[j].y() - x[i].y());
          const Complex l = 0.5 * kI * k * g * h1 / r;
          const double l1 = -k * kInvTwoPi * g * p1.j / r;
          const Complex m = 0.5 * kI * h0 * spj;
          const double m1 = -kInvTwoPi * p0.j * spj;
          k1 = l1 + kI * eta * m1;
          k2 = (l - l1 * lg) + kI * eta * (m - m1 * lg);
        } else {
          const double g = xp[i].y() * (x[i].x() - x[j].x()) - xp[i].x() * (x[i].y() - x[j].y());
          const double f = spj / (r * spi);
          const Complex kp = -0.5 * kI * k * h1 * g * f;
          const double kp1 = k * kInvTwoPi * p1.j * g * f;
          k1 = kp1;
          k2 = kp - kp1 * lg;
        }
      }
      const int dist = std::abs(i - j);
      const Complex entry = rw[dist] * k1 + h * k2;
      if (bc == BoundaryCondition::Soft) {
        a(i, j) = (i == j ? 1.0 : 0.0) - entry;
      } else {
        a(i, j) = (i == j ? -1.0 : 0.0) + entry;
      }
    }
  }
  out.condition_ = condition_of(a);
  check_condition(out.condition_, opt.max_condition);
  const CVector psi = a.partialPivLu().solve(rhs);

  out.strip_ = false;
  out.eta_ = eta;
  out.points_ = x;
  out.coeff_.assign(psi.data(), psi.data() + psi.size());
  out.density_ = out.coeff_;
  for (int j = 0; j < n2; ++j) {
    const double sp = xp[j].norm();
    out.normals_.emplace_back(xp[j].y() / sp, -xp[j].x() / sp, 0.0);
    out.ds_.push_back(h * sp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Open strip [-a, a] x {0}: Chebyshev spectral collocation.

struct StripGrid {
  int n{0};
  int q{0};
  double ka{0.0};
  std::vector<double> s;   // collocation nodes
  std::vector<double> t;   // quadrature nodes
  Eigen::MatrixXd w;       // W_j(s_p): integral of log|s - t| times the j-th interpolant
};

StripGrid make_strip_grid(int n, int q, double ka) {
  StripGrid g;
  g.n = n;
  g.q = q;
  g.ka = ka;
  g.s = quad::gauss_chebyshev_first(n).nodes;
  g.t = quad::gauss_chebyshev_first(q).nodes;
  g.w.resize(n, q);
  std::vector<double> thq(q);
  for (int j = 0; j < q; ++j) thq[j] = (2.0 * j + 1.0) * kPi / (2.0 * q);
  for (int p = 0; p < n; ++p) {
    const double ths = std::acos(std::clamp(g.s[p], -1.0, 1.0));
    for (int j = 0; j < q; ++j) {
      double sum = -kPi * std::log(2.0);
      for (int m = 1; m < q; ++m) sum += 2.0 * std::cos(m * thq[j]) * (-kPi / m) * std::cos(m * ths);
      g.w(p, j) = sum / q;
    }
  }
  return g;
}

// Weights turning samples f(t_j) into int Phi(a|s_p - t|) f(t) / sqrt(1 - t^2) dt.
CMatrix single_layer_weights(const StripGrid& g) {
  CMatrix kw(g.n, g.q);
  for (int p = 0; p < g.n; ++p) {
    for (int j = 0; j < g.q; ++j) {
      const double z = std::abs(g.s[p] - g.t[j]);
      kw(p, j) = -kInvTwoPi * g.w(p, j) * specfun::cyl_bessel_j0(g.ka * z) + kPi / g.q * smooth_kernel(g.ka, z);
    }
  }
  return kw;
}

BemSolution solve_strip(const Surface& s, double width, BoundaryCondition bc, double k,
                        const IncidentField& u0, const BemOptions& opt, BemSolution out) {
  const double a = 0.5 * width;
  const double ka = k * a;
  const int n = opt.strip_order > 0 ? opt.strip_order : static_cast<int>(std::ceil(ka)) + 40;
  const int q = opt.strip_quadrature > 0 ? opt.strip_quadrature : 2 * n + static_cast<int>(std::ceil(2.0 * ka));
  const StripGrid g = make_strip_grid(n, q, ka);
  const CMatrix kw = single_layer_weights(g);

  CMatrix amat(n, n);
  CVector rhs(n);
  for (int p = 0; p < n; ++p) {
    const Vec3 xp(a * g.s[p], 0.0, 0.0);
    rhs[p] = bc == BoundaryCondition::Soft ? -u0.value(xp) : -u0.gradient(xp).y();
  }

  if (bc == BoundaryCondition::Soft) {
    Eigen::MatrixXd tm(q, n);
    for (int j = 0; j < q; ++j) {
      const std::vector<double> tv = quad::chebyshev_t(n - 1, g.t[j]);
      for (int c = 0; c < n; ++c) tm(j, c) = tv[c];
    }
    amat = kw * tm.cast<Complex>();
  } else {
    // Basis mu_c = sqrt(1 - t^2) U_c(t); d mu_c / dt = -(c + 1) T_{c+1}(t) / sqrt(1 - t^2).
    Eigen::MatrixXd tm(q, n + 1);
    Eigen::MatrixXd um(q, n);
    for (int j = 0; j < q; ++j) {
      const std::vector<double> tv = quad::chebyshev_t(n, g.t[j]);
      const std::vector<double> uv = quad::chebyshev_u(n - 1, g.t[j]);
      for (int c = 0; c <= n; ++c) tm(j, c) = tv[c];
      for (int c = 0; c < n; ++c) um(j, c) = (1.0 - g.t[j] * g.t[j]) * uv[c];
    }
    const CMatrix mass = kw * um.cast<Complex>();
    const double ka2 = g.ka;
    for (int p = 0; p < n; ++p) {
      const double sp = g.s[p];
      const std::vector<double> us = quad::chebyshev_u(n, sp);
      std::vector<double> eprime(q), eratio(q);
      std::vector<Complex> mprime(q);
      for (int j = 0; j < q; ++j) {
        const double z = sp - g.t[j];
        const double az = std::abs(z);
        eprime[j] = -ka2 * specfun::cyl_bessel_j1(ka2 * z);
        eratio[j] = az < 1e-8 ? -0.25 * ka2 * ka2 * z : (specfun::cyl_bessel_j0(ka2 * az) - 1.0) / z;
        mprime[j] = smooth_kernel_derivative(ka2, z);
      }
      for (int c = 0; c < n; ++c) {
        const int m = c + 1;
        double pi_part = 0.0;
        double gc_part = 0.0;
        Complex sm_part{0.0, 0.0};
        for (int j = 0; j < q; ++j) {
          pi_part += g.w(p, j) * eprime[j] * tm(j, m);
          gc_part += eratio[j] * tm(j, m);
          sm_part += mprime[j] * tm(j, m);
        }
        gc_part *= kPi / q;
        sm_part *= kPi / q;
        const Complex dm = -kInvTwoPi * (-kPi * us[m - 1] + pi_part + gc_part) + sm_part;
        amat(p, c) = -static_cast<double>(m) / a * dm + k * k * a * mass(p, c);
      }
    }
  }
  out.condition_ = condition_of(amat);
  check_condition(out.condition_, opt.max_condition);
  const CVector c = amat.partialPivLu().solve(rhs);

  out.strip_ = true;
  out.half_width_ = a;
  out.quad_nodes_ = q;
  out.coeff_.assign(c.data(), c.data() + c.size());
  for (const auto& node : s.nodes) {
    const double t = std::clamp(node.position.x() / a, -1.0, 1.0);
    Complex val{0.0, 0.0};
    if (bc == BoundaryCondition::Soft) {
      const std::vector<double> tv = quad::chebyshev_t(n - 1, t);
      for (int i = 0; i < n; ++i) val += c[i] * tv[i];
      val /= a * std::sqrt(std::max(1.0 - t * t, 1e-300));
    } else {
      const std::vector<double> uv = quad::chebyshev_u(n - 1, t);
      for (int i = 0; i < n; ++i) val += c[i] * uv[i];
      val *= std::sqrt(std::max(1.0 - t * t, 0.0));
    }
    out.density_.push_back(val);
  }
  return out;
}

}  // namespace

FarFieldPattern BemSolution::far_field(const std::vector<double>& angles) const {
  FarFieldPattern out;
  out.angles = angles;
  const Complex cst = far_constant(k_);
  if (!strip_) {
    for (double phi : angles) {
      const Vec3 xh(std::cos(phi), std::sin(phi), 0.0);
      Complex sum{0.0, 0.0};
      for (std::size_t j = 0; j < points_.size(); ++j) {
        const Complex e = std::exp(-kI * (k_ * xh.dot(points_[j])));
        const Complex factor = bc_ == BoundaryCondition::Soft ? -kI * (k_ * xh.dot(normals_[j]) + eta_) : Complex(1.0);
        sum += factor * e * coeff_[j] * ds_[j];
      }
      out.amplitude.push_back(cst * sum);
    }
    return out;
  }
  const int n = static_cast<int>(coeff_.size());
  const double a = half_width_;
  if (bc_ == BoundaryCondition::Soft) {
    const quad::Rule rule = quad::gauss_chebyshev_first(quad_nodes_);
    std::vector<Complex> mu(rule.nodes.size());
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const std::vector<double> tv = quad::chebyshev_t(n - 1, rule.nodes[j]);
      Complex v{0.0, 0.0};
      for (int i = 0; i < n; ++i) v += coeff_[i] * tv[i];
      mu[j] = v;
    }
    for (double phi : angles) {
      Complex sum{0.0, 0.0};
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        sum += rule.weights[j] * std::exp(-kI * (k_ * a * std::cos(phi) * rule.nodes[j])) * mu[j];
      }
      out.amplitude.push_back(cst * sum);
    }
  } else {
    const quad::Rule rule = quad::gauss_chebyshev_second(quad_nodes_);
    std::vector<Complex> mu(rule.nodes.size());
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const std::vector<double> uv = quad::chebyshev_u(n - 1, rule.nodes[j]);
      Complex v{0.0, 0.0};
      for (int i = 0; i < n; ++i) v += coeff_[i] * uv[i];
      mu[j] = v;
    }
    for (double phi : angles) {
      Complex sum{0.0, 0.0};
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        sum += rule.weights[j] * std::exp(-kI * (k_ * a * std::cos(phi) * rule.nodes[j])) * mu[j];
      }
      out.amplitude.push_back(cst * (-kI * k_ * std::sin(phi)) * a * sum);
    }
  }
  return out;
}

BemSolution bem_dense_solve(const Surface& s, BoundaryCondition bc, double k, const IncidentField& u0,
                            const BemOptions& options) {
  if (s.dim != 2) throw Error(ErrorCode::Shape, "boundary-integral oracle is 2D only");
  if (!(k > 0.0)) throw Error(ErrorCode::Domain, "wavenumber must be positive");
  if (std::abs(u0.k - k) > 1e-12 * k) throw Error(ErrorCode::Domain, "incident wavenumber differs from solver wavenumber");
  BemSolution out;
  out.bc_ = bc;
  out.k_ = k;
  if (const auto* st = std::get_if<Strip>(&s.shape)) return solve_strip(s, st->width, bc, k, u0, options, out);
  if (const auto* ci = std::get_if<Circle>(&s.shape)) return solve_circle(s, ci->radius, bc, k, u0, options, out);
  throw Error(ErrorCode::Shape, "boundary-integral oracle supports Circle and Strip surfaces");
}

}  // namespace waveortho
