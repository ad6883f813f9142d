#pragma once

#include <vector>

#include "waveortho/types.hpp"

/// Special functions for the axisymmetric and 2D scattering problems: spherical
/// Bessel/Hankel of integer order, cylindrical Bessel of orders 0 and 1, and
/// Legendre polynomials. All functions are pure and thread-safe.
namespace waveortho::specfun {

inline constexpr int kMaxOrder = 200;

struct ValueDerivative {
  double value;
  double derivative;
};

struct ComplexValueDerivative {
  Complex value;
  Complex derivative;
};

/// j_n(x) and j_n'(x) for 0 <= n <= 200, x >= 0.
ValueDerivative sph_bessel_j(int n, double x);

/// y_n(x) and y_n'(x), x > 0.
ValueDerivative sph_bessel_y(int n, double x);

/// h_n^{(1)}(x) = j_n(x) + i y_n(x) and its derivative, x > 0.
ComplexValueDerivative sph_hankel1(int n, double x);

/// j_0..j_nmax at x. Downward (Miller) recurrence when x < nmax, upward otherwise.
std::vector<double> sph_bessel_j_array(int nmax, double x);

/// y_0..y_nmax at x > 0 by upward recurrence.
std::vector<double> sph_bessel_y_array(int nmax, double x);

/// h_0..h_nmax and derivatives at x > 0.
void sph_hankel1_array(int nmax, double x, std::vector<Complex>& value,
                       std::vector<Complex>& derivative);

/// j_0..j_nmax and derivatives at x >= 0.
void sph_bessel_j_array(int nmax, double x, std::vector<double>& value,
                        std::vector<double>& derivative);

/// P_n(x), |x| <= 1.
double legendre_p(int n, double x);

/// P_0..P_nmax at x, and optionally P_n'(x).
void legendre_p_array(int nmax, double x, std::vector<double>& value,
                      std::vector<double>* derivative = nullptr);

struct CylinderPair {
  double j;
  double y;
};

/// J_0(x) and Y_0(x), x > 0. At x == 0 use cyl_bessel_j0.
CylinderPair cyl_bessel_j0y0(double x);

/// J_1(x) and Y_1(x), x > 0.
CylinderPair cyl_bessel_j1y1(double x);

double cyl_bessel_j0(double x);
double cyl_bessel_j1(double x);

/// H_0^{(1)}(x) and H_1^{(1)}(x), x > 0.
Complex cyl_hankel1_0(double x);
Complex cyl_hankel1_1(double x);

}  // namespace waveortho::specfun
