#include "waveortho/born.hpp"

#include <cmath>

#include "waveortho/errors.hpp"
#include "waveortho/geometry.hpp"

namespace waveortho {

std::vector<double> beta_weight(const VolumePotential& pot, double k) {
  if (!(k > 0.0)) throw Error(ErrorCode::Domain, "wavenumber must be positive");
  const std::size_t m = pot.size();
  const double vol = pot.cell_measure();
  const double self = self_cell_abs2_integral(pot.dim, k, pot.spacing());
  std::vector<double> xi2(m);
  for (std::size_t i = 0; i < m; ++i) xi2[i] = std::norm(pot.values[i]);
  std::vector<double> beta(m, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    const Vec3 pj = pot.point(j);
    double sum = xi2[j] * self;
    for (std::size_t l = 0; l < m; ++l) {
      if (l == j || xi2[l] == 0.0) continue;
      sum += xi2[l] * std::norm(greens_function(pot.dim, k, pot.point(l), pj).value) * vol;
    }
    beta[j] = 1.0 / (1.0 + sum);
  }
  return beta;
}

BornResult born_approximation(const VolumePotential& pot, const IncidentField& u0, double k, BornOrder order,
                              const std::vector<Vec3>& points, const BornOptions& options) {
  if (!(k > 0.0)) throw Error(ErrorCode::Domain, "wavenumber must be positive");
  for (const auto& p : points) {
    if (pot.covers(p)) throw Error(ErrorCode::UnsupportedRegion, "evaluation point inside the potential support");
  }
  const auto m = static_cast<Eigen::Index>(pot.size());
  const double vol = pot.cell_measure();

  BornResult out;
  out.order = order;
  const bool unit = options.unit_beta || order == BornOrder::SecondStandard;
  out.beta_used = unit ? std::vector<double>(pot.size(), 1.0) : beta_weight(pot, k);

  CVector xi(m), inc(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    xi[i] = pot.values[static_cast<std::size_t>(i)];
    inc[i] = u0.value(pot.point(static_cast<std::size_t>(i)));
  }

  // Inner lattice sums for the second-order terms.
  CVector inner = CVector::Zero(m);
  if (order != BornOrder::First) {
    const CMatrix g = cell_green_matrix(pot, k);
    if (order == BornOrder::SecondStandard) {
      inner = xi.cwiseProduct(g * xi.cwiseProduct(inc));
    } else {
      CVector xi2(m);
      for (Eigen::Index i = 0; i < m; ++i) xi2[i] = std::norm(xi[i]);
      const CVector w = options.alt_reading ? CVector(g.transpose() * xi2.cwiseProduct(inc)) : CVector(g.transpose() * xi2);
      for (Eigen::Index j = 0; j < m; ++j) {
        const Complex at = options.alt_reading ? w[j] : inc[j] * w[j];
        inner[j] = -out.beta_used[static_cast<std::size_t>(j)] * at;
      }
    }
  }

  for (const auto& p : points) {
    Complex s1{0.0, 0.0};
    Complex s2{0.0, 0.0};
    for (Eigen::Index j = 0; j < m; ++j) {
      const bool active = xi[j] != Complex(0.0, 0.0) || inner[j] != Complex(0.0, 0.0);
      if (!active) continue;
      const Complex gj = greens_function(pot.dim, k, pot.point(static_cast<std::size_t>(j)), p).value * vol;
      s1 += gj * out.beta_used[static_cast<std::size_t>(j)] * xi[j] * inc[j];
      s2 += gj * inner[j];
    }
    out.first_term.push_back(s1);
    out.second_term.push_back(s2);
    out.field.push_back(u0.value(p) + s1 + s2);
  }
  return out;
}

}  // namespace waveortho
