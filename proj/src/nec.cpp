#include "umbilic/nec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "umbilic/errors.hpp"

namespace umbilic {

double odi_residual(const RadialJet& x, double s, int n) {
  if (!(s > 0)) throw Error(ErrorCode::NonPositiveRadius, "radius must be positive");
  return 0.5 * x.d2 + (n - 3) * x.d1 / (2 * s) - (n - 2) * x.value / (s * s);
}

double nec_expression(const RadialJet& h, double r, int n, double lambda) {
  return odi_residual(h, r, n) + lambda / (r * r);
}

NecReport nec_check(const Profile& profile, const Fibre& fibre, Interval interval, std::size_t grid) {
  if (!(interval.lo > 0)) throw Error(ErrorCode::NonPositiveRadius, "interval must lie in r > 0");
  if (!(interval.hi >= interval.lo) || grid < 1) throw Error(ErrorCode::InvalidConfig, "empty NEC interval or grid");
  const int n = profile.dimension();
  const auto radii = grid == 1 ? std::vector<double>{interval.lo} : numerics::linear_grid(interval.lo, interval.hi, grid);
  const auto& eigs = fibre.ricci_eigenvalues;

  std::vector<double> best(radii.size());
  std::vector<std::size_t> best_index(radii.size());
  std::vector<double> gap(radii.size(), 0.0);
  numerics::parallel_for(radii.size(), [&](std::size_t i) {
    const double r = radii[i];
    const RadialJet h = profile.eval(r);
    best[i] = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < eigs.size(); ++k) {
      const double e = nec_expression(h, r, n, eigs[k]);
      if (e < best[i]) {
        best[i] = e;
        best_index[i] = k;
      }
    }
    if (eigs.size() == 1) {
      const RadialJet shifted{h.value - fibre.alpha, h.d1, h.d2};
      gap[i] = std::abs(best[i] - odi_residual(shifted, r, n));
    }
  });

  NecReport report;
  report.interval = interval;
  report.min_residual = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (best[i] < report.min_residual) {
      report.min_residual = best[i];
      report.witness_radius = radii[i];
      report.witness_eigenvalue = eigs[best_index[i]];
    }
    report.equivalence_gap = std::max(report.equivalence_gap, gap[i]);
  }
  report.satisfied = report.min_residual >= -kTolNec;
  return report;
}

double monotone_quantity(const Profile& profile, const Fibre& fibre, double r, std::size_t eigen_index) {
  if (eigen_index >= fibre.ricci_eigenvalues.size())
    throw Error(ErrorCode::InvalidFibre, "eigen-direction index out of range");
  const RadialJet h = profile.eval(r);
  const int n = profile.dimension();
  const double lambda = fibre.ricci_eigenvalues[eigen_index];
  return std::pow(r, n) * ((n - 2) * h.d1 / (2 * r) - (n - 2) * h.value / (r * r) + lambda / (r * r));
}

MonotonicityResidual monotonicity_identity_residual(const Profile& profile, const Fibre& fibre, double r) {
  const int n = profile.dimension();
  const RadialJet h = profile.eval(r);
  const auto M = [&](double x) { return monotone_quantity(profile, fibre, x, 0); };
  MonotonicityResidual out;
  out.derivative_fd = numerics::derivative(M, r, 1e-3 * r);
  const RadialJet shifted{h.value - fibre.alpha, h.d1, h.d2};
  out.identity = (n - 2) * std::pow(r, n - 1) * odi_residual(shifted, r, n);
  out.residual = std::abs(out.derivative_fd - out.identity);
  out.scale = std::max({1.0, std::abs(out.identity), std::abs(M(r)) / r});
  return out;
}

bool h4_boundary_check(const Profile& profile, const Fibre& fibre) {
  const ZeroStructure zeros = find_zeros(profile);
  if (zeros.empty()) throw Error(ErrorCode::NoHorizon, "h has no zero on the search range");
  const double rH = zeros.r_H;
  return profile.derivative(1, rH) * rH + 2 * fibre.alpha > 0;
}

}  // namespace umbilic
