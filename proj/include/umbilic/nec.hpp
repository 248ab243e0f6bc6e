#pragma once

#include <cstddef>

#include "umbilic/fibre.hpp"
#include "umbilic/numerics.hpp"
#include "umbilic/profile.hpp"

namespace umbilic {

inline constexpr double kTolNec = 1e-9;

/// Q[x](s) = x''/2 + (n-3) x'/(2s) - (n-2) x / s^2, the Euler operator whose
/// nonnegativity is the null energy condition for x = h - alpha.
double odi_residual(const RadialJet& x, double s, int n);

/// x''/2 + (n-3) x'/(2r) - (n-2) x / r^2 + lambda / r^2 for one fibre
/// eigenvalue lambda; the quantity the null energy condition bounds below.
double nec_expression(const RadialJet& h, double r, int n, double lambda);

struct NecReport {
  Interval interval;
  double min_residual = 0.0;
  bool satisfied = false;
  double witness_radius = 0.0;
  double witness_eigenvalue = 0.0;
  /// max |min_X expression - Q[h - alpha]| over the scan; only meaningful
  /// (and only filled) for single-eigenvalue fibres.
  double equivalence_gap = 0.0;
};

/// Scans `grid` evenly spaced radii of the interval against every fibre
/// eigenvalue. Radii are evaluated in parallel; the min/argmin reduction runs
/// in index order so the witness is deterministic.
NecReport nec_check(const Profile& profile, const Fibre& fibre, Interval interval, std::size_t grid);

/// r^n [ (n-2) h'/(2r) - (n-2) h / r^2 + lambda_X / r^2 ].
double monotone_quantity(const Profile& profile, const Fibre& fibre, double r, std::size_t eigen_index);

struct MonotonicityResidual {
  double derivative_fd = 0.0;  // Richardson central difference of M
  double identity = 0.0;       // (n-2) r^{n-1} Q[h - alpha](r)
  double residual = 0.0;
  double scale = 1.0;          // max(1, |identity|, |M| / r)
};

/// Checks M' = (n-2) r^{n-1} Q[h - alpha] for the minimal eigen-direction.
MonotonicityResidual monotonicity_identity_residual(const Profile& profile, const Fibre& fibre, double r);

/// h'(r_H) r_H + 2 alpha > 0 at the largest zero; NoHorizon if h has none.
bool h4_boundary_check(const Profile& profile, const Fibre& fibre);

}  // namespace umbilic
