#pragma once

#include <cstddef>
#include <vector>

#include "umbilic/fibre.hpp"
#include "umbilic/numerics.hpp"
#include "umbilic/profile.hpp"

namespace umbilic {

inline constexpr double kTolGap = 1e-9;

/// E_X(r): gap between the fibre-block Ricci eigenvalue for eigen-direction X
/// and the (t, r)-block eigenvalue beta.
double eigenvalue_gap(const Profile& profile, const Fibre& fibre, double r, std::size_t eigen_index);

struct GapScan {
  Interval interval;
  std::vector<double> radii;
  std::vector<std::vector<double>> gaps;  // gaps[i][k]: eigen-direction k at radii[i]
  std::vector<Interval> zero_set;         // maximal runs where min_X |E_X| <= kTolGap
  bool dense_condition = false;
  double spacing = 0.0;
};

/// The gap condition holds on a dense set at grid resolution iff no run of
/// vanishing samples is longer than twice the grid spacing.
GapScan gap_zero_scan(const Profile& profile, const Fibre& fibre, Interval interval, std::size_t grid);

struct TimelikeRelations {
  double h_slice = 0.0;     // lambda^2 s^2 - h
  double b_squared = 0.0;   // (h_T + h) / s^2
  double a = 0.0;           // from h_T a b = -(h_T + h)'/(2s)
  double residual = 0.0;    // max of the relation residual and the umbilicity residual a + lambda/h_T
};

/// Timelike warped graphs with constant umbilicity factor lambda != 0.
TimelikeRelations timelike_photon_relations(const Profile& profile, double lambda, double s);

struct IsotropicPoint {
  double s = 0.0;
  double psi = 0.0;       // r / s
  double lapse_sq = 0.0;  // N~^2 = h(r)
};

/// ln s is a primitive of 1/(r sqrt(h)). The constant is fixed so that
/// Schwarzschild reproduces the classical isotropic radius; otherwise
/// s(r0) = r0. HorizonInInterval unless h > 0 between r0 and r.
IsotropicPoint isotropic_from_areal(const Profile& profile, double r0, double r);

/// Inverse of isotropic_from_areal at fixed anchor.
double areal_from_isotropic(const Profile& profile, double r0, double s);

/// Classical isotropic radius of n-dimensional Schwarzschild: the root of
/// r = s (1 + m / (2 s^{n-2}))^{2/(n-2)}.
double schwarzschild_isotropic_radius(double mass, int n, double r);

struct ConformalFamily {
  Profile profile;
  double cosmological_constant = 0.0;  // -n(n-1) C^2 / 2
  double degenerate_horizon = 0.0;     // 1/C, 0 for C = 0
  double lapse_residual = 0.0;         // max |N~^2 - C0^2 Psi^2| over samples
  double flatness_residual = 0.0;      // max |N~^2 - (1 + s Psi'/Psi)^2|
  double gap_residual = 0.0;           // max |E(r) - (n-1) C / r|
};

/// Psi(s) = 1/(C s + C0) and h(r) = (1 - C r)^2; ZeroC0 if C0 = 0.
ConformalFamily conformal_family(double c, double c0, int n = 3);

}  // namespace umbilic
