#include "umbilic/photon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "umbilic/curvature.hpp"
#include "umbilic/errors.hpp"

namespace umbilic {

double eigenvalue_gap(const Profile& profile, const Fibre& fibre, double r, std::size_t eigen_index) {
  const SpacetimeCurvature c = spacetime_curvature(profile, fibre, r);
  if (eigen_index >= c.fibre_eigs.size()) throw Error(ErrorCode::InvalidFibre, "eigen-direction index out of range");
  return c.fibre_eigs[eigen_index] / (r * r) - c.beta;
}

GapScan gap_zero_scan(const Profile& profile, const Fibre& fibre, Interval interval, std::size_t grid) {
  if (!(interval.lo > 0)) throw Error(ErrorCode::NonPositiveRadius, "interval must lie in r > 0");
  if (!(interval.hi > interval.lo) || grid < 2) throw Error(ErrorCode::InvalidConfig, "gap scan needs a proper interval");
  GapScan scan;
  scan.interval = interval;
  scan.radii = numerics::linear_grid(interval.lo, interval.hi, grid);
  scan.spacing = interval.width() / static_cast<double>(grid - 1);
  const std::size_t k = fibre.ricci_eigenvalues.size();
  scan.gaps.assign(grid, std::vector<double>(k));
  numerics::parallel_for(grid, [&](std::size_t i) {
    for (std::size_t j = 0; j < k; ++j) scan.gaps[i][j] = eigenvalue_gap(profile, fibre, scan.radii[i], j);
  });

  const auto vanishing = [&](std::size_t i) {
    double smallest = std::numeric_limits<double>::infinity();
    for (double e : scan.gaps[i]) smallest = std::min(smallest, std::abs(e));
    return smallest <= kTolGap;
  };
  scan.dense_condition = true;
  for (std::size_t i = 0; i < grid;) {
    if (!vanishing(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < grid && vanishing(j + 1)) ++j;
    const Interval run{scan.radii[i], scan.radii[j]};
    scan.zero_set.push_back(run);
    if (run.width() > 2 * scan.spacing) scan.dense_condition = false;
    i = j + 1;
  }
  return scan;
}

TimelikeRelations timelike_photon_relations(const Profile& profile, double lambda, double s) {
  if (lambda == 0.0) throw Error(ErrorCode::NotTimelike, "umbilicity factor must be nonzero");
  const RadialJet h = profile.eval(s);
  TimelikeRelations out;
  out.h_slice = lambda * lambda * s * s - h.value;
  if (!(out.h_slice > 0)) throw Error(ErrorCode::NotTimelike, "lambda^2 s^2 must exceed h(s)");
  const double dh_slice = 2 * lambda * lambda * s - h.d1;
  out.b_squared = (out.h_slice + h.value) / (s * s);
  const double b = lambda;
  out.a = -(dh_slice + h.d1) / (2 * s * out.h_slice * b);
  const double relation = std::abs(out.b_squared - lambda * lambda) / (lambda * lambda);
  const double umbilic = std::abs(out.a + lambda / out.h_slice) * out.h_slice / std::abs(lambda);
  out.residual = std::max(relation, umbilic);
  return out;
}

double schwarzschild_isotropic_radius(double mass, int n, double r) {
  const double R = std::pow(r, 0.5 * (n - 2));
  const double disc = R * R - 2 * mass;
  if (disc < 0) throw Error(ErrorCode::HorizonInInterval, "isotropic radius needs r outside the horizon");
  return std::pow(0.5 * (R + std::sqrt(disc)), 2.0 / (n - 2));
}

namespace {

void require_positive_between(const Profile& profile, double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (!(lo > 0)) throw Error(ErrorCode::NonPositiveRadius, "radius must be positive");
  if (!(profile.value(lo) > 0) || !(profile.value(hi) > 0) || (hi > lo && !find_zeros(profile, lo, hi, 256).empty()))
    throw Error(ErrorCode::HorizonInInterval, "h must stay positive between anchor and radius");
}

double anchor(const Profile& profile, double r0) {
  if (profile.family() == ProfileFamily::Schwarzschild)
    return schwarzschild_isotropic_radius(profile.parameters().at("m"), profile.dimension(), r0);
  return r0;
}

double log_isotropic(const Profile& profile, double r0, double r) {
  const auto integrand = [&](double x) { return 1.0 / (x * std::sqrt(profile.value(x))); };
  return std::log(anchor(profile, r0)) + numerics::integrate(integrand, r0, r, 1e-13);
}

}  // namespace

IsotropicPoint isotropic_from_areal(const Profile& profile, double r0, double r) {
  require_positive_between(profile, r0, r);
  IsotropicPoint p;
  p.s = std::exp(log_isotropic(profile, r0, r));
  p.psi = r / p.s;
  p.lapse_sq = profile.value(r);
  return p;
}

double areal_from_isotropic(const Profile& profile, double r0, double s) {
  if (!(s > 0)) throw Error(ErrorCode::NonPositiveRadius, "isotropic radius must be positive");
  require_positive_between(profile, r0, r0);
  // Horizon-free component of (0, inf) around the anchor.
  double lo_edge = 0.0;
  double hi_edge = std::numeric_limits<double>::infinity();
  for (const auto& z : find_zeros(profile).zeros) {
    if (z.radius < r0) lo_edge = z.radius;
    if (z.radius > r0) {
      hi_edge = z.radius;
      break;
    }
  }
  const double target = std::log(s);
  const auto f = [&](double r) { return log_isotropic(profile, r0, r); };
  const auto df = [&](double r) { return 1.0 / (r * std::sqrt(profile.value(r))); };
  double lo = r0;
  double hi = r0;
  if (f(r0) < target) {
    for (int k = 0; f(hi) < target; ++k) {
      lo = hi;
      hi = std::isfinite(hi_edge) ? hi_edge - (hi_edge - r0) * std::pow(0.5, k + 1) : 2 * hi;
      if (k > 200 || hi > 1e12) throw Error(ErrorCode::OutOfRange, "isotropic radius beyond the chart");
    }
  } else {
    for (int k = 0; f(lo) > target; ++k) {
      hi = lo;
      lo = lo_edge + (r0 - lo_edge) * std::pow(0.5, k + 1);
      if (k > 200) throw Error(ErrorCode::OutOfRange, "isotropic radius beyond the chart");
    }
  }
  if (lo == hi) return lo;
  return numerics::newton_bracketed(f, df, target, lo, hi, 0.5 * (lo + hi));
}

ConformalFamily conformal_family(double c, double c0, int n) {
  if (c0 == 0.0) throw Error(ErrorCode::ZeroC0, "C0 must be nonzero");
  ConformalFamily out{c == 0.0 ? Profile::minkowski_like(n) : Profile::quadratic_conformal(c, n)};
  out.cosmological_constant = -0.5 * n * (n - 1) * c * c;
  out.degenerate_horizon = c > 0 ? 1.0 / c : 0.0;

  // Isotropic samples need C s + C0 > 0 so that r = s Psi is positive.
  double s_start = 0.0;
  if (c0 < 0) {
    if (!(c > 0)) throw Error(ErrorCode::InvalidConfig, "C s + C0 is never positive for these constants");
    s_start = -c0 / c;
  }
  const double span = 5.0 / std::max(std::abs(c), std::abs(c0) > 0 ? 1.0 / std::abs(c0) : 1.0);
  const auto psi = [&](double s) { return 1.0 / (c * s + c0); };
  for (double s : numerics::linear_grid(s_start + 0.05 * span, s_start + span, 20)) {
    const double r = s * psi(s);
    const double lapse_sq = out.profile.value(r);
    out.lapse_residual = std::max(out.lapse_residual, std::abs(lapse_sq - c0 * c0 * psi(s) * psi(s)));
    const double dpsi = numerics::derivative(psi, s, 1e-3 * s);
    const double flat = 1 + s * dpsi / psi(s);
    out.flatness_residual = std::max(out.flatness_residual, std::abs(lapse_sq - flat * flat));
  }
  const Fibre sphere = make_sphere(n);
  for (double r : numerics::linear_grid(0.1, 20.0, 20))
    out.gap_residual = std::max(out.gap_residual, std::abs(eigenvalue_gap(out.profile, sphere, r, 0) - (n - 1) * c / r));
  return out;
}

}  // namespace umbilic
