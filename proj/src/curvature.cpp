#include "umbilic/curvature.hpp"

#include <array>
#include <cmath>

#include "umbilic/errors.hpp"
#include "umbilic/graphs.hpp"
#include "umbilic/kruskal.hpp"

namespace umbilic {

namespace {

void require_radius(double r) {
  if (!(r > 0)) throw Error(ErrorCode::NonPositiveRadius, "radius must be positive");
}

// Riemann tensor on span{d_t, d_r, X} with the pair symmetries filled in.
using Riemann3 = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;

void set_pair(Riemann3& rm, int a, int b, double value) {
  rm[a][b][a][b] = value;
  rm[b][a][b][a] = value;
  rm[a][b][b][a] = -value;
  rm[b][a][a][b] = -value;
}

}  // namespace

SliceCurvature slice_curvature(const RadialJet& h_slice, const Fibre& fibre, double s, int n) {
  require_radius(s);
  if (!(h_slice.value > 0)) throw Error(ErrorCode::NonspacelikeSlice, "h_T must be positive on the slice");
  SliceCurvature c;
  c.ric_ss = -(n - 1) * h_slice.d1 / (2 * s * h_slice.value);
  c.ric_fibre_shift = (n - 2) * h_slice.value + 0.5 * s * h_slice.d1;
  c.scalar = slice_scalar(h_slice, fibre, s, n);
  c.hess_ss = 0.5 * h_slice.d2 / h_slice.value;
  c.hess_fibre = 0.5 * s * h_slice.d1;
  c.laplacian = 0.5 * h_slice.d2 + (n - 1) * h_slice.d1 / (2 * s);
  return c;
}

double slice_scalar(const RadialJet& h_slice, const Fibre& fibre, double s, int n) {
  require_radius(s);
  return (fibre.scalar - (n - 1) * ((n - 2) * h_slice.value + s * h_slice.d1)) / (s * s);
}

SpacetimeCurvature spacetime_curvature(const Profile& profile, const Fibre& fibre, double r) {
  const RadialJet h = profile.eval(r);
  const int n = profile.dimension();
  SpacetimeCurvature c;
  c.beta = -0.5 * (h.d2 + (n - 1) * h.d1 / r);
  const double shift = (n - 2) * h.value + r * h.d1;
  for (double lambda : fibre.ricci_eigenvalues) c.fibre_eigs.push_back(lambda - shift);
  c.scalar = 2 * c.beta + (fibre.scalar - (n - 1) * shift) / (r * r);
  return c;
}

KruskalRicci kruskal_ricci(const KruskalChart& chart, const Fibre& fibre, double rho) {
  if (!chart.contains(rho)) throw Error(ErrorCode::OutOfChart, "rho outside the chart's radial domain");
  const SpacetimeCurvature st = spacetime_curvature(chart.profile(), fibre, rho);
  return {chart.conformal_factor(rho) * st.beta, st.fibre_eigs};
}

double kruskal_null_contraction(const KruskalChart& chart, const Fibre& fibre, double rho,
                                std::size_t eigen_index, double c) {
  const KruskalRicci ric = kruskal_ricci(chart, fibre, rho);
  if (eigen_index >= ric.fibre_eigs.size()) throw Error(ErrorCode::InvalidFibre, "eigen-direction index out of range");
  const double F = chart.conformal_factor(rho);
  const double b = -c * c / (2 * F);
  // g(L, L) = 2 F b + c^2 = 0; Ric(L, L) = 2 b Ric_uv + (c/rho)^2 Ric(X, X).
  return (2 * b * ric.ric_uv + c * c * ric.fibre_eigs[eigen_index] / (rho * rho)) / (c * c);
}

HessianIdentity hessian_identity_check(const GraphSlice& graph, double s, double c1, double c2) {
  require_radius(s);
  if (std::abs(c1 * c1 + c2 * c2 - 1) > 1e-12)
    throw Error(ErrorCode::InvalidConfig, "c1^2 + c2^2 must equal 1");
  const RadialJet h = graph.base().eval(s);
  if (!(h.value > 0)) throw Error(ErrorCode::InsideHorizon, "Hessian identity needs h(s) > 0");
  graph.require_domain(s);
  const RadialJet hT = graph.slice_jet(s);
  const double dT = height_slope(graph, s);

  // Coordinates (t, r, x), x along a unit fibre direction (g_xx = r^2).
  Riemann3 rm{};
  set_pair(rm, 0, 1, 0.5 * h.d2);
  set_pair(rm, 0, 2, 0.5 * s * h.value * h.d1);
  set_pair(rm, 1, 2, -0.5 * s * h.d1 / h.value);

  const double f = std::sqrt(h.value);
  const double fT = std::sqrt(hT.value);
  const double tilt = std::sqrt(1 - h.value * h.value * dT * dT);
  const std::array<double, 3> normal{1 / (f * tilt), h.value * h.value * dT / (f * tilt), 0.0};
  const std::array<double, 3> V{c1 * fT * dT, c1 * fT, c2 / s};

  double lhs = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) lhs += rm[a][b][c][d] * V[a] * normal[b] * V[c] * normal[d];

  const SliceCurvature reference = slice_curvature(h, graph.fibre(), s, graph.dimension());
  const double rhs = c1 * c1 * h.value * reference.hess_ss + c2 * c2 * reference.hess_fibre / (s * s);
  return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace umbilic
