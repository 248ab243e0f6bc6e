#pragma once

#include <vector>

#include "umbilic/fibre.hpp"
#include "umbilic/numerics.hpp"
#include "umbilic/profile.hpp"

namespace umbilic {

class KruskalChart;
class GraphSlice;

/// Intrinsic curvature of the warped slice g^T = ds^2/h_T + s^2 g_N together
/// with the Hessian and Laplacian of f_T = sqrt(h_T) divided by f_T.
struct SliceCurvature {
  double ric_ss = 0.0;           // Ric^T(d_s, d_s)
  double ric_fibre_shift = 0.0;  // Ric^T_IJ = Ric_N,IJ - shift * g_N,IJ
  double scalar = 0.0;           // R^T
  double hess_ss = 0.0;          // ds^2 coefficient of Hess f_T / f_T
  double hess_fibre = 0.0;       // g_N coefficient of Hess f_T / f_T
  double laplacian = 0.0;        // Laplacian f_T / f_T
};

/// Spacetime Ricci data of -h dt^2 + dr^2/h + r^2 g_N.
struct SpacetimeCurvature {
  double beta = 0.0;               // eigenvalue on span{d_t, d_r}
  std::vector<double> fibre_eigs;  // lambda_i - ((n-2) h + r h'), per fibre eigenvalue
  double scalar = 0.0;
};

/// Throws NonspacelikeSlice if h_T(s) <= 0.
SliceCurvature slice_curvature(const RadialJet& h_slice, const Fibre& fibre, double s, int n);

/// R^T alone; defined for any sign of h_T (used for the time-symmetric
/// reference slice R_0 on both sides of a horizon).
double slice_scalar(const RadialJet& h_slice, const Fibre& fibre, double s, int n);

SpacetimeCurvature spacetime_curvature(const Profile& profile, const Fibre& fibre, double r);

struct KruskalRicci {
  double ric_uv = 0.0;
  std::vector<double> fibre_eigs;
};

/// Ric_uv = -(F_l / 2)(h'' + (n-1) h'/rho); Ric_uu = Ric_vv = 0. Throws
/// OutOfChart when rho is outside the chart's radial domain.
KruskalRicci kruskal_ricci(const KruskalChart& chart, const Fibre& fibre, double rho);

/// Ric(L, L) / c^2 for the null vector L = d_u + b d_v + (c/rho) X with X the
/// unit fibre eigenvector of the given index and b fixed by the null
/// condition 2 F b + c^2 = 0.
double kruskal_null_contraction(const KruskalChart& chart, const Fibre& fibre, double rho,
                                std::size_t eigen_index, double c = 1.0);

/// Both sides of Rm(V, n^T, V, n^T) = Hess_0 f(V_0, V_0) / f for the unit
/// vector V_T = c1 f_T d_s + (c2 / s) X. The left side contracts closed-form
/// Riemann components with the graph normal in (t, r, x) coordinates.
struct HessianIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

HessianIdentity hessian_identity_check(const GraphSlice& graph, double s, double c1, double c2);

}  // namespace umbilic
