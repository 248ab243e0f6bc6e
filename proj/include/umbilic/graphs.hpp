#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>

#include "umbilic/fibre.hpp"
#include "umbilic/numerics.hpp"
#include "umbilic/profile.hpp"

namespace umbilic {

enum class GraphFamily { Hyperboloid, CMC, TimeSymmetric, CustomBT };

std::string to_string(GraphFamily family);

/// Spacelike warped-product graph {t = T(s)} over a Class-H spacetime. The
/// graph is fixed by the signed fibre coefficient b_T of its second
/// fundamental form: h_T = h + s^2 b_T^2. Every family here has b_T a power
/// sum, so h_T and all derivatives stay exact.
class GraphSlice {
 public:
  static GraphSlice hyperboloid(Profile base, Fibre fibre, double lambda, int sign = +1);
  static GraphSlice cmc(Profile base, Fibre fibre, double mean_curvature, double c1, int sign = +1);
  static GraphSlice time_symmetric(Profile base, Fibre fibre);
  static GraphSlice custom_bt(Profile base, Fibre fibre, PowerSum b, int sign = +1);

  const Profile& base() const { return base_; }
  const Fibre& fibre() const { return fibre_; }
  GraphFamily family() const { return family_; }
  int sign() const { return sign_; }
  int dimension() const { return base_.dimension(); }
  const std::map<std::string, double>& parameters() const { return parameters_; }
  std::string describe() const;

  /// Signed b_T and its derivatives.
  double b(double s) const { return sign_ * b_terms_.derivative(0, s); }
  double b_derivative(int order, double s) const { return sign_ * b_terms_.derivative(order, s); }
  /// x = h_T - h = s^2 b_T^2.
  const PowerSum& difference() const { return difference_; }
  const PowerSum& slice_terms() const { return slice_terms_; }
  RadialJet slice_jet(double s) const { return slice_terms_.jet(s); }

  /// Largest zero of h_T (0 when h_T > 0 everywhere); the domain is (r_T, inf).
  double inner_boundary() const { return r_T_; }
  /// Slope h_T'(r_T); NaN when there is no inner boundary.
  double inner_boundary_slope() const;
  bool in_domain(double s) const;
  void require_domain(double s) const;

 private:
  GraphSlice(Profile base, Fibre fibre, GraphFamily family, PowerSum b_terms, int sign,
             std::map<std::string, double> parameters);

  Profile base_;
  Fibre fibre_;
  GraphFamily family_;
  PowerSum b_terms_;
  int sign_;
  std::map<std::string, double> parameters_;
  PowerSum difference_;
  PowerSum slice_terms_;
  double r_T_ = 0.0;
};

struct GraphData {
  double h_slice = 0.0;
  double h_slice_d1 = 0.0;
  double b = 0.0;
  double a = 0.0;
  /// T'(s); empty on a horizon of h where the (t, r) chart degenerates.
  std::optional<double> height_slope;
};

GraphData graph_data(const GraphSlice& graph, double s);

/// T'(s) = s b_T / (h sqrt(h_T)); HorizonChart when h(s) = 0.
double height_slope(const GraphSlice& graph, double s);

/// T(s1) - T(s0) by adaptive quadrature; HorizonInInterval unless h > 0 on [s0, s1].
double height_function(const GraphSlice& graph, double s0, double s1, double tol = 1e-12);

/// (2/s)(h_T a_T - b_T - s b_T').
double momentum_residual(const GraphSlice& graph, double s);

struct EnergyDensity {
  double mu = 0.0;      // from 2 mu = R^T - |K|^2 + (tr K)^2
  double half_R0 = 0.0; // half the scalar curvature of the time-symmetric slice
};

EnergyDensity energy_density(const GraphSlice& graph, double s);

struct ExtrinsicInvariants {
  double trace = 0.0;          // h_T a_T + (n-1) b_T
  double norm_squared = 0.0;   // h_T^2 a_T^2 + (n-1) b_T^2
  double deformation_ss = 0.0; // ds^2 coefficient of tr K K - K^2
  double deformation_fibre = 0.0;  // s^2 g_N coefficient of tr K K - K^2
};

ExtrinsicInvariants extrinsic_invariants(const GraphSlice& graph, double s);

/// Fibre coefficient Q[h_T - h](s) of the tensor B^T.
double bt_coefficient(const GraphSlice& graph, double s);

enum class LeafClass { Untrapped, GeneralizedHorizon, Trapped };
std::string to_string(LeafClass leaf);

inline constexpr double kLeafTolerance = 1e-10;

struct LeafGeometry {
  double H = 0.0;  // mean curvature of {s} x N in (M_T, g^T)
  double P = 0.0;  // trace of K^T over the leaf
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double stcmc = 0.0;  // H^2 - P^2, evaluated as theta_plus * theta_minus
  LeafClass classification = LeafClass::Untrapped;
};

LeafGeometry leaf_geometry(const GraphSlice& graph, double s);

struct C0Search {
  double s_min = 1e-3;
  double s_max = 1e3;
  double c_max = 1e6;
  std::size_t grid = 4000;
};

inline constexpr double kInfiniteC0 = std::numeric_limits<double>::infinity();

/// Supremum of C >= 0 for which h + C s^2 still has a positive zero with
/// positive slope (largest zero). Returns kInfiniteC0 when no failure occurs
/// up to search.c_max. NoHorizon if h itself has no zero.
double c0_threshold(const Profile& profile, const C0Search& search = {}, double tol = 1e-10);

/// Whether h + C s^2 has a largest positive zero with h_T' > 0 there, using
/// grid sign changes plus Brent-refined local minima on the search range.
bool has_admissible_inner_boundary(const Profile& profile, double c, const C0Search& search);

}  // namespace umbilic
