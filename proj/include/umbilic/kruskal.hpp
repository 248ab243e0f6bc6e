#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "umbilic/numerics.hpp"
#include "umbilic/profile.hpp"

namespace umbilic {

class GraphSlice;

/// Generalized Kruskal-Szekeres chart around the nondegenerate zero r_l.
///
/// The regularized potential is R_l(r) = int_{r_l}^r (1 - C_l h')/h with
/// C_l = 1/h'(r_l), so R_l(r_l) = 0. With this normalization
///
///   Phi_l = C_l h exp(R_l / C_l),   Phi_l' = exp(R_l / C_l),   F_l = 2 C_l / Phi_l',
///
/// which gives Phi_l(r_l) = 0, Phi_l'(r_l) = 1 and Phi_l / Phi_l' = C_l h.
/// Phi_l is strictly increasing for either sign of C_l; F_l carries the sign
/// of C_l.
class KruskalChart {
 public:
  static KruskalChart build(const Profile& profile, const ZeroStructure& zeros, std::size_t l,
                            double tol = 1e-13);

  std::size_t index() const { return index_; }
  double horizon() const { return r_l_; }
  double surface_constant() const { return C_; }
  /// Open radial domain (r_{l-1}, r_{l+1}); hi is +inf for the outermost zero.
  Interval domain() const { return domain_; }
  bool contains(double r) const { return r > domain_.lo && r < domain_.hi; }
  const Profile& profile() const { return profile_; }

  /// Integrand (1 - C h')/h. Inside the band |r - r_l| < 1e-3 |C| numerator
  /// and denominator are replaced by their Taylor polynomials about r_l, with
  /// the leading factor (r - r_l) cancelled.
  double potential_derivative(double r) const;
  double potential(double r) const;
  double phi(double r) const;
  double phi_derivative(double r) const;
  double conformal_factor(double r) const;

  /// rho = Phi^{-1}(value); OutOfRange if value is not attained on the domain.
  double phi_inverse(double value) const;
  /// Range of Phi over the (probed) domain.
  Interval phi_range() const;

  double series_band() const { return band_; }

 private:
  KruskalChart(Profile profile, std::size_t index, double r_l, double c, Interval domain, double tol);
  void require_inside(double r) const;

  Profile profile_;
  std::size_t index_;
  double r_l_;
  double C_;
  Interval domain_;
  double tol_;
  double band_;
  double probe_lo_;
  double probe_hi_;
  double jet_[4];  // h', h'', h''', h'''' at r_l
};

/// Charts for every zero; DegenerateZero if any zero is degenerate.
std::vector<KruskalChart> build_atlas(const Profile& profile, const ZeroStructure& zeros);

struct KruskalPoint {
  double u = 0.0;
  double v = 0.0;
};

/// v = sqrt(Phi) e^{t/(2C)}, u = sqrt(Phi) e^{-t/(2C)}; WrongPatch unless Phi(r) > 0.
KruskalPoint to_kruskal(const KruskalChart& chart, double t, double r);

struct RadialTime {
  double r = 0.0;
  std::optional<double> t;  // undefined on the horizon u v = 0
};

/// r = Phi^{-1}(u v) and t = C ln|v/u|.
RadialTime from_kruskal(const KruskalChart& chart, double u, double v);

/// Continues the graph through the chart: u v = Phi(s), continuous across
/// s = r_l where exactly one of u, v vanishes (v for b_T > 0, u for b_T < 0).
/// TimeSymmetricGraph if b_T(r_l) ~ 0.
KruskalPoint extend_graph(const GraphSlice& graph, const KruskalChart& chart, double s);

struct ChartSample {
  double r = 0.0;
  double phi = 0.0;
  double conformal_factor = 0.0;
  double potential = 0.0;
};

std::vector<ChartSample> sample_chart(const KruskalChart& chart, const std::vector<double>& radii);

}  // namespace umbilic
