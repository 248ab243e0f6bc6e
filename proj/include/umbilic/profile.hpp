#pragma once

#include <map>
#include <string>
#include <vector>

#include "umbilic/numerics.hpp"

namespace umbilic {

/// c * r^p
struct PowerTerm {
  double coefficient = 0.0;
  double exponent = 0.0;
};

/// Finite sum of real powers of r. Every built-in metric coefficient is one of
/// these, so derivatives of any order are exact.
class PowerSum {
 public:
  PowerSum() = default;
  explicit PowerSum(std::vector<PowerTerm> terms);

  double derivative(int order, double r) const;
  double operator()(double r) const { return derivative(0, r); }
  RadialJet jet(double r) const;

  /// Sum of |c_k r^{p_k}|: the local magnitude used for relative tolerances.
  double magnitude(double r) const;

  PowerSum operator+(const PowerSum& other) const;
  PowerSum operator*(const PowerSum& other) const;
  PowerSum scaled(double factor) const;

  const std::vector<PowerTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  void normalize();
  std::vector<PowerTerm> terms_;
};

enum class ProfileFamily {
  Schwarzschild,
  ReissnerNordstrom,
  SchwarzschildDeSitter,
  SchwarzschildAntiDeSitter,
  QuadraticConformal,
  MinkowskiLike,
  Custom,
};

std::string to_string(ProfileFamily family);

/// Metric coefficient h of -h dt^2 + dr^2/h + r^2 g_N on (0, inf), spatial
/// dimension n >= 3.
class Profile {
 public:
  static Profile schwarzschild(double mass, int n);
  static Profile reissner_nordstrom(double mass, double charge, int n);
  static Profile schwarzschild_de_sitter(double mass, double cosmological_constant, int n);
  static Profile schwarzschild_anti_de_sitter(double mass, double cosmological_constant, int n);
  static Profile quadratic_conformal(double c, int n = 3);
  static Profile minkowski_like(int n = 3);
  static Profile custom(std::vector<PowerTerm> terms, int n);

  /// (h, h', h'') at r; throws NonPositiveRadius for r <= 0.
  RadialJet eval(double r) const;
  double value(double r) const;
  double derivative(int order, double r) const;
  double magnitude(double r) const { return terms_.magnitude(r); }

  int dimension() const { return n_; }
  ProfileFamily family() const { return family_; }
  const std::map<std::string, double>& parameters() const { return parameters_; }
  const PowerSum& terms() const { return terms_; }
  std::string describe() const;

  /// Custom profile h + extra over the same dimension.
  Profile plus(const PowerSum& extra) const;

 private:
  Profile(ProfileFamily family, PowerSum terms, int n, std::map<std::string, double> parameters);

  ProfileFamily family_;
  PowerSum terms_;
  int n_;
  std::map<std::string, double> parameters_;
};

inline constexpr double kTolRoot = 1e-12;
inline constexpr double kTolSlope = 1e-8;

struct HorizonZero {
  double radius = 0.0;
  double slope = 0.0;
  bool nondegenerate = false;
};

struct ZeroStructure {
  std::vector<HorizonZero> zeros;  // strictly increasing radii
  double r_H = 0.0;                // largest zero, 0 if none

  bool empty() const { return zeros.empty(); }
  bool all_nondegenerate() const;
};

/// Zeros of an arbitrary power sum on [r_min, r_max]. Sign changes on a
/// geometric grid are refined by TOMS 748; touching zeros (no sign change)
/// are caught at local extrema of |f| and recorded as degenerate when the
/// refined extremum satisfies |f| <= tol_root.
ZeroStructure find_zeros(const PowerSum& f, double r_min, double r_max, std::size_t grid);
ZeroStructure find_zeros(const Profile& profile, double r_min, double r_max, std::size_t grid);

/// Default horizon search used by downstream modules: [1e-4, 1e4].
ZeroStructure find_zeros(const Profile& profile);
inline constexpr double kZeroSearchMin = 1e-4;
inline constexpr double kZeroSearchMax = 1e4;
inline constexpr std::size_t kZeroSearchGrid = 8000;

/// C_l = 1 / h'(r_l); DegenerateZero if any zero is degenerate.
std::vector<double> surface_gravity_constants(const ZeroStructure& zeros);

}  // namespace umbilic
