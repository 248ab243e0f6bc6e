#pragma once

#include <optional>
#include <string>
#include <vector>

namespace umbilic {

/// Constant-curvature factor of a product fibre: dimension and sectional
/// curvature.
struct FibreFactor {
  int dim = 0;
  double sectional = 0.0;
};

/// The (n-1)-dimensional fibre reduced to the Ricci data the closed forms
/// consume. Eigenvalues are distinct and sorted; alpha = min / (n - 2).
struct Fibre {
  int dim = 0;
  std::vector<double> ricci_eigenvalues;
  std::vector<int> multiplicities;  // parallel to ricci_eigenvalues; empty if unknown
  double alpha = 0.0;
  double scalar = 0.0;
  /// Explicit product-of-space-forms model, present when the fibre admits a
  /// coordinate chart for the finite-difference oracle.
  std::optional<std::vector<FibreFactor>> model;

  int spatial_dimension() const { return dim + 1; }
  double min_eigenvalue() const { return ricci_eigenvalues.front(); }
  std::string describe() const;
};

Fibre make_sphere(int n);
Fibre make_einstein(int n, double kappa);
/// Product of space forms; factor dimensions must sum to n - 1.
Fibre make_product(int n, const std::vector<FibreFactor>& factors);
/// Bare eigenvalue data. When scalar is absent the list must hold the full
/// spectrum with multiplicity (n - 1 entries) so the trace is known.
Fibre make_eigenvalues(int n, std::vector<double> eigenvalues, std::optional<double> scalar = std::nullopt);

}  // namespace umbilic
