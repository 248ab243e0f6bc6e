#include "umbilic/fibre.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

void require_dimension(int n) {
  if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "fibre needs n >= 3, got " + std::to_string(n));
}

Fibre from_spectrum(int n, const std::map<double, int>& spectrum, double scalar) {
  Fibre fibre;
  fibre.dim = n - 1;
  for (const auto& [value, mult] : spectrum) {
    fibre.ricci_eigenvalues.push_back(value);
    fibre.multiplicities.push_back(mult);
  }
  fibre.alpha = fibre.ricci_eigenvalues.front() / (n - 2);
  fibre.scalar = scalar;
  return fibre;
}

}  // namespace

std::string Fibre::describe() const {
  std::ostringstream out;
  out << "fibre(dim=" << dim << ", eigenvalues=";
  for (std::size_t i = 0; i < ricci_eigenvalues.size(); ++i) out << (i ? ";" : "") << ricci_eigenvalues[i];
  out << ", alpha=" << alpha << ", scalar=" << scalar << ")";
  return out.str();
}

Fibre make_sphere(int n) { return make_product(n, {{n - 1, 1.0}}); }

Fibre make_einstein(int n, double kappa) {
  require_dimension(n);
  // The space form of sectional curvature kappa/(n-2) realizes Ric = kappa g.
  return make_product(n, {{n - 1, kappa / (n - 2)}});
}

Fibre make_product(int n, const std::vector<FibreFactor>& factors) {
  require_dimension(n);
  int total = 0;
  std::map<double, int> spectrum;
  double scalar = 0.0;
  for (const auto& factor : factors) {
    if (factor.dim < 1) throw Error(ErrorCode::InvalidFibre, "factor dimension must be >= 1");
    total += factor.dim;
    // A d-dimensional space form of curvature k has Ric = (d - 1) k g.
    const double eig = (factor.dim - 1) * factor.sectional;
    spectrum[eig] += factor.dim;
    scalar += factor.dim * eig;
  }
  if (total != n - 1)
    throw Error(ErrorCode::InvalidFibre,
                "factor dimensions sum to " + std::to_string(total) + ", need " + std::to_string(n - 1));
  Fibre fibre = from_spectrum(n, spectrum, scalar);
  fibre.model = factors;
  return fibre;
}

Fibre make_eigenvalues(int n, std::vector<double> eigenvalues, std::optional<double> scalar) {
  require_dimension(n);
  if (eigenvalues.empty()) throw Error(ErrorCode::InvalidFibre, "eigenvalue list is empty");
  for (double e : eigenvalues)
    if (!std::isfinite(e)) throw Error(ErrorCode::InvalidFibre, "eigenvalues must be finite");
  std::map<double, int> spectrum;
  for (double e : eigenvalues) spectrum[e] += 1;
  if (!scalar) {
    if (static_cast<int>(eigenvalues.size()) != n - 1)
      throw Error(ErrorCode::InvalidFibre,
                  "without a scalar curvature the list must hold all n - 1 eigenvalues");
    double trace = 0.0;
    for (double e : eigenvalues) trace += e;
    return from_spectrum(n, spectrum, trace);
  }
  Fibre fibre = from_spectrum(n, spectrum, *scalar);
  if (static_cast<int>(eigenvalues.size()) != n - 1) fibre.multiplicities.clear();
  return fibre;
}

}  // namespace umbilic
