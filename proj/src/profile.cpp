#include "umbilic/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "umbilic/errors.hpp"

namespace umbilic {

PowerSum::PowerSum(std::vector<PowerTerm> terms) : terms_(std::move(terms)) { normalize(); }

void PowerSum::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  std::vector<PowerTerm> merged;
  for (const auto& term : terms_) {
    if (!merged.empty() && merged.back().exponent == term.exponent) {
      merged.back().coefficient += term.coefficient;
    } else {
      merged.push_back(term);
    }
  }
  std::erase_if(merged, [](const PowerTerm& t) { return t.coefficient == 0.0; });
  terms_ = std::move(merged);
}

double PowerSum::derivative(int order, double r) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    double factor = term.coefficient;
    for (int k = 0; k < order; ++k) factor *= term.exponent - k;
    if (factor == 0.0) continue;
    const double power = term.exponent - order;
    sum += power == 0.0 ? factor : factor * std::pow(r, power);
  }
  return sum;
}

RadialJet PowerSum::jet(double r) const { return {derivative(0, r), derivative(1, r), derivative(2, r)}; }

double PowerSum::magnitude(double r) const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += std::abs(term.coefficient * std::pow(r, term.exponent));
  return sum;
}

PowerSum PowerSum::operator+(const PowerSum& other) const {
  std::vector<PowerTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return PowerSum(std::move(all));
}

PowerSum PowerSum::operator*(const PowerSum& other) const {
  std::vector<PowerTerm> product;
  for (const auto& a : terms_)
    for (const auto& b : other.terms_)
      product.push_back({a.coefficient * b.coefficient, a.exponent + b.exponent});
  return PowerSum(std::move(product));
}

PowerSum PowerSum::scaled(double factor) const {
  std::vector<PowerTerm> out = terms_;
  for (auto& t : out) t.coefficient *= factor;
  return PowerSum(std::move(out));
}

std::string to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::Schwarzschild: return "schwarzschild";
    case ProfileFamily::ReissnerNordstrom: return "reissner-nordstrom";
    case ProfileFamily::SchwarzschildDeSitter: return "schwarzschild-de-sitter";
    case ProfileFamily::SchwarzschildAntiDeSitter: return "schwarzschild-anti-de-sitter";
    case ProfileFamily::QuadraticConformal: return "quadratic-conformal";
    case ProfileFamily::MinkowskiLike: return "minkowski";
    case ProfileFamily::Custom: return "custom";
  }
  return "unknown";
}

namespace {

void require_dimension(int n) {
  if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "spatial dimension n must be >= 3, got " + std::to_string(n));
}

// 1 - 2m r^{2-n}
std::vector<PowerTerm> schwarzschild_terms(double mass, int n) {
  return {{1.0, 0.0}, {-2.0 * mass, 2.0 - n}};
}

// Lambda enters as -2 Lambda r^2 / (n (n-1)), the n-dimensional de Sitter term.
PowerTerm cosmological_term(double lambda, int n) {
  return {-2.0 * lambda / (static_cast<double>(n) * (n - 1)), 2.0};
}

}  // namespace

Profile::Profile(ProfileFamily family, PowerSum terms, int n, std::map<std::string, double> parameters)
    : family_(family), terms_(std::move(terms)), n_(n), parameters_(std::move(parameters)) {}

Profile Profile::schwarzschild(double mass, int n) {
  require_dimension(n);
  if (!(mass > 0)) throw Error(ErrorCode::InvalidProfile, "Schwarzschild mass must be positive");
  return Profile(ProfileFamily::Schwarzschild, PowerSum(schwarzschild_terms(mass, n)), n, {{"m", mass}});
}

Profile Profile::reissner_nordstrom(double mass, double charge, int n) {
  require_dimension(n);
  auto terms = schwarzschild_terms(mass, n);
  terms.push_back({charge * charge, 2.0 * (2.0 - n)});
  return Profile(ProfileFamily::ReissnerNordstrom, PowerSum(std::move(terms)), n, {{"m", mass}, {"q", charge}});
}

Profile Profile::schwarzschild_de_sitter(double mass, double cosmological_constant, int n) {
  require_dimension(n);
  if (!(cosmological_constant > 0))
    throw Error(ErrorCode::InvalidProfile, "Schwarzschild-de Sitter needs Lambda > 0");
  auto terms = schwarzschild_terms(mass, n);
  terms.push_back(cosmological_term(cosmological_constant, n));
  return Profile(ProfileFamily::SchwarzschildDeSitter, PowerSum(std::move(terms)), n,
                 {{"m", mass}, {"lambda", cosmological_constant}});
}

Profile Profile::schwarzschild_anti_de_sitter(double mass, double cosmological_constant, int n) {
  require_dimension(n);
  if (!(cosmological_constant < 0))
    throw Error(ErrorCode::InvalidProfile, "Schwarzschild-anti-de Sitter needs Lambda < 0");
  auto terms = schwarzschild_terms(mass, n);
  terms.push_back(cosmological_term(cosmological_constant, n));
  return Profile(ProfileFamily::SchwarzschildAntiDeSitter, PowerSum(std::move(terms)), n,
                 {{"m", mass}, {"lambda", cosmological_constant}});
}

Profile Profile::quadratic_conformal(double c, int n) {
  require_dimension(n);
  // (1 - C r)^2
  return Profile(ProfileFamily::QuadraticConformal, PowerSum({{1.0, 0.0}, {-2.0 * c, 1.0}, {c * c, 2.0}}), n,
                 {{"C", c}});
}

Profile Profile::minkowski_like(int n) {
  require_dimension(n);
  return Profile(ProfileFamily::MinkowskiLike, PowerSum({{1.0, 0.0}}), n, {});
}

Profile Profile::custom(std::vector<PowerTerm> terms, int n) {
  require_dimension(n);
  for (const auto& t : terms)
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent))
      throw Error(ErrorCode::InvalidProfile, "custom profile terms must be finite");
  PowerSum sum(std::move(terms));
  if (sum.empty()) throw Error(ErrorCode::InvalidProfile, "custom profile has no nonzero terms");
  return Profile(ProfileFamily::Custom, std::move(sum), n, {});
}

RadialJet Profile::eval(double r) const {
  if (!(r > 0)) throw Error(ErrorCode::NonPositiveRadius, "r = " + std::to_string(r));
  return terms_.jet(r);
}

double Profile::value(double r) const { return derivative(0, r); }

double Profile::derivative(int order, double r) const {
  if (!(r > 0)) throw Error(ErrorCode::NonPositiveRadius, "r = " + std::to_string(r));
  return terms_.derivative(order, r);
}

std::string Profile::describe() const {
  std::ostringstream out;
  out << to_string(family_) << ":";
  for (const auto& [key, val] : parameters_) out << key << "=" << val << ",";
  if (family_ == ProfileFamily::Custom) {
    out << "terms=";
    bool first = true;
    for (const auto& t : terms_.terms()) {
      out << (first ? "" : ";") << t.coefficient << "@" << t.exponent;
      first = false;
    }
    out << ",";
  }
  out << "n=" << n_;
  return out.str();
}

Profile Profile::plus(const PowerSum& extra) const {
  return Profile(ProfileFamily::Custom, terms_ + extra, n_, {});
}

bool ZeroStructure::all_nondegenerate() const {
  return std::all_of(zeros.begin(), zeros.end(), [](const HorizonZero& z) { return z.nondegenerate; });
}

ZeroStructure find_zeros(const PowerSum& f, double r_min, double r_max, std::size_t grid) {
  if (!(r_min > 0) || !(r_max > r_min))
    throw Error(ErrorCode::NonPositiveRadius, "need 0 < r_min < r_max");
  if (grid < 2) throw Error(ErrorCode::InvalidConfig, "zero search grid needs at least 2 points");

  const auto radii = numerics::geometric_grid(r_min, r_max, grid);
  std::vector<double> values(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) values[i] = f(radii[i]);

  auto fn = [&f](double r) { return f(r); };
  auto dfn = [&f](double r) { return f.derivative(1, r); };

  std::vector<double> candidates;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (values[i] == 0.0) candidates.push_back(radii[i]);
    if (i + 1 < radii.size() && values[i] * values[i + 1] < 0.0)
      candidates.push_back(numerics::refine_root(fn, radii[i], radii[i + 1]));
    // Touching zero: local minimum of |f| without a sign change.
    if (i > 0 && i + 1 < radii.size() && values[i] != 0.0 && values[i - 1] * values[i] > 0.0 &&
        values[i] * values[i + 1] > 0.0 && std::abs(values[i]) <= std::abs(values[i - 1]) &&
        std::abs(values[i]) <= std::abs(values[i + 1])) {
      const double lo = radii[i - 1];
      const double hi = radii[i + 1];
      if (dfn(lo) * dfn(hi) <= 0.0) {
        const double r_star = numerics::refine_root(dfn, lo, hi);
        if (std::abs(f(r_star)) <= kTolRoot * std::max(1.0, f.magnitude(r_star))) candidates.push_back(r_star);
      }
    }
  }

  std::sort(candidates.begin(), candidates.end());
  ZeroStructure out;
  for (double r : candidates) {
    if (!out.zeros.empty() && std::abs(r - out.zeros.back().radius) <= 1e-12 * r) continue;
    if (std::abs(f(r)) > kTolRoot * std::max(1.0, f.magnitude(r))) continue;
    const double slope = f.derivative(1, r);
    out.zeros.push_back({r, slope, std::abs(slope) > kTolSlope});
  }
  out.r_H = out.zeros.empty() ? 0.0 : out.zeros.back().radius;
  return out;
}

ZeroStructure find_zeros(const Profile& profile, double r_min, double r_max, std::size_t grid) {
  return find_zeros(profile.terms(), r_min, r_max, grid);
}

ZeroStructure find_zeros(const Profile& profile) {
  return find_zeros(profile.terms(), kZeroSearchMin, kZeroSearchMax, kZeroSearchGrid);
}

std::vector<double> surface_gravity_constants(const ZeroStructure& zeros) {
  std::vector<double> constants;
  constants.reserve(zeros.zeros.size());
  for (const auto& z : zeros.zeros) {
    if (!(std::abs(z.slope) > kTolSlope))
      throw Error(ErrorCode::DegenerateZero, "h'(" + std::to_string(z.radius) + ") = " + std::to_string(z.slope));
    constants.push_back(1.0 / z.slope);
  }
  return constants;
}

}  // namespace umbilic
