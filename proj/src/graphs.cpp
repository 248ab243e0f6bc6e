#include "umbilic/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "umbilic/curvature.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/nec.hpp"

namespace umbilic {

std::string to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::Hyperboloid: return "hyperboloid";
    case GraphFamily::CMC: return "cmc";
    case GraphFamily::TimeSymmetric: return "timesym";
    case GraphFamily::CustomBT: return "custombt";
  }
  return "unknown";
}

std::string to_string(LeafClass leaf) {
  switch (leaf) {
    case LeafClass::Untrapped: return "untrapped";
    case LeafClass::GeneralizedHorizon: return "generalized-horizon";
    case LeafClass::Trapped: return "trapped";
  }
  return "unknown";
}

GraphSlice::GraphSlice(Profile base, Fibre fibre, GraphFamily family, PowerSum b_terms, int sign,
                       std::map<std::string, double> parameters)
    : base_(std::move(base)),
      fibre_(std::move(fibre)),
      family_(family),
      b_terms_(std::move(b_terms)),
      sign_(sign),
      parameters_(std::move(parameters)) {
  if (sign_ != 1 && sign_ != -1) throw Error(ErrorCode::InvalidConfig, "graph orientation must be +1 or -1");
  if (fibre_.dim != base_.dimension() - 1) throw Error(ErrorCode::InvalidFibre, "fibre dimension must be n - 1");
  difference_ = PowerSum({{1.0, 2.0}}) * b_terms_ * b_terms_;
  slice_terms_ = base_.terms() + difference_;
  r_T_ = find_zeros(slice_terms_, kZeroSearchMin, kZeroSearchMax, kZeroSearchGrid).r_H;
}

GraphSlice GraphSlice::hyperboloid(Profile base, Fibre fibre, double lambda, int sign) {
  return GraphSlice(std::move(base), std::move(fibre), GraphFamily::Hyperboloid, PowerSum({{lambda, 0.0}}), sign,
                    {{"lambda", lambda}});
}

GraphSlice GraphSlice::cmc(Profile base, Fibre fibre, double mean_curvature, double c1, int sign) {
  const int n = base.dimension();
  PowerSum b({{mean_curvature / n, 0.0}, {c1, -static_cast<double>(n)}});
  return GraphSlice(std::move(base), std::move(fibre), GraphFamily::CMC, std::move(b), sign,
                    {{"C", mean_curvature}, {"c1", c1}});
}

GraphSlice GraphSlice::time_symmetric(Profile base, Fibre fibre) {
  return GraphSlice(std::move(base), std::move(fibre), GraphFamily::TimeSymmetric, PowerSum(), 1, {});
}

GraphSlice GraphSlice::custom_bt(Profile base, Fibre fibre, PowerSum b, int sign) {
  return GraphSlice(std::move(base), std::move(fibre), GraphFamily::CustomBT, std::move(b), sign, {});
}

std::string GraphSlice::describe() const {
  std::ostringstream out;
  out << to_string(family_);
  for (const auto& [key, value] : parameters_) out << ' ' << key << '=' << value;
  out << " sign=" << sign_;
  return out.str();
}

double GraphSlice::inner_boundary_slope() const {
  return r_T_ > 0 ? slice_terms_.derivative(1, r_T_) : std::nan("");
}

bool GraphSlice::in_domain(double s) const { return s > 0 && slice_terms_(s) > 0; }

void GraphSlice::require_domain(double s) const {
  if (!(s > 0)) throw Error(ErrorCode::NonPositiveRadius, "radius must be positive");
  if (!in_domain(s)) throw Error(ErrorCode::OutsideDomain, "h_T(s) <= 0: outside the graph domain");
}

namespace {

// a_T from h_T a_T b_T = (h_T' - h')/(2s). Below |b_T| = 1e-7 the quotient is
// replaced by its L'Hopital form, which is exact algebraically:
// x''/2 - b (2 s b' + s^2 b'') = (b + s b')^2 with x = s^2 b^2.
double umbilic_a(const GraphSlice& g, double s, double hT) {
  const double b = g.b(s);
  if (std::abs(b) >= 1e-7) return g.difference().derivative(1, s) / (2 * s * hT * b);
  const double b1 = g.b_derivative(1, s);
  const double b2 = g.b_derivative(2, s);
  const double ds_b = b + s * b1;
  if (ds_b == 0.0) return 0.0;
  return (0.5 * g.difference().derivative(2, s) - b * (2 * s * b1 + s * s * b2)) / (hT * ds_b);
}

bool on_horizon(const Profile& p, double s) {
  return std::abs(p.value(s)) <= kTolRoot * std::max(1.0, p.magnitude(s));
}

}  // namespace

GraphData graph_data(const GraphSlice& graph, double s) {
  graph.require_domain(s);
  const RadialJet hT = graph.slice_jet(s);
  GraphData d;
  d.h_slice = hT.value;
  d.h_slice_d1 = hT.d1;
  d.b = graph.b(s);
  d.a = umbilic_a(graph, s, hT.value);
  if (!on_horizon(graph.base(), s)) d.height_slope = s * d.b / (graph.base().value(s) * std::sqrt(hT.value));
  return d;
}

double height_slope(const GraphSlice& graph, double s) {
  graph.require_domain(s);
  if (on_horizon(graph.base(), s))
    throw Error(ErrorCode::HorizonChart, "T' is undefined on a horizon; use the Kruskal continuation");
  return s * graph.b(s) / (graph.base().value(s) * std::sqrt(graph.slice_terms()(s)));
}

double height_function(const GraphSlice& graph, double s0, double s1, double tol) {
  const double lo = std::min(s0, s1);
  const double hi = std::max(s0, s1);
  graph.require_domain(lo);
  graph.require_domain(hi);
  const Profile& p = graph.base();
  if (!(p.value(lo) > 0) || !(p.value(hi) > 0) || !find_zeros(p, lo, hi, 256).empty())
    throw Error(ErrorCode::HorizonInInterval, "h must stay positive on the integration interval");
  for (double x : numerics::linear_grid(lo, hi, 64))
    if (!graph.in_domain(x)) throw Error(ErrorCode::OutsideDomain, "interval leaves the graph domain");
  if (graph.family() == GraphFamily::TimeSymmetric || s0 == s1) return 0.0;
  return numerics::integrate([&](double s) { return height_slope(graph, s); }, s0, s1, tol);
}

double momentum_residual(const GraphSlice& graph, double s) {
  const GraphData d = graph_data(graph, s);
  return (2 / s) * (d.h_slice * d.a - d.b - s * graph.b_derivative(1, s));
}

ExtrinsicInvariants extrinsic_invariants(const GraphSlice& graph, double s) {
  const GraphData d = graph_data(graph, s);
  const int n = graph.dimension();
  ExtrinsicInvariants k;
  k.trace = d.h_slice * d.a + (n - 1) * d.b;
  k.norm_squared = d.h_slice * d.h_slice * d.a * d.a + (n - 1) * d.b * d.b;
  k.deformation_ss = (n - 1) * d.a * d.b;
  k.deformation_fibre = d.h_slice * d.a * d.b + (n - 2) * d.b * d.b;
  return k;
}

EnergyDensity energy_density(const GraphSlice& graph, double s) {
  graph.require_domain(s);
  const int n = graph.dimension();
  const ExtrinsicInvariants k = extrinsic_invariants(graph, s);
  const double scalar = slice_scalar(graph.slice_jet(s), graph.fibre(), s, n);
  const double scalar0 = slice_scalar(graph.base().eval(s), graph.fibre(), s, n);
  return {0.5 * (scalar - k.norm_squared + k.trace * k.trace), 0.5 * scalar0};
}

double bt_coefficient(const GraphSlice& graph, double s) {
  graph.require_domain(s);
  return odi_residual(graph.difference().jet(s), s, graph.dimension());
}

LeafGeometry leaf_geometry(const GraphSlice& graph, double s) {
  graph.require_domain(s);
  const int n = graph.dimension();
  const double fT = std::sqrt(graph.slice_terms()(s));
  const double b = graph.b(s);
  LeafGeometry leaf;
  leaf.H = (n - 1) * fT / s;
  leaf.P = (n - 1) * b;
  // H - |P| = (n-1) h / (s (f_T + s|b|)) without cancellation.
  const double small = (n - 1) * graph.base().value(s) / (s * (fT + s * std::abs(b)));
  const double large = leaf.H + std::abs(leaf.P);
  leaf.theta_plus = b >= 0 ? large : small;
  leaf.theta_minus = b >= 0 ? small : large;
  leaf.stcmc = leaf.theta_plus * leaf.theta_minus;
  if (leaf.stcmc > kLeafTolerance)
    leaf.classification = LeafClass::Untrapped;
  else if (leaf.stcmc < -kLeafTolerance)
    leaf.classification = LeafClass::Trapped;
  else
    leaf.classification = LeafClass::GeneralizedHorizon;
  return leaf;
}

bool has_admissible_inner_boundary(const Profile& profile, double c, const C0Search& search) {
  const PowerSum hT = profile.terms() + PowerSum({{c, 2.0}});
  // The largest zero crosses upward iff h_T ends positive and dips below zero
  // somewhere on the range; check every local minimum after Brent refinement.
  if (!(hT(search.s_max) > 0)) return false;
  const auto grid = numerics::geometric_grid(search.s_min, search.s_max, search.grid);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = hT(grid[i]);
  if (values.front() < 0) return true;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (values[i] < 0) return true;
    if (values[i] <= values[i - 1] && values[i] <= values[i + 1]) {
      const double min = numerics::minimize([&](double s) { return hT(s); }, grid[i - 1], grid[i + 1]).second;
      if (min < 0) return true;
    }
  }
  return false;
}

double c0_threshold(const Profile& profile, const C0Search& search, double tol) {
  if (find_zeros(profile).empty()) throw Error(ErrorCode::NoHorizon, "h has no zero on the search range");
  const auto admissible = [&](double c) { return has_admissible_inner_boundary(profile, c, search); };
  double lo = 0.0;
  if (!admissible(lo)) {
    lo = 1e-6;
    while (lo <= search.c_max && !admissible(lo)) lo *= 2;
    if (lo > search.c_max) return 0.0;
  }
  double hi = std::max(1.0, 2 * lo);
  while (admissible(hi)) {
    if (hi >= search.c_max) return kInfiniteC0;
    lo = hi;
    hi = std::min(2 * hi, search.c_max);
  }
  while (hi - lo > tol * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace umbilic
