#include "umbilic/kruskal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "umbilic/errors.hpp"
#include "umbilic/graphs.hpp"

namespace umbilic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance from the chart's open ends at which Phi is probed for its range.
constexpr double kEndProbe = 1e-6;

}  // namespace

KruskalChart::KruskalChart(Profile profile, std::size_t index, double r_l, double c, Interval domain, double tol)
    : profile_(std::move(profile)), index_(index), r_l_(r_l), C_(c), domain_(domain), tol_(tol) {
  const double room = std::min(r_l_ - domain_.lo, domain_.hi - r_l_);
  band_ = std::min(1e-3 * std::abs(C_), 0.25 * room);
  for (int k = 0; k < 4; ++k) jet_[k] = profile_.derivative(k + 1, r_l_);
  probe_lo_ = domain_.lo + kEndProbe * (r_l_ - domain_.lo);
  probe_hi_ = std::isfinite(domain_.hi) ? domain_.hi - kEndProbe * (domain_.hi - r_l_) : kInf;
}

KruskalChart KruskalChart::build(const Profile& profile, const ZeroStructure& zeros, std::size_t l, double tol) {
  if (l >= zeros.zeros.size()) throw Error(ErrorCode::OutOfRange, "horizon index out of range");
  const HorizonZero& zero = zeros.zeros[l];
  if (!zero.nondegenerate) throw Error(ErrorCode::DegenerateZero, "Kruskal charts need a nondegenerate zero");
  const double slope = profile.derivative(1, zero.radius);
  if (std::abs(slope) <= kTolSlope) throw Error(ErrorCode::DegenerateZero, "Kruskal charts need a nondegenerate zero");
  const Interval domain{l > 0 ? zeros.zeros[l - 1].radius : 0.0,
                        l + 1 < zeros.zeros.size() ? zeros.zeros[l + 1].radius : kInf};
  const double room = std::min(zero.radius - domain.lo, domain.hi - zero.radius);
  if (!(room > 1e-8 * zero.radius)) throw Error(ErrorCode::DomainTooSmall, "adjacent zeros leave no chart domain");
  return KruskalChart(profile, l, zero.radius, 1.0 / slope, domain, tol);
}

std::vector<KruskalChart> build_atlas(const Profile& profile, const ZeroStructure& zeros) {
  std::vector<KruskalChart> charts;
  for (std::size_t l = 0; l < zeros.zeros.size(); ++l) charts.push_back(KruskalChart::build(profile, zeros, l));
  return charts;
}

void KruskalChart::require_inside(double r) const {
  if (!contains(r)) throw Error(ErrorCode::OutOfChart, "radius outside the chart's radial domain");
}

double KruskalChart::potential_derivative(double r) const {
  const double d = r - r_l_;
  if (std::abs(d) < band_) {
    // h = d (h1 + h2 d/2 + h3 d^2/6 + h4 d^3/24), 1 - C h' = -C d (h2 + h3 d/2 + h4 d^2/6).
    const double num = -C_ * (jet_[1] + jet_[2] * d / 2 + jet_[3] * d * d / 6);
    const double den = jet_[0] + jet_[1] * d / 2 + jet_[2] * d * d / 6 + jet_[3] * d * d * d / 24;
    return num / den;
  }
  const RadialJet h = profile_.eval(r);
  return (1 - C_ * h.d1) / h.value;
}

double KruskalChart::potential(double r) const {
  require_inside(r);
  const auto f = [this](double x) { return potential_derivative(x); };
  if (std::abs(r - r_l_) <= band_) return numerics::integrate(f, r_l_, r, tol_);
  const double edge = r > r_l_ ? r_l_ + band_ : r_l_ - band_;
  return numerics::integrate(f, r_l_, edge, tol_) + numerics::integrate(f, edge, r, tol_);
}

double KruskalChart::phi(double r) const {
  return C_ * profile_.value(r) * std::exp(potential(r) / C_);
}

double KruskalChart::phi_derivative(double r) const { return std::exp(potential(r) / C_); }

double KruskalChart::conformal_factor(double r) const { return 2 * C_ * std::exp(-potential(r) / C_); }

Interval KruskalChart::phi_range() const {
  return {phi(probe_lo_), std::isfinite(probe_hi_) ? phi(probe_hi_) : kInf};
}

double KruskalChart::phi_inverse(double value) const {
  if (value == 0.0) return r_l_;
  const auto f = [this](double x) { return phi(x); };
  const auto df = [this](double x) { return phi_derivative(x); };
  // Phi is monotone on the chart; walk the bracket toward the relevant end,
  // halving the remaining gap, so the pole at a neighbouring zero is only
  // approached when the target really lies there.
  const bool below = value < 0;
  const double end = below ? probe_lo_ : probe_hi_;
  const auto beyond = [&](double p) { return below ? p <= value : p >= value; };
  double x = r_l_;
  for (int k = 1;; ++k) {
    if (std::isfinite(end)) {
      x = k > 60 ? end : end + (r_l_ - end) * std::ldexp(1.0, -k);
    } else {
      x = r_l_ + std::max(1.0, r_l_) * std::ldexp(1.0, k - 1);
      if (x > 1e8) throw Error(ErrorCode::OutOfRange, "u v above the range of Phi");
    }
    double p;
    try {
      p = phi(x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::QuadratureFailure) throw;
      throw Error(ErrorCode::OutOfRange, "u v outside the resolvable range of Phi");
    }
    if (!std::isfinite(p)) throw Error(ErrorCode::OutOfRange, "u v outside the range of Phi");
    if (beyond(p)) break;
    if (x == end) throw Error(ErrorCode::OutOfRange, "u v outside the range of Phi");
  }
  const double lo = below ? x : r_l_;
  const double hi = below ? r_l_ : x;
  return numerics::newton_bracketed(f, df, value, lo, hi, 0.5 * (lo + hi));
}

KruskalPoint to_kruskal(const KruskalChart& chart, double t, double r) {
  if (!chart.contains(r)) throw Error(ErrorCode::OutOfChart, "radius outside the chart's radial domain");
  const double p = chart.phi(r);
  if (!(p > 0)) throw Error(ErrorCode::WrongPatch, "the (t, r) transform covers only the Phi > 0 patch");
  const double root = std::sqrt(p);
  const double c = chart.surface_constant();
  return {root * std::exp(-t / (2 * c)), root * std::exp(t / (2 * c))};
}

RadialTime from_kruskal(const KruskalChart& chart, double u, double v) {
  RadialTime out;
  out.r = chart.phi_inverse(u * v);
  if (u != 0.0 && v != 0.0) out.t = chart.surface_constant() * std::log(std::abs(v / u));
  return out;
}

KruskalPoint extend_graph(const GraphSlice& graph, const KruskalChart& chart, double s) {
  if (!chart.contains(s)) throw Error(ErrorCode::OutOfChart, "radius outside the chart's radial domain");
  graph.require_domain(s);
  const double r_l = chart.horizon();
  const double b_l = graph.b(r_l);
  if (std::abs(b_l) < 1e-7) throw Error(ErrorCode::TimeSymmetricGraph, "b_T vanishes at the horizon; no crossing");
  const double c = chart.surface_constant();
  const Profile& p = graph.base();

  // Regular part of T: R~' = R_l' + G with
  // G = -1/(h_T (1 + sqrt(x/h_T))) - (C/2)(h_T'/h_T - x'/x), x = h_T - h.
  const auto G = [&](double x) {
    const double hT = graph.slice_terms()(x);
    const double dhT = graph.slice_terms().derivative(1, x);
    const double diff = graph.difference()(x);
    const double ddiff = graph.difference().derivative(1, x);
    if (!(hT > 0) || !(diff > 0))
      throw Error(ErrorCode::TimeSymmetricGraph, "b_T vanishes between the horizon and s");
    return -1 / (hT * (1 + std::sqrt(diff / hT))) - 0.5 * c * (dhT / hT - ddiff / diff);
  };
  const double regular = numerics::integrate(G, r_l, s, 1e-13);
  const double R = chart.potential(s);
  const double hT = graph.slice_terms()(s);
  const double diff = graph.difference()(s);
  const double scale = std::sqrt(std::abs(c));
  const double sign_c = c > 0 ? 1.0 : -1.0;

  const double vanishing = scale * sign_c * p.value(s) * std::pow(hT / diff, 0.25) *
                           std::exp((2 * R + regular) / (2 * c));
  const double regular_side = scale * std::pow(diff / hT, 0.25) * std::exp(-regular / (2 * c));
  return b_l > 0 ? KruskalPoint{regular_side, vanishing} : KruskalPoint{vanishing, regular_side};
}

std::vector<ChartSample> sample_chart(const KruskalChart& chart, const std::vector<double>& radii) {
  std::vector<ChartSample> out(radii.size());
  numerics::parallel_for(radii.size(), [&](std::size_t i) {
    const double r = radii[i];
    const double R = chart.potential(r);
    const double c = chart.surface_constant();
    out[i] = {r, c * chart.profile().value(r) * std::exp(R / c), 2 * c * std::exp(-R / c), R};
  });
  return out;
}

}  // namespace umbilic
