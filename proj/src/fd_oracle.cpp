#include "umbilic/fd_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "umbilic/curvature.hpp"
#include "umbilic/errors.hpp"

namespace umbilic::oracle {

namespace {

// sin(sqrt(k) x)/sqrt(k), x, or sinh(sqrt(-k) x)/sqrt(-k)
double space_form_warp(double k, double x) {
  if (k > 0) return std::sin(std::sqrt(k) * x) / std::sqrt(k);
  if (k < 0) return std::sinh(std::sqrt(-k) * x) / std::sqrt(-k);
  return x;
}

const std::vector<FibreFactor>& require_model(const Fibre& fibre) {
  if (!fibre.model)
    throw Error(ErrorCode::InvalidFibre, "fibre has no explicit chart model; oracle needs one");
  return *fibre.model;
}

// dchi_1^2 + S_k(chi_1)^2 (dchi_2^2 + sin^2 chi_2 (dchi_3^2 + ...)) on one factor.
void factor_metric(const FibreFactor& factor, const double* coords, Eigen::MatrixXd& out, int offset) {
  double warp = 1.0;
  for (int i = 0; i < factor.dim; ++i) {
    out(offset + i, offset + i) = warp * warp;
    warp *= i == 0 ? space_form_warp(factor.sectional, coords[0]) : std::sin(coords[i]);
  }
}

}  // namespace

FdSteps default_steps(double r) { return {1e-4 * std::max(1.0, r), true}; }

FdSteps default_steps(double r, const RadialJet& h) {
  double scale = r;
  if (h.d1 != 0.0) scale = std::min(scale, std::abs(h.value / h.d1));
  if (h.d2 != 0.0) scale = std::min(scale, std::sqrt(std::abs(h.value / h.d2)));
  return {std::min(1e-4 * std::max(1.0, r), 1e-2 * scale), true};
}

int fibre_chart_dimension(const Fibre& fibre) {
  int dim = 0;
  for (const auto& f : require_model(fibre)) dim += f.dim;
  return dim;
}

Eigen::VectorXd fibre_chart_point(const Fibre& fibre) {
  Eigen::VectorXd point(fibre_chart_dimension(fibre));
  int offset = 0;
  for (const auto& f : require_model(fibre)) {
    for (int i = 0; i < f.dim; ++i) point(offset + i) = 1.0;
    if (f.sectional > 0) point(offset) = std::min(1.0, 1.0 / std::sqrt(f.sectional));
    offset += f.dim;
  }
  return point;
}

Eigen::MatrixXd fibre_metric(const Fibre& fibre, const Eigen::VectorXd& coords) {
  const int dim = fibre_chart_dimension(fibre);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  int offset = 0;
  for (const auto& f : require_model(fibre)) {
    factor_metric(f, coords.data() + offset, g, offset);
    offset += f.dim;
  }
  return g;
}

Eigen::MatrixXd fibre_ricci(const Fibre& fibre, const Eigen::VectorXd& coords) {
  Eigen::MatrixXd g = fibre_metric(fibre, coords);
  int offset = 0;
  for (const auto& f : require_model(fibre)) {
    g.block(offset, offset, f.dim, f.dim) *= (f.dim - 1) * f.sectional;
    offset += f.dim;
  }
  return g;
}

MetricFn spacetime_metric(const Profile& profile, const Fibre& fibre) {
  return [profile, fibre](const Eigen::VectorXd& x) {
    const int dim = static_cast<int>(x.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    const double r = x(1);
    const double h = profile.value(r);
    g(0, 0) = -h;
    g(1, 1) = 1.0 / h;
    g.block(2, 2, dim - 2, dim - 2) = r * r * fibre_metric(fibre, x.tail(dim - 2));
    return g;
  };
}

MetricFn slice_metric(const PowerSum& h_slice, const Fibre& fibre) {
  return [h_slice, fibre](const Eigen::VectorXd& x) {
    const int dim = static_cast<int>(x.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    const double s = x(0);
    g(0, 0) = 1.0 / h_slice(s);
    g.block(1, 1, dim - 1, dim - 1) = s * s * fibre_metric(fibre, x.tail(dim - 1));
    return g;
  };
}

Eigen::VectorXd spacetime_point(const Fibre& fibre, double t, double r) {
  const Eigen::VectorXd fibre_point = fibre_chart_point(fibre);
  Eigen::VectorXd x(2 + fibre_point.size());
  x << t, r, fibre_point;
  return x;
}

Eigen::VectorXd slice_point(const Fibre& fibre, double s) {
  const Eigen::VectorXd fibre_point = fibre_chart_point(fibre);
  Eigen::VectorXd x(1 + fibre_point.size());
  x << s, fibre_point;
  return x;
}

std::vector<Eigen::MatrixXd> fd_christoffel(const MetricFn& metric, const Eigen::VectorXd& point, double delta) {
  const int dim = static_cast<int>(point.size());
  // dg[c](a, b) = d_c g_ab
  std::vector<Eigen::MatrixXd> dg(dim);
  for (int c = 0; c < dim; ++c) {
    Eigen::VectorXd plus = point;
    Eigen::VectorXd minus = point;
    plus(c) += delta;
    minus(c) -= delta;
    dg[c] = (metric(plus) - metric(minus)) / (2 * delta);
  }
  const Eigen::MatrixXd inverse = metric(point).inverse();
  std::vector<Eigen::MatrixXd> gamma(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = b; c < dim; ++c) {
        double sum = 0.0;
        for (int d = 0; d < dim; ++d) sum += inverse(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        gamma[a](b, c) = gamma[a](c, b) = 0.5 * sum;
      }
  return gamma;
}

namespace {

Eigen::MatrixXd ricci_at_step(const MetricFn& metric, const Eigen::VectorXd& point, double delta) {
  const int dim = static_cast<int>(point.size());
  const auto gamma = fd_christoffel(metric, point, delta);
  // dgamma[e][a](b, c) = d_e Gamma^a_bc
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(dim);
  for (int e = 0; e < dim; ++e) {
    Eigen::VectorXd plus = point;
    Eigen::VectorXd minus = point;
    plus(e) += delta;
    minus(e) -= delta;
    const auto gp = fd_christoffel(metric, plus, delta);
    const auto gm = fd_christoffel(metric, minus, delta);
    dgamma[e].resize(dim);
    for (int a = 0; a < dim; ++a) dgamma[e][a] = (gp[a] - gm[a]) / (2 * delta);
  }
  Eigen::MatrixXd ricci = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    for (int d = b; d < dim; ++d) {
      double sum = 0.0;
      for (int a = 0; a < dim; ++a) {
        sum += dgamma[a][a](b, d) - dgamma[d][a](a, b);
        for (int e = 0; e < dim; ++e) sum += gamma[a](a, e) * gamma[e](b, d) - gamma[a](d, e) * gamma[e](a, b);
      }
      ricci(b, d) = ricci(d, b) = sum;
    }
  return ricci;
}

}  // namespace

Eigen::MatrixXd fd_ricci_oracle(const MetricFn& metric, const Eigen::VectorXd& point, FdSteps steps) {
  const Eigen::MatrixXd g = metric(point);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 0) || sv(0) / smallest > 1e12 || !g.allFinite())
    throw Error(ErrorCode::SingularMetric, "metric condition number exceeds 1e12");
  const Eigen::MatrixXd coarse = ricci_at_step(metric, point, steps.delta);
  if (!steps.richardson) return coarse;
  const Eigen::MatrixXd fine = ricci_at_step(metric, point, steps.delta / 2);
  return (4 * fine - coarse) / 3;
}

Eigen::MatrixXd closed_form_spacetime_ricci(const Profile& profile, const Fibre& fibre, const Eigen::VectorXd& point) {
  const int dim = static_cast<int>(point.size());
  const double r = point(1);
  const RadialJet h = profile.eval(r);
  const SpacetimeCurvature curv = spacetime_curvature(profile, fibre, r);
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(dim, dim);
  ric(0, 0) = -curv.beta * h.value;
  ric(1, 1) = curv.beta / h.value;
  const Eigen::VectorXd fibre_coords = point.tail(dim - 2);
  const double shift = (profile.dimension() - 2) * h.value + r * h.d1;
  ric.block(2, 2, dim - 2, dim - 2) = fibre_ricci(fibre, fibre_coords) - shift * fibre_metric(fibre, fibre_coords);
  return ric;
}

Eigen::MatrixXd closed_form_slice_ricci(const RadialJet& h_slice, const Fibre& fibre, int n,
                                        const Eigen::VectorXd& point) {
  const int dim = static_cast<int>(point.size());
  const double s = point(0);
  const SliceCurvature curv = slice_curvature(h_slice, fibre, s, n);
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(dim, dim);
  ric(0, 0) = curv.ric_ss;
  const Eigen::VectorXd fibre_coords = point.tail(dim - 1);
  ric.block(1, 1, dim - 1, dim - 1) =
      fibre_ricci(fibre, fibre_coords) - curv.ric_fibre_shift * fibre_metric(fibre, fibre_coords);
  return ric;
}

double relative_frame_error(const Eigen::MatrixXd& oracle, const Eigen::MatrixXd& closed_form,
                            const Eigen::MatrixXd& metric, double scale) {
  double diff = 0.0;
  double size = 0.0;
  for (int a = 0; a < metric.rows(); ++a)
    for (int b = 0; b < metric.cols(); ++b) {
      const double norm = std::sqrt(std::abs(metric(a, a) * metric(b, b)));
      diff = std::max(diff, std::abs(oracle(a, b) - closed_form(a, b)) / norm);
      size = std::max(size, std::abs(closed_form(a, b)) / norm);
    }
  return diff / std::max(size, scale);
}

double curvature_scale(const RadialJet& h, const Fibre& fibre, double r) {
  double lambda = 0.0;
  for (double e : fibre.ricci_eigenvalues) lambda = std::max(lambda, std::abs(e));
  return std::max({std::abs(h.d2), std::abs(h.d1) / r, (std::abs(h.value) + lambda) / (r * r)});
}

namespace {

std::vector<Eigen::MatrixXd> richardson_christoffel(const MetricFn& metric, const Eigen::VectorXd& point,
                                                   double delta) {
  auto coarse = fd_christoffel(metric, point, delta);
  const auto fine = fd_christoffel(metric, point, delta / 2);
  for (std::size_t a = 0; a < coarse.size(); ++a) coarse[a] = (4 * fine[a] - coarse[a]) / 3;
  return coarse;
}

}  // namespace

LeafOracle fd_leaf_oracle(const GraphSlice& graph, double s) {
  const Profile& profile = graph.base();
  const double h = profile.value(s);
  if (!(h > 0)) throw Error(ErrorCode::InsideHorizon, "leaf oracle needs h(s) > 0");
  const Fibre& fibre = graph.fibre();
  const double delta = default_steps(s).delta;

  const MetricFn st_metric = spacetime_metric(profile, fibre);
  const Eigen::VectorXd x = spacetime_point(fibre, 0.0, s);
  const Eigen::MatrixXd g = st_metric(x);
  const auto gamma = richardson_christoffel(st_metric, x, delta);
  const int dim = static_cast<int>(x.size());
  const Eigen::MatrixXd leaf_inverse = g.block(2, 2, dim - 2, dim - 2).inverse();

  double mc[2] = {0.0, 0.0};
  for (int a = 0; a < 2; ++a)
    for (int I = 2; I < dim; ++I)
      for (int J = 2; J < dim; ++J) mc[a] += leaf_inverse(I - 2, J - 2) * gamma[a](I, J);

  const double dT = height_slope(graph, s);
  const double tilt = std::sqrt(h) * std::sqrt(1 - h * h * dT * dT);
  const double normal_lower[2] = {g(0, 0) / tilt, g(1, 1) * h * h * dT / tilt};

  LeafOracle out;
  out.stcmc = g(0, 0) * mc[0] * mc[0] + g(1, 1) * mc[1] * mc[1];
  out.P = -(mc[0] * normal_lower[0] + mc[1] * normal_lower[1]);

  const MetricFn sl_metric = slice_metric(graph.slice_terms(), fibre);
  const Eigen::VectorXd y = slice_point(fibre, s);
  const Eigen::MatrixXd gs = sl_metric(y);
  const auto gamma_s = richardson_christoffel(sl_metric, y, delta);
  const Eigen::MatrixXd leaf_inverse_s = gs.block(1, 1, dim - 2, dim - 2).inverse();
  double trace = 0.0;
  for (int I = 1; I < dim - 1; ++I)
    for (int J = 1; J < dim - 1; ++J) trace += leaf_inverse_s(I - 1, J - 1) * gamma_s[0](I, J);
  // Unit outward normal d_s sqrt(h_T) has lower component 1/sqrt(h_T).
  out.H = -trace / std::sqrt(graph.slice_terms()(s));
  return out;
}

}  // namespace umbilic::oracle
