#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "umbilic/fibre.hpp"
#include "umbilic/graphs.hpp"
#include "umbilic/profile.hpp"

namespace umbilic::oracle {

using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Central-difference step; Richardson extrapolation combines delta and delta/2.
struct FdSteps {
  double delta = 1e-4;
  bool richardson = true;
};

/// delta = 1e-4 * max(1, r).
FdSteps default_steps(double r);
/// Same, capped at 1e-2 of the local length scale min(r, |h/h'|, sqrt|h/h''|)
/// so steep metric coefficients near a zero stay resolved.
FdSteps default_steps(double r, const RadialJet& h);

/// Christoffel symbols Gamma^a_{bc}, indexed [a](b, c), from central
/// differences of the metric.
std::vector<Eigen::MatrixXd> fd_christoffel(const MetricFn& metric, const Eigen::VectorXd& point, double delta);

/// Ricci tensor from central differences of the Christoffel symbols, which are
/// themselves differences of the metric. Throws SingularMetric when the metric
/// condition number at the point exceeds 1e12.
Eigen::MatrixXd fd_ricci_oracle(const MetricFn& metric, const Eigen::VectorXd& point, FdSteps steps);

/// Space-form product chart of a fibre with an explicit model.
int fibre_chart_dimension(const Fibre& fibre);
Eigen::VectorXd fibre_chart_point(const Fibre& fibre);
Eigen::MatrixXd fibre_metric(const Fibre& fibre, const Eigen::VectorXd& coords);
/// Closed-form Ric_N in the same chart.
Eigen::MatrixXd fibre_ricci(const Fibre& fibre, const Eigen::VectorXd& coords);

/// -h dt^2 + dr^2/h + r^2 g_N in coordinates (t, r, fibre...).
MetricFn spacetime_metric(const Profile& profile, const Fibre& fibre);
/// ds^2/h_T + s^2 g_N in coordinates (s, fibre...).
MetricFn slice_metric(const PowerSum& h_slice, const Fibre& fibre);

Eigen::VectorXd spacetime_point(const Fibre& fibre, double t, double r);
Eigen::VectorXd slice_point(const Fibre& fibre, double s);

/// Closed-form coordinate Ricci matrices built from spacetime_curvature and
/// slice_curvature, for comparison against the oracle.
Eigen::MatrixXd closed_form_spacetime_ricci(const Profile& profile, const Fibre& fibre, const Eigen::VectorXd& point);
Eigen::MatrixXd closed_form_slice_ricci(const RadialJet& h_slice, const Fibre& fibre, int n,
                                        const Eigen::VectorXd& point);

/// max_ab |A - B|_ab / sqrt|g_aa g_bb| divided by max(frame-normalized |B|, scale).
double relative_frame_error(const Eigen::MatrixXd& oracle, const Eigen::MatrixXd& closed_form,
                            const Eigen::MatrixXd& metric, double curvature_scale);

/// Natural curvature magnitude at radius r: max(|h''|, |h'|/r, (|h| + max|lambda_N|)/r^2).
double curvature_scale(const RadialJet& h, const Fibre& fibre, double r);

/// Leaf {s} x N of a graph, measured directly in the spacetime chart: the
/// mean curvature vector H^a = gamma^{IJ} Gamma^a_IJ projected to span{d_t, d_r},
/// P = gamma^{IJ} K_IJ with K_IJ = -g(nabla_I d_J, n), and H from the slice
/// chart. Christoffels are Richardson-combined over {delta, delta/2}.
struct LeafOracle {
  double H = 0.0;
  double P = 0.0;
  double stcmc = 0.0;  // g(H, H) in the spacetime metric
};

/// Needs h(s) > 0 (the graph normal is built in (t, r) coordinates).
LeafOracle fd_leaf_oracle(const GraphSlice& graph, double s);

}  // namespace umbilic::oracle
