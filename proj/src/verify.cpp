#include "umbilic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "umbilic/curvature.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/fd_oracle.hpp"
#include "umbilic/graphs.hpp"
#include "umbilic/kruskal.hpp"
#include "umbilic/nec.hpp"
#include "umbilic/photon.hpp"

namespace umbilic::verify {

std::vector<ZooEntry> default_zoo() {
  return {
      {"schwarzschild-n3", Profile::schwarzschild(1.0, 3), make_sphere(3)},
      {"schwarzschild-n4", Profile::schwarzschild(1.0, 4), make_sphere(4)},
      {"reissner-nordstrom", Profile::reissner_nordstrom(1.0, 0.5, 3), make_sphere(3)},
      {"schwarzschild-ads", Profile::schwarzschild_anti_de_sitter(1.0, -3.0, 3), make_sphere(3)},
      {"quadratic-conformal", Profile::quadratic_conformal(0.1, 3), make_sphere(3)},
      {"minkowski", Profile::minkowski_like(3), make_sphere(3)},
  };
}

std::vector<double> oracle_radii(const Profile& profile, std::size_t per_region, unsigned seed) {
  const ZeroStructure zeros = find_zeros(profile);
  std::vector<double> edges;
  const double first = zeros.empty() ? 1.0 : zeros.zeros.front().radius;
  const double last = zeros.empty() ? 1.0 : zeros.zeros.back().radius;
  edges.push_back(std::min(0.5, 0.5 * first));
  for (const auto& z : zeros.zeros) edges.push_back(z.radius);
  edges.push_back(std::max(10.0, 2 * last));

  std::mt19937 rng(seed);
  std::vector<double> radii;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    std::uniform_real_distribution<double> pick(edges[k], edges[k + 1]);
    std::size_t taken = 0;
    for (int attempt = 0; attempt < 10000 && taken < per_region; ++attempt) {
      const double r = pick(rng);
      if (std::abs(profile.value(r)) < 0.05) continue;
      radii.push_back(r);
      ++taken;
    }
  }
  std::sort(radii.begin(), radii.end());
  return radii;
}

std::vector<std::string> groups() { return {"profile", "fibre", "curvature", "nec", "graphs", "kruskal", "photon"}; }

std::vector<std::string> faults() { return {"ric-ss-sign"}; }

namespace {

// Accumulates one invariant: residuals are already normalized so that the
// invariant holds iff residual <= tolerance.
class Check {
 public:
  Check(std::string id, std::string group, double tolerance) {
    result_.id = std::move(id);
    result_.group = std::move(group);
    result_.tolerance = tolerance;
  }

  void residual(double value, const std::string& where) {
    ++result_.samples;
    if (!(value <= result_.tolerance)) {
      if (result_.passed) result_.detail = where + ": residual " + std::to_string(value);
      result_.passed = false;
    }
    if (std::isnan(value) || value > result_.max_residual) result_.max_residual = value;
  }

  void require(bool ok, const std::string& where) { residual(ok ? 0.0 : std::numeric_limits<double>::infinity(), where); }

  void error(const std::exception& e, const std::string& where) {
    ++result_.samples;
    if (result_.passed) result_.detail = where + ": " + e.what();
    result_.passed = false;
    result_.max_residual = std::numeric_limits<double>::infinity();
  }

  InvariantResult finish() const { return result_; }

 private:
  InvariantResult result_;
};

std::string at(const std::string& name, double r) {
  std::ostringstream out;
  out << name << " r=" << r;
  return out.str();
}

double derivative_magnitude(const PowerSum& f, int order, double r) {
  double total = 0.0;
  for (const auto& t : f.terms()) {
    double factor = t.coefficient;
    for (int k = 0; k < order; ++k) factor *= t.exponent - k;
    total += std::abs(factor * std::pow(r, t.exponent - order));
  }
  return total > 0 ? total : 1.0;
}

struct Suite {
  Options options;
  std::vector<ZooEntry> zoo = default_zoo();
  std::vector<InvariantResult> results;

  bool fault(const std::string& name) const { return options.inject_fault == name; }

  // Slice closed form routed through here so mutation mode can corrupt it.
  SliceCurvature slice(const RadialJet& hT, const Fibre& fibre, double s, int n) const {
    SliceCurvature c = slice_curvature(hT, fibre, s, n);
    if (fault("ric-ss-sign")) c.ric_ss = -c.ric_ss;
    return c;
  }

  std::vector<GraphSlice> graphs_over(const ZooEntry& e) const {
    std::vector<GraphSlice> out;
    for (double lambda : {0.5, 1.0, 2.0}) out.push_back(GraphSlice::hyperboloid(e.profile, e.fibre, lambda));
    out.push_back(GraphSlice::cmc(e.profile, e.fibre, 3.0, 0.0));
    out.push_back(GraphSlice::cmc(e.profile, e.fibre, 1.0, 0.5));
    out.push_back(GraphSlice::cmc(e.profile, e.fibre, -2.0, 0.3, -1));
    out.push_back(GraphSlice::time_symmetric(e.profile, e.fibre));
    return out;
  }

  void add(const Check& c) { results.push_back(c.finish()); }

  template <class Body>
  void guarded(Check& c, const std::string& where, Body&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      c.error(e, where);
    }
  }

  void profile_group();
  void fibre_group();
  void curvature_group();
  void nec_group();
  void graphs_group();
  void kruskal_group();
  void photon_group();
};

void Suite::profile_group() {
  Check fd("profile.fd-derivatives", "profile", 1e-6);
  Check zero("profile.zero-residual", "profile", 1.0);
  Check single("profile.schwarzschild-single-zero", "profile", 1e-12);
  for (const auto& e : zoo) {
    const auto& p = e.profile;
    for (double r : numerics::geometric_grid(0.3, 20.0, 25)) {
      guarded(fd, at(e.name, r), [&] {
        const auto f = [&](double x) { return p.value(x); };
        const double d1 = numerics::derivative(f, r, 1e-3 * r);
        const double d2 = numerics::second_derivative(f, r, 1e-3 * r);
        fd.residual(std::abs(d1 - p.derivative(1, r)) / derivative_magnitude(p.terms(), 1, r), at(e.name, r));
        fd.residual(std::abs(d2 - p.derivative(2, r)) / derivative_magnitude(p.terms(), 2, r), at(e.name, r));
      });
    }
    for (const auto& z : find_zeros(p).zeros)
      zero.residual(std::abs(p.value(z.radius)) / (kTolRoot * std::max(1.0, p.magnitude(z.radius))), at(e.name, z.radius));
  }
  for (int n : {3, 4, 5}) {
    const Profile p = Profile::schwarzschild(1.0, n);
    const ZeroStructure z = find_zeros(p);
    single.require(z.zeros.size() == 1, "schwarzschild n=" + std::to_string(n));
    if (z.zeros.size() == 1)
      single.residual(std::abs(z.r_H - std::pow(2.0, 1.0 / (n - 2))) / z.r_H, "schwarzschild n=" + std::to_string(n));
  }
  add(fd);
  add(zero);
  add(single);
}

void Suite::fibre_group() {
  Check alpha("fibre.alpha-bound", "fibre", 0.0);
  std::vector<Fibre> fibres;
  for (int n = 3; n <= 6; ++n) fibres.push_back(make_sphere(n));
  fibres.push_back(make_einstein(3, -1.0));
  fibres.push_back(make_einstein(5, 3.0));
  fibres.push_back(make_product(4, {{2, 1.0}, {1, 0.0}}));
  fibres.push_back(make_product(5, {{2, 1.0}, {2, -0.5}}));
  fibres.push_back(make_eigenvalues(4, {2.0, 0.5, 0.5}));
  for (const auto& f : fibres) {
    const int n = f.dim + 1;
    for (double e : f.ricci_eigenvalues) alpha.residual(std::max(0.0, f.alpha * (n - 2) - e), f.describe());
  }
  add(alpha);
}

void Suite::curvature_group() {
  Check st("curvature.oracle-spacetime", "curvature", 1e-5);
  Check sl("curvature.oracle-slice", "curvature", 1e-5);
  Check trace("curvature.trace-consistency", "curvature", 1e-10);
  Check kr("curvature.kruskal-fibre-eigenvalues", "curvature", 0.0);
  Check hess("curvature.hessian-identity", "curvature", 1e-9);
  unsigned seed = 7;
  for (const auto& e : zoo) {
    const int n = e.profile.dimension();
    const auto radii = oracle_radii(e.profile, options.radii_per_region, seed++);
    std::vector<double> errors(radii.size(), 0.0);
    std::vector<std::string> failures(radii.size());
    numerics::parallel_for(radii.size(), [&](std::size_t i) {
      const double r = radii[i];
      try {
        const auto metric = oracle::spacetime_metric(e.profile, e.fibre);
        const auto x = oracle::spacetime_point(e.fibre, 0.0, r);
        const auto fd = oracle::fd_ricci_oracle(metric, x, oracle::default_steps(r, e.profile.eval(r)));
        const auto cf = oracle::closed_form_spacetime_ricci(e.profile, e.fibre, x);
        errors[i] = oracle::relative_frame_error(fd, cf, metric(x), oracle::curvature_scale(e.profile.eval(r), e.fibre, r));
      } catch (const std::exception& ex) {
        failures[i] = ex.what();
      }
    });
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!failures[i].empty())
        st.error(std::runtime_error(failures[i]), at(e.name, radii[i]));
      else
        st.residual(errors[i], at(e.name, radii[i]));
    }

    // Slices: hyperboloid and CMC families on their domains.
    const std::vector<GraphSlice> slices{GraphSlice::hyperboloid(e.profile, e.fibre, 0.5),
                                         GraphSlice::hyperboloid(e.profile, e.fibre, 1.0),
                                         GraphSlice::cmc(e.profile, e.fibre, 1.0, 0.5),
                                         GraphSlice::cmc(e.profile, e.fibre, 3.0, 0.0)};
    for (const auto& g : slices) {
      std::vector<double> pts;
      for (double s : numerics::geometric_grid(0.3, 12.0, 60))
        if (g.slice_terms()(s) >= 0.05) pts.push_back(s);
      std::vector<double> errs(pts.size(), 0.0);
      std::vector<std::string> fails(pts.size());
      numerics::parallel_for(pts.size(), [&](std::size_t i) {
        const double s = pts[i];
        try {
          const RadialJet hT = g.slice_jet(s);
          const auto metric = oracle::slice_metric(g.slice_terms(), e.fibre);
          const auto y = oracle::slice_point(e.fibre, s);
          const auto fd = oracle::fd_ricci_oracle(metric, y, oracle::default_steps(s, hT));
          auto cf = oracle::closed_form_slice_ricci(hT, e.fibre, n, y);
          cf(0, 0) = slice(hT, e.fibre, s, n).ric_ss;
          errs[i] = oracle::relative_frame_error(fd, cf, metric(y), oracle::curvature_scale(hT, e.fibre, s));
        } catch (const std::exception& ex) {
          fails[i] = ex.what();
        }
      });
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string where = at(e.name + " " + g.describe(), pts[i]);
        if (!fails[i].empty())
          sl.error(std::runtime_error(fails[i]), where);
        else
          sl.residual(errs[i], where);
      }
      for (double s : pts) {
        const RadialJet hT = g.slice_jet(s);
        const SliceCurvature c = slice(hT, e.fibre, s, n);
        double sum = hT.value * c.ric_ss;
        for (std::size_t k = 0; k < e.fibre.ricci_eigenvalues.size(); ++k)
          sum += e.fibre.multiplicities[k] * (e.fibre.ricci_eigenvalues[k] - c.ric_fibre_shift) / (s * s);
        trace.residual(std::abs(sum - c.scalar) / std::max(1.0, oracle::curvature_scale(hT, e.fibre, s)),
                       at(e.name + " " + g.describe(), s));
      }
    }

    const ZeroStructure zeros = find_zeros(e.profile);
    if (!zeros.empty() && zeros.all_nondegenerate()) {
      for (const auto& chart : build_atlas(e.profile, zeros)) {
        const Interval d = chart.domain();
        const double hi = std::isfinite(d.hi) ? d.hi : 3 * chart.horizon();
        for (double rho : numerics::linear_grid(d.lo + 0.05 * (hi - d.lo), hi - 0.05 * (hi - d.lo), 10)) {
          guarded(kr, at(e.name, rho), [&] {
            const auto a = kruskal_ricci(chart, e.fibre, rho).fibre_eigs;
            const auto b = spacetime_curvature(e.profile, e.fibre, rho).fibre_eigs;
            double diff = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
            kr.residual(diff, at(e.name, rho));
          });
        }
      }
    }

    for (double lambda : {0.5, 1.0}) {
      const GraphSlice g = GraphSlice::hyperboloid(e.profile, e.fibre, lambda);
      for (double s : numerics::geometric_grid(0.4, 10.0, 15)) {
        if (!(e.profile.value(s) > 0.05) || !g.in_domain(s)) continue;
        for (const auto [c1, c2] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{0.6, 0.8}}) {
          guarded(hess, at(e.name, s), [&] {
            const HessianIdentity id = hessian_identity_check(g, s, c1, c2);
            hess.residual(id.residual / std::max(1.0, std::abs(id.rhs)), at(e.name, s));
          });
        }
      }
    }
  }
  add(st);
  add(sl);
  add(trace);
  add(kr);
  add(hess);
}

void Suite::nec_group() {
  Check eq("nec.equivalence", "nec", 1e-12);
  Check mono("nec.monotonicity-identity", "nec", 1e-6);
  Check nondecreasing("nec.monotone-where-nec", "nec", 1e-9);
  Check euler("nec.euler-exactness", "nec", 1e-10);
  for (const auto& e : zoo) {
    const Interval iv{0.5, 10.0};
    const NecReport report = nec_check(e.profile, e.fibre, iv, 400);
    eq.residual(report.equivalence_gap, e.name);
    for (double r : numerics::geometric_grid(0.5, 10.0, 30)) {
      guarded(mono, at(e.name, r), [&] {
        const auto m = monotonicity_identity_residual(e.profile, e.fibre, r);
        mono.residual(m.residual / m.scale, at(e.name, r));
      });
    }
    if (report.satisfied) {
      double previous = -std::numeric_limits<double>::infinity();
      for (double r : numerics::linear_grid(iv.lo, iv.hi, 200)) {
        const double m = monotone_quantity(e.profile, e.fibre, r, 0);
        nondecreasing.residual(std::max(0.0, previous - m) / std::max(1.0, std::abs(m)), at(e.name, r));
        previous = m;
      }
    }
  }
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> radius(0.2, 5.0);
  std::uniform_int_distribution<int> dim(3, 5);
  for (int i = 0; i < 100; ++i) {
    const double c1 = coef(rng);
    const double c2 = coef(rng);
    const int n = dim(rng);
    const double s = radius(rng);
    const PowerSum x({{c1, 2.0 - n}, {c2, 2.0}});
    const double q = odi_residual(x.jet(s), s, n);
    const double scale = derivative_magnitude(x, 2, s) + derivative_magnitude(x, 1, s) / s + x.magnitude(s) / (s * s);
    euler.residual(std::abs(q) / scale, "random sample " + std::to_string(i));
  }
  add(eq);
  add(mono);
  add(nondecreasing);
  add(euler);
}

void Suite::graphs_group() {
  Check umb("graphs.umbilicity", "graphs", 1e-10);
  Check diff("graphs.difference-identities", "graphs", 1e-10);
  Check momentum("graphs.momentum-constraint", "graphs", 1e-9);
  Check energy("graphs.energy-constraint", "graphs", 1e-9);
  Check height("graphs.height-consistency", "graphs", 1e-7);
  Check products("graphs.leaf-products", "graphs", 1e-12);
  Check family("graphs.leaf-family-independence", "graphs", 1e-9);
  Check leaf_fd("graphs.leaf-oracle", "graphs", 1e-6);
  Check constant_p("graphs.hyperboloid-constant-P", "graphs", 1e-10);
  Check bt("graphs.hyperboloid-bt-vanishes", "graphs", 1e-12);

  for (const auto& e : zoo) {
    const int n = e.profile.dimension();
    const auto graphs = graphs_over(e);
    const auto radii = numerics::geometric_grid(0.3, 10.0, 30);
    for (double s : radii) {
      double leaf_min = std::numeric_limits<double>::infinity();
      double leaf_max = -leaf_min;
      const RadialJet h = e.profile.eval(s);
      for (const auto& g : graphs) {
        if (!g.in_domain(s)) continue;
        const std::string where = at(e.name + " " + g.describe(), s);
        guarded(diff, where, [&] {
          const GraphData d = graph_data(g, s);
          const double scale = std::max({1.0, std::abs(d.h_slice), std::abs(h.value)});
          diff.residual(std::abs(d.b * d.b * s * s - (d.h_slice - h.value)) / scale, where);
          const double dscale = std::max({1.0, std::abs(d.h_slice_d1), std::abs(h.d1)});
          diff.residual(std::abs(2 * s * d.h_slice * d.a * d.b - (d.h_slice_d1 - h.d1)) / dscale, where);
          momentum.residual(std::abs(momentum_residual(g, s)), where);
          const EnergyDensity mu = energy_density(g, s);
          const ExtrinsicInvariants k = extrinsic_invariants(g, s);
          const double escale = std::max({1.0, k.norm_squared, k.trace * k.trace, std::abs(mu.half_R0)});
          energy.residual(std::abs(mu.mu - mu.half_R0) / escale, where);
          const LeafGeometry leaf = leaf_geometry(g, s);
          const double expected = (n - 1) * (n - 1) * h.value / (s * s);
          products.residual(std::abs(leaf.stcmc - expected) / std::max(1.0, leaf.H * leaf.H), where);
          leaf_min = std::min(leaf_min, leaf.stcmc);
          leaf_max = std::max(leaf_max, leaf.stcmc);
          if (g.family() == GraphFamily::Hyperboloid) {
            const double lambda = g.parameters().at("lambda");
            umb.residual(std::abs(d.a - lambda / d.h_slice) * d.h_slice / std::max(1.0, lambda), where);
            umb.residual(std::abs(d.b - lambda) / std::max(1.0, lambda), where);
            constant_p.residual(std::abs(leaf.P - (n - 1) * lambda) / std::max(1.0, lambda), where);
            bt.residual(std::abs(bt_coefficient(g, s)) / std::max(1.0, lambda * lambda), where);
          }
          if (h.value > 0.05 && g.family() != GraphFamily::TimeSymmetric && e.fibre.model) {
            const oracle::LeafOracle fd = oracle::fd_leaf_oracle(g, s);
            const double lscale = std::max(1.0, leaf.H * leaf.H);
            leaf_fd.residual(std::abs(fd.stcmc - leaf.stcmc) / lscale, where);
            leaf_fd.residual(std::abs(fd.P - leaf.P) / std::max(1.0, std::abs(leaf.P)), where);
            leaf_fd.residual(std::abs(fd.H - leaf.H) / std::max(1.0, leaf.H), where);
          }
        });
      }
      if (leaf_max >= leaf_min) family.residual(leaf_max - leaf_min, at(e.name, s));
    }
  }

  const GraphSlice g = GraphSlice::hyperboloid(Profile::schwarzschild(1.0, 3), make_sphere(3), 1.0);
  for (double s : {3.0, 4.0, 6.0}) {
    guarded(height, at("schwarzschild-n3 hyperboloid", s), [&] {
      const auto T = [&](double x) { return height_function(g, 2.5, x); };
      const double fd = numerics::derivative(T, s, 1e-2);
      height.residual(std::abs(fd - height_slope(g, s)), at("schwarzschild-n3 hyperboloid", s));
    });
  }
  for (const auto& c : {umb, diff, momentum, energy, height, products, family, leaf_fd, constant_p, bt}) add(c);
}

void Suite::kruskal_group() {
  Check ode("kruskal.defining-ode", "kruskal", 1e-9);
  Check norm("kruskal.normalization", "kruskal", 1e-9);
  Check closed("kruskal.schwarzschild-closed-form", "kruskal", 1e-8);
  Check trip("kruskal.round-trip", "kruskal", 1e-9);
  Check pull("kruskal.metric-pullback", "kruskal", 1e-7);
  Check null("kruskal.null-contraction", "kruskal", 1e-9);
  Check product("kruskal.extend-product", "kruskal", 1e-9);
  Check crossing("kruskal.extend-crossing", "kruskal", 0.0);
  Check height("kruskal.extend-height", "kruskal", 1e-7);

  std::mt19937 rng(99);
  for (const auto& e : zoo) {
    const ZeroStructure zeros = find_zeros(e.profile);
    if (zeros.empty() || !zeros.all_nondegenerate()) continue;
    for (const auto& chart : build_atlas(e.profile, zeros)) {
      const double rl = chart.horizon();
      const double c = chart.surface_constant();
      const Interval d = chart.domain();
      const double lo = std::max(d.lo + 0.02 * (rl - d.lo), 0.5 * rl);
      const double hi = std::isfinite(d.hi) ? std::min(d.hi - 0.02 * (d.hi - rl), 3 * rl) : 3 * rl;
      const std::string name = e.name + " chart " + std::to_string(chart.index());

      guarded(norm, name, [&] {
        norm.residual(std::abs(chart.phi(rl)), name + " phi(r_l)");
        norm.residual(std::abs(chart.phi_derivative(rl) - 1), name + " phi'(r_l)");
      });
      for (double r : numerics::linear_grid(lo, hi, 100)) {
        guarded(ode, at(name, r), [&] {
          const auto phi = [&](double x) { return chart.phi(x); };
          const double step = 1e-3 * std::min({r - d.lo, std::isfinite(d.hi) ? d.hi - r : r, r});
          const double dphi = numerics::derivative(phi, r, step);
          const double value = chart.phi(r);
          ode.residual(std::abs(value / dphi - c * e.profile.value(r)) / (1 + std::abs(value)), at(name, r));
          norm.residual(std::abs(chart.conformal_factor(r) * chart.phi_derivative(r) - 2 * c) / std::abs(2 * c),
                        at(name, r));
        });
        guarded(null, at(name, r), [&] {
          const double lhs = kruskal_null_contraction(chart, e.fibre, r, 0);
          const double rhs = nec_expression(e.profile.eval(r), r, e.profile.dimension(), e.fibre.min_eigenvalue());
          null.residual(std::abs(lhs - rhs) / std::max(1.0, oracle::curvature_scale(e.profile.eval(r), e.fibre, r)),
                        at(name, r));
          null.require((lhs >= -kTolNec) == (rhs >= -kTolNec), at(name, r));
        });
      }

      // Phi > 0 patch: r > r_l.
      std::uniform_real_distribution<double> pick_r(rl + 0.05 * (hi - rl), hi);
      std::uniform_real_distribution<double> pick_t(-2.0, 2.0);
      for (int i = 0; i < 20; ++i) {
        const double r = pick_r(rng);
        const double t = pick_t(rng);
        guarded(trip, at(name, r), [&] {
          const KruskalPoint p = to_kruskal(chart, t, r);
          const RadialTime back = from_kruskal(chart, p.u, p.v);
          trip.residual(std::abs(back.r - r) / r, at(name, r));
          trip.residual(back.t ? std::abs(*back.t - t) : std::numeric_limits<double>::infinity(), at(name, r));
        });
        guarded(pull, at(name, r), [&] {
          const double dt = 1e-4;
          const double dr = 1e-4 * r;
          const auto u = [&](double tt, double rr) { return to_kruskal(chart, tt, rr); };
          const auto jac = [&](auto&& along, double step) {
            const auto p1 = along(1.0), m1 = along(-1.0), p2 = along(0.5), m2 = along(-0.5);
            const double du = (8 * (p2.u - m2.u) - (p1.u - m1.u)) / (6 * step);
            const double dv = (8 * (p2.v - m2.v) - (p1.v - m1.v)) / (6 * step);
            return std::pair{du, dv};
          };
          const auto [ut, vt] = jac([&](double k) { return u(t + k * dt, r); }, dt);
          const auto [ur, vr] = jac([&](double k) { return u(t, r + k * dr); }, dr);
          const double F = chart.conformal_factor(r);
          const double h = e.profile.value(r);
          const double gtt = 2 * F * ut * vt;
          const double grr = 2 * F * ur * vr;
          const double gtr = F * (ut * vr + ur * vt);
          pull.residual(std::abs(gtt + h) / std::abs(h), at(name, r) + " g_tt");
          pull.residual(std::abs(grr - 1 / h) * std::abs(h), at(name, r) + " g_rr");
          pull.residual(std::abs(gtr), at(name, r) + " g_tr");
        });
      }

      if (c > 0) {
        for (int sign : {+1, -1}) {
          const GraphSlice g = GraphSlice::hyperboloid(e.profile, e.fibre, 1.0, sign);
          const std::string gname = name + (sign > 0 ? " +" : " -");
          for (double s : numerics::linear_grid(std::max(lo, g.inner_boundary() * 1.02 + 1e-3), hi, 40)) {
            if (!g.in_domain(s)) continue;
            guarded(product, at(gname, s), [&] {
              const KruskalPoint p = extend_graph(g, chart, s);
              product.residual(std::abs(p.u * p.v - chart.phi(s)) / (1 + std::abs(chart.phi(s))), at(gname, s));
            });
          }
          guarded(crossing, gname, [&] {
            const KruskalPoint p = extend_graph(g, chart, rl);
            const double vanishing = sign > 0 ? p.v : p.u;
            const double other = sign > 0 ? p.u : p.v;
            crossing.require(std::abs(vanishing) <= 1e-12 && std::abs(other) > 1e-6, gname + " at r_l");
          });
          guarded(height, gname, [&] {
            const double s0 = rl + 0.5 * (hi - rl);
            const double s1 = hi;
            const KruskalPoint p0 = extend_graph(g, chart, s0);
            const KruskalPoint p1 = extend_graph(g, chart, s1);
            const double dt = c * (std::log(p1.v / p1.u) - std::log(p0.v / p0.u));
            height.residual(std::abs(dt - height_function(g, s0, s1)), gname);
          });
        }
      }
    }
  }

  const Profile s3 = Profile::schwarzschild(1.0, 3);
  const KruskalChart chart = KruskalChart::build(s3, find_zeros(s3), 0);
  for (double r : numerics::linear_grid(0.1, 12.0, 60)) {
    guarded(closed, at("schwarzschild-n3", r), [&] {
      const double exact = (r - 2) * std::exp((r - 2) / 2);
      closed.residual(std::abs(chart.phi(r) - exact) / std::max(1.0, std::abs(exact)), at("schwarzschild-n3", r));
    });
  }
  for (const auto& c : {ode, norm, closed, trip, pull, null, product, crossing, height}) add(c);
}

void Suite::photon_group() {
  Check gap("photon.gap-equals-odi", "photon", 1e-12);
  Check implies("photon.positive-gap-implies-nec", "photon", 0.0);
  Check timelike("photon.timelike-relations", "photon", 1e-10);
  Check trip("photon.isotropic-round-trip", "photon", 1e-8);
  Check iso("photon.schwarzschild-isotropic", "photon", 1e-8);
  Check flat("photon.isotropic-flatness", "photon", 1e-8);
  Check conformal("photon.conformal-family", "photon", 1e-10);
  Check scan("photon.schwarzschild-gap-scan", "photon", 0.0);

  std::vector<ZooEntry> extended = zoo;
  extended.push_back({"schwarzschild-ds", Profile::schwarzschild_de_sitter(0.1, 0.3, 3), make_sphere(3)});
  extended.push_back({"custom-positive-gap", Profile::custom({{1.0, 0.0}, {0.3, 1.0}}, 3), make_sphere(3)});
  for (const auto& e : extended) {
    const int n = e.profile.dimension();
    double min_gap = std::numeric_limits<double>::infinity();
    for (double r : numerics::geometric_grid(0.5, 10.0, 40)) {
      const RadialJet h = e.profile.eval(r);
      const double E = eigenvalue_gap(e.profile, e.fibre, r, 0);
      const RadialJet shifted{h.value - e.fibre.alpha, h.d1, h.d2};
      gap.residual(std::abs(E - odi_residual(shifted, r, n)) / std::max(1.0, oracle::curvature_scale(h, e.fibre, r)),
                   at(e.name, r));
      min_gap = std::min(min_gap, E);
      for (double lambda : {0.5, 1.0, 2.0, -1.0}) {
        if (!(lambda * lambda * r * r > h.value)) continue;
        timelike.residual(timelike_photon_relations(e.profile, lambda, r).residual, at(e.name, r));
      }
    }
    if (min_gap > kTolGap) implies.require(nec_check(e.profile, e.fibre, {0.5, 10.0}, 200).satisfied, e.name);
  }

  struct IsoCase {
    std::string name;
    Profile profile;
    double r0;
    Interval range;
  };
  const std::vector<IsoCase> cases{
      {"schwarzschild-n3", Profile::schwarzschild(1.0, 3), 4.0, {2.5, 10.0}},
      {"schwarzschild-n4", Profile::schwarzschild(1.0, 4), 3.0, {1.8, 8.0}},
      {"schwarzschild-ads", Profile::schwarzschild_anti_de_sitter(1.0, -3.0, 3), 2.0, {1.2, 6.0}},
      {"quadratic-conformal", Profile::quadratic_conformal(0.1, 3), 2.0, {0.5, 8.0}},
      {"minkowski", Profile::minkowski_like(3), 1.0, {0.2, 10.0}},
  };
  for (const auto& c : cases) {
    for (double r : numerics::linear_grid(c.range.lo, c.range.hi, 8)) {
      guarded(trip, at(c.name, r), [&] {
        const IsotropicPoint p = isotropic_from_areal(c.profile, c.r0, r);
        trip.residual(std::abs(areal_from_isotropic(c.profile, c.r0, p.s) - r) / r, at(c.name, r));
        const auto psi = [&](double s) { return areal_from_isotropic(c.profile, c.r0, s) / s; };
        const double dpsi = numerics::derivative(psi, p.s, 2e-4 * p.s);
        const double rhs = 1 + p.s * dpsi / p.psi;
        flat.residual(std::abs(p.lapse_sq - rhs * rhs), at(c.name, r));
        if (c.profile.family() == ProfileFamily::Schwarzschild) {
          const int n = c.profile.dimension();
          const double closed = schwarzschild_isotropic_radius(1.0, n, r);
          iso.residual(std::abs(p.s - closed) / closed, at(c.name, r));
          const double expected_psi = std::pow(1 + 1.0 / (2 * std::pow(p.s, n - 2)), 2.0 / (n - 2));
          iso.residual(std::abs(p.psi - expected_psi), at(c.name, r));
        }
      });
    }
  }

  for (int n : {3, 4}) {
    for (double C : {0.0, 0.05, 0.1, 0.5}) {
      for (double c0 : {1.0, 2.0}) {
        const std::string where = "C=" + std::to_string(C) + " C0=" + std::to_string(c0) + " n=" + std::to_string(n);
        guarded(conformal, where, [&] {
          const ConformalFamily f = conformal_family(C, c0, n);
          conformal.residual(f.lapse_residual, where);
          conformal.residual(f.gap_residual, where);
          conformal.residual(std::abs(f.cosmological_constant + 0.5 * n * (n - 1) * C * C), where);
          flat.residual(f.flatness_residual, where + " flatness");
          if (C > 0)
            for (double r : numerics::linear_grid(0.5, 20.0, 20))
              conformal.residual(
                  std::abs(eigenvalue_gap(f.profile, make_sphere(n), r, 0) * r / ((n - 1) * C) - 1), at(where, r));
        });
      }
    }
  }

  for (int n : {3, 4}) {
    const GapScan g = gap_zero_scan(Profile::schwarzschild(1.0, n), make_sphere(n), {0.5, 10.0}, 200);
    scan.require(!g.dense_condition, "schwarzschild n=" + std::to_string(n));
  }
  for (const auto& c : {gap, implies, timelike, trip, iso, flat, conformal, scan}) add(c);
}

}  // namespace

std::vector<InvariantResult> run(const Options& options) {
  const auto known_groups = groups();
  if (!options.only.empty() && std::find(known_groups.begin(), known_groups.end(), options.only) == known_groups.end())
    throw Error(ErrorCode::InvalidConfig, "unknown verification group '" + options.only + "'");
  const auto known_faults = faults();
  if (!options.inject_fault.empty() &&
      std::find(known_faults.begin(), known_faults.end(), options.inject_fault) == known_faults.end())
    throw Error(ErrorCode::InvalidConfig, "unknown fault '" + options.inject_fault + "'");

  Suite suite{options};
  const std::vector<std::pair<std::string, void (Suite::*)()>> table{
      {"profile", &Suite::profile_group}, {"fibre", &Suite::fibre_group},     {"curvature", &Suite::curvature_group},
      {"nec", &Suite::nec_group},         {"graphs", &Suite::graphs_group},   {"kruskal", &Suite::kruskal_group},
      {"photon", &Suite::photon_group},
  };
  for (const auto& [name, fn] : table)
    if (options.only.empty() || options.only == name) (suite.*fn)();
  return suite.results;
}

}  // namespace umbilic::verify
