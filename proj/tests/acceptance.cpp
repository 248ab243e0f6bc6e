// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "umbilic/curvature.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/fd_oracle.hpp"
#include "umbilic/graphs.hpp"
#include "umbilic/kruskal.hpp"
#include "umbilic/nec.hpp"
#include "umbilic/photon.hpp"
#include "umbilic/verify.hpp"

using namespace umbilic;

namespace {

struct Tally {
  double worst = 0.0;
  bool ok = true;
  std::string note;

  void residual(double value, double tol, const std::string& where) {
    if (!(value <= tol)) {
      if (ok) note = where + " residual " + std::to_string(value);
      ok = false;
    }
    worst = std::max(worst, std::isfinite(value) ? value / std::max(tol, 1e-300) : INFINITY);
  }
  void require(bool cond, const std::string& where) {
    if (!cond && ok) note = where;
    ok = ok && cond;
  }
};

int failures = 0;

void report(int id, const std::string& name, Tally t) {
  if (!t.ok) ++failures;
  std::printf("%s %2d %-28s worst/tol=%.3g%s%s\n", t.ok ? "PASS" : "FAIL", id, name.c_str(), t.worst,
              t.note.empty() ? "" : "  ", t.note.c_str());
}

template <class F>
void guarded(Tally& t, const std::string& where, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    t.require(false, where + ": " + e.what());
  }
}

std::string at(const std::string& name, double r) { return name + " r=" + std::to_string(r); }

// 1. Oracle equivalence for spacetime and slice curvature.
Tally oracle_equivalence() {
  Tally t;
  unsigned seed = 101;
  for (const auto& e : verify::default_zoo()) {
    const int n = e.profile.dimension();
    const auto metric = oracle::spacetime_metric(e.profile, e.fibre);
    for (double r : verify::oracle_radii(e.profile, 20, seed++)) {
      guarded(t, at(e.name, r), [&] {
        const auto x = oracle::spacetime_point(e.fibre, 0.0, r);
        const auto fd = oracle::fd_ricci_oracle(metric, x, oracle::default_steps(r, e.profile.eval(r)));
        const auto cf = oracle::closed_form_spacetime_ricci(e.profile, e.fibre, x);
        t.residual(oracle::relative_frame_error(fd, cf, metric(x), oracle::curvature_scale(e.profile.eval(r), e.fibre, r)),
                   1e-5, at(e.name, r));
      });
    }
    const GraphSlice g = GraphSlice::hyperboloid(e.profile, e.fibre, 1.0);
    const auto smetric = oracle::slice_metric(g.slice_terms(), e.fibre);
    const double lo = std::max(0.3, 1.05 * g.inner_boundary());
    int used = 0;
    for (double s : oracle_ref::uniform(lo, 12.0, 40, seed++)) {
      if (g.slice_terms()(s) < 0.05 || used == 25) continue;
      ++used;
      guarded(t, at(e.name + " slice", s), [&] {
        const auto y = oracle::slice_point(e.fibre, s);
        const RadialJet hT = g.slice_jet(s);
        const auto fd = oracle::fd_ricci_oracle(smetric, y, oracle::default_steps(s, hT));
        const auto cf = oracle::closed_form_slice_ricci(hT, e.fibre, n, y);
        t.residual(oracle::relative_frame_error(fd, cf, smetric(y), oracle::curvature_scale(hT, e.fibre, s)), 1e-5,
                   at(e.name + " slice", s));
      });
    }
    t.require(used >= 20, e.name + " slice radii");
  }
  return t;
}

// 2. Vacuum zero for Schwarzschild n = 3, 4.
Tally vacuum_zero() {
  Tally t;
  for (int n : {3, 4}) {
    const Profile p = Profile::schwarzschild(1.0, n);
    const Fibre f = make_sphere(n);
    const double rh = find_zeros(p).r_H;
    for (double r : numerics::linear_grid(0.5, 10.0, 400)) {
      if (std::abs(r - rh) < 1e-3) continue;
      const RadialJet h = p.eval(r);
      const SpacetimeCurvature c = spacetime_curvature(p, f, r);
      const std::string where = at("schwarzschild n=" + std::to_string(n), r);
      t.residual(std::abs(nec_expression(h, r, n, f.ricci_eigenvalues[0])), 1e-10, where);
      t.residual(std::abs(eigenvalue_gap(p, f, r, 0)), 1e-10, where);
      t.residual(std::abs(c.beta), 1e-10, where);
      t.residual(std::abs(c.scalar), 1e-10, where);
    }
  }
  return t;
}

// 3. Euler-ODE exactness.
Tally euler_exactness() {
  Tally t;
  std::mt19937 gen(314);
  std::uniform_real_distribution<double> coef(-10, 10), rad(0.1, 10);
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + int(gen() % 3);
    const double c1 = coef(gen), c2 = coef(gen), s = rad(gen), p = 2.0 - n;
    const RadialJet x{c1 * std::pow(s, p) + c2 * s * s, c1 * p * std::pow(s, p - 1) + 2 * c2 * s,
                      c1 * p * (p - 1) * std::pow(s, p - 2) + 2 * c2};
    const double scale = std::abs(x.d2) / 2 + std::abs((n - 3) * x.d1 / (2 * s)) + std::abs((n - 2) * x.value / (s * s));
    t.residual(std::abs(odi_residual(x, s, n)) / scale, 1e-10, "sample " + std::to_string(i));
  }
  return t;
}

// 4. Monotonicity identity and monotonicity under the NEC.
Tally monotonicity() {
  Tally t;
  for (const auto& e : verify::default_zoo()) {
    const int n = e.profile.dimension();
    const auto radii = numerics::geometric_grid(0.3, 12.0, 200);
    for (double r : radii) {
      const MonotonicityResidual m = monotonicity_identity_residual(e.profile, e.fibre, r);
      t.residual(m.residual / m.scale, 1e-6, at(e.name, r));
    }
    for (std::size_t i = 1; i < radii.size(); ++i) {
      const double a = radii[i - 1], b = radii[i];
      const auto nec_ok = [&](double r) {
        return nec_expression(e.profile.eval(r), r, n, e.fibre.min_eigenvalue()) >= -kTolNec;
      };
      if (!nec_ok(a) || !nec_ok(b) || !nec_ok(0.5 * (a + b))) continue;
      const double ma = monotone_quantity(e.profile, e.fibre, a, 0), mb = monotone_quantity(e.profile, e.fibre, b, 0);
      t.require(mb >= ma - 1e-9 * std::max(1.0, std::abs(ma)), at(e.name + " M decreasing", b));
    }
  }
  return t;
}

// 5. Momentum constraint for the three graph families.
Tally constraint_vanishing() {
  Tally t;
  for (const auto& e : verify::default_zoo()) {
    std::vector<GraphSlice> graphs;
    for (double lambda : {0.5, 1.0, 2.0}) graphs.push_back(GraphSlice::hyperboloid(e.profile, e.fibre, lambda));
    graphs.push_back(GraphSlice::cmc(e.profile, e.fibre, 1.0, 0.5));
    graphs.push_back(GraphSlice::cmc(e.profile, e.fibre, 3.0, 0.0));
    graphs.push_back(GraphSlice::cmc(e.profile, e.fibre, -2.0, 1.0));
    graphs.push_back(GraphSlice::time_symmetric(e.profile, e.fibre));
    for (const auto& g : graphs)
      for (double s : numerics::geometric_grid(0.2, 15.0, 150)) {
        if (!g.in_domain(s)) continue;
        guarded(t, at(e.name + " " + g.describe(), s),
                [&] { t.residual(std::abs(momentum_residual(g, s)), 1e-9, at(e.name + " " + g.describe(), s)); });
      }
  }
  return t;
}

// 6. Umbilicity, family independence of the STCMC quantity and the leaf oracle.
Tally umbilicity() {
  Tally t;
  for (const auto& e : verify::default_zoo()) {
    const int n = e.profile.dimension();
    for (double lambda : {0.5, 1.0, 2.0}) {
      const GraphSlice g = GraphSlice::hyperboloid(e.profile, e.fibre, lambda);
      for (double s : numerics::geometric_grid(0.2, 15.0, 80)) {
        if (!g.in_domain(s)) continue;
        const GraphData d = graph_data(g, s);
        t.residual(std::abs(d.a - lambda / d.h_slice), 1e-10, at(e.name + " a_T", s));
        t.residual(std::abs(d.b - lambda), 1e-10, at(e.name + " b_T", s));
      }
    }
    const std::vector<GraphSlice> family{GraphSlice::hyperboloid(e.profile, e.fibre, 1.0),
                                         GraphSlice::cmc(e.profile, e.fibre, 3.0, -1.0),
                                         GraphSlice::time_symmetric(e.profile, e.fibre)};
    for (double s : numerics::geometric_grid(0.4, 10.0, 40)) {
      const double h = e.profile.value(s);
      const double expected = (n - 1) * (n - 1) * h / (s * s);
      for (const auto& g : family) {
        if (!g.in_domain(s)) continue;
        const LeafGeometry l = leaf_geometry(g, s);
        t.residual(std::abs(l.stcmc - expected), 1e-9, at(e.name + " " + g.describe(), s));
        if (h > 0.05) {
          guarded(t, at(e.name + " leaf oracle", s), [&] {
            const oracle::LeafOracle o = oracle::fd_leaf_oracle(g, s);
            t.residual(std::abs(o.stcmc - l.stcmc) / std::max(1.0, std::abs(l.stcmc)), 1e-6,
                       at(e.name + " leaf oracle " + g.describe(), s));
          });
        }
      }
    }
  }
  return t;
}

// 7. Kruskal chart properties.
Tally kruskal() {
  Tally t;
  const Profile schw = Profile::schwarzschild(1.0, 3);
  const KruskalChart sc = KruskalChart::build(schw, find_zeros(schw), 0);
  for (double r : numerics::linear_grid(0.05, 12.0, 120))
    t.residual(std::abs(sc.phi(r) - oracle_ref::schwarzschild_phi(r)) / std::max(1.0, std::abs(sc.phi(r))), 1e-8,
               at("closed form", r));

  for (const auto& e : verify::default_zoo()) {
    const ZeroStructure z = find_zeros(e.profile);
    if (z.empty() || !z.all_nondegenerate()) continue;
    for (std::size_t l = 0; l < z.zeros.size(); ++l) {
      const KruskalChart c = KruskalChart::build(e.profile, z, l);
      const double rl = c.horizon();
      const Interval d = c.domain();
      const double lo = std::max(d.lo + 0.05 * (rl - d.lo), 0.5 * rl);
      const double hi = std::isfinite(d.hi) ? d.hi - 0.05 * (d.hi - rl) : 3 * rl;
      const std::string name = e.name + " chart " + std::to_string(l);
      for (double r : numerics::linear_grid(lo, hi, 50)) {
        guarded(t, at(name, r), [&] {
          const double h = e.profile.value(r);
          const double step = 1e-3 * std::min({r, std::abs(r - rl), std::abs(c.surface_constant() * h)});
          const double fd = oracle_ref::d1([&](long double x) { return c.phi(double(x)); }, r, step);
          if (std::abs(r - rl) > 1e-3) t.residual(std::abs(c.phi(r) / fd - c.surface_constant() * h) / std::max(1.0, std::abs(h)), 1e-9, at(name + " ode", r));
          t.residual(std::abs(c.phi_inverse(c.phi(r)) - r) / r, 1e-9, at(name + " inverse", r));
          if (c.phi(r) > 0) {
            const KruskalPoint k = to_kruskal(c, 0.7, r);
            const RadialTime back = from_kruskal(c, k.u, k.v);
            t.residual(std::abs(back.r - r) / r, 1e-9, at(name + " round trip r", r));
            t.residual(std::abs(*back.t - 0.7), 1e-9, at(name + " round trip t", r));

            // Pullback of 2F du dv onto (t, r) must give -h dt^2 + dr^2/h.
            // u, v ~ sqrt(r - r_l) near the horizon and vary like exp(R/C), exp(t/2C):
            // resolve each of those length scales.
            const double C = c.surface_constant();
            const double dr = 1e-3 * std::min({r, std::abs(r - rl), std::abs(C * h)});
            const double dt = 1e-3 * std::abs(C);
            const auto jac = [&](double ht, double hr) {
              const auto p = [&](double k) { return to_kruskal(c, 0.7 + k * ht, r + k * hr); };
              const KruskalPoint a = p(2), b = p(1), m = p(-1), n = p(-2);
              const double step = ht + hr;
              return KruskalPoint{(-a.u + 8 * b.u - 8 * m.u + n.u) / (12 * step),
                                  (-a.v + 8 * b.v - 8 * m.v + n.v) / (12 * step)};
            };
            const KruskalPoint jr = jac(0, dr), jt = jac(dt, 0);
            const double ur = jr.u, vr = jr.v, ut = jt.u, vt = jt.v;
            const double F = c.conformal_factor(r);
            const double scale = std::max({1.0, std::abs(h), 1 / std::abs(h)});
            t.residual(std::abs(2 * F * ut * vt + h) / scale, 1e-7, at(name + " g_tt", r));
            t.residual(std::abs(F * (ur * vr + ur * vr) - 1 / h) / scale, 1e-7, at(name + " g_rr", r));
            t.residual(std::abs(F * (ut * vr + ur * vt)) / scale, 1e-7, at(name + " g_tr", r));
          }
        });
      }
    }
  }

  for (int sign : {+1, -1}) {
    const GraphSlice g = GraphSlice::hyperboloid(schw, make_sphere(3), 1.0, sign);
    for (double s : numerics::linear_grid(1.2, 3.0, 37)) {
      const KruskalPoint k = extend_graph(g, sc, s);
      t.residual(std::abs(k.u * k.v - sc.phi(s)) / std::max(1.0, std::abs(sc.phi(s))), 1e-9, at("extend", s));
    }
    const KruskalPoint at_horizon = extend_graph(g, sc, 2.0);
    const bool one_vanishes = (at_horizon.u == 0.0) != (at_horizon.v == 0.0);
    t.require(one_vanishes && (sign > 0 ? at_horizon.v == 0.0 : at_horizon.u == 0.0), "horizon crossing");
  }
  return t;
}

// 8. Photon gap family and the Schwarzschild scan.
Tally photon_gap() {
  Tally t;
  for (int n : {3, 4})
    for (double C : {0.05, 0.1, 0.5}) {
      const Profile p = Profile::quadratic_conformal(C, n);
      for (double r : numerics::geometric_grid(0.1, 50.0, 100))
        t.residual(std::abs(eigenvalue_gap(p, make_sphere(n), r, 0) * r / ((n - 1) * C) - 1), 1e-10,
                   at("C=" + std::to_string(C), r));
    }
  for (int n : {3, 4})
    t.require(!gap_zero_scan(Profile::schwarzschild(1.0, n), make_sphere(n), {0.5, 10.0}, 200).dense_condition,
              "schwarzschild scan");
  return t;
}

// 9. Isotropic correspondence.
Tally isotropic() {
  Tally t;
  const Profile schw = Profile::schwarzschild(1.0, 3);
  for (double r : numerics::linear_grid(2.2, 12.0, 30)) {
    const IsotropicPoint q = isotropic_from_areal(schw, 4.0, r);
    const double s = oracle_ref::isotropic_radius_n3(1.0, r);
    t.residual(std::abs(q.s - s) / s, 1e-8, at("schwarzschild s", r));
    t.residual(std::abs(q.psi - std::pow(1 + 0.5 / s, 2)), 1e-8, at("schwarzschild psi", r));
  }
  struct Case {
    std::string name;
    Profile profile;
    double r0;
    Interval range;
  };
  const std::vector<Case> cases{
      {"schwarzschild-n3", schw, 4.0, {2.5, 10.0}},
      {"schwarzschild-n4", Profile::schwarzschild(1.0, 4), 3.0, {1.8, 8.0}},
      {"reissner-nordstrom", Profile::reissner_nordstrom(1.0, 0.5, 3), 3.0, {2.2, 10.0}},
      {"schwarzschild-ads", Profile::schwarzschild_anti_de_sitter(1.0, -3.0, 3), 2.0, {1.2, 6.0}},
      {"quadratic-conformal", Profile::quadratic_conformal(0.1, 3), 2.0, {0.5, 8.0}},
      {"minkowski", Profile::minkowski_like(3), 1.0, {0.2, 10.0}},
  };
  for (const auto& c : cases)
    for (double r : numerics::linear_grid(c.range.lo, c.range.hi, 12)) {
      guarded(t, at(c.name, r), [&] {
        const IsotropicPoint q = isotropic_from_areal(c.profile, c.r0, r);
        const oracle_ref::Fn psi = [&](long double s) { return areal_from_isotropic(c.profile, c.r0, double(s)) / s; };
        const double rhs = 1 + q.s * oracle_ref::d1(psi, q.s, 2e-4 * q.s) / q.psi;
        t.residual(std::abs(q.lapse_sq - rhs * rhs), 1e-8, at(c.name + " flatness", r));
      });
    }
  return t;
}

// 10. The C0 threshold.
Tally c0() {
  Tally t;
  t.require(c0_threshold(Profile::schwarzschild(1.0, 3)) == kInfiniteC0, "schwarzschild not infinite");
  const Profile rn = Profile::reissner_nordstrom(1.0, 0.5, 3);
  const double value = c0_threshold(rn);
  t.require(std::isfinite(value) && value > 0, "RN threshold not finite");
  C0Search fine;
  fine.grid = 4 * fine.grid;
  t.residual(std::abs(c0_threshold(rn, fine) - value), 1e-6, "grid refinement");
  const double oracle = oracle_ref::tangency_threshold([&](double s) { return rn.value(s); }, 1e-3, 1e3);
  t.residual(std::abs(value - oracle) / oracle, 1e-6, "tangency oracle");
  for (double f : {0.1, 0.5, 0.9, 0.999}) {
    const GraphSlice g = GraphSlice::hyperboloid(rn, make_sphere(3), std::sqrt(f * value));
    t.require(g.inner_boundary() > 0 && g.inner_boundary_slope() > 0, "below threshold: lambda^2/C0=" + std::to_string(f));
  }
  for (double f : {1.001, 1.5, 4.0}) {
    const GraphSlice g = GraphSlice::hyperboloid(rn, make_sphere(3), std::sqrt(f * value));
    t.require(!(g.inner_boundary_slope() > 0), "above threshold: lambda^2/C0=" + std::to_string(f));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "C0(RN)=%.10g", value);
  if (t.ok) t.note = buf;
  return t;
}

}  // namespace

int main() {
  report(1, "oracle-equivalence", oracle_equivalence());
  report(2, "vacuum-zero", vacuum_zero());
  report(3, "euler-exactness", euler_exactness());
  report(4, "monotonicity", monotonicity());
  report(5, "constraint-vanishing", constraint_vanishing());
  report(6, "umbilicity-stcmc", umbilicity());
  report(7, "kruskal-chart", kruskal());
  report(8, "photon-gap", photon_gap());
  report(9, "isotropic", isotropic());
  report(10, "c0-threshold", c0());
  return failures == 0 ? 0 : 1;
}
