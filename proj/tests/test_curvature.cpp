#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "umbilic/curvature.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/fd_oracle.hpp"
#include "umbilic/graphs.hpp"
#include "umbilic/kruskal.hpp"

using namespace umbilic;
using doctest::Approx;

TEST_SUITE("curvature") {
  TEST_CASE("flat slice in polar form") {
    const SliceCurvature c = slice_curvature({1.0, 0.0, 0.0}, make_sphere(3), 2.0, 3);
    CHECK(c.ric_ss == 0.0);
    CHECK(c.scalar == 0.0);
    CHECK(c.laplacian == 0.0);
  }

  TEST_CASE("time-symmetric schwarzschild slice") {
    const RadialJet h = Profile::schwarzschild(1.0, 3).eval(4.0);
    const SliceCurvature c = slice_curvature(h, make_sphere(3), 4.0, 3);
    CHECK(c.ric_ss == Approx(-0.0625).epsilon(1e-14));
    CHECK(std::abs(c.scalar) < 1e-15);
  }

  TEST_CASE("laplacian of the flat hyperboloid slice") {
    const SliceCurvature c = slice_curvature({2.0, 2.0, 2.0}, make_sphere(3), 1.0, 3);
    CHECK(c.laplacian == Approx(3.0).epsilon(1e-15));
  }

  TEST_CASE("non-spacelike slice rejected") {
    try {
      slice_curvature({-0.1, 1.0, 0.0}, make_sphere(3), 1.0, 3);
      FAIL("expected NonspacelikeSlice");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonspacelikeSlice);
    }
  }

  TEST_CASE("vacuum and flat spacetime curvature vanish") {
    const SpacetimeCurvature s = spacetime_curvature(Profile::schwarzschild(1.0, 3), make_sphere(3), 4.0);
    CHECK(std::abs(s.beta) < 1e-15);
    REQUIRE(s.fibre_eigs.size() == 1);
    CHECK(std::abs(s.fibre_eigs[0]) < 1e-15);
    CHECK(std::abs(s.scalar) < 1e-15);
    for (double r : {0.3, 1.0, 7.0}) {
      const SpacetimeCurvature m = spacetime_curvature(Profile::minkowski_like(3), make_sphere(3), r);
      CHECK(m.beta == 0.0);
      CHECK(m.fibre_eigs[0] == 0.0);
      CHECK(m.scalar == 0.0);
    }
  }

  TEST_CASE("quadratic conformal beta at r = 2") {
    const SpacetimeCurvature s = spacetime_curvature(Profile::quadratic_conformal(0.1, 3), make_sphere(3), 2.0);
    CHECK(s.beta == Approx(0.07).epsilon(1e-14));
  }

  TEST_CASE("fd oracle: minkowski in polar coordinates") {
    const oracle::MetricFn flat = [](const Eigen::VectorXd& x) {
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
      g(0, 0) = -1;
      g(1, 1) = 1;
      g(2, 2) = x(1) * x(1);
      g(3, 3) = x(1) * x(1) * std::sin(x(2)) * std::sin(x(2));
      return g;
    };
    Eigen::VectorXd p(4);
    p << 0, 3, 1, 1;
    const Eigen::MatrixXd ric = oracle::fd_ricci_oracle(flat, p, oracle::default_steps(3.0));
    CHECK(ric.cwiseAbs().maxCoeff() <= 1e-7);
  }

  TEST_CASE("fd oracle: schwarzschild is Ricci flat") {
    const Profile p = Profile::schwarzschild(1.0, 3);
    const Fibre f = make_sphere(3);
    const Eigen::MatrixXd ric =
        oracle::fd_ricci_oracle(oracle::spacetime_metric(p, f), oracle::spacetime_point(f, 0.0, 4.0),
                                oracle::default_steps(4.0));
    CHECK(ric.cwiseAbs().maxCoeff() <= 1e-6);
  }

  TEST_CASE("fd oracle: de sitter patch matches the closed forms") {
    const Profile p = Profile::custom({{1.0, 0.0}, {-0.25, 2.0}}, 3);
    const Fibre f = make_sphere(3);
    const Eigen::VectorXd x = oracle::spacetime_point(f, 0.0, 1.0);
    const auto metric = oracle::spacetime_metric(p, f);
    const Eigen::MatrixXd fd = oracle::fd_ricci_oracle(metric, x, oracle::default_steps(1.0));
    const Eigen::MatrixXd closed = oracle::closed_form_spacetime_ricci(p, f, x);
    CHECK(oracle::relative_frame_error(fd, closed, metric(x), oracle::curvature_scale(p.eval(1.0), f, 1.0)) <= 1e-5);
    // Einstein: Ric = 3/4 g (Lambda-vacuum with h = 1 - r^2/4).
    const Eigen::MatrixXd g = metric(x);
    CHECK((fd - 0.75 * g).cwiseAbs().maxCoeff() <= 1e-5);
    const SpacetimeCurvature s = spacetime_curvature(p, f, 1.0);
    CHECK(s.beta == Approx(0.75).epsilon(1e-14));
    CHECK(s.fibre_eigs[0] == Approx(0.75).epsilon(1e-14));
  }

  TEST_CASE("slice closed forms against the oracle across profiles and fibres") {
    const std::vector<std::pair<Profile, Fibre>> cases{
        {Profile::schwarzschild(1.0, 4), make_sphere(4)},
        {Profile::reissner_nordstrom(1.0, 0.5, 3), make_sphere(3)},
        {Profile::custom({{1.0, 0.0}, {0.3, 1.0}, {-0.1, 2.0}}, 4), make_product(4, {{2, 1.0}, {1, 0.0}})},
        {Profile::schwarzschild(1.0, 5), make_product(5, {{2, 1.0}, {2, 1.0}})},
    };
    for (const auto& [p, f] : cases) {
      const GraphSlice g = GraphSlice::hyperboloid(p, f, 0.7);
      const auto metric = oracle::slice_metric(g.slice_terms(), f);
      for (double s : oracle_ref::uniform(std::max(1.2, 1.2 * g.inner_boundary()), 6.0, 5, 7)) {
        const Eigen::VectorXd x = oracle::slice_point(f, s);
        const RadialJet hT = g.slice_jet(s);
        const Eigen::MatrixXd fd = oracle::fd_ricci_oracle(metric, x, oracle::default_steps(s, hT));
        const Eigen::MatrixXd closed = oracle::closed_form_slice_ricci(hT, f, p.dimension(), x);
        CHECK(oracle::relative_frame_error(fd, closed, metric(x), oracle::curvature_scale(hT, f, s)) <= 1e-5);
      }
    }
  }

  TEST_CASE("kruskal ricci") {
    const Profile p = Profile::schwarzschild(1.0, 3);
    const KruskalChart chart = KruskalChart::build(p, find_zeros(p), 0);
    for (double rho : {0.5, 1.999, 2.0, 2.001, 5.0}) {
      const KruskalRicci k = kruskal_ricci(chart, make_sphere(3), rho);
      CHECK(std::abs(k.ric_uv) < 1e-14);
    }
    const Profile rn = Profile::reissner_nordstrom(1.0, 0.5, 3);
    const KruskalChart outer = KruskalChart::build(rn, find_zeros(rn), 1);
    for (double rho : {0.5, 1.8, 3.0}) {
      const KruskalRicci k = kruskal_ricci(outer, make_sphere(3), rho);
      const SpacetimeCurvature s = spacetime_curvature(rn, make_sphere(3), rho);
      CHECK(k.fibre_eigs == s.fibre_eigs);
      CHECK(k.ric_uv == Approx(outer.conformal_factor(rho) * s.beta).epsilon(1e-12));
    }
    try {
      kruskal_ricci(outer, make_sphere(3), 0.1);
      FAIL("expected OutOfChart");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfChart);
    }
  }

  TEST_CASE("degenerate horizon has no chart") {
    const Profile p = Profile::quadratic_conformal(0.1, 3);
    CHECK_THROWS_AS(KruskalChart::build(p, find_zeros(p), 0), Error);
  }

  TEST_CASE("hessian identity") {
    const Profile schw = Profile::schwarzschild(1.0, 3);
    const GraphSlice ts = GraphSlice::time_symmetric(schw, make_sphere(3));
    CHECK(hessian_identity_check(ts, 4.0, 0.6, 0.8).residual <= 1e-15);

    const GraphSlice hyp = GraphSlice::hyperboloid(schw, make_sphere(3), 1.0);
    CHECK(hessian_identity_check(hyp, 4.0, 1.0, 0.0).residual <= 1e-9);

    const GraphSlice flat = GraphSlice::hyperboloid(Profile::minkowski_like(3), make_sphere(3), 1.0);
    const HessianIdentity id = hessian_identity_check(flat, 1.0, 0.0, 1.0);
    CHECK(id.residual <= 1e-12);
    CHECK(std::abs(id.lhs) <= 1e-12);

    try {
      hessian_identity_check(hyp, 4.0, 1.0, 1.0);
      FAIL("expected InvalidConfig");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidConfig);
    }
  }
}
