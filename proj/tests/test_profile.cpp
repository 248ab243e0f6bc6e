#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/profile.hpp"

using namespace umbilic;
using doctest::Approx;

TEST_SUITE("profile") {
  TEST_CASE("schwarzschild jet at r = 4") {
    const RadialJet j = Profile::schwarzschild(1.0, 3).eval(4.0);
    CHECK(j.value == Approx(0.5).epsilon(1e-15));
    CHECK(j.d1 == Approx(0.125).epsilon(1e-15));
    CHECK(j.d2 == Approx(-0.0625).epsilon(1e-15));
  }

  TEST_CASE("flat profile is constant") {
    const RadialJet j = Profile::minkowski_like(3).eval(7.0);
    CHECK(j.value == 1.0);
    CHECK(j.d1 == 0.0);
    CHECK(j.d2 == 0.0);
  }

  TEST_CASE("quadratic conformal jet at r = 2") {
    const RadialJet j = Profile::quadratic_conformal(0.1, 3).eval(2.0);
    CHECK(j.value == Approx(0.64).epsilon(1e-14));
    CHECK(j.d1 == Approx(-0.16).epsilon(1e-14));
    CHECK(j.d2 == Approx(0.02).epsilon(1e-14));
  }

  TEST_CASE("derivatives agree with long-double differences") {
    for (int n : {3, 4, 5}) {
      const Profile p = Profile::schwarzschild(1.3, n);
      const oracle_ref::Fn f = [&](long double r) { return oracle_ref::schwarzschild(r, 1.3, n); };
      for (double r : oracle_ref::uniform(0.7, 9.0, 25, 11 + n)) {
        CHECK(p.value(r) == Approx(double(f(r))).epsilon(1e-14));
        CHECK(p.derivative(1, r) == Approx(oracle_ref::d1(f, r, 1e-3 * r)).epsilon(1e-8));
        CHECK(p.derivative(2, r) == Approx(oracle_ref::d2(f, r, 1e-3 * r)).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("non-positive radius is rejected") {
    CHECK_THROWS_AS(Profile::schwarzschild(1.0, 3).eval(0.0), Error);
    CHECK_THROWS_AS(Profile::schwarzschild(1.0, 3).eval(-1.0), Error);
  }

  TEST_CASE("dimension below three is rejected") {
    try {
      Profile::schwarzschild(1.0, 2);
      FAIL("expected DimensionTooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionTooSmall);
    }
  }

  TEST_CASE("schwarzschild has a single nondegenerate zero") {
    const ZeroStructure z = find_zeros(Profile::schwarzschild(1.0, 3), 0.1, 10.0, 2000);
    REQUIRE(z.zeros.size() == 1);
    CHECK(z.zeros[0].radius == Approx(2.0).epsilon(1e-12));
    CHECK(z.zeros[0].slope == Approx(0.5).epsilon(1e-12));
    CHECK(z.zeros[0].nondegenerate);
    CHECK(z.r_H == z.zeros[0].radius);
  }

  TEST_CASE("reissner-nordstrom zeros from the quadratic formula") {
    const ZeroStructure z = find_zeros(Profile::reissner_nordstrom(1.0, 0.5, 3), 0.05, 10.0, 2000);
    REQUIRE(z.zeros.size() == 2);
    CHECK(z.zeros[0].radius == Approx(1 - std::sqrt(0.75)).epsilon(1e-12));
    CHECK(z.zeros[1].radius == Approx(1 + std::sqrt(0.75)).epsilon(1e-12));
    CHECK(z.all_nondegenerate());
  }

  TEST_CASE("flat profile has no zeros") {
    const ZeroStructure z = find_zeros(Profile::minkowski_like(3), 0.1, 10.0, 2000);
    CHECK(z.empty());
    CHECK(z.r_H == 0.0);
  }

  TEST_CASE("surface gravity constants") {
    const auto c = surface_gravity_constants(find_zeros(Profile::schwarzschild(1.0, 3)));
    REQUIRE(c.size() == 1);
    CHECK(c[0] == Approx(2.0).epsilon(1e-12));

    const Profile rn = Profile::reissner_nordstrom(1.0, 0.5, 3);
    const auto crn = surface_gravity_constants(find_zeros(rn));
    REQUIRE(crn.size() == 2);
    CHECK(crn[0] < 0);
    const double rp = 1 + std::sqrt(0.75);
    const double slope = 2 / (rp * rp) - 0.5 / (rp * rp * rp);
    CHECK(crn[1] == Approx(1 / slope).epsilon(1e-10));
  }

  TEST_CASE("degenerate zero of the quadratic conformal profile") {
    const ZeroStructure z = find_zeros(Profile::quadratic_conformal(0.1, 3));
    REQUIRE(z.zeros.size() == 1);
    CHECK(z.zeros[0].radius == Approx(10.0).epsilon(1e-6));
    CHECK_FALSE(z.zeros[0].nondegenerate);
    try {
      surface_gravity_constants(z);
      FAIL("expected DegenerateZero");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateZero);
    }
  }

  TEST_CASE("zeros are sorted and |h| vanishes there (random RN)") {
    for (double q : oracle_ref::uniform(0.05, 0.95, 20, 3)) {
      const Profile p = Profile::reissner_nordstrom(1.0, q, 3);
      const ZeroStructure z = find_zeros(p);
      REQUIRE(z.zeros.size() == 2);
      CHECK(z.zeros[0].radius < z.zeros[1].radius);
      for (const auto& zero : z.zeros)
        CHECK(std::abs(p.value(zero.radius)) <= kTolRoot * std::max(1.0, p.magnitude(zero.radius)));
    }
  }
}
