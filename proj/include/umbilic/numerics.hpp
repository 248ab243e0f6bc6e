#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace umbilic {

/// A radial function sampled with its first two derivatives.
struct RadialJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

namespace numerics {

using ScalarFn = std::function<double(double)>;

std::vector<double> linear_grid(double lo, double hi, std::size_t count);
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

// Bracketing root refinement (TOMS 748). Requires f(lo), f(hi) of opposite
// sign or one of them zero.
double refine_root(const ScalarFn& f, double lo, double hi, double rel_tol = 1e-15);

// Newton iteration safeguarded by bisection inside [lo, hi].
double newton_bracketed(const ScalarFn& f, const ScalarFn& df, double target, double lo,
                        double hi, double guess);

// Brent minimization on [lo, hi]; returns (argmin, min).
std::pair<double, double> minimize(const ScalarFn& f, double lo, double hi);

// Adaptive Gauss-Kronrod quadrature; throws QuadratureFailure when the error
// estimate cannot be brought below tol.
double integrate(const ScalarFn& f, double a, double b, double tol = 1e-12);

// Central difference derivative with one Richardson step over {h, h/2}.
double derivative(const ScalarFn& f, double x, double h);
double second_derivative(const ScalarFn& f, double x, double h);

// Worker count from UMBILIC_THREADS (capped by hardware concurrency).
std::size_t thread_count();

// Runs body(i) for i in [0, count), possibly across threads. Each index is
// written by exactly one worker, so results stored per index are
// order-independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace numerics
}  // namespace umbilic
