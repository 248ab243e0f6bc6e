#include "umbilic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "umbilic/errors.hpp"

namespace umbilic {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::DegenerateZero: return "DegenerateZero";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::InvalidFibre: return "InvalidFibre";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::NonspacelikeSlice: return "NonspacelikeSlice";
    case ErrorCode::OutOfChart: return "OutOfChart";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::InsideHorizon: return "InsideHorizon";
    case ErrorCode::NoHorizon: return "NoHorizon";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::HorizonChart: return "HorizonChart";
    case ErrorCode::HorizonInInterval: return "HorizonInInterval";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::WrongPatch: return "WrongPatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TimeSymmetricGraph: return "TimeSymmetricGraph";
    case ErrorCode::NotTimelike: return "NotTimelike";
    case ErrorCode::ZeroC0: return "ZeroC0";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
  }
  return "Unknown";
}

namespace numerics {

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = std::exp(log_lo + step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

double refine_root(const ScalarFn& f, double lo, double hi, double rel_tol) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  const double tol = std::max(rel_tol, 4 * std::numeric_limits<double>::epsilon());
  auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol * std::max(std::abs(a), std::abs(b)); };
  std::uintmax_t max_iter = 200;
  auto bracket = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, max_iter);
  // Pick the endpoint with the smaller residual.
  const double a = bracket.first;
  const double b = bracket.second;
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

double newton_bracketed(const ScalarFn& f, const ScalarFn& df, double target, double lo,
                        double hi, double guess) {
  auto shifted = [&](double x) { return std::make_pair(f(x) - target, df(x)); };
  std::uintmax_t max_iter = 200;
  const int digits = std::numeric_limits<double>::digits - 6;
  return boost::math::tools::newton_raphson_iterate(shifted, guess, lo, hi, digits, max_iter);
}

std::pair<double, double> minimize(const ScalarFn& f, double lo, double hi) {
  std::uintmax_t max_iter = 500;
  auto result = boost::math::tools::brent_find_minima(f, lo, hi, std::numeric_limits<double>::digits / 2,
                                                      max_iter);
  return {result.first, result.second};
}

namespace {

// Adaptive bisection over single-panel Gauss-Kronrod rules. Boost reports the
// panel error in the reference coordinate on [-1, 1] without the (b - a) / 2
// Jacobian, so it is rescaled here before the split test.
void integrate_panel(const ScalarFn& f, double a, double b, double tol, int depth, double& sum, double& error,
                     double& l1) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double e = 0.0;
  double l = 0.0;
  const double value = GK::integrate(f, a, b, 0, 0.0, &e, &l);
  e *= 0.5 * std::abs(b - a);
  if (e <= tol * std::max(1.0, l) || depth == 0 || !std::isfinite(value)) {
    sum += value;
    error += e;
    l1 += l;
    return;
  }
  const double mid = 0.5 * (a + b);
  integrate_panel(f, a, mid, tol, depth - 1, sum, error, l1);
  integrate_panel(f, mid, b, tol, depth - 1, sum, error, l1);
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  integrate_panel(f, a, b, tol, 18, value, error, l1);
  if (!std::isfinite(value) || error > 1e3 * tol * std::max(1.0, l1)) {
    throw Error(ErrorCode::QuadratureFailure,
                "error estimate " + std::to_string(error) + " on [" + std::to_string(a) + ", " +
                    std::to_string(b) + "]");
  }
  return value;
}

double derivative(const ScalarFn& f, double x, double h) {
  auto central = [&](double step) { return (f(x + step) - f(x - step)) / (2 * step); };
  const double coarse = central(h);
  const double fine = central(h / 2);
  return (4 * fine - coarse) / 3;
}

double second_derivative(const ScalarFn& f, double x, double h) {
  const double fx = f(x);
  auto central = [&](double step) { return (f(x + step) - 2 * fx + f(x - step)) / (step * step); };
  const double coarse = central(h);
  const double fine = central(h / 2);
  return (4 * fine - coarse) / 3;
}

std::size_t thread_count() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("UMBILIC_THREADS")) {
    char* end = nullptr;
    const long requested = std::strtol(env, &end, 10);
    if (end != env && requested > 0) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(requested));
  }
  return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> failures(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
}

}  // namespace numerics
}  // namespace umbilic
