#include "fracstab/boundary.hpp"

#include <cmath>

#include "fracstab/errors.hpp"

namespace fracstab {

using detail::require;

namespace {

constexpr double kOmegaFloor = 1e-280;
constexpr double kOmegaCeiling = 1e280;

// Solves f(omega) = target for a strictly monotone f on (0, inf).
template <typename F>
double invert_monotone(F f, double target, bool increasing, double tol) {
  require(tol > 0.0, "curve inversion: tol must be positive");
  require(std::isfinite(target), "curve inversion: target must be finite");
  // g is increasing in omega and vanishes at the solution.
  auto g = [&](double omega) {
    const double value = f(omega) - target;
    return increasing ? value : -value;
  };

  double lo = 1.0;
  double hi = 1.0;
  const double g1 = g(1.0);
  if (g1 == 0.0) return 1.0;
  if (g1 < 0.0) {
    while (g(hi) < 0.0) {
      lo = hi;
      hi *= 16.0;
      if (hi > kOmegaCeiling) throw NumericalError("curve inversion: no bracket below omega = 1e280");
    }
  } else {
    while (g(lo) > 0.0) {
      hi = lo;
      lo *= 0.0625;
      if (lo < kOmegaFloor) throw NumericalError("curve inversion: no bracket above omega = 1e-280");
    }
  }

  const double residual_bound = tol * (1.0 + std::abs(target));
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (mid <= lo || mid >= hi) return mid;
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if (g_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double candidate = std::sqrt(lo) * std::sqrt(hi);
    if ((hi - lo) <= tol * hi && std::abs(g(candidate)) <= residual_bound) return candidate;
  }
  throw NumericalError("curve inversion: bisection did not converge");
}

}  // namespace

double curve_alpha(double gamma, const FractionalOrders& orders, double omega) {
  require(gamma > 0.0, "curve: gamma must be positive");
  return std::pow(gamma, 1.0 - orders.q1() / orders.q()) * h(omega, orders.q1(), orders.q2(), orders);
}

double curve_beta(double gamma, const FractionalOrders& orders, double omega) {
  require(gamma > 0.0, "curve: gamma must be positive");
  return std::pow(gamma, 1.0 - orders.q2() / orders.q()) * h(omega, orders.q2(), orders.q1(), orders);
}

CurveSample curve_point(double gamma, const FractionalOrders& orders, double omega) {
  return {omega, curve_alpha(gamma, orders, omega), curve_beta(gamma, orders, omega)};
}

std::vector<CurveSample> sample_curve(const CurveSpec& spec) {
  require(spec.gamma > 0.0, "sample_curve: gamma must be positive");
  require(spec.omega_min > 0.0 && spec.omega_min < spec.omega_max,
          "sample_curve: need 0 < omega_min < omega_max");
  require(spec.samples >= 2, "sample_curve: need at least two samples");

  const double log_lo = std::log(spec.omega_min);
  const double log_hi = std::log(spec.omega_max);
  const int last = spec.samples - 1;
  std::vector<CurveSample> out;
  out.reserve(static_cast<std::size_t>(spec.samples));
  for (int k = 0; k <= last; ++k) {
    double omega;
    if (k == 0) {
      omega = spec.omega_min;
    } else if (k == last) {
      omega = spec.omega_max;
    } else {
      omega = std::exp(log_lo + (log_hi - log_lo) * k / last);
    }
    out.push_back(curve_point(spec.gamma, spec.orders, omega));
  }
  return out;
}

double omega_for_alpha(double gamma, const FractionalOrders& orders, double alpha, double tol) {
  require(gamma > 0.0, "phi: gamma must be positive");
  return invert_monotone([&](double w) { return curve_alpha(gamma, orders, w); }, alpha, true, tol);
}

double omega_for_beta(double gamma, const FractionalOrders& orders, double beta, double tol) {
  require(gamma > 0.0, "phi: gamma must be positive");
  return invert_monotone([&](double w) { return curve_beta(gamma, orders, w); }, beta, false, tol);
}

double phi(double gamma, const FractionalOrders& orders, double alpha, double tol) {
  return curve_beta(gamma, orders, omega_for_alpha(gamma, orders, alpha, tol));
}

FractionalOrders random_orders(Rng& rng) {
  for (;;) {
    // (0, 2] rather than [0, 2)
    const double a = 2.0 - rng.uniform(0.0, 2.0);
    const double b = 2.0 - rng.uniform(0.0, 2.0);
    const double c = 2.0 - rng.uniform(0.0, 2.0);
    if (FractionalOrders::admissible(a, b, c)) return {a, b, c};
  }
}

std::vector<RegionCurve> region_sweep(double gamma, int triplet_count, std::uint64_t seed,
                                      int samples_per_curve, double omega_min, double omega_max) {
  require(gamma > 0.0, "region_sweep: gamma must be positive");
  require(triplet_count >= 1, "region_sweep: need at least one triplet");
  Rng rng(seed);
  std::vector<RegionCurve> curves;
  curves.reserve(static_cast<std::size_t>(triplet_count));
  for (int i = 0; i < triplet_count; ++i) {
    const FractionalOrders orders = random_orders(rng);
    curves.push_back({orders, sample_curve({gamma, orders, omega_min, omega_max, samples_per_curve})});
  }
  return curves;
}

}  // namespace fracstab
