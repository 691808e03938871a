#include "fracstab/critical.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracstab/boundary.hpp"
#include "fracstab/errors.hpp"

namespace fracstab {

using detail::require;

CriticalResult critical_alpha(double gamma, const FractionalOrders& orders, double beta_fixed,
                              double tol) {
  require(gamma > 0.0, "critical_alpha: gamma must be positive");
  require(tol > 0.0, "critical_alpha: tol must be positive");
  const double omega = omega_for_beta(gamma, orders, beta_fixed, std::min(tol, 1e-13));
  const CurveSample p = curve_point(gamma, orders, omega);
  const double residual = std::abs(p.beta - beta_fixed);
  if (residual > tol * (1.0 + std::abs(beta_fixed))) {
    throw NumericalError("critical_alpha: residual above tolerance");
  }
  return {p.alpha, omega, residual};
}

double basset_critical_alpha(double gamma, double q1) {
  require(gamma > 0.0, "basset_critical_alpha: gamma must be positive");
  require(q1 > 0.0 && q1 < 1.0, "basset_critical_alpha: q1 must lie in (0, 1)");
  const double angle = q1 * std::numbers::pi / 2.0;
  return -std::pow(gamma, 1.0 - q1) * std::pow(1.0 / std::tan(angle), q1) / std::cos(angle);
}

double bagley_torvik_critical_alpha(double gamma, double q1) {
  require(gamma > 0.0, "bagley_torvik_critical_alpha: gamma must be positive");
  require(q1 > 0.0 && q1 < 2.0, "bagley_torvik_critical_alpha: q1 must lie in (0, 2)");
  return 0.0;
}

namespace {

struct OrderSystem {
  Coefficients c;
  double q2;
  double q;

  // Residual of the two curve equations at (log omega, q1).
  Eigen::Vector2d residual(const Eigen::Vector2d& x) const {
    const FractionalOrders o(x(1), q2, q);
    const double omega = std::exp(x(0));
    return {curve_alpha(c.gamma, o, omega) - c.alpha, curve_beta(c.gamma, o, omega) - c.beta};
  }

  Eigen::Matrix2d jacobian(const Eigen::Vector2d& x) const {
    Eigen::Matrix2d J;
    const double step_w = 1e-7 * (1.0 + std::abs(x(0)));
    const double step_q = 1e-7 * x(1);
    for (int j = 0; j < 2; ++j) {
      const double step = j == 0 ? step_w : step_q;
      Eigen::Vector2d plus = x, minus = x;
      plus(j) += step;
      minus(j) -= step;
      J.col(j) = (residual(plus) - residual(minus)) / (2.0 * step);
    }
    return J;
  }

  // beta - phi(alpha) at order q1; positive means stable.
  double gap(double q1) const { return c.beta - phi(c.gamma, FractionalOrders(q1, q2, q), c.alpha); }
};

struct Solution {
  double q1;
  double omega;
  double residual;
};

Solution measure(const OrderSystem& sys, double log_omega, double q1) {
  const Eigen::Vector2d x(log_omega, q1);
  return {q1, std::exp(log_omega), sys.residual(x).cwiseAbs().maxCoeff()};
}

// Damped Newton confined to the bracket [lo, hi] in q1.
bool newton(const OrderSystem& sys, double lo, double hi, double tol, Solution& out) {
  double q1 = 0.5 * (lo + hi);
  Eigen::Vector2d x(std::log(omega_for_alpha(sys.c.gamma, FractionalOrders(q1, sys.q2, sys.q), sys.c.alpha)), q1);
  Eigen::Vector2d r = sys.residual(x);
  double norm = r.cwiseAbs().maxCoeff();
  for (int iter = 0; iter < 60; ++iter) {
    if (norm <= 1e-3 * tol) break;
    const Eigen::Matrix2d J = sys.jacobian(x);
    const Eigen::FullPivLU<Eigen::Matrix2d> lu(J);
    if (!lu.isInvertible()) return false;
    const Eigen::Vector2d dx = lu.solve(-r);
    double damping = 1.0;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      const Eigen::Vector2d trial = x + damping * dx;
      if (trial(1) > lo && trial(1) < hi) {
        const Eigen::Vector2d rt = sys.residual(trial);
        const double nt = rt.cwiseAbs().maxCoeff();
        if (nt < norm) {
          x = trial;
          r = rt;
          norm = nt;
          improved = true;
          break;
        }
      }
      damping *= 0.5;
    }
    if (!improved) break;
  }
  out = measure(sys, x(0), x(1));
  return out.residual <= tol;
}

Solution bisect(const OrderSystem& sys, double lo, double hi) {
  double g_lo = sys.gap(lo);
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = sys.gap(mid);
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  const double q1 = 0.5 * (lo + hi);
  const double omega = omega_for_alpha(sys.c.gamma, FractionalOrders(q1, sys.q2, sys.q), sys.c.alpha);
  return measure(sys, std::log(omega), q1);
}

}  // namespace

CriticalResult critical_order_q1(const Coefficients& c, double q2, double q, double tol) {
  require(c.gamma > 0.0, "critical_order_q1: gamma must be positive");
  require(q2 > 0.0 && q2 < q && q <= 2.0, "critical_order_q1: need 0 < q2 < q <= 2");
  require(tol > 0.0, "critical_order_q1: tol must be positive");
  if (order_independent_verdict(c)) {
    throw NoCriticalOrder("critical_order_q1: verdict is independent of the fractional orders");
  }

  const OrderSystem sys{c, q2, q};
  constexpr int grid = 64;
  // Nodes where alpha lies beyond the curve's reach in omega are dropped.
  std::vector<double> nodes, gaps;
  for (int k = 1; k < grid; ++k) {
    const double q1 = q2 * k / grid;
    try {
      gaps.push_back(sys.gap(q1));
      nodes.push_back(q1);
    } catch (const NumericalError&) {
    }
  }

  int crossings = 0;
  int upper = -1;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    if (gaps[k] == 0.0 || (gaps[k] < 0.0) != (gaps[k + 1] < 0.0)) {
      ++crossings;
      upper = static_cast<int>(k);
    }
  }
  if (crossings == 0) {
    throw NoCriticalOrder("critical_order_q1: no stability change for q1 in (0, q2)");
  }
  const double lo = nodes[static_cast<std::size_t>(upper)];
  const double hi = nodes[static_cast<std::size_t>(upper) + 1];
  if (gaps[static_cast<std::size_t>(upper)] == 0.0) {
    const Solution exact = bisect(sys, lo, lo);
    return {exact.q1, exact.omega, exact.residual, crossings};
  }

  Solution sol{};
  if (!newton(sys, lo, hi, tol, sol)) {
    sol = bisect(sys, lo, hi);
  }
  if (!(sol.residual <= tol)) {
    throw NumericalError("critical_order_q1: residual above tolerance");
  }
  return {sol.q1, sol.omega, sol.residual, crossings};
}

}  // namespace fracstab
