#pragma once

#include "fracstab/specfun.hpp"
#include "fracstab/stability.hpp"

namespace fracstab {

struct CriticalResult {
  double value;
  double omega_at_crossing;
  double residual;
  // Sign changes of beta - phi(alpha) seen on the q1 scan grid; only set by
  // critical_order_q1. More than one means the returned crossing is the
  // largest q1 among several.
  int crossings = 1;
};

/// alpha on the boundary curve where beta(omega) = beta_fixed.
CriticalResult critical_alpha(double gamma, const FractionalOrders& orders, double beta_fixed,
                              double tol = 1e-10);

/// Closed-form critical alpha of x' + alpha D^q1 x + gamma x = 0, 0 < q1 < 1:
/// -gamma^(1-q1) cot(q1 pi/2)^q1 sec(q1 pi/2).
double basset_critical_alpha(double gamma, double q1);

/// Critical alpha of x'' + alpha D^q1 x + gamma x = 0, 0 < q1 < 2. The curve
/// meets beta = 0 at omega = 1, where alpha vanishes identically.
double bagley_torvik_critical_alpha(double gamma, double q1);

/// Order q1 in (0, q2) at which (alpha, beta) lies on Gamma(gamma, q1, q2, q).
///
/// Scans a 64-point q1 grid for sign changes of beta - phi(alpha), takes the
/// largest one, then solves alpha(omega, q1) = alpha, beta(omega, q1) = beta
/// with damped Newton, falling back to bisection on the scan bracket.
/// Throws NoCriticalOrder when the verdict does not change with q1.
CriticalResult critical_order_q1(const Coefficients& c, double q2, double q, double tol = 1e-10);

}  // namespace fracstab
