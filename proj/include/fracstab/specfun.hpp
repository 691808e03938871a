#pragma once

#include <complex>

namespace fracstab {

using Complex = std::complex<double>;

/// Orders (q1, q2, q) of the three Caputo derivatives, 0 < q1 < q2 < q <= 2.
///
/// The constructor validates the strict ordering; a default-constructed
/// value does not exist, so every FractionalOrders in flight is admissible.
class FractionalOrders {
 public:
  FractionalOrders(double q1, double q2, double q);

  double q1() const { return q1_; }
  double q2() const { return q2_; }
  double q() const { return q_; }

  static bool admissible(double q1, double q2, double q);

  friend bool operator==(const FractionalOrders&, const FractionalOrders&) = default;

 private:
  double q1_;
  double q2_;
  double q_;
};

/// sin(a*pi/2) / sin(b*pi/2).
///
/// Accepts a in [0, 2] and 0 < |b| < 2. The curve kernel needs b = q2 - q1,
/// which can exceed 1 inside the order domain, so the b range is wider than
/// [-1, 1]; sin(b*pi/2) has no zero in the open interval.
double rho(double a, double b);

/// Curve kernel w^(-a/q) * [w * rho(q - b, b - a) - rho(b, b - a)].
///
/// (a, b) must be (q1, q2) or (q2, q1) of `orders`; the second ordering gives
/// the beta component of the boundary curve.
double h(double omega, double a, double b, const FractionalOrders& orders);

/// exp(p * Log s) with Arg s in (-pi, pi]. For s = 0 returns 0 when p > 0.
Complex principal_power(Complex s, double p);

/// Truncated Taylor series of E_order(z) = sum z^k / Gamma(order*k + 1).
///
/// Valid for |z| <= 50 or so; beyond that cancellation in the alternating
/// series destroys the result. Throws NumericalError after 10^4 terms.
double mittag_leffler(double order, double z, double tol = 1e-14);

}  // namespace fracstab
