#include "fracstab/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fracstab/errors.hpp"

namespace fracstab {

using detail::require;

bool FractionalOrders::admissible(double q1, double q2, double q) {
  return std::isfinite(q1) && std::isfinite(q2) && std::isfinite(q) && 0.0 < q1 && q1 < q2 &&
         q2 < q && q <= 2.0;
}

FractionalOrders::FractionalOrders(double q1, double q2, double q) : q1_(q1), q2_(q2), q_(q) {
  if (!admissible(q1, q2, q)) {
    std::ostringstream msg;
    msg << "fractional orders must satisfy 0 < q1 < q2 < q <= 2, got (" << q1 << ", " << q2
        << ", " << q << ")";
    throw PreconditionError(msg.str());
  }
}

namespace {

// sin(x pi/2) for |x| <= 2, reflected into [-1, 1] so that x and 2 - x give
// bit-identical results.
double sin_half_pi(double x) {
  if (x > 1.0) x = 2.0 - x;
  if (x < -1.0) x = -2.0 - x;
  return std::sin(x * (std::numbers::pi / 2.0));
}

}  // namespace

double rho(double a, double b) {
  require(a >= 0.0 && a <= 2.0, "rho: a must lie in [0, 2]");
  require(b != 0.0 && std::abs(b) < 2.0, "rho: b must satisfy 0 < |b| < 2");
  return sin_half_pi(a) / sin_half_pi(b);
}

double h(double omega, double a, double b, const FractionalOrders& orders) {
  require(omega > 0.0, "h: omega must be positive");
  const bool forward = a == orders.q1() && b == orders.q2();
  const bool reverse = a == orders.q2() && b == orders.q1();
  require(forward || reverse, "h: (a, b) must be a permutation of (q1, q2)");
  const double q = orders.q();
  return std::pow(omega, -a / q) * (omega * rho(q - b, b - a) - rho(b, b - a));
}

Complex principal_power(Complex s, double p) {
  if (s == Complex(0.0, 0.0)) {
    require(p > 0.0, "principal_power: 0 raised to a non-positive power");
    return {0.0, 0.0};
  }
  double arg = std::arg(s);
  if (arg == -std::numbers::pi) arg = std::numbers::pi;
  const double log_modulus = std::log(std::abs(s));
  return std::polar(std::exp(p * log_modulus), p * arg);
}

double mittag_leffler(double order, double z, double tol) {
  require(order > 0.0, "mittag_leffler: order must be positive");
  require(tol > 0.0, "mittag_leffler: tol must be positive");
  if (z == 0.0) return 1.0;

  constexpr int max_terms = 10000;
  const double log_abs_z = std::log(std::abs(z));
  const bool alternating = z < 0.0;
  double sum = 1.0;
  double previous = 1.0;
  for (int k = 1; k < max_terms; ++k) {
    const double magnitude = std::exp(k * log_abs_z - std::lgamma(order * k + 1.0));
    const double term = (alternating && (k % 2 == 1)) ? -magnitude : magnitude;
    sum += term;
    // Term magnitudes are unimodal in k; only stop on the descending side.
    if (magnitude <= previous && magnitude < tol * (1.0 + std::abs(sum))) return sum;
    previous = magnitude;
  }
  throw NumericalError("mittag_leffler: series did not converge within 10^4 terms");
}

}  // namespace fracstab
