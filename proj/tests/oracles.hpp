#pragma once

// Reference computations used only by the tests. None of these call into
// the library's numerical paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

namespace oracle {

// Plain series for E_order(z) summed in long double for a fixed number of
// terms, no adaptive stopping.
inline long double mittag_leffler_series(long double order, long double z, int terms = 200) {
  long double sum = 0.0L;
  long double power = 1.0L;
  for (int k = 0; k < terms; ++k) {
    sum += power / std::tgamma(order * k + 1.0L);
    power *= z;
  }
  return sum;
}

// Caputo derivative of x(t) = t: t^(1-mu) / Gamma(2-mu), 0 < mu < 1.
inline double caputo_of_identity(double mu, double t) {
  return std::pow(t, 1.0 - mu) / std::tgamma(2.0 - mu);
}

// Curve point from the real/imaginary split of Delta(i (gamma w)^(1/q)) = 0:
//   w cos(q pi/2) + a w^(q1/q) g^(q1/q - 1) cos(q1 pi/2) + b w^(q2/q) g^(q2/q - 1) cos(q2 pi/2) + 1 = 0
//   w sin(q pi/2) + a w^(q1/q) g^(q1/q - 1) sin(q1 pi/2) + b w^(q2/q) g^(q2/q - 1) sin(q2 pi/2) = 0
// solved as a 2x2 linear system in (a, b) by Cramer's rule.
struct AlphaBeta {
  double alpha;
  double beta;
};

inline AlphaBeta curve_from_linear_system(double g, double q1, double q2, double q, double w) {
  const double hp = std::numbers::pi / 2.0;
  const double m1 = std::pow(w, q1 / q) * std::pow(g, q1 / q - 1.0);
  const double m2 = std::pow(w, q2 / q) * std::pow(g, q2 / q - 1.0);
  const double a11 = m1 * std::cos(q1 * hp), a12 = m2 * std::cos(q2 * hp);
  const double a21 = m1 * std::sin(q1 * hp), a22 = m2 * std::sin(q2 * hp);
  const double r1 = -(w * std::cos(q * hp) + 1.0);
  const double r2 = -(w * std::sin(q * hp));
  const double det = a11 * a22 - a12 * a21;
  return {(r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det};
}

// Brute-force scan of x - A x^eps - B on a fine grid followed by bisection
// on the first sign change.
inline double xstar_scan(double A, double B, double eps) {
  auto f = [&](double x) { return x - A * std::pow(x, eps) - B; };
  double x = 1e-12;
  double step = 1e-3;
  while (f(x + step) < 0.0) {
    x += step;
    step *= 1.01;
  }
  double lo = x, hi = x + step;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Orders k1/m < k2/m < k/m: with s = z^m the characteristic function becomes
// z^k + alpha z^k1 + beta z^k2 + gamma. Principal-branch roots s correspond to
// polynomial roots with |arg z| < pi/m, and Re s > 0 to |arg z| < pi/(2m).
// Roots are the eigenvalues of the companion matrix.
struct PolynomialCount {
  int unstable;
  std::vector<std::complex<double>> roots;  // the s-values with Re s > 0
};

inline PolynomialCount rational_order_count(double alpha, double beta, double gamma, int k1, int k2,
                                            int k, int m) {
  std::vector<double> coeff(k + 1, 0.0);  // coeff[j] multiplies z^j
  coeff[k] = 1.0;
  coeff[k1] += alpha;
  coeff[k2] += beta;
  coeff[0] += gamma;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
  for (int i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < k; ++i) companion(i, k - 1) = -coeff[i];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  PolynomialCount out{0, {}};
  const double limit = std::numbers::pi / (2.0 * m);
  for (int i = 0; i < k; ++i) {
    const std::complex<double> z = solver.eigenvalues()[i];
    if (std::abs(std::arg(z)) < limit) {
      ++out.unstable;
      out.roots.push_back(std::pow(z, m));
    }
  }
  return out;
}

}  // namespace oracle
