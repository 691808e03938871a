#pragma once

#include <cstdint>
#include <vector>

#include "fracstab/random.hpp"
#include "fracstab/specfun.hpp"

namespace fracstab {

/// Point (omega, alpha(omega), beta(omega)) on the boundary curve
/// Gamma(gamma, q1, q2, q), where Delta has the imaginary roots
/// +-i (gamma*omega)^(1/q).
struct CurveSample {
  double omega;
  double alpha;
  double beta;
};

struct CurveSpec {
  double gamma;
  FractionalOrders orders;
  double omega_min = 1e-4;
  double omega_max = 1e4;
  int samples = 2001;
};

struct RegionCurve {
  FractionalOrders orders;
  std::vector<CurveSample> samples;
};

/// alpha = gamma^(1 - q1/q) h(omega, q1, q2, q).
double curve_alpha(double gamma, const FractionalOrders& orders, double omega);

/// beta = gamma^(1 - q2/q) h(omega, q2, q1, q).
double curve_beta(double gamma, const FractionalOrders& orders, double omega);

CurveSample curve_point(double gamma, const FractionalOrders& orders, double omega);

/// Log-uniform omega grid over [omega_min, omega_max], endpoints included.
std::vector<CurveSample> sample_curve(const CurveSpec& spec);

/// Unique omega with alpha(omega) = alpha. alpha is strictly increasing in
/// omega, so this brackets geometrically from omega = 1 and bisects in
/// log omega until the bracket's relative width is <= tol and the residual
/// |alpha(omega) - alpha| <= tol (1 + |alpha|), or the bracket stops shrinking.
double omega_for_alpha(double gamma, const FractionalOrders& orders, double alpha,
                       double tol = 1e-13);

/// Unique omega with beta(omega) = beta (beta is strictly decreasing).
double omega_for_beta(double gamma, const FractionalOrders& orders, double beta,
                      double tol = 1e-13);

/// The boundary as a graph: beta = phi(alpha). Decreasing and convex.
double phi(double gamma, const FractionalOrders& orders, double alpha, double tol = 1e-13);

/// Rejection-samples (q1, q2, q) uniform on (0, 2]^3 conditioned on q1 < q2 < q.
FractionalOrders random_orders(Rng& rng);

/// Seeded family of boundary curves for random order triplets. Together
/// they fill the order-dependent gap between S(gamma) and U(gamma).
std::vector<RegionCurve> region_sweep(double gamma, int triplet_count, std::uint64_t seed,
                                      int samples_per_curve = 200, double omega_min = 1e-4,
                                      double omega_max = 1e4);

}  // namespace fracstab
