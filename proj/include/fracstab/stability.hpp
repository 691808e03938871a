#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fracstab/specfun.hpp"

namespace fracstab {

/// Coefficients of D^q x + alpha D^q1 x + beta D^q2 x + gamma x = 0.
struct Coefficients {
  double alpha;
  double beta;
  double gamma;
};

enum class VerdictKind { AsymptoticallyStable, Unstable, OnBoundary, NotAsymptoticallyStable };

enum class Provenance { OrderIndependent, OrderDependentCurve, RootCount };

struct StabilityVerdict {
  VerdictKind kind;
  // Exponent q' of the O(t^-q') decay; set only for AsymptoticallyStable
  // verdicts that know the orders.
  std::optional<double> decay_exponent;
  Provenance provenance;
};

std::string_view to_string(VerdictKind kind);
std::string_view to_string(Provenance provenance);

struct Annulus {
  double inner;  // l
  double outer;  // L
};

struct RootCount {
  int count = 0;
  std::vector<Complex> roots;  // one entry per distinct root, see multiplicities
  std::vector<int> multiplicities;
  std::vector<bool> coarse;  // Newton did not converge; entry is a box centre
  Annulus annulus{};
  double winding = 0.0;  // accumulated phase / 2 pi along the contour
  double winding_residual = 0.0;
};

/// s^q + alpha s^q1 + beta s^q2 + gamma on the principal branch.
Complex delta_eval(Complex s, const Coefficients& c, const FractionalOrders& o);

/// d/ds of delta_eval.
Complex delta_derivative(Complex s, const Coefficients& c, const FractionalOrders& o);

/// Verdicts that hold for every order triple: unstable when gamma < 0 or
/// alpha + beta + gamma + 1 <= 0, asymptotically stable when alpha, beta,
/// gamma > 0. Empty inside the order-dependent gap. The decay exponent is
/// left unset since it depends on the orders.
std::optional<StabilityVerdict> order_independent_verdict(const Coefficients& c);

/// Full classification. Order-independent rules first, gamma = 0 is
/// NotAsymptoticallyStable (s = 0 is a root), otherwise beta is compared with
/// phi(alpha) using the band tol (1 + |phi(alpha)|).
StabilityVerdict classify(const Coefficients& c, const FractionalOrders& o, double tol = 1e-9);

/// Smallest non-zero fractional part among q1, q2, q.
double decay_exponent(const FractionalOrders& o);

/// Unique positive root of x - A x^eps - B.
double positive_root_xstar(double A, double B, double eps);

/// Modulus bounds l <= |s| <= L for roots with Re s >= 0 (gamma > 0).
Annulus root_modulus_bounds(const Coefficients& c, const FractionalOrders& o);

/// Number of roots with Re s > 0 via the argument principle on the boundary
/// of {Re s > delta, l < |s| < L}, followed by box subdivision and Newton
/// refinement to locate them. Throws BoundaryProximity when |Delta| drops
/// below tol (1 + |gamma|) on a contour.
RootCount count_unstable_roots(const Coefficients& c, const FractionalOrders& o, double tol = 1e-9);

}  // namespace fracstab
