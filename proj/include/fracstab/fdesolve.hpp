#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "fracstab/specfun.hpp"
#include "fracstab/stability.hpp"

namespace fracstab {

struct InitialData {
  double x0;
  std::optional<double> x1;  // x'(0); required exactly when q > 1
};

struct Trajectory {
  double step;
  std::vector<double> values;  // x(0), x(h), x(2h), ...
  Coefficients coefficients;
  FractionalOrders orders;
  InitialData initial;
  bool diverged = false;  // |x| passed 1e12 and the run was cut short

  double time(std::size_t k) const { return step * static_cast<double>(k); }
};

/// Convolution weights c_0..c_{n-1} of the uniform-grid Caputo operator.
///
/// For order in (0, 1]:  D^mu x(t_n) ~ sum_j c_j (x_{n-j} - x_{n-j-1}),
///   c_j = [(j+1)^(1-mu) - j^(1-mu)] / (Gamma(2-mu) h^mu).
/// For order in (1, 2]:  D^mu x(t_n) ~ sum_j c_j (x_{n-j} - 2 x_{n-j-1} + x_{n-j-2}),
///   c_j = [(j+1)^(2-mu) - j^(2-mu)] / (Gamma(3-mu) h^mu),
/// i.e. the first form applied to backward differences of x', with the
/// ghost value x_{-1} = x_0 - h x'(0).
Eigen::VectorXd caputo_weights(double order, int n_steps, double step);

/// The discrete operator above evaluated at the last grid point of
/// `values` (uniform spacing `step`, values[0] = x(0)).
double discrete_caputo(double order, const std::vector<double>& values, double step,
                       double initial_slope = 0.0);

/// Implicit L1-type integration of D^q x + alpha D^q1 x + beta D^q2 x + gamma x = 0
/// on [0, t_final]; each step is a scalar linear solve for the new value.
Trajectory simulate(const Coefficients& c, const FractionalOrders& o, const InitialData& init,
                    double t_final, double step);

struct ConvergenceEstimate {
  double order;
  bool monotone;  // false when successive differences failed to shrink
};

/// Observed order from runs at base_step, base_step/2, base_step/4.
ConvergenceEstimate self_convergence_order(const Coefficients& c, const FractionalOrders& o,
                                           const InitialData& init, double t_final,
                                           double base_step);

}  // namespace fracstab
