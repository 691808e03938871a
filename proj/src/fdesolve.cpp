#include "fracstab/fdesolve.hpp"

#include <array>
#include <cmath>

#include "fracstab/errors.hpp"

namespace fracstab {

using detail::require;

namespace {

constexpr double kDivergence = 1e12;

bool second_kind(double order) { return order > 1.0; }

}  // namespace

Eigen::VectorXd caputo_weights(double order, int n_steps, double step) {
  require(order > 0.0 && order <= 2.0, "caputo_weights: order must lie in (0, 2]");
  require(n_steps >= 1, "caputo_weights: need at least one step");
  require(step > 0.0, "caputo_weights: step must be positive");
  const double exponent = second_kind(order) ? 2.0 - order : 1.0 - order;
  const double scale = 1.0 / (std::tgamma(exponent + 1.0) * std::pow(step, order));
  Eigen::VectorXd w(n_steps);
  for (int j = 0; j < n_steps; ++j) {
    // j^0 must read as 0 at j = 0 for integer orders.
    const double lower = j == 0 ? 0.0 : std::pow(static_cast<double>(j), exponent);
    w(j) = scale * (std::pow(j + 1.0, exponent) - lower);
  }
  return w;
}

double discrete_caputo(double order, const std::vector<double>& values, double step,
                       double initial_slope) {
  require(values.size() >= 2, "discrete_caputo: need at least two grid values");
  const int n = static_cast<int>(values.size()) - 1;
  const Eigen::VectorXd w = caputo_weights(order, n, step);
  const double ghost = values[0] - step * initial_slope;
  auto x = [&](int k) { return k < 0 ? ghost : values[static_cast<std::size_t>(k)]; };
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const int k = n - j;
    const double diff = second_kind(order) ? x(k) - 2.0 * x(k - 1) + x(k - 2) : x(k) - x(k - 1);
    sum += w(j) * diff;
  }
  return sum;
}

Trajectory simulate(const Coefficients& c, const FractionalOrders& o, const InitialData& init,
                    double t_final, double step) {
  require(step > 0.0 && t_final > step, "simulate: need t_final > step > 0");
  require(std::isfinite(init.x0), "simulate: x0 must be finite");
  require(init.x1.has_value() == (o.q() > 1.0), "simulate: x1 is required exactly when q > 1");

  const int n_steps = static_cast<int>(std::llround(t_final / step));
  const double slope = init.x1.value_or(0.0);

  struct Term {
    double coefficient;
    double order;
    Eigen::VectorXd weights;
  };
  std::array<Term, 3> terms{Term{1.0, o.q(), caputo_weights(o.q(), n_steps, step)},
                            Term{c.alpha, o.q1(), caputo_weights(o.q1(), n_steps, step)},
                            Term{c.beta, o.q2(), caputo_weights(o.q2(), n_steps, step)}};

  // first(k) = x_k - x_{k-1}, second(k) = x_k - 2 x_{k-1} + x_{k-2}, k >= 1,
  // with x_{-1} = x_0 - h x'(0).
  Eigen::VectorXd first = Eigen::VectorXd::Zero(n_steps + 1);
  Eigen::VectorXd second = Eigen::VectorXd::Zero(n_steps + 1);

  Trajectory out{step, {}, c, o, init, false};
  out.values.reserve(static_cast<std::size_t>(n_steps) + 1);
  out.values.push_back(init.x0);
  const double ghost = init.x0 - step * slope;

  double diagonal = c.gamma;
  for (const Term& t : terms) diagonal += t.coefficient * t.weights(0);
  if (std::abs(diagonal) < 1e-300) throw NumericalError("simulate: singular implicit step");

  for (int n = 1; n <= n_steps; ++n) {
    const double prev = out.values.back();
    const double prev2 = n >= 2 ? out.values[static_cast<std::size_t>(n) - 2] : ghost;
    // Every term contributes w_0 x_n + (known part); collect the known part.
    double known = 0.0;
    for (const Term& t : terms) {
      if (t.coefficient == 0.0) continue;
      double tail = 0.0;
      if (n > 1) {
        const Eigen::VectorXd& hist = second_kind(t.order) ? second : first;
        tail = t.weights.segment(1, n - 1).dot(hist.segment(1, n - 1).reverse());
      }
      const double lead = second_kind(t.order) ? -2.0 * prev + prev2 : -prev;
      known += t.coefficient * (t.weights(0) * lead + tail);
    }
    const double x = -known / diagonal;
    if (!std::isfinite(x) || std::abs(x) > kDivergence) {
      out.diverged = true;
      break;
    }
    out.values.push_back(x);
    first(n) = x - prev;
    second(n) = x - 2.0 * prev + prev2;
  }
  return out;
}

ConvergenceEstimate self_convergence_order(const Coefficients& c, const FractionalOrders& o,
                                           const InitialData& init, double t_final,
                                           double base_step) {
  require(base_step > 0.0 && t_final > 4.0 * base_step,
          "self_convergence_order: base_step too coarse for three levels");
  std::array<double, 3> finals{};
  double step = base_step;
  for (double& value : finals) {
    const Trajectory tr = simulate(c, o, init, t_final, step);
    if (tr.diverged) throw NumericalError("self_convergence_order: trajectory diverged");
    value = tr.values.back();
    step *= 0.5;
  }
  const double coarse = std::abs(finals[0] - finals[1]);
  const double fine = std::abs(finals[1] - finals[2]);
  if (fine == 0.0 || coarse == 0.0) return {0.0, false};
  return {std::log2(coarse / fine), fine < coarse};
}

}  // namespace fracstab
