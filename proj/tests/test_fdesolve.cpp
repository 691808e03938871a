#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracstab/errors.hpp"
#include "fracstab/fdesolve.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fracstab;

namespace {

std::vector<double> grid_values(double (*f)(double), int n, double h) {
  std::vector<double> v;
  for (int k = 0; k <= n; ++k) v.push_back(f(k * h));
  return v;
}

double identity(double t) { return t; }
double square(double t) { return t * t; }
double constant(double) { return 2.5; }

double max_abs(const std::vector<double>& v, std::size_t from, std::size_t to) {
  double m = 0.0;
  for (std::size_t k = from; k < to; ++k) m = std::max(m, std::abs(v[k]));
  return m;
}

}  // namespace

TEST_CASE("weights: sign, decay and integer orders") {
  const Eigen::VectorXd w = caputo_weights(0.5, 100, 0.01);
  REQUIRE(w.size() == 100);
  for (int j = 0; j < 100; ++j) CHECK(w(j) > 0.0);
  for (int j = 1; j < 100; ++j) CHECK(w(j) < w(j - 1));
  // Order 1 and 2: only the leading weight survives.
  const Eigen::VectorXd one = caputo_weights(1.0, 10, 0.1);
  CHECK(one(0) == doctest::Approx(10.0));
  for (int j = 1; j < 10; ++j) CHECK(one(j) == 0.0);
  const Eigen::VectorXd two = caputo_weights(2.0, 10, 0.1);
  CHECK(two(0) == doctest::Approx(100.0));
  for (int j = 1; j < 10; ++j) CHECK(two(j) == 0.0);
  CHECK_THROWS_AS(caputo_weights(0.0, 10, 0.1), PreconditionError);
  CHECK_THROWS_AS(caputo_weights(2.5, 10, 0.1), PreconditionError);
  CHECK_THROWS_AS(caputo_weights(0.5, 0, 0.1), PreconditionError);
}

TEST_CASE("discrete operator on constants vanishes exactly") {
  const double h = 1.0 / 64;
  const auto v = grid_values(constant, 64, h);
  for (double order : {0.2, 0.5, 1.0, 1.3, 1.9}) CHECK(discrete_caputo(order, v, h) == 0.0);
}

TEST_CASE("discrete operator near order 1 reproduces x' for x = t") {
  const double h = 1.0 / 256;
  const auto v = grid_values(identity, 256, h);
  CHECK(discrete_caputo(1.0 - 1e-9, v, h) == doctest::Approx(1.0).epsilon(10 * h));
  CHECK(discrete_caputo(1.0, v, h) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("discrete operator against closed-form Caputo derivatives") {
  const double h = std::ldexp(1.0, -10);
  const int n = 1024;
  const auto lin = grid_values(identity, n, h);
  CHECK(std::abs(discrete_caputo(0.5, lin, h) - oracle::caputo_of_identity(0.5, 1.0)) < 1e-3);
  CHECK(std::abs(discrete_caputo(0.5, lin, h) - 2.0 / std::sqrt(std::numbers::pi)) < 1e-3);

  const auto sq = grid_values(square, n, h);
  // D^mu t^2 = 2 t^(2-mu) / Gamma(3-mu)
  for (double mu : {0.3, 0.5, 0.8, 1.2, 1.5, 1.8}) {
    CHECK(std::abs(discrete_caputo(mu, sq, h) - 2.0 / std::tgamma(3.0 - mu)) < 5e-3);
  }
  CHECK(discrete_caputo(2.0, sq, h) == doctest::Approx(2.0).epsilon(1e-9));
  // x = t with x'(0) = 1 has zero second-kind derivative.
  CHECK(std::abs(discrete_caputo(1.5, lin, h, 1.0)) < 1e-9);
}

TEST_CASE("solver: classical exponential") {
  const Trajectory tr = simulate({0, 0, 1}, FractionalOrders(0.3, 0.6, 1.0), {1.0, std::nullopt}, 1.0,
                                 std::ldexp(1.0, -10));
  REQUIRE(tr.values.size() == 1025);
  CHECK(tr.values.front() == 1.0);
  CHECK(tr.time(1024) == doctest::Approx(1.0));
  CHECK(std::abs(tr.values.back() - std::exp(-1.0)) < 1e-3);
  CHECK_FALSE(tr.diverged);
}

TEST_CASE("solver: harmonic oscillator") {
  const double h = std::ldexp(1.0, -10);
  const Trajectory tr = simulate({0, 0, 4}, FractionalOrders(0.5, 1.0, 2.0), {1.0, 0.0}, 2.0, h);
  const std::size_t k = static_cast<std::size_t>(std::llround(std::numbers::pi / 2 / h));
  CHECK(std::abs(tr.values[k] - std::cos(2.0 * tr.time(k))) < 5e-3);
  CHECK(std::abs(tr.values[k] + 1.0) < 5e-3);
}

TEST_CASE("solver: Mittag-Leffler relaxation") {
  const Trajectory tr = simulate({0, 0, 1}, FractionalOrders(0.1, 0.3, 0.5), {1.0, std::nullopt}, 1.0,
                                 std::ldexp(1.0, -10));
  const double ref = static_cast<double>(oracle::mittag_leffler_series(0.5L, -1.0L));
  CHECK(std::abs(tr.values.back() - ref) < 5e-3);
}

TEST_CASE("solver preconditions") {
  const FractionalOrders low(0.2, 0.5, 0.9);
  const FractionalOrders high(0.2, 0.5, 1.5);
  CHECK_THROWS_AS(simulate({1, 1, 1}, low, {1.0, 0.0}, 1.0, 0.01), PreconditionError);
  CHECK_THROWS_AS(simulate({1, 1, 1}, high, {1.0, std::nullopt}, 1.0, 0.01), PreconditionError);
  CHECK_THROWS_AS(simulate({1, 1, 1}, low, {1.0, std::nullopt}, 0.01, 0.01), PreconditionError);
  CHECK_THROWS_AS(simulate({1, 1, 1}, low, {1.0, std::nullopt}, 1.0, -0.01), PreconditionError);
}

TEST_CASE("solver is linear and deterministic") {
  const FractionalOrders o(0.4, 1.1, 1.7);
  const Coefficients c{0.7, -0.3, 2.0};
  const Trajectory a = simulate(c, o, {1.0, 0.5}, 5.0, 1.0 / 64);
  const Trajectory b = simulate(c, o, {3.0, 1.5}, 5.0, 1.0 / 64);
  const Trajectory again = simulate(c, o, {1.0, 0.5}, 5.0, 1.0 / 64);
  const Trajectory zero = simulate(c, o, {0.0, 0.0}, 5.0, 1.0 / 64);
  REQUIRE(a.values.size() == b.values.size());
  const double amplitude = max_abs(a.values, 0, a.values.size());
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    CHECK(std::abs(b.values[k] - 3.0 * a.values[k]) < 1e-12 * amplitude);
    CHECK(again.values[k] == a.values[k]);
    CHECK(zero.values[k] == 0.0);
  }
}

TEST_CASE("order-independent stable coefficients decay") {
  Rng rng(31);
  for (int i = 0; i < 3; ++i) {
    const FractionalOrders o = gen::orders(rng, 0.05);
    const InitialData init{1.0, o.q() > 1.0 ? std::optional<double>(0.0) : std::nullopt};
    const Trajectory tr = simulate({1, 1, 4}, o, init, 80.0, 1.0 / 64);
    CHECK_FALSE(tr.diverged);
    CHECK(std::abs(tr.values.back()) < 0.1);
  }
}

TEST_CASE("worked example trajectories follow the verdict") {
  const Coefficients c{1.2, -1.0, 4.0};
  const double h = 1.0 / 64;
  for (double q1 : {0.6, 0.7, 0.85, 0.9}) {
    const Trajectory tr = simulate(c, FractionalOrders(q1, 1.0, 2.0), {1.0, 0.0}, 80.0, h);
    const std::size_t n = tr.values.size();
    const double first = max_abs(tr.values, 0, n / 4);
    const double last = max_abs(tr.values, 3 * n / 4, n);
    CAPTURE(q1);
    if (q1 < 0.8) {
      CHECK(last > first);
    } else {
      CHECK(last < first);
    }
  }
}

TEST_CASE("divergence is flagged and truncates the run") {
  const Trajectory tr = simulate({1, 1, -4}, FractionalOrders(0.5, 1.0, 2.0), {1.0, 0.0}, 200.0, 1.0 / 16);
  CHECK(tr.diverged);
  CHECK(tr.values.size() < 3201);
  CHECK(std::abs(tr.values.back()) <= 1e12);
}

TEST_CASE("self-convergence order") {
  const auto classical = self_convergence_order({0, 0, 1}, FractionalOrders(0.3, 0.6, 1.0),
                                                {1.0, std::nullopt}, 1.0, 1.0 / 64);
  CHECK(classical.order >= 0.9);
  CHECK(classical.monotone);
  const auto fractional = self_convergence_order({0.5, 0.5, 1}, FractionalOrders(0.3, 0.6, 0.8),
                                                 {1.0, std::nullopt}, 1.0, 1.0 / 64);
  CHECK(fractional.order > 0.5);
}
