#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracstab/errors.hpp"
#include "fracstab/random.hpp"
#include "fracstab/specfun.hpp"
#include "oracles.hpp"

using namespace fracstab;

TEST_CASE("FractionalOrders enforces 0 < q1 < q2 < q <= 2") {
  CHECK_NOTHROW(FractionalOrders(0.5, 1.0, 2.0));
  CHECK_THROWS_AS(FractionalOrders(0.0, 1.0, 2.0), PreconditionError);
  CHECK_THROWS_AS(FractionalOrders(1.0, 1.0, 2.0), PreconditionError);
  CHECK_THROWS_AS(FractionalOrders(0.5, 1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(FractionalOrders(0.5, 1.0, 2.1), PreconditionError);
  CHECK_THROWS_AS(FractionalOrders(0.5, NAN, 2.0), PreconditionError);
}

TEST_CASE("rho closed-form values") {
  CHECK(rho(1, 1) == doctest::Approx(1.0));
  CHECK(std::abs(rho(2, 0.5)) < 1e-15);
  CHECK(rho(1, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(rho(2.5, 0.5), PreconditionError);
  CHECK_THROWS_AS(rho(1, 0.0), PreconditionError);
}

TEST_CASE("rho is odd in its second argument") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const double a = rng.uniform(0.0, 2.0);
    const double b = rng.uniform(0.01, 1.0);
    CHECK(rho(a, b) == doctest::Approx(-rho(a, -b)).epsilon(1e-14));
  }
}

TEST_CASE("h vanishes at omega = 1 when q = 2") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const double q1 = rng.uniform(0.01, 1.9);
    const double q2 = rng.uniform(q1 + 0.01, 1.99);
    const FractionalOrders o(q1, q2, 2.0);
    CHECK(std::abs(h(1.0, q1, q2, o)) < 1e-12);
    CHECK(std::abs(h(1.0, q2, q1, o)) < 1e-12);
  }
}

TEST_CASE("h(4, 0.5, 1, 2) = sqrt(2) 4^(-1/4) (4 - 1) = 3") {
  const FractionalOrders o(0.5, 1.0, 2.0);
  CHECK(h(4.0, 0.5, 1.0, o) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(h(0.0, 0.5, 1.0, o), PreconditionError);
  CHECK_THROWS_AS(h(1.0, 0.5, 0.7, o), PreconditionError);
}

TEST_CASE("h is increasing for (q1, q2) and decreasing for (q2, q1)") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    FractionalOrders o(0.3, 0.8, 1.5);
    do {
      const double a = rng.uniform(0.0, 2.0), b = rng.uniform(0.0, 2.0), c = rng.uniform(0.0, 2.0);
      if (FractionalOrders::admissible(a, b, c)) {
        o = FractionalOrders(a, b, c);
        break;
      }
    } while (true);
    for (int k = 0; k < 100; ++k) {
      const double w = std::pow(10.0, -3.0 + 6.0 * k / 99.0);
      const double dw = 1e-6 * w;
      const double up = (h(w + dw, o.q1(), o.q2(), o) - h(w - dw, o.q1(), o.q2(), o)) / (2 * dw);
      const double down = (h(w + dw, o.q2(), o.q1(), o) - h(w - dw, o.q2(), o.q1(), o)) / (2 * dw);
      CHECK(up > 0.0);
      CHECK(down < 0.0);
    }
  }
}

TEST_CASE("principal_power branch values") {
  const Complex i(0.0, 1.0);
  const Complex sq = principal_power(i, 2.0);
  CHECK(sq.real() == doctest::Approx(-1.0));
  CHECK(std::abs(sq.imag()) < 1e-15);
  const Complex root = principal_power(i, 0.5);
  CHECK(root.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(root.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  for (double q : {0.1, 0.7, 1.3, 2.0}) {
    CHECK(std::abs(principal_power(1.0, q) - Complex(1.0)) < 1e-15);
  }
  // Arg(-1) is +pi on the principal branch, including the -0 imaginary part.
  const Complex neg = principal_power(Complex(-1.0, -0.0), 0.5);
  CHECK(neg.imag() == doctest::Approx(1.0));
  CHECK(principal_power(Complex(0.0), 0.5) == Complex(0.0));
  CHECK_THROWS_AS(principal_power(Complex(0.0), 0.0), PreconditionError);
  CHECK_THROWS_AS(principal_power(Complex(0.0), -1.0), PreconditionError);
}

TEST_CASE("principal_power identities on random samples") {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const double r = std::exp(rng.uniform(-5.0, 5.0));
    const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const Complex s = std::polar(r, theta);
    CHECK(std::abs(principal_power(s, 1.0) - s) <= 1e-12 * std::abs(s));
    CHECK(std::abs(principal_power(s, 0.0) - Complex(1.0)) < 1e-15);
    const double p = rng.uniform(0.0, 1.0);
    const double t = rng.uniform(0.0, 1.0);
    const Complex lhs = principal_power(s, p) * principal_power(s, t);
    const Complex rhs = principal_power(s, p + t);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("mittag_leffler against closed forms and the series oracle") {
  CHECK(mittag_leffler(1.0, -1.0, 1e-14) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
  CHECK(std::abs(mittag_leffler(2.0, -std::numbers::pi * std::numbers::pi / 4.0, 1e-14)) < 1e-12);
  const double reference = static_cast<double>(oracle::mittag_leffler_series(0.5L, -1.0L));
  CHECK(mittag_leffler(0.5, -1.0, 1e-14) == doctest::Approx(reference).epsilon(1e-13));
  // E_{1/2}(-1) = e erfc(1)
  CHECK(mittag_leffler(0.5, -1.0) == doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-13));
  CHECK(mittag_leffler(1.0, 3.0) == doctest::Approx(std::exp(3.0)).epsilon(1e-13));
  CHECK(mittag_leffler(0.7, 0.0) == 1.0);
  CHECK_THROWS_AS(mittag_leffler(0.0, 1.0), PreconditionError);
}
