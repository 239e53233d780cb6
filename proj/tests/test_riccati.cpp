#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "phasequiv/errors.hpp"
#include "phasequiv/riccati.hpp"

using namespace phasequiv;
using doctest::Approx;

TEST_CASE("riccati pair at pi") {
  const auto p0 = riccati::riccati_pair(0, M_PI);
  CHECK(p0.regular == Approx(0.0).epsilon(1e-15));
  CHECK(p0.irregular == Approx(-1.0));
  CHECK(p0.regular_deriv == Approx(-1.0));
  CHECK(std::abs(p0.irregular_deriv) < 1e-15);
  CHECK(riccati::riccati_pair(1, M_PI).regular == Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(riccati::riccati_pair(1, 4.493409).regular) < 1e-5);
}

TEST_CASE("riccati pair rejects bad arguments") {
  CHECK_THROWS_AS(riccati::riccati_pair(0, 0.0), DomainError);
  CHECK_THROWS_AS(riccati::riccati_pair(2, -1.0), DomainError);
  CHECK_THROWS_AS(riccati::riccati_pair(5, 1.0), DomainError);
  CHECK_THROWS_AS(riccati::riccati_modified_pair(-1, 1.0), DomainError);
  CHECK_THROWS_AS(riccati::bessel_zero(1, 0), DomainError);
}

TEST_CASE("regular function matches its series") {
  for (int l = 0; l <= 4; ++l) {
    for (double x : {0.01, 0.09, 0.3, 1.0, 2.5, 5.0}) {
      const double expected = oracle::riccati_regular_series(l, x);
      CHECK(riccati::riccati_pair(l, x).regular == Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("wronskian and radial equation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> order(0, 4);
  std::uniform_real_distribution<double> arg(0.05, 60.0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const int l = order(rng);
    const double x = arg(rng);
    const auto f = riccati::riccati_pair(l, x);
    worst = std::max(worst, std::abs(f.regular * f.irregular_deriv - f.irregular * f.regular_deriv + 1.0));
  }
  CHECK(worst < 1e-11);

  const double h = 1e-4;
  for (int l = 0; l <= 4; ++l) {
    for (double x : {0.7, 1.9, 3.3, 8.1, 13.4}) {
      const double u = riccati::riccati_pair(l, x).regular;
      if (std::abs(u) < 1e-2) continue;
      const double up = riccati::riccati_pair(l, x + h).regular;
      const double um = riccati::riccati_pair(l, x - h).regular;
      const double second = (up - 2 * u + um) / (h * h);
      const double residual = second + (1.0 - l * (l + 1) / (x * x)) * u;
      CHECK(std::abs(residual / u) < 1e-6);
    }
  }
}

TEST_CASE("modified pair") {
  for (double x : {0.2, 1.0, 3.0}) {
    const auto m = riccati::riccati_modified_pair(0, x);
    CHECK(m.regular * std::exp(m.exponent) == Approx(std::sinh(x)).epsilon(1e-13));
    CHECK(m.irregular * std::exp(-m.exponent) / std::exp(-x) == Approx(1.0).epsilon(1e-12));
  }
  const auto small = riccati::riccati_modified_pair(1, 1e-3);
  CHECK(small.regular == Approx(1e-6 / 3.0).epsilon(1e-6));
  const auto two = riccati::riccati_modified_pair(2, 1.5);
  CHECK(two.regular == Approx(oracle::modified_regular_series(2, 1.5)).epsilon(1e-10));
  for (int l = 0; l <= 4; ++l) {
    for (double x : {0.05, 0.8, 4.0, 40.0, 299.0, 301.0, 900.0}) {
      const auto m = riccati::riccati_modified_pair(l, x);
      CHECK(m.regular * m.irregular_deriv - m.irregular * m.regular_deriv == Approx(-1.0).epsilon(1e-10));
      CHECK(std::isfinite(m.regular));
      if (x < 300.0) CHECK(m.exponent == 0.0);
    }
    const auto scaled = riccati::riccati_modified_pair_scaled(l, 2.0);
    const auto plain = riccati::riccati_modified_pair(l, 2.0);
    CHECK(scaled.regular * std::exp(scaled.exponent) == Approx(plain.regular).epsilon(1e-12));
  }
}

TEST_CASE("bessel zeros") {
  CHECK(riccati::bessel_zero(0, 3).value == Approx(3 * M_PI).epsilon(1e-13));
  CHECK(riccati::bessel_zero(1, 1).value == Approx(4.493409).epsilon(1e-7));
  CHECK(riccati::bessel_zero(1, 2).value == Approx(7.725252).epsilon(1e-7));
  CHECK(riccati::bessel_zero(3, 1).value == Approx(6.988).epsilon(1e-4));
  CHECK(riccati::bessel_zero(3, 2).value == Approx(10.417).epsilon(1e-4));
  CHECK(riccati::bessel_zero(3, 3).value == Approx(13.698).epsilon(1e-4));
  for (int l = 0; l <= 4; ++l) {
    for (int n = 1; n <= 8; ++n) {
      const auto z = riccati::bessel_zero(l, n);
      CHECK(z.order == l);
      CHECK(z.index == n);
      CHECK(std::abs(riccati::riccati_pair(l, z.value).regular) < 1e-12);
      if (n > 1) CHECK(z.value > riccati::bessel_zero(l, n - 1).value);
      if (l > 0) CHECK(z.value > riccati::bessel_zero(l - 1, n).value);
      CHECK(riccati::zeros_below(l, z.value + 1e-9) == n);
      CHECK(riccati::zeros_below(l, z.value - 1e-9) == n - 1);
    }
  }
}

TEST_CASE("riccati phase") {
  for (int l = 0; l <= 4; ++l) {
    double previous = 0.0;
    for (double x = 0.1; x < 30.0; x += 0.37) {
      const double phi = riccati::riccati_phase(l, x);
      const auto f = riccati::riccati_pair(l, x);
      CHECK(phi > x - l * M_PI / 2 - 1e-12);
      CHECK(phi <= x + 1e-12);
      CHECK(phi > previous);
      CHECK(std::sin(phi) * f.irregular == Approx(std::cos(phi) * f.regular).scale(std::hypot(f.regular, f.irregular)).epsilon(1e-10));
      previous = phi;
    }
  }
}
