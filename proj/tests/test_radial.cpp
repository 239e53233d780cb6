#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "phasequiv/phase.hpp"
#include "phasequiv/radial.hpp"
#include "phasequiv/riccati.hpp"

using namespace phasequiv;
using doctest::Approx;

namespace {

PiecewisePotential table3_reference() {
  const double r1 = riccati::bessel_zero(1, 1).value / 2;
  const auto inner = PiecewisePotential::from_wave_numbers(1.0, {r1}, {4.0, 9.0}, 5.5);
  const double r2 = radial::zeros_of_regular(inner, 2).zeros.at(0);
  return PiecewisePotential::from_wave_numbers(1.0, {r1, r2}, {4.0, 9.0, 5.0}, 5.5);
}

PiecewisePotential free_potential(double range) {
  return PiecewisePotential(1.0, {}, {0.0}, range);
}

}  // namespace

TEST_CASE("free s-wave propagation") {
  for (double r : {0.3, 1.7, 4.0, 9.2}) {
    const auto s = radial::regular_state_at(free_potential(10.0), 0, r);
    CHECK(oracle::ray_distance({s.value, s.deriv}, {std::sin(r), std::cos(r)}) < 1e-14);
  }
  const auto step = radial::propagate_segment(0, 1.0, 1e-9, 2.0, {0.0, 1.0});
  CHECK(oracle::ray_distance(step.end, {std::sin(2.0 - 1e-9), std::cos(2.0 - 1e-9)}) < 1e-12);
}

TEST_CASE("s-wave transfer matrix") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.1, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double K = pos(rng), a = pos(rng), len = pos(rng);
    const radial::Ray start{uni(rng), uni(rng)};
    const double c = std::cos(K * len), s = std::sin(K * len);
    const radial::Ray expected{c * start.value + s / K * start.deriv,
                               -K * s * start.value + c * start.deriv};
    const auto got = radial::propagate_segment(0, K * K, a, a + len, start);
    CHECK(oracle::ray_distance(got.end, expected) < 1e-12);
  }
}

TEST_CASE("propagation composes") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> k2(-6.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    const int l = i % 5;
    const double kk = k2(rng);
    const double a = 0.5 + std::abs(uni(rng)), b = a + 1.0 + std::abs(uni(rng)), c = b + 2.0;
    const radial::Ray start{uni(rng), uni(rng)};
    const auto ab = radial::propagate_segment(l, kk, a, b, start);
    const auto bc = radial::propagate_segment(l, kk, b, c, ab.end);
    const auto ac = radial::propagate_segment(l, kk, a, c, start);
    CHECK(oracle::ray_distance(bc.end, ac.end) < 1e-12);
    CHECK(ab.zeros + bc.zeros == ac.zeros);
    const auto back = radial::back_propagate(l, kk, a, c, ac.end);
    if (kk > 0.0 && std::sqrt(kk) * a >= l) CHECK(oracle::ray_distance(back.end, start) < 1e-10);
    const auto again = radial::propagate_segment(l, kk, a, c, back.end);
    CHECK(oracle::ray_distance(again.end, ac.end) < 1e-10);
    CHECK(back.zeros == ac.zeros);
  }
}

TEST_CASE("free solution ratio") {
  const auto p = free_potential(10.0);
  for (int l = 0; l <= 4; ++l) {
    for (double r : {1.5, 3.0, 7.7}) {
      const auto s = radial::regular_state_at(p, l, r);
      const auto f = riccati::riccati_pair(l, r);
      CHECK(oracle::ray_distance({s.value, s.deriv}, {f.regular, f.regular_deriv}) < 1e-13);
    }
  }
  const auto ratios = radial::ratios_at(p, 2.0, 0);
  CHECK(ratios.ratios[0].value == Approx(std::tan(2.0)).epsilon(1e-13));
}

TEST_CASE("reference potential zeros") {
  const auto p = table3_reference();
  const double r1 = p.breakpoints()[0];
  CHECK(std::abs(radial::regular_state_at(p, 1, r1).value) < 1e-6);
  CHECK(r1 == Approx(2.2467045).epsilon(1e-7));
  const auto zeros2 = radial::zeros_of_regular(p, 2).zeros;
  CHECK(zeros2.at(0) == Approx(2.6958027).epsilon(1e-6));
  CHECK(radial::ratios_at(p, p.breakpoints()[1], 1).ratios[1].value ==
        Approx(p.breakpoints()[1] / 2).epsilon(1e-10));
}

TEST_CASE("free zeros") {
  const auto z = radial::zeros_of_regular(free_potential(10.0), 1);
  REQUIRE(z.zeros.size() == 2);
  CHECK(z.zeros[0] == Approx(4.49340947).epsilon(1e-8));
  CHECK(z.zeros[1] == Approx(7.72525183).epsilon(1e-8));
}

TEST_CASE("D at a zero of j_1") {
  for (int n = 1; n <= 2; ++n) {
    const double x = riccati::bessel_zero(1, n).value;
    const double r1 = 2.0;
    const auto p = PiecewisePotential::from_wave_numbers(1.0, {r1}, {x * x / (r1 * r1), 2.0}, 6.0);
    const auto ratios = radial::ratios_at(p, r1, 3);
    CHECK(ratios.ratios[3].value == Approx(5 * r1 / (x * x - 15)).epsilon(1e-10));
    CHECK(ratios.ratios[2].value == Approx(-r1 / 2).epsilon(1e-10));
  }
}

TEST_CASE("ratio from phase") {
  CHECK(radial::ratio_from_phase(0, 1.0, 3.0, 0.0).value == Approx(std::tan(3.0)).epsilon(1e-13));
  for (int l = 0; l <= 4; ++l) {
    for (double d : {-1.0, 0.3, 2.0}) {
      const auto a = radial::ratio_from_phase(l, 1.3, 7.0, d);
      const auto b = radial::ratio_from_phase(l, 1.3, 7.0, d + M_PI);
      CHECK(a.value == Approx(b.value).epsilon(1e-12));
    }
  }
  const auto p = table3_reference();
  const auto moved = PiecewisePotential(1.0, p.breakpoints(), p.values(), 10.0);
  const double d1 = phase::calogero_phase(moved, 1);
  CHECK(radial::ratio_from_phase(1, 1.0, 10.0, d1).value ==
        Approx(radial::ratios_at(moved, 10.0, 1).ratios[1].value).epsilon(1e-9));
}

TEST_CASE("propagation agrees with the ode oracle") {
  std::mt19937_64 rng(21);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto p = oracle::random_potential(rng, 1 + i % 4, 10.0, 2.0, 15.0);
    for (int l = 0; l <= 4; ++l) {
      const auto s = radial::regular_state_at(p, l, p.range());
      worst = std::max(worst, oracle::ray_distance({s.value, s.deriv}, oracle::ode_ray(p, l, p.range())));
    }
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("zero structure of random potentials") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 30; ++i) {
    const auto p = oracle::random_potential(rng, 1 + i % 4, 10.0, 2.0, 15.0);
    std::size_t previous_count = 1000;
    std::vector<double> previous;
    for (int l = 0; l <= 4; ++l) {
      const auto zeros = radial::zeros_of_regular(p, l).zeros;
      CHECK(zeros.size() <= previous_count);
      for (std::size_t j = 0; j < zeros.size(); ++j) {
        CHECK(zeros[j] > 0.0);
        CHECK(zeros[j] < p.range());
        if (j > 0) CHECK(zeros[j] > zeros[j - 1]);
        if (j < previous.size()) CHECK(zeros[j] > previous[j]);
        const auto s = radial::regular_state_at(p, l, zeros[j]);
        CHECK(std::abs(s.value) < 1e-8);
        CHECK(std::abs(s.deriv) > 1e-8);
      }
      previous_count = zeros.size();
      previous = zeros;
    }
  }
}
