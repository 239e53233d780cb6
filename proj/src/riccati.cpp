#include "phasequiv/riccati.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "phasequiv/errors.hpp"

namespace phasequiv::riccati {

namespace {

constexpr double kPi = std::numbers::pi;

void check_order(int l) {
  if (l < 0 || l > kMaxOrder) {
    throw DomainError("Riccati-Bessel order " + std::to_string(l) + " outside 0.." +
                      std::to_string(kMaxOrder));
  }
}

double double_factorial(int n) {
  double result = 1.0;
  for (int i = n; i > 1; i -= 2) result *= i;
  return result;
}

// x^{l+1} sum_k (s x^2/2)^k / (k! (2l+2k+1)!!), s = -1 for u_l, +1 for x i_l.
// Returns value and derivative.
std::array<double, 2> power_series(int l, double x, double s) {
  double term = std::pow(x, l + 1) / double_factorial(2 * l + 1);
  double sum = term;
  double dsum = (l + 1) * term;
  const double y = s * 0.5 * x * x;
  for (int k = 1; k < 200; ++k) {
    term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    dsum += (l + 1 + 2 * k) * term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return {sum, x > 0.0 ? dsum / x : (l == 0 ? 1.0 : 0.0)};
}

// u_l = P sin x - Q cos x, w_l = P cos x + Q sin x; P, Q polynomials in y = 1/x.
// Returns P, Q, dP/dx, dQ/dx.
std::array<double, 4> trig_polynomials(int l, double x) {
  const double y = 1.0 / x;
  const double y2 = y * y;
  switch (l) {
    case 0:
      return {1.0, 0.0, 0.0, 0.0};
    case 1:
      return {y, 1.0, -y2, 0.0};
    case 2:
      return {3.0 * y2 - 1.0, 3.0 * y, -6.0 * y2 * y, -3.0 * y2};
    case 3:
      return {15.0 * y2 * y - 6.0 * y, 15.0 * y2 - 1.0, -45.0 * y2 * y2 + 6.0 * y2,
              -30.0 * y2 * y};
    default:
      return {105.0 * y2 * y2 - 45.0 * y2 + 1.0, 105.0 * y2 * y - 10.0 * y,
              -420.0 * y2 * y2 * y + 90.0 * y2 * y, -315.0 * y2 * y2 + 10.0 * y2};
  }
}

// e^{x} x k_l(x) up to normalization: 1 + c1/x + ... with q_0 = e^{-x}.
double decaying_polynomial(int l, double y) {
  switch (l) {
    case 0:
      return 1.0;
    case 1:
      return 1.0 + y;
    case 2:
      return 1.0 + y * (3.0 + 3.0 * y);
    case 3:
      return 1.0 + y * (6.0 + y * (15.0 + 15.0 * y));
    default:
      return 1.0 + y * (10.0 + y * (45.0 + y * (105.0 + 105.0 * y)));
  }
}

}  // namespace

FunctionPair riccati_pair(int l, double x) {
  check_order(l);
  if (!(x > 0.0)) throw DomainError("Riccati-Bessel argument must be positive");
  const double s = std::sin(x);
  const double c = std::cos(x);
  const auto [p, q, dp, dq] = trig_polynomials(l, x);
  FunctionPair out{};
  out.irregular = p * c + q * s;
  out.irregular_deriv = (dp + q) * c - (p - dq) * s;
  if (l > 0 && x < std::max<double>(l, 0.1)) {
    const auto series = power_series(l, x, -1.0);
    out.regular = series[0];
    out.regular_deriv = series[1];
  } else {
    out.regular = p * s - q * c;
    out.regular_deriv = (dp + q) * s + (p - dq) * c;
  }
  return out;
}

ModifiedPair riccati_modified_pair_scaled(int l, double x) {
  check_order(l);
  if (!(x > 0.0)) throw DomainError("modified Riccati-Bessel argument must be positive");
  ModifiedPair out{};
  out.exponent = x;
  const double y = 1.0 / x;

  std::array<double, kMaxOrder + 1> q{};
  for (int j = 0; j <= l; ++j) q[j] = decaying_polynomial(j, y);
  out.irregular = q[l];
  out.irregular_deriv = l == 0 ? -1.0 : -q[l - 1] - l * q[l] * y;

  if (x < 12.0) {
    const double scale = std::exp(-x);
    const auto series = power_series(l, x, 1.0);
    out.regular = series[0] * scale;
    out.regular_deriv = series[1] * scale;
  } else {
    const double e2 = std::exp(-2.0 * x);
    const double sh = 0.5 * (1.0 - e2);
    const double ch = 0.5 * (1.0 + e2);
    std::array<double, kMaxOrder + 1> p{};
    p[0] = sh;
    if (l >= 1) p[1] = ch - sh * y;
    for (int j = 1; j < l; ++j) p[j + 1] = p[j - 1] - (2 * j + 1) * p[j] * y;
    out.regular = p[l];
    out.regular_deriv = l == 0 ? ch : p[l - 1] - l * p[l] * y;
  }
  return out;
}

ModifiedPair riccati_modified_pair(int l, double x) {
  ModifiedPair out = riccati_modified_pair_scaled(l, x);
  if (x <= 300.0) {
    const double e = std::exp(x);
    out.regular *= e;
    out.regular_deriv *= e;
    out.irregular /= e;
    out.irregular_deriv /= e;
    out.exponent = 0.0;
  }
  return out;
}

double riccati_phase(int l, double x) {
  const FunctionPair f = riccati_pair(l, x);
  const double raw = std::atan2(f.regular, f.irregular);
  const double centre = x - 0.25 * l * kPi;
  return raw + 2.0 * kPi * std::round((centre - raw) / (2.0 * kPi));
}

BesselZero bessel_zero(int l, int n) {
  check_order(l);
  if (n < 1) throw DomainError("Bessel zero index must be >= 1, got " + std::to_string(n));
  const double target = n * kPi;
  if (l == 0) return {l, n, target};
  auto f = [&](double x) { return riccati_phase(l, x) - target; };
  double lo = target;
  double hi = target + 0.5 * l * kPi + 1e-9;
  boost::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iterations);
  return {l, n, 0.5 * (a + b)};
}

int zeros_below(int l, double x) {
  if (!(x > 0.0)) return 0;
  int n = static_cast<int>(std::floor(riccati_phase(l, x) / kPi));
  while (n >= 1 && bessel_zero(l, n).value >= x) --n;
  while (bessel_zero(l, n + 1).value < x) ++n;
  return n;
}

}  // namespace phasequiv::riccati
