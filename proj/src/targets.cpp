#include <cmath>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "phasequiv/errors.hpp"
#include "phasequiv/inverse.hpp"
#include "phasequiv/phase.hpp"
#include "phasequiv/riccati.hpp"

namespace phasequiv::inverse {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double toms748(F f, double lo, double hi) {
  boost::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
  return 0.5 * (a + b);
}

void check_target_size(int max_l) {
  if (max_l < 0 || max_l > riccati::kMaxOrder) {
    throw DomainError("number of phases must be between 1 and 5");
  }
}

}  // namespace

std::vector<radial::Ratio> TargetData::ratios() const {
  std::vector<radial::Ratio> out;
  for (const auto& ray : rays) out.push_back(radial::ratio_from_ray(ray));
  return out;
}

TargetData TargetData::from_potential(const PiecewisePotential& p, int max_l) {
  check_target_size(max_l);
  TargetData t;
  t.k2 = p.k2();
  t.range = p.range();
  t.rays = radial::ratios_at(p, p.range(), max_l).rays;
  for (int l = 0; l <= max_l; ++l) t.reference_phases.push_back(phase::calogero_phase(p, l));
  return t;
}

TargetData TargetData::from_phases(double k2, double range, const std::vector<double>& phases) {
  check_target_size(static_cast<int>(phases.size()) - 1);
  if (!(k2 > 0.0) || !(range > 0.0)) throw InputError("k2 and R must be positive");
  TargetData t;
  t.k2 = k2;
  t.range = range;
  const double k = std::sqrt(k2);
  for (std::size_t l = 0; l < phases.size(); ++l) {
    t.rays.push_back(radial::ray_from_phase(static_cast<int>(l), k, range, phases[l]));
  }
  t.reference_phases = phases;
  return t;
}

TargetData TargetData::transparent(int max_l, double k2, double range) {
  return from_phases(k2, range, std::vector<double>(max_l + 1, 0.0));
}

std::vector<int> reference_zero_counts(const TargetData& t) {
  const double k = std::sqrt(t.k2);
  std::vector<int> out;
  for (int l = 0; l <= t.max_l(); ++l) {
    const double total = riccati::riccati_phase(l, k * t.range) + t.reference_phases[l];
    out.push_back(static_cast<int>(std::floor(total / kPi + 1e-9)));
  }
  return out;
}

std::optional<double> solve_single(const radial::Ray& a, double k2, double range, int n) {
  if (n < 0) throw DomainError("branch index must be >= 0");
  const radial::Ray ray = radial::normalized(a);
  const double R = range;
  if (std::abs(ray.deriv) <= 1e-14) {
    if (n == 0) return std::nullopt;
    const double k0 = (2 * n - 1) * 0.5 * kPi / R;
    return k2 - k0 * k0;
  }
  if (n >= 1) {
    auto h = [&](double x) { return ray.deriv * std::sin(x) - ray.value * (x / R) * std::cos(x); };
    const double x = toms748(h, (2 * n - 1) * 0.5 * kPi, (2 * n + 1) * 0.5 * kPi);
    const double k0 = x / R;
    return k2 - k0 * k0;
  }
  const double at_zero = ray.deriv - ray.value / R;
  if (at_zero == 0.0) return k2;
  auto trig = [&](double x) { return ray.deriv * std::sin(x) / x - (ray.value / R) * std::cos(x); };
  if ((at_zero > 0.0) != (ray.deriv > 0.0)) {
    const double x = toms748(trig, 1e-12, 0.5 * kPi);
    return k2 - (x / R) * (x / R);
  }
  auto hyper = [&](double y) {
    return ray.deriv * std::sinh(y) / y - (ray.value / R) * std::cosh(y);
  };
  double hi = 1.0;
  while ((hyper(hi) > 0.0) == (at_zero > 0.0)) {
    hi *= 2.0;
    if (hi > 700.0) return std::nullopt;
  }
  const double y = toms748(hyper, 1e-12, hi);
  return k2 + (y / R) * (y / R);
}

}  // namespace phasequiv::inverse
