#include "phasequiv/phase.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "phasequiv/errors.hpp"
#include "phasequiv/riccati.hpp"

namespace phasequiv::phase {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 1>;

constexpr double kPi = std::numbers::pi;

double double_factorial(int n) {
  double result = 1.0;
  for (int i = n; i > 1; i -= 2) result *= i;
  return result;
}

double start_radius(const PiecewisePotential& p) { return 1e-6 * p.range(); }

// First-order phase accumulated on (0, r0) inside the innermost segment.
double start_phase(const PiecewisePotential& p, int l, double k, double r0) {
  const double v0 = p.values().front();
  const double norm = double_factorial(2 * l + 1);
  const double integral =
      std::pow(k, 2 * l + 2) * std::pow(r0, 2 * l + 3) / ((2 * l + 3) * norm * norm);
  return -(v0 / k) * integral;
}

// Integrates x' = rhs(x, r) on [a, b] with the adaptive Dormand-Prince 5(4) pair. After every
// accepted step `after_step` may rewrite the state; it returns true when it did.
template <class Rhs, class After>
void integrate_segment(Rhs&& rhs, State& x, double a, double b, const IntegratorOptions& opts,
                       After&& after_step) {
  using Stepper = odeint::runge_kutta_dopri5<State>;
  using Checker = odeint::default_error_checker<double, odeint::array_algebra,
                                                odeint::default_operations>;
  odeint::controlled_runge_kutta<Stepper, Checker> stepper(Checker(opts.atol, opts.rtol, 1.0, 0.0));
  double r = a;
  double dt = std::min(1e-3, 0.01 * (b - a));
  const double min_step = 1e-14 * std::max(1.0, b);
  while (r < b) {
    if (r + dt > b) dt = b - r;
    const auto result = stepper.try_step(rhs, x, r, dt);
    if (result == odeint::success) {
      if (after_step(x)) stepper.reset();
      continue;
    }
    if (dt < min_step) {
      throw SolverError("phase integration step underflow at r = " + format_number(r));
    }
  }
}

}  // namespace

double distance_mod_pi(double a, double b) {
  double d = std::fmod(a - b, kPi);
  if (d < 0.0) d += kPi;
  return std::min(d, kPi - d);
}

double calogero_phase(const PiecewisePotential& p, int l, const IntegratorOptions& opts) {
  if (l < 0 || l > riccati::kMaxOrder) throw DomainError("angular momentum outside 0..4");
  const double k = std::sqrt(p.k2());
  const double r0 = start_radius(p);
  // The right-hand side is pi-periodic in delta; the state is kept near zero and whole
  // turns are counted apart to limit round-off.
  State x{start_phase(p, l, k, r0)};
  double turns = 0.0;
  auto reduce = [&](State& s) {
    const double m = std::round(s[0] / kPi);
    if (m == 0.0) return false;
    s[0] -= m * kPi;
    turns += m;
    return true;
  };
  const int segments = p.breakpoint_count() + 1;
  for (int j = 0; j < segments; ++j) {
    const double a = std::max(p.edge(j), r0);
    const double b = p.edge(j + 1);
    const double v = p.values()[j];
    if (b <= a || v == 0.0) continue;
    auto rhs = [&](const State& s, State& ds, double r) {
      const auto f = riccati::riccati_pair(l, k * r);
      const double amp = f.regular * std::cos(s[0]) + f.irregular * std::sin(s[0]);
      ds[0] = -(v / k) * amp * amp;
    };
    integrate_segment(rhs, x, a, b, opts, reduce);
  }
  return x[0] + turns * kPi;
}

double tan_phase(const PiecewisePotential& p, int l, const IntegratorOptions& opts) {
  if (l < 0 || l > riccati::kMaxOrder) throw DomainError("angular momentum outside 0..4");
  const double k = std::sqrt(p.k2());
  const double r0 = start_radius(p);
  State x{std::tan(start_phase(p, l, k, r0))};
  bool cotangent = false;
  const int segments = p.breakpoint_count() + 1;
  for (int j = 0; j < segments; ++j) {
    const double a = std::max(p.edge(j), r0);
    const double b = p.edge(j + 1);
    const double v = p.values()[j];
    if (b <= a || v == 0.0) continue;
    auto rhs = [&](const State& s, State& ds, double r) {
      const auto f = riccati::riccati_pair(l, k * r);
      if (cotangent) {
        const double amp = f.regular * s[0] + f.irregular;
        ds[0] = (v / k) * amp * amp;
      } else {
        const double amp = f.regular + f.irregular * s[0];
        ds[0] = -(v / k) * amp * amp;
      }
    };
    auto flip = [&](State& s) {
      if (std::abs(s[0]) <= 10.0) return false;
      s[0] = 1.0 / s[0];
      cotangent = !cotangent;
      return true;
    };
    integrate_segment(rhs, x, a, b, opts, flip);
  }
  if (!cotangent) return std::atan(x[0]);
  double delta = std::atan2(1.0, x[0]);
  if (delta > 0.5 * kPi) delta -= kPi;
  return delta;
}

double matching_phase_mod_pi(int l, double k, double range, const radial::Ray& ray) {
  const auto f = riccati::riccati_pair(l, k * range);
  const double c = ray.deriv * f.regular - ray.value * k * f.regular_deriv;
  const double s = ray.deriv * f.irregular - ray.value * k * f.irregular_deriv;
  double delta = std::atan2(-c, s);
  if (delta < 0.0) delta += kPi;
  if (delta >= kPi) delta -= kPi;
  return delta;
}

double matching_phase_mod_pi(const PiecewisePotential& p, int l) {
  const radial::RadialState s = radial::regular_state_at(p, l, p.range());
  return matching_phase_mod_pi(l, std::sqrt(p.k2()), p.range(), {s.value, s.deriv});
}

double nodal_phase(const PiecewisePotential& p, int l) {
  std::vector<double> ks;
  std::vector<double> ends;
  const auto state = radial::regular_nodal(l, radial::profile_of(p, ks, ends), p.range());
  const double k = std::sqrt(p.k2());
  const double phi = riccati::riccati_phase(l, k * p.range());
  double frac = std::fmod(phi + matching_phase_mod_pi(l, k, p.range(), state.ray), kPi);
  if (frac < 0.0) frac += kPi;
  if (radial::angle_mod_pi(state.ray) == 0.0 && frac > 0.5 * kPi) frac -= kPi;
  return kPi * state.zeros + frac - phi;
}

PhaseShiftSet phase_shifts(const PiecewisePotential& p, int l_max) {
  PhaseShiftSet out{p.k2(), {}};
  for (int l = 0; l <= l_max; ++l) out.shifts.push_back(calogero_phase(p, l));
  return out;
}

int ambiguity_index(const PhaseShiftSet& reference, const PhaseShiftSet& candidate, int l) {
  if (l < 0 || l >= static_cast<int>(reference.shifts.size()) ||
      l >= static_cast<int>(candidate.shifts.size())) {
    throw DomainError("ambiguity_index: l outside the phase sets");
  }
  const double x = (candidate.shifts[l] - reference.shifts[l]) / kPi;
  const double n = std::round(x);
  if (std::abs(x - n) > 1e-3) {
    throw SolverError("phase difference for l = " + std::to_string(l) +
                      " is not a multiple of pi (residual " + format_number(x - n) + ")");
  }
  return static_cast<int>(n);
}

}  // namespace phasequiv::phase
