#include "phasequiv/radial.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "phasequiv/errors.hpp"
#include "phasequiv/riccati.hpp"

namespace phasequiv::radial {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLinearWaveNumber = 1e-5;
constexpr double kZeroSnap = 1e-12;

double trig_wave_number(double k_squared) {
  return std::abs(k_squared) <= kLinearLimit ? kLinearWaveNumber : std::sqrt(k_squared);
}

double phase_of(const riccati::FunctionPair& f, int l, double x) {
  const double raw = std::atan2(f.regular, f.irregular);
  const double centre = x - 0.25 * l * kPi;
  return raw + 2.0 * kPi * std::round((centre - raw) / (2.0 * kPi));
}

bool is_zero(const Ray& ray) {
  return std::abs(ray.value) <= kZeroSnap * std::hypot(ray.value, ray.deriv);
}

// Zeros crossed by an oscillation phase running from its start (taken mod pi) to `advance`.
// Near a zero the count is reconciled with the end state.
int trig_zero_count(double advance, const Ray& end) {
  if (is_zero(end)) return static_cast<int>(std::lround(advance / kPi));
  int count = static_cast<int>(std::floor(advance / kPi));
  const double frac = advance - count * kPi;
  const double theta = angle_mod_pi(end);
  if (frac < 1e-7 && theta > 0.5 * kPi && count > 0) --count;
  if (frac > kPi - 1e-7 && theta < 0.5 * kPi) ++count;
  return count;
}

double bracket_root(const std::function<double(double)>& f, double lo, double hi) {
  boost::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
  return 0.5 * (a + b);
}

}  // namespace

Ray ray_from_ratio(const Ratio& c) {
  if (c.infinite) return {1.0, 0.0};
  return normalized({c.value, 1.0});
}

Ratio ratio_from_ray(const Ray& ray) {
  const double norm = std::hypot(ray.value, ray.deriv);
  if (std::abs(ray.deriv) <= 1e-14 * norm) return {std::numeric_limits<double>::infinity(), true};
  return {ray.value / ray.deriv, false};
}

Ray normalized(const Ray& ray) {
  const double norm = std::hypot(ray.value, ray.deriv);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw SolverError("degenerate radial state");
  return {ray.value / norm, ray.deriv / norm};
}

double angle_mod_pi(const Ray& ray) {
  if (is_zero(ray)) return 0.0;
  double theta = std::atan2(ray.value, ray.deriv);
  if (theta < 0.0) theta += kPi;
  if (theta >= kPi) theta -= kPi;
  return theta;
}

SegmentStep propagate_segment(int l, double k_squared, double a, double b, const Ray& start) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("segment edges must be positive");
  const double psi = start.value;
  const double dpsi = start.deriv;
  SegmentStep out{};
  if (k_squared >= -kLinearLimit) {
    const double k = trig_wave_number(k_squared);
    const double xa = k * a;
    const double xb = k * b;
    const auto fa = riccati::riccati_pair(l, xa);
    const auto fb = riccati::riccati_pair(l, xb);
    const double alpha = (fa.irregular * dpsi - k * fa.irregular_deriv * psi) / k;
    const double beta = (k * fa.regular_deriv * psi - fa.regular * dpsi) / k;
    out.end = normalized({alpha * fb.regular + beta * fb.irregular,
                          k * (alpha * fb.regular_deriv + beta * fb.irregular_deriv)});
    if (b > a) {
      const double offset = std::atan2(beta, alpha);
      const double pa = phase_of(fa, l, xa) + offset;
      double pa_mod = is_zero(start) ? 0.0 : pa - kPi * std::floor(pa / kPi);
      if (pa_mod >= kPi) pa_mod -= kPi;
      const double advance = pa_mod + phase_of(fb, l, xb) - phase_of(fa, l, xa);
      out.zeros = trig_zero_count(advance, out.end);
    }
    return out;
  }
  const double kappa = std::sqrt(-k_squared);
  const double xa = kappa * a;
  const double xb = kappa * b;
  const auto sa = riccati::riccati_modified_pair_scaled(l, xa);
  const auto sb = riccati::riccati_modified_pair_scaled(l, xb);
  const double alpha = (sa.irregular * dpsi - kappa * sa.irregular_deriv * psi) / kappa;
  const double beta = (kappa * sa.regular_deriv * psi - sa.regular * dpsi) / kappa;
  const double delta = xb - xa;
  double grow = 1.0;
  double decay = 1.0;
  if (delta >= 0.0) {
    decay = std::exp(-2.0 * delta);
  } else {
    grow = std::exp(2.0 * delta);
  }
  out.end = normalized({alpha * grow * sb.regular + beta * decay * sb.irregular,
                        kappa * (alpha * grow * sb.regular_deriv +
                                 beta * decay * sb.irregular_deriv)});
  if (b > a) {
    if (is_zero(start)) {
      out.zeros = 0;
    } else if (is_zero(out.end)) {
      out.zeros = 1;
    } else {
      out.zeros = (out.end.value > 0.0) != (psi > 0.0) ? 1 : 0;
    }
  }
  return out;
}

SegmentStep back_propagate(int l, double k_squared, double a, double b, const Ray& at_b) {
  if (!(b > a)) throw DomainError("back propagation needs a < b");
  SegmentStep out{propagate_segment(l, k_squared, b, a, at_b).end, 0};
  if (k_squared >= -kLinearLimit) {
    out.zeros = propagate_segment(l, k_squared, a, b, out.end).zeros;
  } else if (is_zero(at_b)) {
    out.zeros = is_zero(out.end) ? 0 : 1;
  } else if (!is_zero(out.end)) {
    out.zeros = (out.end.value > 0.0) != (at_b.value > 0.0) ? 1 : 0;
  }
  return out;
}

double zero_start_angle(int l, double k_squared, double a, double b) {
  const SegmentStep step = propagate_segment(l, k_squared, a, b, {0.0, 1.0});
  return kPi * step.zeros + angle_mod_pi(step.end);
}

SegmentStep regular_segment(int l, double k_squared, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  SegmentStep out{};
  if (k_squared >= -kLinearLimit) {
    const double k = trig_wave_number(k_squared);
    const double x = k * r;
    const auto f = riccati::riccati_pair(l, x);
    out.end = normalized({f.regular, k * f.regular_deriv});
    out.zeros = trig_zero_count(phase_of(f, l, x), out.end);
    return out;
  }
  const double kappa = std::sqrt(-k_squared);
  const auto s = riccati::riccati_modified_pair_scaled(l, kappa * r);
  out.end = normalized({s.regular, kappa * s.regular_deriv});
  out.zeros = 0;
  return out;
}

NodalState regular_nodal(int l, const Profile& profile, double r) {
  const std::size_t layers = profile.k_squared.size();
  if (layers == 0 || profile.ends.size() + 1 != layers) throw DomainError("malformed profile");
  if (profile.ends.empty() || r <= profile.ends[0]) {
    const SegmentStep s = regular_segment(l, profile.k_squared[0], r);
    return {s.end, s.zeros};
  }
  SegmentStep s = regular_segment(l, profile.k_squared[0], profile.ends[0]);
  NodalState state{s.end, s.zeros};
  for (std::size_t j = 1; j < layers; ++j) {
    const double a = profile.ends[j - 1];
    const bool last = j + 1 == layers || r <= profile.ends[j];
    const double b = last ? r : profile.ends[j];
    s = propagate_segment(l, profile.k_squared[j], a, b, state.ray);
    state.ray = s.end;
    state.zeros += s.zeros;
    if (last) break;
  }
  return state;
}

double accumulated_angle(const NodalState& state) {
  return kPi * state.zeros + angle_mod_pi(state.ray);
}

Profile profile_of(const PiecewisePotential& p, std::vector<double>& k_storage,
                   std::vector<double>& end_storage) {
  k_storage = p.wave_numbers_squared();
  k_storage.push_back(p.k2());
  end_storage = p.breakpoints();
  end_storage.push_back(p.range());
  return {k_storage, end_storage};
}

RadialState propagate_state(const RadialState& start, SegmentWaveNumber segment, double r_to) {
  const SegmentStep s = propagate_segment(start.l, segment.k_squared, start.r, r_to,
                                          {start.value, start.deriv});
  return {start.l, r_to, s.end.value, s.end.deriv};
}

RadialState regular_state_at(const PiecewisePotential& p, int l, double r) {
  std::vector<double> ks;
  std::vector<double> ends;
  const NodalState s = regular_nodal(l, profile_of(p, ks, ends), r);
  return {l, r, s.ray.value, s.ray.deriv};
}

std::vector<double> zeros_of_regular(int l, const Profile& profile, double r_max) {
  std::vector<double> zeros;
  const std::size_t layers = profile.k_squared.size();
  Ray ray{0.0, 1.0};
  double a = 0.0;
  for (std::size_t j = 0; j < layers && a < r_max; ++j) {
    const double b = j < profile.ends.size() ? std::min(profile.ends[j], r_max) : r_max;
    const double k2 = profile.k_squared[j];
    if (k2 >= -kLinearLimit) {
      const double k = trig_wave_number(k2);
      double offset = 0.0;
      if (j > 0) {
        const auto fa = riccati::riccati_pair(l, k * a);
        const double alpha = (fa.irregular * ray.deriv - k * fa.irregular_deriv * ray.value) / k;
        const double beta = (k * fa.regular_deriv * ray.value - fa.regular * ray.deriv) / k;
        offset = std::atan2(beta, alpha);
      }
      auto phase = [&](double r) { return riccati::riccati_phase(l, k * r) + offset; };
      const double pa = j == 0 ? 0.0 : phase(a);
      const double pb = phase(b);
      double first = std::floor(pa / kPi) + 1.0;
      if (j > 0 && is_zero(ray)) first = std::round(pa / kPi) + 1.0;
      for (double m = first; m * kPi <= pb + 1e-12; m += 1.0) {
        const double target = m * kPi;
        auto f = [&](double r) { return phase(r) - target; };
        const double lo = j == 0 ? 1e-6 * b : a;
        double root;
        if (f(b) <= 0.0) {
          root = b;
        } else if (f(lo) >= 0.0) {
          root = lo;
        } else {
          root = bracket_root(f, lo, b);
        }
        if (root < r_max && root > 0.0) zeros.push_back(root);
      }
    } else if (j > 0 && !is_zero(ray)) {
      const Ray start = ray;
      auto f = [&](double r) {
        return r == a ? start.value : propagate_segment(l, k2, a, r, start).end.value;
      };
      const double fb = f(b);
      if ((fb > 0.0) != (start.value > 0.0) || fb == 0.0) {
        const double root = fb == 0.0 ? b : bracket_root(f, a, b);
        if (root < r_max) zeros.push_back(root);
      }
    }
    if (b >= r_max) break;
    ray = j == 0 ? regular_segment(l, k2, b).end : propagate_segment(l, k2, a, b, ray).end;
    a = b;
  }
  return zeros;
}

RegularZeros zeros_of_regular(const PiecewisePotential& p, int l) {
  std::vector<double> ks;
  std::vector<double> ends;
  return {l, zeros_of_regular(l, profile_of(p, ks, ends), p.range())};
}

LogDerivRatios ratios_at(const PiecewisePotential& p, double r, int l_max) {
  LogDerivRatios out{r, {}, {}};
  std::vector<double> ks;
  std::vector<double> ends;
  const Profile profile = profile_of(p, ks, ends);
  for (int l = 0; l <= l_max; ++l) {
    const Ray ray = regular_nodal(l, profile, r).ray;
    out.rays.push_back(ray);
    out.ratios.push_back(ratio_from_ray(ray));
  }
  return out;
}

Ray ray_from_phase(int l, double k, double r, double delta) {
  const auto f = riccati::riccati_pair(l, k * r);
  const double c = std::cos(delta);
  const double s = std::sin(delta);
  return normalized({f.regular * c + f.irregular * s,
                     k * (f.regular_deriv * c + f.irregular_deriv * s)});
}

Ratio ratio_from_phase(int l, double k, double r, double delta) {
  return ratio_from_ray(ray_from_phase(l, k, r, delta));
}

}  // namespace phasequiv::radial
