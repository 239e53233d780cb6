#pragma once

#include <optional>
#include <span>
#include <vector>

#include "phasequiv/potential.hpp"

namespace phasequiv::radial {

/// Direction of (psi, psi'); only the ratio matters.
struct Ray {
  double value;
  double deriv;
};

struct RadialState {
  int l;
  double r;
  double value;
  double deriv;
};

struct RegularZeros {
  int l;
  std::vector<double> zeros;
};

/// psi / psi' at a radius; infinite when psi' vanishes.
struct Ratio {
  double value;
  bool infinite;
};

struct LogDerivRatios {
  double r;
  std::vector<Ratio> ratios;
  std::vector<Ray> rays;
};

/// Layered wave-number profile: layer j has K^2 = k_squared[j] on [ends[j-1], ends[j]),
/// ends[-1] = 0. The last layer extends to infinity, so ends.size() == k_squared.size() - 1.
struct Profile {
  std::span<const double> k_squared;
  std::span<const double> ends;
};

struct SegmentStep {
  Ray end;
  int zeros;  // zeros of psi in (a, b]; only meaningful for b > a
};

/// Ray the ratio c describes; infinite ratios map to (1, 0).
Ray ray_from_ratio(const Ratio& c);
Ratio ratio_from_ray(const Ray& ray);

/// Unit-normalized ray, preserving sign.
Ray normalized(const Ray& ray);

/// Pruefer angle atan2(psi, psi') reduced to [0, pi).
double angle_mod_pi(const Ray& ray);

/// Propagate a solution of psi'' + (K^2 - l(l+1)/r^2) psi = 0 across a constant-K segment.
/// Works for b < a (back-propagation); the result is normalized by a positive factor.
SegmentStep propagate_segment(int l, double k_squared, double a, double b, const Ray& start);

/// Ray at a < b of the solution given by its ray at b, with its zeros in (a, b].
SegmentStep back_propagate(int l, double k_squared, double a, double b, const Ray& at_b);

/// Accumulated Pruefer angle at b of the solution with psi(a) = 0, psi'(a) = 1.
double zero_start_angle(int l, double k_squared, double a, double b);

/// Regular solution of the innermost segment evaluated at r (K^2 constant on (0, r]).
SegmentStep regular_segment(int l, double k_squared, double r);

struct NodalState {
  Ray ray;
  int zeros;  // zeros in (0, r]
};

NodalState regular_nodal(int l, const Profile& profile, double r);

/// Accumulated Pruefer angle pi * zeros + angle_mod_pi(ray).
double accumulated_angle(const NodalState& state);

Profile profile_of(const PiecewisePotential& p, std::vector<double>& k_storage,
                   std::vector<double>& end_storage);

RadialState propagate_state(const RadialState& start, SegmentWaveNumber segment, double r_to);

/// Regular solution (psi ~ r^{l+1} at the origin) evaluated at r, normalized to unit length.
RadialState regular_state_at(const PiecewisePotential& p, int l, double r);

/// All zeros of the regular solution in (0, R).
RegularZeros zeros_of_regular(const PiecewisePotential& p, int l);
std::vector<double> zeros_of_regular(int l, const Profile& profile, double r_max);

LogDerivRatios ratios_at(const PiecewisePotential& p, double r, int l_max);

/// Boundary ratio at R of the free-region solution with phase shift delta.
Ratio ratio_from_phase(int l, double k, double r, double delta);
Ray ray_from_phase(int l, double k, double r, double delta);

}  // namespace phasequiv::radial
