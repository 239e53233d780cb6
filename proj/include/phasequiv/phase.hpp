#pragma once

#include <vector>

#include "phasequiv/potential.hpp"
#include "phasequiv/radial.hpp"

namespace phasequiv::phase {

struct PhaseShiftSet {
  double k2;
  std::vector<double> shifts;  // absolute delta_l, l = 0..l_max
};

struct IntegratorOptions {
  double rtol = 1e-13;
  double atol = 1e-14;
};

/// Absolute phase shift from the variable-phase equation integrated from 1e-6 R to R.
double calogero_phase(const PiecewisePotential& p, int l, const IntegratorOptions& opts = {});

/// Phase shift modulo pi from the tangent-form equation (cotangent form when |tan| > 10).
/// Result in (-pi/2, pi/2].
double tan_phase(const PiecewisePotential& p, int l, const IntegratorOptions& opts = {});

/// Phase shift modulo pi from the boundary ray psi/psi' at R, in [0, pi).
double matching_phase_mod_pi(int l, double k, double range, const radial::Ray& ray);
double matching_phase_mod_pi(const PiecewisePotential& p, int l);

/// Absolute phase shift from the node count of the regular solution on (0, R].
double nodal_phase(const PiecewisePotential& p, int l);

PhaseShiftSet phase_shifts(const PiecewisePotential& p, int l_max);

/// Integer n with delta_cand = delta_ref + n pi for the given l.
int ambiguity_index(const PhaseShiftSet& reference, const PhaseShiftSet& candidate, int l);

/// Distance between two angles modulo pi, in [0, pi/2].
double distance_mod_pi(double a, double b);

}  // namespace phasequiv::phase
