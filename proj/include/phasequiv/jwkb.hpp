#pragma once

#include <map>
#include <string>
#include <vector>

#include "phasequiv/inverse.hpp"
#include "phasequiv/potential.hpp"

namespace phasequiv::jwkb {

struct TurningPointData {
  int l;
  double rt;       // largest turning point of K(l, k, r)
  double rt_free;  // sqrt(l(l+1)) / k
};

struct NminBound {
  double raw_bound;
  int n_min;  // 1 + floor(raw_bound)
};

struct QDecomposition {
  double q1;          // action from the turning point to the first zero
  double q2;          // action from the first zero to R
  double q3;          // free action from sqrt(L)/k to R
  double q1_levelled; // pi (1 - c_N)
  double n;           // (q1 + q2 - q3) / pi
};

struct RecurrenceReport {
  std::map<int, int> nmax;  // largest last zero index per common n class
  std::vector<std::string> violations;
  bool holds() const { return violations.empty(); }
};

/// Integral of sqrt(K^2 - L/r^2) dr from a to b, both in the allowed region.
double segment_action(double k_squared, int l, double a, double b);

/// Largest turning point of K(l, k, r) at or below r_max.
TurningPointData turning_point(const PiecewisePotential& p, int l, double r_max);
TurningPointData turning_point(const PiecewisePotential& p, int l);

/// Integral of K(l, k, r) from the largest turning point below `to` up to `to`.
double action(const PiecewisePotential& p, int l, double to);

double jwkb_phase(const PiecewisePotential& p, int l);

double levelling_constant(int l, double k = 1.0);

double zero_index(const PiecewisePotential& p, int l, double r_candidate);

NminBound nmin_transparent(int n_order, double k, double range);
NminBound nmin_general(int n_order, double k, double range, double delta);

int conjecture_nmin(int n_order, double k, double range);

QDecomposition q_decomposition(const PiecewisePotential& p, int n_order);

RecurrenceReport nmax_recurrence_check(const std::vector<inverse::EquivalentSolution>& solutions);

}  // namespace phasequiv::jwkb
