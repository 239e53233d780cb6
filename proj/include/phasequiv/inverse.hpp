#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasequiv/potential.hpp"
#include "phasequiv/radial.hpp"

namespace phasequiv::inverse {

struct IndexRange {
  int lo;
  int hi;
  bool contains(int n) const { return lo <= n && n <= hi; }
};

/// Scattering data at one energy: boundary rays at R for l = 0..N and the absolute phases
/// the labels n are measured against.
struct TargetData {
  double k2 = 1.0;
  double range = 0.0;
  std::vector<radial::Ray> rays;
  std::vector<double> reference_phases;

  int max_l() const { return static_cast<int>(rays.size()) - 1; }
  std::vector<radial::Ratio> ratios() const;

  static TargetData from_potential(const PiecewisePotential& p, int max_l);
  static TargetData from_phases(double k2, double range, const std::vector<double>& phases);
  static TargetData transparent(int max_l, double k2, double range);
};

/// Zeros of psi_l in (0, R] of any potential reproducing the reference phases.
std::vector<int> reference_zero_counts(const TargetData& t);

struct AmbiguityLabel {
  std::vector<int> n;             // per l, n_l = (delta_l - delta_ref_l) / pi
  std::vector<int> zero_indices;  // n_1..n_N: r_l is the n_l-th zero of psi_l
  bool same_n() const;
  bool ordered() const;
  /// "common" when n is the same for every l and zero indices are non-decreasing.
  std::string category() const;
};

struct EquivalentSolution {
  AmbiguityLabel label;
  PiecewisePotential potential;
  std::vector<double> k_squared;  // K_0^2 .. K_N^2
  std::vector<double> phases;     // absolute phase shifts of the solution
  double residual = 0.0;          // largest mod-pi phase mismatch against the targets
};

struct Reject {
  std::vector<double> breakpoints;
  std::vector<double> k_squared;
  std::string reason;
};

struct SolveOptions {
  int scan_steps = 2000;
  int inner_scan_steps = 0;  // scanned inner levels of five-phase problems; 0 = scan_steps
  std::optional<int> max_zero_index;
  std::optional<IndexRange> n_range;
  std::optional<std::vector<int>> n_per_l;
  double time_budget_seconds = 0.0;  // 0 = unlimited
  int threads = 1;
};

struct SolveResult {
  std::vector<EquivalentSolution> solutions;
  std::vector<Reject> rejects;
  std::vector<std::string> warnings;
};

/// V_0 of the one-segment potential reproducing the l = 0 ray at R with K_0 R in the n-th
/// branch [(2n-1) pi/2, (2n+1) pi/2) (n = 0 also covers the hyperbolic branch).
std::optional<double> solve_single(const radial::Ray& a, double k2, double range, int n);

SolveResult solve_two(const TargetData& t, const SolveOptions& opts = {});
SolveResult solve_three(const TargetData& t, const SolveOptions& opts = {});
SolveResult solve_four(const TargetData& t, const SolveOptions& opts = {});
SolveResult solve_five(const TargetData& t, const SolveOptions& opts = {});

/// Dispatch on the number of breakpoints N = t.max_l().
SolveResult solve(const TargetData& t, const SolveOptions& opts = {});

/// Phase-equivalent partners of the zero potential (all phases n pi).
SolveResult enumerate_transparent(int breakpoints, double k2, double range,
                                  const SolveOptions& opts = {});

/// Verify and label a candidate potential against the targets. Returns nullopt and fills
/// `why` when the candidate fails a check.
std::optional<EquivalentSolution> classify(const TargetData& t, const PiecewisePotential& p,
                                           std::string* why);

/// Sort by category, labels and parameters; merge entries agreeing to 1e-6 relative.
void canonicalize(std::vector<EquivalentSolution>& solutions);

}  // namespace phasequiv::inverse
