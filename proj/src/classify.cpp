#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "phasequiv/errors.hpp"
#include "phasequiv/inverse.hpp"
#include "phasequiv/phase.hpp"

namespace phasequiv::inverse {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kModPiTolerance = 1e-6;
constexpr double kIntegerTolerance = 1e-3;

bool close(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)); }

bool same_parameters(const EquivalentSolution& a, const EquivalentSolution& b) {
  const auto& ra = a.potential.breakpoints();
  const auto& rb = b.potential.breakpoints();
  if (ra.size() != rb.size() || a.k_squared.size() != b.k_squared.size()) return false;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (!close(ra[i], rb[i])) return false;
  }
  for (std::size_t i = 0; i < a.k_squared.size(); ++i) {
    if (!close(a.k_squared[i], b.k_squared[i])) return false;
  }
  return true;
}

int rank(const AmbiguityLabel& label) { return label.category() == "common" ? 0 : 1; }

}  // namespace

bool AmbiguityLabel::same_n() const {
  return std::adjacent_find(n.begin(), n.end(), std::not_equal_to<>()) == n.end();
}

bool AmbiguityLabel::ordered() const {
  return std::is_sorted(zero_indices.begin(), zero_indices.end());
}

std::string AmbiguityLabel::category() const {
  return same_n() && ordered() ? "common" : "mixed";
}

std::optional<EquivalentSolution> classify_filtered(const TargetData& t,
                                                    const PiecewisePotential& p,
                                                    const SolveOptions& opts, std::string* why,
                                                    bool* out_of_range) {
  auto fail = [&](std::string reason) -> std::optional<EquivalentSolution> {
    if (why) *why = std::move(reason);
    return std::nullopt;
  };
  const int top = t.max_l();
  if (p.breakpoint_count() != top) return fail("breakpoint count does not match the phase count");
  if (std::abs(p.range() - t.range) > 1e-12 * t.range) return fail("range mismatch");

  AmbiguityLabel label;
  const auto& breaks = p.breakpoints();
  for (int l = 1; l <= top; ++l) {
    const auto zeros = radial::zeros_of_regular(p, l).zeros;
    const double r = breaks[l - 1];
    int index = 0;
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      if (std::abs(zeros[j] - r) <= 1e-7 * std::max(1.0, r)) {
        index = static_cast<int>(j) + 1;
        break;
      }
    }
    if (index == 0) return fail("r_" + std::to_string(l) + " is not a zero of psi_" + std::to_string(l));
    label.zero_indices.push_back(index);
  }

  const double k = std::sqrt(t.k2);
  double residual = 0.0;
  for (int l = 0; l <= top; ++l) {
    const double got = phase::matching_phase_mod_pi(p, l);
    const double want = phase::matching_phase_mod_pi(l, k, t.range, t.rays[l]);
    residual = std::max(residual, phase::distance_mod_pi(got, want));
  }
  if (residual > kModPiTolerance) return fail("phase mismatch modulo pi: " + format_number(residual));

  std::vector<int> nodal;
  for (int l = 0; l <= top; ++l) {
    nodal.push_back(static_cast<int>(
        std::lround((phase::nodal_phase(p, l) - t.reference_phases[l]) / kPi)));
  }
  auto allowed = [&](int l, int n) {
    if (opts.n_per_l) return (*opts.n_per_l).at(l) == n;
    if (opts.n_range) return opts.n_range->contains(n);
    return true;
  };
  for (int l = 0; l <= top; ++l) {
    if (!allowed(l, nodal[l])) {
      if (out_of_range) *out_of_range = true;
      return fail("n outside the requested range");
    }
  }

  std::vector<double> phases;
  for (int l = 0; l <= top; ++l) {
    const double delta = phase::calogero_phase(p, l);
    const double x = (delta - t.reference_phases[l]) / kPi;
    const double n = std::round(x);
    if (std::abs(x - n) > kIntegerTolerance) {
      return fail("phase difference for l = " + std::to_string(l) + " is not a multiple of pi");
    }
    if (static_cast<int>(n) != nodal[l]) {
      return fail("integrated and nodal phase disagree for l = " + std::to_string(l));
    }
    phases.push_back(delta);
  }
  label.n = nodal;
  return EquivalentSolution{label, p, p.wave_numbers_squared(), phases, residual};
}

std::optional<EquivalentSolution> classify(const TargetData& t, const PiecewisePotential& p,
                                           std::string* why) {
  return classify_filtered(t, p, SolveOptions{}, why, nullptr);
}

void canonicalize(std::vector<EquivalentSolution>& solutions) {
  auto order = [](const EquivalentSolution& a, const EquivalentSolution& b) {
    const auto ka = std::make_tuple(rank(a.label), a.label.n, a.label.zero_indices);
    const auto kb = std::make_tuple(rank(b.label), b.label.n, b.label.zero_indices);
    if (ka != kb) return ka < kb;
    if (a.potential.breakpoints() != b.potential.breakpoints()) {
      return a.potential.breakpoints() < b.potential.breakpoints();
    }
    return a.k_squared < b.k_squared;
  };
  std::sort(solutions.begin(), solutions.end(), order);
  std::vector<EquivalentSolution> out;
  for (auto& s : solutions) {
    bool duplicate = false;
    for (const auto& kept : out) {
      if (kept.label.n == s.label.n && kept.label.zero_indices == s.label.zero_indices &&
          same_parameters(kept, s)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(std::move(s));
  }
  solutions = std::move(out);
}

}  // namespace phasequiv::inverse
