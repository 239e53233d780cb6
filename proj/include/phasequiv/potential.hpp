#pragma once

#include <string>
#include <vector>

namespace phasequiv {

inline constexpr double kLinearLimit = 1e-10;

enum class Branch { Trig, Hyperbolic, Linear };

/// Local wave number squared K^2 = k^2 - v on one segment.
struct SegmentWaveNumber {
  double k_squared;
  Branch branch() const;
};

/// Piecewise-constant potential v(r) = V_j on [r_j, r_{j+1}), r_0 = 0, r_{N+1} = R,
/// v = 0 for r >= R. Energy is E = k^2.
class PiecewisePotential {
 public:
  PiecewisePotential() = default;
  PiecewisePotential(double k2, std::vector<double> breakpoints, std::vector<double> values,
                     double range);

  /// Build from local wave numbers squared K_0^2 .. K_N^2 instead of potential values.
  static PiecewisePotential from_wave_numbers(double k2, std::vector<double> breakpoints,
                                              const std::vector<double>& k_squared,
                                              double range);

  double k2() const { return k2_; }
  double range() const { return range_; }
  int breakpoint_count() const { return static_cast<int>(breakpoints_.size()); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  /// K_j^2 for every segment inside the range.
  std::vector<double> wave_numbers_squared() const;

  /// Segment lower and upper edges: edge(0) = 0, edge(N+1) = R.
  double edge(int j) const;

  /// Segment index containing r (N+1 for the free region r >= R) and its wave number.
  int segment_index(double r) const;
  SegmentWaveNumber segment_of(double r) const;

  double value_at(double r) const;

 private:
  void validate() const;

  double k2_ = 1.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double range_ = 0.0;
};

/// Maps a potential defined at energy 1 to energy k^2: v(r) -> k^2 v(k r), edges / k.
PiecewisePotential scale_potential(const PiecewisePotential& p, double k);

std::string potential_to_json(const PiecewisePotential& p);
PiecewisePotential potential_from_json(const std::string& text);
PiecewisePotential load_potential(const std::string& path);

/// Decimal text with 17 significant digits.
std::string format_number(double x);

}  // namespace phasequiv
