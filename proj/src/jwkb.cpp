#include "phasequiv/jwkb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phasequiv/errors.hpp"
#include "phasequiv/radial.hpp"
#include "phasequiv/riccati.hpp"

namespace phasequiv::jwkb {

namespace {

constexpr double kPi = std::numbers::pi;

double centrifugal(int l) { return l * (l + 1.0); }

// Antiderivative of sqrt(K^2 - L/r^2).
double antiderivative(double k_squared, double L, double r) {
  const double s = std::max(0.0, k_squared * r * r - L);
  if (L == 0.0) return std::sqrt(s);
  return std::sqrt(s) - std::sqrt(L) * std::atan(std::sqrt(s / L));
}

void check_order(int l) {
  if (l < 0) throw DomainError("l must be >= 0");
}

double first_free_zero(int n_order, double k) {
  return riccati::bessel_zero(n_order, 1).value / k;
}

}  // namespace

double segment_action(double k_squared, int l, double a, double b) {
  const double L = centrifugal(l);
  return antiderivative(k_squared, L, b) - antiderivative(k_squared, L, a);
}

TurningPointData turning_point(const PiecewisePotential& p, int l, double r_max) {
  check_order(l);
  const double L = centrifugal(l);
  const double k = std::sqrt(p.k2());
  TurningPointData out{l, 0.0, std::sqrt(L) / k};
  double b = r_max;
  if (b > p.range()) {
    if (out.rt_free >= b) {
      out.rt = b;
      return out;
    }
    if (out.rt_free > p.range()) {
      out.rt = out.rt_free;
      return out;
    }
    b = p.range();
  }
  const auto k2 = p.wave_numbers_squared();
  int j = p.segment_index(std::min(b, p.range()) * (1.0 - 1e-15));
  j = std::min(j, p.breakpoint_count());
  for (; j >= 0; --j) {
    const double a = p.edge(j);
    const double top = std::min(b, p.edge(j + 1));
    if (k2[j] <= 0.0) {
      out.rt = top;
      return out;
    }
    const double rt = std::sqrt(L / k2[j]);
    if (rt >= top) {
      out.rt = top;
      return out;
    }
    if (rt > a) {
      out.rt = rt;
      return out;
    }
  }
  out.rt = 0.0;
  return out;
}

TurningPointData turning_point(const PiecewisePotential& p, int l) {
  return turning_point(p, l, p.range());
}

double action(const PiecewisePotential& p, int l, double to) {
  const TurningPointData tp = turning_point(p, l, to);
  if (to <= tp.rt) return 0.0;
  const auto k2 = p.wave_numbers_squared();
  double total = 0.0;
  for (int j = 0; j <= p.breakpoint_count(); ++j) {
    const double a = std::max(p.edge(j), tp.rt);
    const double b = std::min(p.edge(j + 1), to);
    if (b > a) total += segment_action(k2[j], l, a, b);
  }
  if (to > p.range()) total += segment_action(p.k2(), l, std::max(p.range(), tp.rt), to);
  return total;
}

double jwkb_phase(const PiecewisePotential& p, int l) {
  check_order(l);
  const auto k2 = p.wave_numbers_squared();
  if (std::none_of(k2.begin(), k2.end(), [](double v) { return v > 0.0; })) {
    throw DomainError("no classically allowed region below R");
  }
  const double R = p.range();
  const double k = std::sqrt(p.k2());
  const double free_rt = std::sqrt(centrifugal(l)) / k;
  if (free_rt >= R) return 0.0;
  return action(p, l, R) - segment_action(p.k2(), l, free_rt, R);
}

double levelling_constant(int l, double k) {
  check_order(l);
  if (l == 0) return 0.0;
  const double L = centrifugal(l);
  return 1.0 - segment_action(k * k, l, std::sqrt(L) / k, first_free_zero(l, k)) / kPi;
}

double zero_index(const PiecewisePotential& p, int l, double r_candidate) {
  const TurningPointData tp = turning_point(p, l, r_candidate);
  if (!(r_candidate > tp.rt)) throw DomainError("candidate radius is not above the turning point");
  const double k = std::sqrt(p.k2());
  return action(p, l, r_candidate) / kPi + levelling_constant(l, k);
}

NminBound nmin_general(int n_order, double k, double range, double delta) {
  check_order(n_order);
  if (!(k > 0.0) || !(range > 0.0)) throw DomainError("k and R must be positive");
  const double first = first_free_zero(n_order, k);
  if (range < first * (1.0 - 1e-14)) {
    throw DomainError("R must not lie below the first zero of j_N");
  }
  const double integral = range > first ? segment_action(k * k, n_order, first, range) : 0.0;
  const double raw = -(integral + delta) / kPi;
  return {raw, 1 + static_cast<int>(std::floor(raw))};
}

NminBound nmin_transparent(int n_order, double k, double range) {
  return nmin_general(n_order, k, range, 0.0);
}

int conjecture_nmin(int n_order, double k, double range) {
  if (n_order < 3) throw DomainError("N < 3 is simply soluble; the conjecture needs N >= 3");
  if (!(k > 0.0) || !(range > 0.0)) throw DomainError("k and R must be positive");
  const double x = k * range;
  const int below = riccati::zeros_below(n_order, x);
  const int upto = riccati::zeros_below(n_order, x * (1.0 + 1e-12));
  if (upto > below || (below > 0 && std::abs(riccati::bessel_zero(n_order, below).value - x) <
                                        1e-12 * x)) {
    throw DegenerateBoundaryError("kR is a zero of j_N");
  }
  if (below == 0) throw DomainError("kR lies below the first zero of j_N");
  return 1 - below;
}

QDecomposition q_decomposition(const PiecewisePotential& p, int n_order) {
  const auto zeros = radial::zeros_of_regular(p, n_order).zeros;
  if (zeros.empty()) throw DomainError("psi_N has no zero below R");
  const double first = zeros.front();
  const double R = p.range();
  const double k = std::sqrt(p.k2());
  QDecomposition q{};
  q.q1 = action(p, n_order, first);
  q.q2 = action(p, n_order, R) - q.q1;
  q.q3 = segment_action(p.k2(), n_order, std::sqrt(centrifugal(n_order)) / k, R);
  q.q1_levelled = kPi * (1.0 - levelling_constant(n_order, k));
  q.n = (q.q1 + q.q2 - q.q3) / kPi;
  return q;
}

RecurrenceReport nmax_recurrence_check(const std::vector<inverse::EquivalentSolution>& solutions) {
  RecurrenceReport report;
  for (const auto& s : solutions) {
    if (s.label.category() != "common" || s.label.zero_indices.empty()) continue;
    const int n = s.label.n.front();
    const int last = s.label.zero_indices.back();
    auto [it, inserted] = report.nmax.emplace(n, last);
    if (!inserted) it->second = std::max(it->second, last);
  }
  for (auto it = report.nmax.begin(); it != report.nmax.end(); ++it) {
    const auto next = std::next(it);
    if (next == report.nmax.end() || next->first != it->first + 1) continue;
    if (next->second != it->second + 1) {
      report.violations.push_back("nmax(" + std::to_string(next->first) + ") = " +
                                  std::to_string(next->second) + " but nmax(" +
                                  std::to_string(it->first) + ") = " + std::to_string(it->second));
    }
  }
  return report;
}

}  // namespace phasequiv::jwkb
