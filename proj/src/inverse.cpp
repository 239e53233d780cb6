#include "phasequiv/inverse.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <thread>

#include <boost/math/tools/toms748_solve.hpp>

#include "phasequiv/errors.hpp"
#include "phasequiv/riccati.hpp"

namespace phasequiv::inverse {

std::optional<EquivalentSolution> classify_filtered(const TargetData& t,
                                                    const PiecewisePotential& p,
                                                    const SolveOptions& opts, std::string* why,
                                                    bool* out_of_range);

namespace {

using radial::Ray;
using Key = std::vector<int>;

constexpr int kRefinePasses = 6;
constexpr int kRefineMaxLevel = 3;  // deeper levels run a full inner scan per sample
constexpr double kPi = std::numbers::pi;
constexpr int kUnbounded = 1 << 20;
constexpr double kDegenerate = 1e-10;

// Key length produced by each level: [M1, n1], [M2, ...], [M3, ..., n3], [M4, ..., n4].
int key_length(int level) {
  switch (level) {
    case 1:
      return 2;
    case 2:
      return 3;
    default:
      return key_length(level - 1) + 2;
  }
}

struct Limits {
  std::vector<int> zmax;
  std::vector<int> zexact;
  int n1_cap = kUnbounded;
};

struct LevelTarget {
  double range;
  std::vector<Ray> rays;
  std::vector<int> outer;  // zeros of psi_l in (range, R]
};

struct Partial {
  std::vector<double> breaks;  // r_1 .. r_level
  std::vector<double> k2;      // K_0^2 .. K_level^2
  Key key;
};

struct Sample {
  Key key;
  double g;
  Partial partial;
};

class BudgetExceeded : public SolverError {
 public:
  BudgetExceeded() : SolverError("time budget exceeded") {}
};

struct RootLost {};

template <class F>
std::optional<double> bracket_root(F&& f, double lo, double hi, int bits = 50) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  boost::uintmax_t iterations = 100;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(bits), iterations);
  return 0.5 * (a + b);
}

// K^2 on the ladder segment ending at `range`: the regular solutions of l-1 and l are
// linked by the lowering operator, given their rays at `range`.
double ladder_k_squared(int l, const Ray& lower, const Ray& upper, double range) {
  const double R = range;
  const double lv = lower.value;
  const double ld = lower.deriv;
  const double uv = upper.value;
  const double ud = upper.deriv;
  return (l * l * lv * uv + l * lv * R * ud - R * R * ld * ud - l * uv * R * ld) /
         (lv * uv * R * R);
}

class Solver {
 public:
  Solver(const TargetData& t, const SolveOptions& opts)
      : target_(t), opts_(opts), top_(t.max_l()), start_(std::chrono::steady_clock::now()) {
    build_limits();
  }

  SolveResult run() {
    const double R = target_.range;
    for (int l = 0; l <= top_; ++l) {
      const Ray ray = radial::normalized(target_.rays[l]);
      if (std::abs(ray.value) < kDegenerate) {
        throw DegenerateBoundaryError(
            "psi_" + std::to_string(l) + " vanishes at R = " + format_number(R) +
            " (boundary ratio is zero); retry with a slightly different R, e.g. R + 1e-6");
      }
    }
    LevelTarget top{R, {}, std::vector<int>(top_ + 1, 0)};
    for (const auto& ray : target_.rays) top.rays.push_back(radial::normalized(ray));
    const std::vector<Partial> partials = solve_level(top_, top, {}, nullptr);

    SolveResult result;
    for (const Partial& p : partials) {
      std::string why;
      bool out_of_range = false;
      std::optional<EquivalentSolution> s;
      try {
        const PiecewisePotential pot =
            PiecewisePotential::from_wave_numbers(target_.k2, p.breaks, p.k2, R);
        s = classify_filtered(target_, pot, opts_, &why, &out_of_range);
      } catch (const InputError& e) {
        why = e.what();
      }
      if (s) {
        result.solutions.push_back(std::move(*s));
      } else if (!out_of_range) {
        result.rejects.push_back({p.breaks, p.k2, why});
      }
    }
    canonicalize(result.solutions);
    result.warnings = warnings_;
    if (inner_degenerate_ > 0) {
      result.warnings.push_back("skipped " + std::to_string(inner_degenerate_) +
                                " inner configurations with a vanishing boundary ratio");
    }
    return result;
  }

 private:
  void build_limits() {
    const std::vector<int> zref = reference_zero_counts(target_);
    const bool bounded = opts_.n_range || opts_.n_per_l || !opts_.max_zero_index || top_ >= 3;
    limits_.zmax.assign(top_ + 1, kUnbounded);
    limits_.zexact.assign(top_ + 1, -1);
    for (int l = 0; l <= top_; ++l) {
      int nmax = 0;
      if (opts_.n_per_l) {
        nmax = (*opts_.n_per_l).at(l);
        limits_.zexact[l] = zref[l] + nmax;
      } else if (opts_.n_range) {
        nmax = opts_.n_range->hi;
      }
      if (bounded) limits_.zmax[l] = zref[l] + nmax;
    }
    if (opts_.max_zero_index) limits_.n1_cap = *opts_.max_zero_index;
  }

  void check_budget() const {
    if (opts_.time_budget_seconds <= 0.0) return;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (elapsed > opts_.time_budget_seconds) throw BudgetExceeded();
  }

  void warn(std::string message) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (warnings_.size() < 50) warnings_.push_back(std::move(message));
  }

  void note_inner_degenerate() {
    std::lock_guard<std::mutex> lock(mutex_);
    ++inner_degenerate_;
  }

  std::vector<Partial> solve_level(int level, const LevelTarget& t, std::span<const int> filter,
                                   const Partial* previous) {
    std::vector<Partial> out;
    if (level == 1) {
      level_one(t, filter, out);
    } else if (level == 2) {
      level_two(t, filter, out);
    } else {
      level_scan(level, t, filter, previous, out);
    }
    return out;
  }

  bool degenerate(int level, const Ray& lower, const Ray& upper) {
    if (std::abs(lower.value * upper.value) >= kDegenerate) return false;
    if (level == top_) {
      throw DegenerateBoundaryError("boundary ratio product vanishes at R; retry with R + 1e-6");
    }
    note_inner_degenerate();
    return true;
  }

  // Roots r in (0, range) of zero_start_angle(l, k2, r, range) = theta + m pi, m = 0, 1, ...
  // The angle decreases monotonically in r.
  template <class Visit>
  void breakpoint_roots(int l, double k2, const LevelTarget& t, int first_label, int wanted,
                        Visit&& visit) {
    const double rho = t.range;
    const double theta = radial::angle_mod_pi(t.rays[l]);
    const radial::SegmentStep inner = radial::regular_segment(l, k2, rho);
    const double full = radial::accumulated_angle({inner.end, inner.zeros});
    for (int m = 0;; ++m) {
      const int label = first_label + m;
      const double angle = theta + m * kPi;
      if (angle >= full) break;
      if (label > limits_.zmax[l] - 1) break;
      if (wanted >= 0 && label != wanted) {
        if (label > wanted) break;
        continue;
      }
      auto f = [&](double r) { return radial::zero_start_angle(l, k2, r, rho) - angle; };
      const auto root = bracket_root(f, 1e-9 * rho, rho * (1.0 - 1e-12));
      if (root) visit(*root, label);
    }
  }

  void level_one(const LevelTarget& t, std::span<const int> filter, std::vector<Partial>& out) {
    const Ray& a = t.rays[0];
    const Ray& b = t.rays[1];
    if (degenerate(1, a, b)) return;
    const double k1 = ladder_k_squared(1, a, b, t.range);
    const int wanted = filter.empty() ? -1 : filter[0];
    breakpoint_roots(1, k1, t, t.outer[1], wanted, [&](double r1, int label) {
      int lo = 1;
      int hi = std::min(limits_.n1_cap, limits_.zmax[1] - label);
      if (limits_.zexact[1] >= 0) lo = hi = limits_.zexact[1] - label;
      if (filter.size() > 1) lo = hi = filter[1];
      for (int n1 = std::max(lo, 1); n1 <= hi && n1 <= limits_.n1_cap; ++n1) {
        const double k0 = riccati::bessel_zero(1, n1).value / r1;
        out.push_back({{r1}, {k0 * k0, k1}, {label, n1}});
      }
    });
  }

  void level_two(const LevelTarget& t, std::span<const int> filter, std::vector<Partial>& out) {
    const Ray& b = t.rays[1];
    const Ray& c = t.rays[2];
    if (degenerate(2, b, c)) return;
    const double rho = t.range;
    const double k2 = ladder_k_squared(2, b, c, rho);
    const int wanted = filter.empty() ? -1 : filter[0];
    const std::span<const int> rest = filter.empty() ? filter : filter.subspan(1);
    breakpoint_roots(2, k2, t, t.outer[2], wanted, [&](double r2, int label) {
      LevelTarget inner{r2, {}, {}};
      const radial::SegmentStep a_in = radial::back_propagate(0, k2, r2, rho, t.rays[0]);
      const radial::SegmentStep b_in = radial::back_propagate(1, k2, r2, rho, t.rays[1]);
      inner.rays = {a_in.end, radial::normalized({0.5 * r2, 1.0})};
      inner.outer = {t.outer[0] + a_in.zeros, t.outer[1] + b_in.zeros};
      std::vector<Partial> inner_out;
      level_one(inner, rest, inner_out);
      for (Partial& p : inner_out) {
        p.breaks.push_back(r2);
        p.k2.push_back(k2);
        p.key.insert(p.key.begin(), label);
        out.push_back(std::move(p));
      }
    });
  }

  // K^2 with zero_start_angle(l, K^2, r, range) = angle; the angle increases with K^2.
  std::optional<double> wave_number_root(int l, double r, double rho, double angle) const {
    auto f = [&](double k2) { return radial::zero_start_angle(l, k2, r, rho) - angle; };
    double lo = -1.0;
    while (f(lo) >= 0.0) {
      lo *= 4.0;
      if (lo < -1e12) return std::nullopt;
    }
    const double span = rho - r;
    double hi = std::max(1.0, std::pow((angle + (l + 1) * kPi) / span, 2));
    while (f(hi) <= 0.0) {
      hi *= 4.0;
      if (hi > 1e14) return std::nullopt;
    }
    return bracket_root(f, lo, hi, 48);
  }

  // Every family of partial solutions with breakpoint r_level = r, and psi_level(r) of each.
  std::vector<Sample> evaluate(int level, const LevelTarget& t, double r,
                               std::span<const int> filter, const Partial* previous) {
    std::vector<Sample> out;
    const double rho = t.range;
    const double theta = radial::angle_mod_pi(t.rays[level]);
    int first = t.outer[level];
    int last = limits_.zmax[level] - 1;
    if (!filter.empty()) first = last = filter[0];
    const int inner_len = key_length(level - 1);
    std::span<const int> inner_filter;
    if (!filter.empty()) inner_filter = filter.subspan(1, inner_len);
    for (int label = first; label <= last; ++label) {
      const int m = label - t.outer[level];
      if (m < 0) continue;
      const auto k2 = wave_number_root(level, r, rho, theta + m * kPi);
      if (!k2) continue;
      LevelTarget inner{r, {}, {}};
      for (int l = 0; l < level; ++l) {
        const radial::SegmentStep back = radial::back_propagate(l, *k2, r, rho, t.rays[l]);
        inner.rays.push_back(back.end);
        inner.outer.push_back(t.outer[l] + back.zeros);
      }
      Partial inner_previous;
      const Partial* inner_hint = nullptr;
      if (previous && level - 1 >= 3) {
        inner_previous.breaks.assign(previous->breaks.begin(), previous->breaks.end() - 1);
        inner_previous.k2.assign(previous->k2.begin(), previous->k2.end() - 1);
        inner_hint = &inner_previous;
      }
      for (Partial& p : solve_level(level - 1, inner, inner_filter, inner_hint)) {
        const radial::Profile profile{p.k2, p.breaks};
        const double g = radial::regular_nodal(level, profile, r).ray.value;
        p.breaks.push_back(r);
        p.k2.push_back(*k2);
        p.key.insert(p.key.begin(), label);
        Key key = p.key;
        out.push_back({std::move(key), g, std::move(p)});
      }
    }
    return out;
  }

  std::optional<Sample> evaluate_family(int level, const LevelTarget& t, double r,
                                        const Key& key, const Partial* previous) {
    const std::vector<Sample> samples = evaluate(level, t, r, key, previous);
    const Sample* best = nullptr;
    for (const Sample& s : samples) {
      if (s.key != key) continue;
      if (!best || (previous && std::abs(s.partial.breaks.front() - previous->breaks.front()) <
                                    std::abs(best->partial.breaks.front() -
                                             previous->breaks.front()))) {
        best = &s;
      }
    }
    if (!best) return std::nullopt;
    return *best;
  }

  int steps_for(int level) const {
    if (level == top_ || opts_.inner_scan_steps <= 0) return opts_.scan_steps;
    return opts_.inner_scan_steps;
  }

  std::vector<std::vector<Sample>> evaluate_all(int level, const LevelTarget& t,
                                                const std::vector<double>& points,
                                                std::span<const int> filter, const Partial* previous) {
    std::vector<std::vector<Sample>> samples(points.size());
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        check_budget();
        samples[i] = evaluate(level, t, points[i], filter, previous);
      }
    };
    const int threads = level == top_ ? std::max(1, opts_.threads) : 1;
    if (threads == 1 || points.size() < 2) {
      work(0, points.size());
      return samples;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (points.size() + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::size_t begin = std::min(points.size(), w * chunk);
      const std::size_t end = std::min(points.size(), begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    return samples;
  }

  // Families can live on r-windows narrower than the grid step where an inner boundary
  // ratio nearly vanishes; cells whose endpoints carry different families are bisected.
  void refine_grid(int level, const LevelTarget& t, std::span<const int> filter,
                   std::vector<double>& grid, std::vector<std::vector<Sample>>& samples) {
    auto keys = [](const std::vector<Sample>& at) {
      std::vector<Key> out;
      for (const Sample& s : at) out.push_back(s.key);
      std::sort(out.begin(), out.end());
      return out;
    };
    for (int pass = 0; pass < kRefinePasses; ++pass) {
      std::vector<std::size_t> cells;
      for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (keys(samples[i]) != keys(samples[i + 1])) cells.push_back(i);
      }
      if (cells.empty()) return;
      std::vector<double> mids;
      for (std::size_t i : cells) mids.push_back(0.5 * (grid[i] + grid[i + 1]));
      auto extra = evaluate_all(level, t, mids, filter, nullptr);
      std::vector<double> merged_grid;
      std::vector<std::vector<Sample>> merged;
      std::size_t c = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        merged_grid.push_back(grid[i]);
        merged.push_back(std::move(samples[i]));
        if (c < cells.size() && cells[c] == i) {
          merged_grid.push_back(mids[c]);
          merged.push_back(std::move(extra[c]));
          ++c;
        }
      }
      grid = std::move(merged_grid);
      samples = std::move(merged);
    }
  }

  void level_scan(int level, const LevelTarget& t, std::span<const int> filter,
                  const Partial* previous, std::vector<Partial>& out) {
    const double rho = t.range;
    const int inner_len = key_length(level - 1);
    std::span<const int> family_filter;
    int wanted_index = -1;
    if (!filter.empty()) {
      family_filter = filter.subspan(0, 1 + inner_len);
      if (static_cast<int>(filter.size()) > 1 + inner_len) wanted_index = filter[1 + inner_len];
    }

    std::vector<double> grid;
    if (previous) {
      const double centre = previous->breaks[level - 1];
      const double width = 4.0 * rho / steps_for(level);
      const int local = 16;
      for (int i = 0; i <= local; ++i) {
        const double r = centre - width + 2.0 * width * i / local;
        if (r > 0.0 && r < rho) grid.push_back(r);
      }
    } else {
      const int steps = steps_for(level);
      for (int i = 1; i < steps; ++i) grid.push_back(rho * i / steps);
    }

    std::vector<std::vector<Sample>> samples = evaluate_all(level, t, grid, family_filter, previous);
    if (!previous && level <= kRefineMaxLevel) refine_grid(level, t, family_filter, grid, samples);

    std::map<Key, std::vector<std::pair<std::size_t, const Sample*>>> families;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (const Sample& s : samples[i]) families[s.key].push_back({i, &s});
    }

    std::vector<Partial> roots;
    for (const auto& [key, track] : families) {
      for (std::size_t j = 0; j + 1 < track.size(); ++j) {
        const auto [i0, s0] = track[j];
        const auto [i1, s1] = track[j + 1];
        if (i1 != i0 + 1) continue;
        if (s0->g == 0.0) {
          roots.push_back(s0->partial);
          continue;
        }
        if ((s0->g > 0.0) == (s1->g > 0.0)) continue;
        check_budget();
        auto root = refine(level, t, key, grid[i0], grid[i1], *s0, *s1);
        if (root) roots.push_back(std::move(*root));
      }
    }

    for (Partial& p : roots) {
      const double r = p.breaks.back();
      std::vector<double> inner_k(p.k2.begin(), p.k2.end() - 1);
      std::vector<double> inner_breaks(p.breaks.begin(), p.breaks.end() - 1);
      const radial::Profile profile{inner_k, inner_breaks};
      const auto below = radial::zeros_of_regular(level, profile, r * (1.0 - 1e-9));
      const int index = static_cast<int>(below.size()) + 1;
      if (wanted_index >= 0 && index != wanted_index) continue;
      const int label = p.key.front();
      if (level == top_ || limits_.zexact[level] < 0 || limits_.zexact[level] == index + label) {
        p.key.push_back(index);
        out.push_back(std::move(p));
      }
    }
    if (previous && out.size() > 1) {
      const double centre = previous->breaks[level - 1];
      auto nearest = std::min_element(out.begin(), out.end(), [&](const Partial& a, const Partial& b) {
        return std::abs(a.breaks.back() - centre) < std::abs(b.breaks.back() - centre);
      });
      Partial keep = std::move(*nearest);
      out.clear();
      out.push_back(std::move(keep));
    }
  }

  std::optional<Partial> refine(int level, const LevelTarget& t, const Key& key, double lo,
                                double hi, const Sample& s_lo, const Sample& s_hi) {
    Partial last = s_lo.partial;
    std::optional<Sample> best;
    auto g = [&](double r) {
      if (r == lo) return s_lo.g;
      if (r == hi) return s_hi.g;
      auto s = evaluate_family(level, t, r, key, &last);
      if (!s) throw RootLost{};
      last = s->partial;
      const double value = s->g;
      best = std::move(s);
      return value;
    };
    try {
      boost::uintmax_t iterations = 80;
      const auto [a, b] = boost::math::tools::toms748_solve(
          g, lo, hi, s_lo.g, s_hi.g, boost::math::tools::eps_tolerance<double>(44), iterations);
      const double root = 0.5 * (a + b);
      auto s = evaluate_family(level, t, root, key, &last);
      if (!s) throw RootLost{};
      if (std::abs(s->g) > 1e-7) {
        warn("discontinuity instead of a root near r_" + std::to_string(level) + " = " +
             format_number(root));
        return std::nullopt;
      }
      return s->partial;
    } catch (const RootLost&) {
      warn("family lost while refining r_" + std::to_string(level) + " in [" +
           format_number(lo) + ", " + format_number(hi) + "]");
      return std::nullopt;
    }
  }

  const TargetData& target_;
  SolveOptions opts_;
  int top_;
  Limits limits_;
  std::chrono::steady_clock::time_point start_;
  std::mutex mutex_;
  std::vector<std::string> warnings_;
  int inner_degenerate_ = 0;
};

void require_breakpoints(const TargetData& t, int n, const char* name) {
  if (t.max_l() != n) {
    throw DomainError(std::string(name) + " needs " + std::to_string(n + 1) + " phases, got " +
                      std::to_string(t.max_l() + 1));
  }
}

}  // namespace

SolveResult solve(const TargetData& t, const SolveOptions& opts) {
  if (t.max_l() < 1 || t.max_l() > 4) throw DomainError("between 2 and 5 phases are supported");
  if (opts.scan_steps < 4) throw InputError("scan steps must be at least 4");
  return Solver(t, opts).run();
}

SolveResult solve_two(const TargetData& t, const SolveOptions& opts) {
  require_breakpoints(t, 1, "solve_two");
  return solve(t, opts);
}

SolveResult solve_three(const TargetData& t, const SolveOptions& opts) {
  require_breakpoints(t, 2, "solve_three");
  return solve(t, opts);
}

SolveResult solve_four(const TargetData& t, const SolveOptions& opts) {
  require_breakpoints(t, 3, "solve_four");
  return solve(t, opts);
}

SolveResult solve_five(const TargetData& t, const SolveOptions& opts) {
  require_breakpoints(t, 4, "solve_five");
  return solve(t, opts);
}

SolveResult enumerate_transparent(int breakpoints, double k2, double range,
                                  const SolveOptions& opts) {
  if (breakpoints < 1 || breakpoints > 4) throw DomainError("N must be between 1 and 4");
  const double k = std::sqrt(k2);
  for (int l = 0; l <= breakpoints; ++l) {
    const double x = k * range;
    const int below = riccati::zeros_below(l, x * (1.0 + 1e-12));
    if (below > 0 && std::abs(riccati::bessel_zero(l, below).value - x) < 1e-9 * x) {
      throw DegenerateBoundaryError("kR is a zero of j_" + std::to_string(l) +
                                    "; retry with a slightly different R");
    }
  }
  return solve(TargetData::transparent(breakpoints, k2, range), opts);
}

}  // namespace phasequiv::inverse
