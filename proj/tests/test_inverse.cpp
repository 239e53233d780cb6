#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "phasequiv/errors.hpp"
#include "phasequiv/inverse.hpp"
#include "phasequiv/phase.hpp"
#include "phasequiv/radial.hpp"
#include "phasequiv/riccati.hpp"
#include "phasequiv/solution_io.hpp"
#include "tables.hpp"

using namespace phasequiv;
using doctest::Approx;

namespace {

double wave_number(double k_squared) {
  return k_squared >= 0.0 ? std::sqrt(k_squared) : -std::sqrt(-k_squared);
}

// Solution whose table columns match `values` (K_0, r_1, K_1, ...) within tol.
const inverse::EquivalentSolution* find_row(const inverse::SolveResult& r,
                                            const std::vector<double>& values, double tol) {
  for (const auto& s : r.solutions) {
    const auto cols = table_values(s);
    bool ok = true;
    for (std::size_t i = 0; i < values.size() && ok; ++i) ok = std::abs(cols[i] - values[i]) <= tol;
    if (ok) return &s;
  }
  return nullptr;
}

void check_invariants(const inverse::TargetData& t, const inverse::SolveResult& r) {
  for (const auto& s : r.solutions) {
    CHECK(s.residual < 1e-6);
    const auto& p = s.potential;
    const auto& edges = p.breakpoints();
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (j > 0) CHECK(edges[j] > edges[j - 1]);
      CHECK(edges[j] < p.range());
      const auto zeros = radial::zeros_of_regular(p, static_cast<int>(j + 1)).zeros;
      const int index = s.label.zero_indices[j];
      REQUIRE(index >= 1);
      REQUIRE(static_cast<int>(zeros.size()) >= index);
      CHECK(std::abs(zeros[index - 1] - edges[j]) < 1e-7);
    }
    for (int l = 0; l <= t.max_l(); ++l) {
      const double delta = phase::calogero_phase(p, l);
      const double n = (delta - t.reference_phases[l]) / M_PI;
      CHECK(std::abs(n - std::round(n)) < 1e-3);
      CHECK(static_cast<int>(std::lround(n)) == s.label.n[l]);
      CHECK(phase::distance_mod_pi(delta, t.reference_phases[l]) < 1e-6);
    }
  }
}

}  // namespace

TEST_CASE("single segment") {
  const double R = 10.0;
  const radial::Ray free{std::tan(R), 1.0};
  const int branch = static_cast<int>(std::lround(R / M_PI));
  CHECK(*inverse::solve_single(free, 1.0, R, branch) == Approx(0.0).scale(1.0).epsilon(1e-11));

  const PiecewisePotential well(1.0, {}, {-2.0}, R);
  const auto ray = radial::regular_state_at(well, 0, R);
  std::vector<double> deltas;
  for (int n = 0; n <= 6; ++n) {
    const auto v = inverse::solve_single({ray.value, ray.deriv}, 1.0, R, n);
    if (!v) continue;
    const PiecewisePotential q(1.0, {}, {*v}, R);
    CHECK(phase::distance_mod_pi(phase::calogero_phase(q, 0), phase::calogero_phase(well, 0)) < 1e-8);
    deltas.push_back(phase::calogero_phase(q, 0));
  }
  REQUIRE(deltas.size() >= 5);
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    CHECK((deltas[i] - deltas[i - 1]) / M_PI == Approx(1.0).epsilon(1e-8));
  }
  const auto v3 = *inverse::solve_single({ray.value, ray.deriv}, 1.0, R, 3);
  const auto v4 = *inverse::solve_single({ray.value, ray.deriv}, 1.0, R, 4);
  CHECK(std::abs(v3 - v4) > 0.5 * M_PI * M_PI / (R * R));
  CHECK_THROWS_AS(inverse::solve_single(free, 1.0, R, -1), DomainError);
}

TEST_CASE("two phases: reference table") {
  const auto p = cli::reference_potential(1, 10.0);
  const auto t = inverse::TargetData::from_potential(p, 1);
  inverse::SolveOptions opts;
  opts.max_zero_index = 2;
  const auto r = inverse::solve(t, opts);
  CHECK(r.solutions.size() == 18);
  check_invariants(t, r);
  const auto* ref = find_row(r, {2.0, p.breakpoints()[0]}, 1e-6);
  REQUIRE(ref != nullptr);
  CHECK(ref->label.n[0] == 0);
  const auto* row = find_row(r, {3.4384809, 2.24670498}, 1e-6);
  REQUIRE(row != nullptr);
  CHECK(row->label.n[0] == 1);
  CHECK(row->label.zero_indices[0] == 2);
  for (const auto& s : r.solutions) CHECK(s.k_squared[1] == Approx(9.0).epsilon(1e-9));
}

TEST_CASE("two phases: transparent") {
  inverse::SolveOptions opts;
  opts.max_zero_index = 7;
  const auto r = inverse::enumerate_transparent(1, 1.0, 10.0, opts);
  CHECK(r.solutions.size() == 14);
  const auto* row = find_row(r, {0.581652127, 7.72525183}, 1e-6);
  REQUIRE(row != nullptr);
  CHECK(row->label.n[0] == -1);
  CHECK(row->label.zero_indices[0] == 1);
  for (const auto& s : r.solutions) CHECK(std::abs(s.k_squared[1] - 1.0) < 1e-12);
}

TEST_CASE("two phases: round trip") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> k0(1.0, 3.0), k1(-1.0, 4.0);
  for (int i = 0; i < 5; ++i) {
    const double K0 = k0(rng);
    const double r1 = riccati::bessel_zero(1, 1 + i % 2).value / K0;
    const auto p = PiecewisePotential::from_wave_numbers(1.0, {r1}, {K0 * K0, k1(rng)}, r1 + 4.0);
    const auto t = inverse::TargetData::from_potential(p, 1);
    const auto r = inverse::solve(t, {});
    const auto* row = find_row(r, {K0, r1}, 1e-7);
    REQUIRE(row != nullptr);
    CHECK(row->label.n[0] == 0);
  }
}

TEST_CASE("three phases") {
  const auto p = cli::reference_potential(2, 5.5);
  const auto t = inverse::TargetData::from_potential(p, 2);
  inverse::SolveOptions opts;
  opts.n_range = inverse::IndexRange{-1, 4};
  const auto r = inverse::solve(t, opts);
  check_invariants(t, r);
  const auto* row = find_row(r, {2.5763, 2.9986, 3.9070, 4.1795}, 5e-4);
  REQUIRE(row != nullptr);
  CHECK(row->label.n == std::vector<int>{1, 1, 1});
  CHECK(row->label.zero_indices == std::vector<int>{2, 3});
  const auto* ref = find_row(r, {2.0, p.breakpoints()[0], 3.0, p.breakpoints()[1]}, 1e-6);
  REQUIRE(ref != nullptr);
  CHECK(ref->label.zero_indices == std::vector<int>{1, 1});
  CHECK(ref->k_squared[2] == Approx(5.0).epsilon(1e-6));
  for (const auto& s : r.solutions) {
    const double r2 = s.potential.breakpoints()[1];
    CHECK(radial::ratios_at(s.potential, r2, 1).ratios[1].value == Approx(r2 / 2).epsilon(1e-8));
  }

  const auto wide = cli::reference_potential(2, 10.0);
  inverse::SolveOptions two;
  two.n_range = inverse::IndexRange{-2, -2};
  const auto r10 = inverse::solve(inverse::TargetData::from_potential(wide, 2), two);
  const auto* row10 = find_row(r10, {0.8310, 5.4072, 7.1067, 5.6213}, 5e-4);
  REQUIRE(row10 != nullptr);
  CHECK(row10->label.zero_indices == std::vector<int>{1, 1});
}

TEST_CASE("three phases: transparent n = 0 is free") {
  inverse::SolveOptions opts;
  opts.n_range = inverse::IndexRange{0, 0};
  const auto r = inverse::enumerate_transparent(2, 1.0, 10.0, opts);
  REQUIRE(!r.solutions.empty());
  for (const auto& s : r.solutions) {
    for (double k2 : s.k_squared) CHECK(k2 == Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("four phases: transparent") {
  inverse::SolveOptions opts;
  opts.n_range = inverse::IndexRange{-1, 0};
  const auto r = inverse::enumerate_transparent(3, 1.0, 12.0, opts);
  check_invariants(inverse::TargetData::transparent(3, 1.0, 12.0), r);
  const auto* row = find_row(r, {0.808, 5.561, 0.736, 7.259, 0.607, 9.703, 0.714}, 5e-4);
  REQUIRE(row != nullptr);
  CHECK(row->label.n == std::vector<int>{-1, -1, -1, -1});
  int free_rows = 0;
  for (const auto& s : r.solutions) {
    if (s.label.category() == "common" && s.label.n[0] == 0) {
      ++free_rows;
      for (double k2 : s.k_squared) CHECK(k2 == Approx(1.0).epsilon(1e-8));
      for (std::size_t j = 0; j < 3; ++j) {
        const double x = riccati::bessel_zero(static_cast<int>(j + 1), s.label.zero_indices[j]).value;
        CHECK(s.potential.breakpoints()[j] == Approx(x).epsilon(1e-9));
      }
    }
  }
  CHECK(free_rows > 0);

  inverse::SolveOptions low;
  low.n_range = inverse::IndexRange{-2, -2};
  const auto r15 = inverse::enumerate_transparent(3, 1.0, 15.0, low);
  REQUIRE(r15.solutions.size() == 1);
  CHECK(r15.solutions[0].label.zero_indices == std::vector<int>{1, 1, 1});
  CHECK(std::sqrt(r15.solutions[0].k_squared[0]) == Approx(0.641).epsilon(1e-3));
  CHECK(r15.solutions[0].potential.breakpoints()[0] == Approx(7.008).epsilon(1e-4));
}

TEST_CASE("four phases: reference") {
  const auto p = cli::reference_potential(3, 10.0);
  const auto t = inverse::TargetData::from_potential(p, 3);
  inverse::SolveOptions opts;
  opts.n_range = inverse::IndexRange{0, 0};
  const auto r = inverse::solve(t, opts);
  check_invariants(t, r);
  const auto* ref = find_row(r, {2.000, 2.247, 3.000, 2.696, 2.236, 7.387, 1.414}, 5e-4);
  REQUIRE(ref != nullptr);
  CHECK(ref->label.zero_indices == std::vector<int>{1, 1, 4});

  opts.n_range = inverse::IndexRange{1, 1};
  const auto r1 = inverse::solve(t, opts);
  const auto* row = find_row(r1, {1.737, 2.587, 3.446, 2.990, 2.883, 3.118, 2.456}, 5e-4);
  REQUIRE(row != nullptr);
  CHECK(row->label.zero_indices == std::vector<int>{1, 1, 1});
}

TEST_CASE("four phases: mixed class") {
  const auto p = cli::reference_potential(3, 10.0);
  const auto t = inverse::TargetData::from_potential(p, 3);
  inverse::SolveOptions opts;
  opts.n_range = inverse::IndexRange{-3, -2};
  const auto r = inverse::solve(t, opts);
  const auto* row = find_row(r, {3.12729631, 1.43683507, 1.39601562, 4.82494432, 2.54346784,
                                 4.97266696, 0.820438746}, 1e-5);
  REQUIRE(row != nullptr);
  CHECK(row->label.category() == "mixed");
  CHECK(row->label.n == std::vector<int>{-2, -2, -2, -3});
  CHECK(row->label.zero_indices == std::vector<int>{1, 2, 1});
  CHECK_FALSE(row->label.ordered());
}

TEST_CASE("four phases at R = 21") {
  inverse::SolveOptions opts;
  opts.n_per_l = std::vector<int>{-4, -4, -4, -4};
  const auto r = inverse::enumerate_transparent(3, 1.0, 21.0, opts);
  const auto* row = find_row(r, {0.436410526, 10.2962892}, 1e-6);
  REQUIRE(row != nullptr);
  CHECK(row->label.zero_indices == std::vector<int>{1, 1, 1});
}

TEST_CASE("l-dependent four-phase transparent potential") {
  inverse::SolveOptions opts;
  opts.n_per_l = std::vector<int>{2, 2, 2, 1};
  const auto r = inverse::enumerate_transparent(3, 1.0, 15.0, opts);
  const auto* row = find_row(r, {6.80886924, 0.659934689, 1.2151, 12.8731444, 1.34685, 13.8434964,
                                 1.15320976}, 1e-4);
  REQUIRE(row != nullptr);
  CHECK(row->label.zero_indices == std::vector<int>{1, 5, 4});
  CHECK(row->label.category() == "mixed");
}

TEST_CASE("five phases: round trip") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> k(0.3, 2.5);
  // Build a ladder potential whose breakpoints are zeros of successive psi_l.
  std::vector<double> ks{k(rng) * k(rng) + 1.0};
  std::vector<double> edges{riccati::bessel_zero(1, 1).value / std::sqrt(ks[0])};
  ks.push_back(k(rng));
  for (int l = 2; l <= 4; ++l) {
    const auto inner = PiecewisePotential::from_wave_numbers(1.0, edges, ks, 30.0);
    const auto zeros = radial::zeros_of_regular(inner, l).zeros;
    const auto next = std::find_if(zeros.begin(), zeros.end(), [&](double z) { return z > edges.back() + 0.2; });
    REQUIRE(next != zeros.end());
    edges.push_back(*next);
    ks.push_back(k(rng));
  }
  const double range = edges.back() + 2.0;
  const auto source = PiecewisePotential::from_wave_numbers(1.0, edges, ks, range);
  const auto t = inverse::TargetData::from_potential(source, 4);
  inverse::SolveOptions opts;
  opts.n_per_l = std::vector<int>{0, 0, 0, 0, 0};
  opts.scan_steps = 400;
  opts.inner_scan_steps = 200;
  const auto r = inverse::solve(t, opts);
  std::vector<double> cols;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    cols.push_back(wave_number(ks[j]));
    if (j < edges.size()) cols.push_back(edges[j]);
  }
  CHECK(find_row(r, cols, 1e-6) != nullptr);
}

TEST_CASE("degenerate boundaries") {
  const double x = riccati::bessel_zero(1, 2).value;
  CHECK_THROWS_AS(inverse::enumerate_transparent(1, 1.0, x, {}), DegenerateBoundaryError);
  const double x3 = riccati::bessel_zero(3, 1).value;
  CHECK_THROWS_AS(inverse::enumerate_transparent(3, 1.0, x3, {}), DegenerateBoundaryError);
  try {
    inverse::enumerate_transparent(2, 1.0, riccati::bessel_zero(2, 2).value, {});
    FAIL("expected a degenerate boundary");
  } catch (const DegenerateBoundaryError& e) {
    CHECK(std::string(e.what()).find("retry") != std::string::npos);
  }
}

TEST_CASE("solver input checks") {
  const auto t = inverse::TargetData::transparent(2, 1.0, 10.0);
  inverse::SolveOptions bad;
  bad.scan_steps = 1;
  CHECK_THROWS_AS(inverse::solve(t, bad), InputError);
  CHECK_THROWS_AS(inverse::TargetData::from_phases(1.0, 10.0, std::vector<double>(7, 0.0)), DomainError);
  CHECK_THROWS_AS(inverse::TargetData::from_phases(-1.0, 10.0, {0.0, 0.0}), InputError);
}

TEST_CASE("classification") {
  const auto p = cli::reference_potential(2, 5.5);
  const auto t = inverse::TargetData::from_potential(p, 2);
  std::string why;
  const auto self = inverse::classify(t, p, &why);
  REQUIRE(self.has_value());
  CHECK(self->label.n == std::vector<int>{0, 0, 0});
  CHECK(self->label.zero_indices == std::vector<int>{1, 1});
  CHECK(self->label.category() == "common");

  auto values = p.values();
  values[1] += 0.01;
  const PiecewisePotential off(1.0, p.breakpoints(), values, 5.5);
  CHECK_FALSE(inverse::classify(t, off, &why).has_value());
  CHECK_FALSE(why.empty());

  inverse::AmbiguityLabel label{{1, 1, 2}, {1, 2}};
  CHECK_FALSE(label.same_n());
  CHECK(label.ordered());
  CHECK(label.category() == "mixed");
}

TEST_CASE("canonical order and merging") {
  const auto p = cli::reference_potential(2, 5.5);
  const auto t = inverse::TargetData::from_potential(p, 2);
  inverse::SolveOptions opts;
  opts.n_range = inverse::IndexRange{-1, 2};
  auto r = inverse::solve(t, opts);
  const auto before = r.solutions.size();
  r.solutions.push_back(r.solutions.front());
  std::reverse(r.solutions.begin(), r.solutions.end());
  inverse::canonicalize(r.solutions);
  CHECK(r.solutions.size() == before);
  for (std::size_t i = 1; i < r.solutions.size(); ++i) {
    const auto& a = r.solutions[i - 1].label;
    const auto& b = r.solutions[i].label;
    if (a.category() == b.category()) {
      CHECK((a.n < b.n || (a.n == b.n && a.zero_indices <= b.zero_indices)));
    }
  }
}

TEST_CASE("parallel scan is deterministic") {
  inverse::SolveOptions one;
  one.n_range = inverse::IndexRange{-1, 1};
  auto many = one;
  many.threads = 4;
  const auto a = inverse::enumerate_transparent(3, 1.0, 12.0, one);
  const auto b = inverse::enumerate_transparent(3, 1.0, 12.0, many);
  CHECK(solutions_to_csv(a.solutions, 3, 9) == solutions_to_csv(b.solutions, 3, 9));
}

TEST_CASE("solution output") {
  CHECK(wave_number_text(4.0, 3) == "2.000");
  CHECK(wave_number_text(-4.0, 3) == "2.000i");
  const auto p = cli::reference_potential(1, 10.0);
  inverse::SolveOptions opts;
  opts.max_zero_index = 1;
  const auto r = inverse::solve(inverse::TargetData::from_potential(p, 1), opts);
  const std::string csv = solutions_to_csv(r.solutions, 1, 9);
  CHECK(csv.rfind("n,n_1,K_0,r_1,K_1,R\n", 0) == 0);
  CHECK(csv.find("0,1,2.000000") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
  const std::string json = solutions_to_json(r.solutions);
  for (const char* key : {"\"category\"", "\"zero_indices\"", "\"potential\"", "\"k_squared\"", "\"breakpoints\""}) {
    CHECK(json.find(key) != std::string::npos);
  }
}
