#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasequiv/inverse.hpp"
#include "phasequiv/potential.hpp"

namespace phasequiv::cli {

struct FixtureRow {
  int n;
  std::vector<int> zero_indices;
  std::vector<double> values;  // K_0, r_1, K_1, ... in table order
  std::vector<std::string> columns;
};

struct TableConfig {
  int id;
  int breakpoints;
  bool transparent;
  double range;
  std::optional<int> max_zero_index;
  std::optional<inverse::IndexRange> n_range;
  bool relative;     // relative tolerance instead of absolute
  double tolerance;
};

struct RowReport {
  FixtureRow row;
  bool matched;
  double deviation;  // largest cell deviation of the best candidate
  std::string column;
};

struct TableReport {
  int id;
  std::vector<RowReport> rows;
  std::vector<std::string> checks_failed;
  std::size_t computed = 0;
  double seconds = 0.0;
  bool pass() const;
  std::string text() const;
};

TableConfig table_config(int id);

std::vector<FixtureRow> parse_fixture(const std::string& csv);
std::vector<FixtureRow> fixture(int id);

/// Reference potentials: K_0 = 2, K_1 = 3, K_2^2 = 5, K_3^2 = 2 with breakpoints at the
/// first zero of psi_1, the first zero of psi_2 and the fourth zero of psi_3.
PiecewisePotential reference_potential(int breakpoints, double range);

inverse::SolveResult run_table(const TableConfig& config, int scan_steps = 2000, int threads = 1);

TableReport compare_table(const TableConfig& config, const inverse::SolveResult& result);

TableReport reproduce_table(int id, int scan_steps = 2000, int threads = 1);

}  // namespace phasequiv::cli
