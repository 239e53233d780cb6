#include "tables.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fixture_data.hpp"
#include "phasequiv/errors.hpp"
#include "phasequiv/radial.hpp"
#include "phasequiv/riccati.hpp"
#include "phasequiv/solution_io.hpp"

namespace phasequiv::cli {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

bool TableReport::pass() const {
  if (!checks_failed.empty()) return false;
  for (const auto& r : rows) {
    if (!r.matched) return false;
  }
  return true;
}

std::string TableReport::text() const {
  std::ostringstream out;
  int matched = 0;
  for (const auto& r : rows) {
    char buf[160];
    std::string label = std::to_string(r.row.n);
    for (int i : r.row.zero_indices) label += "," + std::to_string(i);
    if (r.deviation == INFINITY) {
      std::snprintf(buf, sizeof buf, "  (%s): no computed solution with this label", label.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "  (%s): max deviation %.3g in %s", label.c_str(),
                    r.deviation, r.column.c_str());
    }
    out << (r.matched ? "ok  " : "DIFF") << buf << '\n';
    matched += r.matched;
  }
  for (const auto& c : checks_failed) out << "FAIL " << c << '\n';
  char buf[160];
  std::snprintf(buf, sizeof buf, "table %d: %d/%zu rows matched, %zu solutions computed, %.2f s: %s\n",
                id, matched, rows.size(), computed, seconds, pass() ? "PASS" : "FAIL");
  out << buf;
  return out.str();
}

TableConfig table_config(int id) {
  switch (id) {
    case 1:
      return {1, 1, false, 10.0, 2, std::nullopt, true, 1e-6};
    case 2:
      return {2, 1, true, 10.0, 7, std::nullopt, true, 1e-6};
    case 3:
      return {3, 2, false, 5.5, std::nullopt, inverse::IndexRange{-1, 4}, false, 5e-4};
    case 4:
      return {4, 2, false, 10.0, std::nullopt, inverse::IndexRange{-2, 2}, false, 5e-4};
    case 5:
      return {5, 3, true, 12.0, std::nullopt, inverse::IndexRange{-1, 1}, false, 5e-4};
    case 6:
      return {6, 3, true, 15.0, std::nullopt, inverse::IndexRange{-2, 1}, false, 5e-4};
    case 7:
      return {7, 3, false, 10.0, std::nullopt, inverse::IndexRange{-3, 0}, false, 5e-4};
    case 8:
      return {8, 3, false, 10.0, std::nullopt, inverse::IndexRange{1, 1}, false, 5e-4};
    default:
      throw InputError("table id must be between 1 and 8, got " + std::to_string(id));
  }
}

std::vector<FixtureRow> parse_fixture(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> header;
  std::vector<FixtureRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line, ',');
    if (header.empty()) {
      header = cells;
      continue;
    }
    if (cells.size() != header.size()) throw InputError("fixture row has wrong column count: " + line);
    FixtureRow row{};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string& name = header[i];
      if (name == "n") {
        row.n = std::stoi(cells[i]);
      } else if (name.rfind("n_", 0) == 0) {
        row.zero_indices.push_back(std::stoi(cells[i]));
      } else if (name != "R") {
        row.values.push_back(std::stod(cells[i]));
        row.columns.push_back(name);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<FixtureRow> fixture(int id) {
  const auto& tables = fixture_tables();
  const auto it = tables.find("table" + std::to_string(id));
  if (it == tables.end()) throw InputError("no bundled table " + std::to_string(id));
  return parse_fixture(it->second);
}

PiecewisePotential reference_potential(int breakpoints, double range) {
  if (breakpoints < 1 || breakpoints > 3) throw DomainError("reference potentials have 1 to 3 breakpoints");
  const std::vector<double> k2 = {4.0, 9.0, 5.0, 2.0};
  std::vector<double> breaks = {0.5 * riccati::bessel_zero(1, 1).value};
  const int zero_index[] = {1, 1, 4};
  for (int l = 2; l <= breakpoints; ++l) {
    const std::vector<double> layers(k2.begin(), k2.begin() + l);
    const radial::Profile profile{layers, breaks};
    const auto zeros = radial::zeros_of_regular(l, profile, range);
    breaks.push_back(zeros.at(zero_index[l - 1] - 1));
  }
  return PiecewisePotential::from_wave_numbers(
      1.0, breaks, std::vector<double>(k2.begin(), k2.begin() + breakpoints + 1), range);
}

inverse::SolveResult run_table(const TableConfig& config, int scan_steps, int threads) {
  inverse::SolveOptions opts;
  opts.scan_steps = scan_steps;
  opts.threads = threads;
  opts.max_zero_index = config.max_zero_index;
  opts.n_range = config.n_range;
  if (config.transparent) {
    return inverse::enumerate_transparent(config.breakpoints, 1.0, config.range, opts);
  }
  const auto target = inverse::TargetData::from_potential(
      reference_potential(config.breakpoints, config.range), config.breakpoints);
  return inverse::solve(target, opts);
}

TableReport compare_table(const TableConfig& config, const inverse::SolveResult& result) {
  TableReport report{config.id, {}, {}, result.solutions.size()};
  for (const FixtureRow& row : fixture(config.id)) {
    RowReport r{row, false, INFINITY, ""};
    for (const auto& s : result.solutions) {
      if (s.label.category() != "common" || s.label.n.front() != row.n) continue;
      if (s.label.zero_indices != row.zero_indices) continue;
      const std::vector<double> values = table_values(s);
      double worst = 0.0;
      std::string column;
      for (std::size_t i = 0; i < row.values.size(); ++i) {
        double d = std::abs(values[i] - row.values[i]);
        if (config.relative) d /= std::abs(row.values[i]);
        if (d > worst) {
          worst = d;
          column = row.columns[i];
        }
      }
      if (worst < r.deviation) {
        r.deviation = worst;
        r.column = column;
      }
    }
    r.matched = r.deviation <= config.tolerance;
    report.rows.push_back(std::move(r));
  }
  if (config.transparent && config.breakpoints == 1) {
    for (const auto& s : result.solutions) {
      if (std::abs(s.k_squared.back() - 1.0) > 1e-12) {
        report.checks_failed.push_back("outer K^2 differs from k^2 = 1");
        break;
      }
    }
  }
  if (config.transparent) {
    for (const auto& s : result.solutions) {
      if (s.label.category() != "common" || s.label.n.front() != 0) continue;
      const bool free = std::all_of(s.k_squared.begin(), s.k_squared.end(),
                                    [](double k2) { return std::abs(k2 - 1.0) <= 1e-6; });
      if (!free) {
        report.checks_failed.push_back("n = 0 class holds a non-zero potential");
        break;
      }
    }
  }
  return report;
}

TableReport reproduce_table(int id, int scan_steps, int threads) {
  const TableConfig config = table_config(id);
  const auto start = std::chrono::steady_clock::now();
  const auto result = run_table(config, scan_steps, threads);
  TableReport report = compare_table(config, result);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace phasequiv::cli
