#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "phasequiv/errors.hpp"
#include "phasequiv/jwkb.hpp"
#include "phasequiv/phase.hpp"
#include "phasequiv/radial.hpp"
#include "phasequiv/riccati.hpp"
#include "phasequiv/solution_io.hpp"
#include "tables.hpp"

namespace phasequiv::cli {

namespace {

struct Config {
  std::string potential;
  std::string phases;
  double range = 0.0;
  double k2 = 1.0;
  int breakpoints = 0;
  std::string n_range;
  int max_zero_index = 0;
  int scan_steps = 2000;
  int inner_scan_steps = 0;
  int threads = 1;
  double time_budget = 0.0;
  std::string format = "csv";
  int decimals = -1;
  int table = 0;
  bool transparent = false;
  bool jwkb = false;
  bool want_phase = false;
  bool want_nmin = false;
  bool want_conjecture = false;
  double radius = 0.0;
};

std::string number(double x, int decimals) {
  char buf[64];
  if (decimals >= 0) {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  } else {
    std::snprintf(buf, sizeof buf, "%.10g", x);
  }
  std::string out = buf;
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw InputError("phases: '" + cell + "' is not a number");
    }
  }
  return out;
}

int lmax_for(const Config& c, int fallback) { return c.breakpoints > 0 ? c.breakpoints : fallback; }

int cmd_phases(const Config& c, std::ostream& out) {
  const PiecewisePotential p = load_potential(c.potential);
  const int lmax = lmax_for(c, riccati::kMaxOrder);
  const int digits = c.decimals >= 0 ? c.decimals : 10;
  out << "l,delta,delta_mod_pi" << (c.jwkb ? ",delta_jwkb" : "") << '\n';
  for (int l = 0; l <= lmax; ++l) {
    const double delta = phase::calogero_phase(p, l);
    out << l << ',' << number(delta, digits) << ','
        << number(phase::matching_phase_mod_pi(p, l), digits);
    if (c.jwkb) out << ',' << number(jwkb::jwkb_phase(p, l), digits);
    out << '\n';
  }
  return 0;
}

int cmd_zeros(const Config& c, std::ostream& out) {
  const PiecewisePotential p = load_potential(c.potential);
  const int lmax = lmax_for(c, riccati::kMaxOrder);
  const int digits = c.decimals >= 0 ? c.decimals : 10;
  out << "l,index,r\n";
  for (int l = 0; l <= lmax; ++l) {
    const auto zeros = radial::zeros_of_regular(p, l).zeros;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      out << l << ',' << i + 1 << ',' << number(zeros[i], digits) << '\n';
    }
  }
  return 0;
}

inverse::SolveOptions solve_options(const Config& c) {
  inverse::SolveOptions opts;
  opts.scan_steps = c.scan_steps;
  opts.inner_scan_steps = c.inner_scan_steps;
  opts.threads = c.threads;
  opts.time_budget_seconds = c.time_budget;
  if (c.max_zero_index > 0) opts.max_zero_index = c.max_zero_index;
  if (!c.n_range.empty()) opts.n_range = parse_range(c.n_range);
  return opts;
}

int emit(const Config& c, const inverse::SolveResult& result, int breakpoints,
         std::optional<jwkb::NminBound> bound, std::ostream& out, std::ostream& err) {
  if (c.format == "json") {
    out << solutions_to_json(result.solutions);
  } else {
    const int digits = c.decimals >= 0 ? c.decimals : (breakpoints == 1 ? 9 : 4);
    out << solutions_to_csv(result.solutions, breakpoints, digits);
  }
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  if (!result.rejects.empty()) {
    err << "rejected " << result.rejects.size() << " candidates failing verification\n";
  }
  if (result.solutions.empty() && bound) {
    err << "no solutions; JWKB bound n_min >= " << bound->n_min << " (raw "
        << number(bound->raw_bound, 5) << ")\n";
  }
  return 0;
}

std::optional<jwkb::NminBound> safe_bound(int n, double k, double range, double delta) {
  try {
    return jwkb::nmin_general(n, k, range, delta);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

int cmd_transparent(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.breakpoints < 1) throw InputError("--N is required");
  if (!(c.range > 0.0)) throw InputError("--R must be positive");
  if (!(c.k2 > 0.0)) throw InputError("--k2 must be positive");
  const auto result = inverse::enumerate_transparent(c.breakpoints, c.k2, c.range, solve_options(c));
  return emit(c, result, c.breakpoints, safe_bound(c.breakpoints, std::sqrt(c.k2), c.range, 0.0),
              out, err);
}

int cmd_equivalents(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.transparent) return cmd_transparent(c, out, err);
  if (c.potential.empty() == c.phases.empty()) {
    throw InputError("give exactly one of --potential or --phases");
  }
  inverse::TargetData target;
  if (!c.potential.empty()) {
    const PiecewisePotential p = load_potential(c.potential);
    const int n = lmax_for(c, p.breakpoint_count());
    if (n < 1 || n > 4) throw InputError("--N must be between 1 and 4");
    target = inverse::TargetData::from_potential(p, n);
  } else {
    if (!(c.range > 0.0)) throw InputError("--R must be positive");
    target = inverse::TargetData::from_phases(c.k2, c.range, parse_list(c.phases));
  }
  const int n = target.max_l();
  const auto result = inverse::solve(target, solve_options(c));
  return emit(c, result, n,
              safe_bound(n, std::sqrt(target.k2), target.range, target.reference_phases[n]), out,
              err);
}

int cmd_jwkb(const Config& c, std::ostream& out) {
  const bool all = !c.want_phase && !c.want_nmin && !c.want_conjecture && !(c.radius > 0.0);
  std::optional<PiecewisePotential> p;
  if (!c.potential.empty()) p = load_potential(c.potential);
  const double k2 = p ? p->k2() : c.k2;
  const double range = c.range > 0.0 ? c.range : (p ? p->range() : 0.0);
  const int n = lmax_for(c, p ? std::max(1, p->breakpoint_count()) : 0);
  out << "quantity,l,value\n";
  if (p && (all || c.want_phase)) {
    const int lmax = c.breakpoints > 0 ? c.breakpoints : riccati::kMaxOrder;
    for (int l = 0; l <= lmax; ++l) {
      out << "jwkb_phase," << l << ',' << number(jwkb::jwkb_phase(*p, l), -1) << '\n';
    }
  }
  if (p && c.radius > 0.0) {
    const int lmax = c.breakpoints > 0 ? c.breakpoints : riccati::kMaxOrder;
    for (int l = 0; l <= lmax; ++l) {
      out << "zero_index," << l << ',' << number(jwkb::zero_index(*p, l, c.radius), -1) << '\n';
    }
  }
  if (all || c.want_nmin) {
    if (n < 1) throw InputError("--N is required for the n_min bound");
    if (!(range > 0.0)) throw InputError("--R is required for the n_min bound");
    const double k = std::sqrt(k2);
    const auto free = jwkb::nmin_transparent(n, k, range);
    out << "nmin_transparent_raw," << n << ',' << number(free.raw_bound, -1) << '\n';
    out << "nmin_transparent," << n << ',' << free.n_min << '\n';
    if (p) {
      const auto exact = jwkb::nmin_general(n, k, range, phase::calogero_phase(*p, n));
      const auto approx = jwkb::nmin_general(n, k, range, jwkb::jwkb_phase(*p, n));
      out << "nmin_general_exact_raw," << n << ',' << number(exact.raw_bound, -1) << '\n';
      out << "nmin_general_exact," << n << ',' << exact.n_min << '\n';
      out << "nmin_general_jwkb_raw," << n << ',' << number(approx.raw_bound, -1) << '\n';
      out << "nmin_general_jwkb," << n << ',' << approx.n_min << '\n';
    }
  }
  if (all || c.want_conjecture) {
    if (n < 1) throw InputError("--N is required for the conjecture");
    if (!(range > 0.0)) throw InputError("--R is required for the conjecture");
    out << "conjecture_nmin," << n << ',' << jwkb::conjecture_nmin(n, std::sqrt(k2), range) << '\n';
  }
  return 0;
}

int cmd_reproduce(const Config& c, std::ostream& out) {
  const TableReport report = reproduce_table(c.table, c.scan_steps, c.threads);
  out << report.text();
  return report.pass() ? 0 : 1;
}

void add_solver_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--n", c.n_range, "class filter: n or lo..hi");
  cmd->add_option("--max-zero-index", c.max_zero_index, "largest zero index of psi_1");
  cmd->add_option("--scan-steps", c.scan_steps, "grid points of the outer breakpoint scan");
  cmd->add_option("--inner-scan-steps", c.inner_scan_steps, "grid points of inner scans");
  cmd->add_option("--threads", c.threads, "worker threads for the outer scan");
  cmd->add_option("--time-budget", c.time_budget, "seconds before giving up (0 = none)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--decimals", c.decimals, "decimal places in CSV output");
}

}  // namespace

inverse::IndexRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int n = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {n, n};
    }
    const std::string lo_text = text.substr(0, dots);
    const std::string hi_text = text.substr(dots + 2);
    const int lo = std::stoi(lo_text, &used);
    if (used != lo_text.size()) throw std::invalid_argument(text);
    const int hi = std::stoi(hi_text, &used);
    if (used != hi_text.size()) throw std::invalid_argument(text);
    if (lo > hi) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw InputError("--n: expected n or lo..hi, got '" + text + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Phase-equivalent piecewise-constant potentials at fixed energy"};
  app.require_subcommand(1);

  auto* phases = app.add_subcommand("phases", "phase shifts of a potential");
  phases->add_option("--potential", c.potential, "potential JSON file")->required();
  phases->add_option("--N", c.breakpoints, "largest l");
  phases->add_flag("--jwkb", c.jwkb, "also print JWKB phases");
  phases->add_option("--decimals", c.decimals, "decimal places");

  auto* zeros = app.add_subcommand("zeros", "zeros of the regular solutions below R");
  zeros->add_option("--potential", c.potential, "potential JSON file")->required();
  zeros->add_option("--N", c.breakpoints, "largest l");
  zeros->add_option("--decimals", c.decimals, "decimal places");

  auto* equivalents = app.add_subcommand("equivalents", "phase-equivalent potentials");
  equivalents->add_option("--potential", c.potential, "reference potential JSON file");
  equivalents->add_option("--phases", c.phases, "comma-separated target phases delta_0..delta_N");
  equivalents->add_flag("--transparent", c.transparent, "targets are all zero");
  equivalents->add_option("--N", c.breakpoints, "number of breakpoints");
  equivalents->add_option("--R", c.range, "range");
  equivalents->add_option("--k2", c.k2, "energy k^2");
  add_solver_options(equivalents, c);

  auto* transparent = app.add_subcommand("transparent", "transparent potentials");
  transparent->add_option("--N", c.breakpoints, "number of breakpoints")->required();
  transparent->add_option("--R", c.range, "range")->required();
  transparent->add_option("--k2", c.k2, "energy k^2");
  add_solver_options(transparent, c);

  auto* jwkb_cmd = app.add_subcommand("jwkb", "JWKB phases, zero indices and n_min bounds");
  jwkb_cmd->add_option("--potential", c.potential, "potential JSON file");
  jwkb_cmd->add_option("--N", c.breakpoints, "order N");
  jwkb_cmd->add_option("--R", c.range, "range");
  jwkb_cmd->add_option("--k2", c.k2, "energy k^2");
  jwkb_cmd->add_flag("--phase", c.want_phase, "JWKB phases of the potential");
  jwkb_cmd->add_flag("--nmin", c.want_nmin, "n_min bounds");
  jwkb_cmd->add_flag("--conjecture", c.want_conjecture, "conjectured n_min");
  jwkb_cmd->add_option("--radius", c.radius, "radius for the zero index I_l");

  auto* reproduce = app.add_subcommand("reproduce", "recompute a bundled reference table");
  int positional_table = 0;
  auto* table_flag = reproduce->add_option("--table", c.table, "table id 1..8");
  auto* table_pos = reproduce->add_option("id", positional_table, "table id 1..8");
  table_flag->excludes(table_pos);
  reproduce->add_option("--scan-steps", c.scan_steps, "grid points of the breakpoint scan");
  reproduce->add_option("--threads", c.threads, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (phases->parsed()) return cmd_phases(c, out);
    if (zeros->parsed()) return cmd_zeros(c, out);
    if (equivalents->parsed()) return cmd_equivalents(c, out, err);
    if (transparent->parsed()) return cmd_transparent(c, out, err);
    if (jwkb_cmd->parsed()) return cmd_jwkb(c, out);
    if (reproduce->parsed()) {
      if (positional_table != 0) c.table = positional_table;
      if (c.table == 0) throw InputError("--table is required");
      return cmd_reproduce(c, out);
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateBoundaryError& e) {
    err << "degenerate boundary: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace phasequiv::cli
