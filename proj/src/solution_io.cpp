#include "phasequiv/solution_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace phasequiv {

namespace {

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string out = buf;
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::string n_text(const inverse::AmbiguityLabel& label) {
  if (label.same_n()) return std::to_string(label.n.front());
  std::string out;
  for (std::size_t i = 0; i < label.n.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(label.n[i]);
  }
  return out;
}

}  // namespace

std::string wave_number_text(double k_squared, int decimals) {
  if (k_squared >= 0.0) return fixed(std::sqrt(k_squared), decimals);
  return fixed(std::sqrt(-k_squared), decimals) + "i";
}

std::vector<double> table_values(const inverse::EquivalentSolution& s) {
  std::vector<double> out;
  const auto& breaks = s.potential.breakpoints();
  for (std::size_t j = 0; j < s.k_squared.size(); ++j) {
    const double k2 = s.k_squared[j];
    out.push_back(k2 >= 0.0 ? std::sqrt(k2) : -std::sqrt(-k2));
    if (j < breaks.size()) out.push_back(breaks[j]);
  }
  out.push_back(s.potential.range());
  return out;
}

std::string solutions_to_csv(const std::vector<inverse::EquivalentSolution>& solutions,
                             int breakpoints, int decimals, bool with_range) {
  std::ostringstream out;
  out << "n";
  for (int l = 1; l <= breakpoints; ++l) out << ",n_" << l;
  for (int j = 0; j <= breakpoints; ++j) {
    out << ",K_" << j;
    if (j < breakpoints) out << ",r_" << j + 1;
  }
  if (with_range) out << ",R";
  out << '\n';
  for (const auto& s : solutions) {
    out << n_text(s.label);
    for (int index : s.label.zero_indices) out << ',' << index;
    const auto& breaks = s.potential.breakpoints();
    for (std::size_t j = 0; j < s.k_squared.size(); ++j) {
      out << ',' << wave_number_text(s.k_squared[j], decimals);
      if (j < breaks.size()) out << ',' << fixed(breaks[j], decimals);
    }
    if (with_range) out << ',' << fixed(s.potential.range(), decimals);
    out << '\n';
  }
  return out.str();
}

std::string solutions_to_json(const std::vector<inverse::EquivalentSolution>& solutions) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& s : solutions) {
    nlohmann::ordered_json item;
    item["category"] = s.label.category();
    item["n"] = s.label.n;
    item["zero_indices"] = s.label.zero_indices;
    item["potential"] = nlohmann::ordered_json::parse(potential_to_json(s.potential));
    item["k_squared"] = s.k_squared;
    item["phases"] = s.phases;
    item["residual"] = s.residual;
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

}  // namespace phasequiv
