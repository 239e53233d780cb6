#include "phasequiv/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phasequiv/errors.hpp"

namespace phasequiv {

Branch SegmentWaveNumber::branch() const {
  if (std::abs(k_squared) <= kLinearLimit) return Branch::Linear;
  return k_squared > 0.0 ? Branch::Trig : Branch::Hyperbolic;
}

PiecewisePotential::PiecewisePotential(double k2, std::vector<double> breakpoints,
                                       std::vector<double> values, double range)
    : k2_(k2), breakpoints_(std::move(breakpoints)), values_(std::move(values)), range_(range) {
  validate();
}

PiecewisePotential PiecewisePotential::from_wave_numbers(double k2,
                                                         std::vector<double> breakpoints,
                                                         const std::vector<double>& k_squared,
                                                         double range) {
  std::vector<double> values(k_squared.size());
  for (std::size_t j = 0; j < k_squared.size(); ++j) values[j] = k2 - k_squared[j];
  return PiecewisePotential(k2, std::move(breakpoints), std::move(values), range);
}

void PiecewisePotential::validate() const {
  if (!std::isfinite(k2_) || k2_ <= 0.0) throw InputError("k2 must be a positive number");
  if (!std::isfinite(range_) || range_ <= 0.0) throw InputError("range must be positive");
  if (values_.size() != breakpoints_.size() + 1) {
    throw InputError("values must have one more entry than breakpoints");
  }
  double previous = 0.0;
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    const double r = breakpoints_[j];
    if (!std::isfinite(r) || r <= previous) {
      throw InputError("breakpoints[" + std::to_string(j) + "] must be strictly increasing and > 0");
    }
    previous = r;
  }
  if (range_ <= previous) throw InputError("range must exceed the last breakpoint");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw InputError("values[" + std::to_string(j) + "] is not finite");
    }
  }
}

std::vector<double> PiecewisePotential::wave_numbers_squared() const {
  std::vector<double> out(values_.size());
  for (std::size_t j = 0; j < values_.size(); ++j) out[j] = k2_ - values_[j];
  return out;
}

double PiecewisePotential::edge(int j) const {
  if (j <= 0) return 0.0;
  if (j > breakpoint_count()) return range_;
  return breakpoints_[j - 1];
}

int PiecewisePotential::segment_index(double r) const {
  if (r >= range_) return breakpoint_count() + 1;
  return static_cast<int>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r) -
                          breakpoints_.begin());
}

SegmentWaveNumber PiecewisePotential::segment_of(double r) const {
  return {k2_ - value_at(r)};
}

double PiecewisePotential::value_at(double r) const {
  const int j = segment_index(r);
  return j > breakpoint_count() ? 0.0 : values_[j];
}

PiecewisePotential scale_potential(const PiecewisePotential& p, double k) {
  if (!(k > 0.0)) throw InputError("scale factor k must be positive");
  std::vector<double> breaks = p.breakpoints();
  for (double& r : breaks) r /= k;
  std::vector<double> values = p.values();
  for (double& v : values) v *= k * k;
  return PiecewisePotential(p.k2() * k * k, std::move(breaks), std::move(values), p.range() / k);
}

std::string format_number(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

namespace {

std::string number_list(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_number(xs[i]);
  }
  return out + "]";
}

std::vector<double> read_numbers(const nlohmann::json& doc, const char* field) {
  if (!doc.contains(field)) throw InputError(std::string("missing field '") + field + "'");
  const auto& node = doc.at(field);
  if (!node.is_array()) throw InputError(std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  for (const auto& item : node) {
    if (!item.is_number()) {
      throw InputError(std::string("field '") + field + "' must contain only numbers");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

double read_number(const nlohmann::json& doc, const char* field) {
  if (!doc.contains(field)) throw InputError(std::string("missing field '") + field + "'");
  if (!doc.at(field).is_number()) {
    throw InputError(std::string("field '") + field + "' must be a number");
  }
  return doc.at(field).get<double>();
}

}  // namespace

std::string potential_to_json(const PiecewisePotential& p) {
  std::string out = "{\n";
  out += "  \"k2\": " + format_number(p.k2()) + ",\n";
  out += "  \"breakpoints\": " + number_list(p.breakpoints()) + ",\n";
  out += "  \"values\": " + number_list(p.values()) + ",\n";
  out += "  \"range\": " + format_number(p.range()) + "\n}\n";
  return out;
}

PiecewisePotential potential_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("potential JSON does not parse: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("potential JSON must be an object");
  const double k2 = doc.contains("k2") ? read_number(doc, "k2") : 1.0;
  return PiecewisePotential(k2, read_numbers(doc, "breakpoints"), read_numbers(doc, "values"),
                            read_number(doc, "range"));
}

PiecewisePotential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open potential file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return potential_from_json(buffer.str());
}

}  // namespace phasequiv
