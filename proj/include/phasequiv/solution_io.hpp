#pragma once

#include <string>
#include <vector>

#include "phasequiv/inverse.hpp"

namespace phasequiv {

/// K = sqrt(K^2) with fixed decimals; imaginary wave numbers print as "<|K|>i".
std::string wave_number_text(double k_squared, int decimals);

/// Table columns: K_0, r_1, K_1, ..., r_N, K_N, R. Imaginary K is reported as -|K|.
std::vector<double> table_values(const inverse::EquivalentSolution& s);

/// Header n, n_1..n_N, K_0, r_1, K_1, ..., R; a mixed n column prints as "a;b;...".
std::string solutions_to_csv(const std::vector<inverse::EquivalentSolution>& solutions,
                             int breakpoints, int decimals, bool with_range = true);

std::string solutions_to_json(const std::vector<inverse::EquivalentSolution>& solutions);

}  // namespace phasequiv
