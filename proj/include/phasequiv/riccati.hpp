#pragma once

namespace phasequiv::riccati {

inline constexpr int kMaxOrder = 4;

/// u_l(x) = x j_l(x) and w_l(x) = -x y_l(x) with derivatives in x.
/// The Wronskian u w' - u' w equals -1.
struct FunctionPair {
  double regular;
  double irregular;
  double regular_deriv;
  double irregular_deriv;
};

/// Modified pair for K^2 < 0: regular = x i_l(x), irregular = x k_l(x) normalized so that
/// irregular ~ e^{-x}. Values are scaled: the true regular function is regular * e^{exponent}
/// and the true irregular one is irregular * e^{-exponent}. exponent is 0 unless x > 300.
struct ModifiedPair {
  double regular;
  double irregular;
  double regular_deriv;
  double irregular_deriv;
  double exponent;
};

struct BesselZero {
  int order;
  int index;
  double value;
};

FunctionPair riccati_pair(int l, double x);

ModifiedPair riccati_modified_pair(int l, double x);

/// Same as riccati_modified_pair but always scaled by exponent = x.
ModifiedPair riccati_modified_pair_scaled(int l, double x);

/// Continuous phase with u_l = M sin(phase), w_l = M cos(phase), phase(0) = 0.
/// Satisfies x - l pi / 2 < phase <= x.
double riccati_phase(int l, double x);

/// n-th positive zero of j_l (equivalently of u_l), n >= 1.
BesselZero bessel_zero(int l, int n);

/// Number of zeros of u_l in the open interval (0, x).
int zeros_below(int l, double x);

}  // namespace phasequiv::riccati
