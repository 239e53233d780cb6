#pragma once

/// Rational forms of the constant-segment matching conditions. A, B, C, D denote the
/// ratios psi_l / psi_l' for l = 0..3 at the radius named by the argument. Each condition
/// has the shape tan(K L) / K = N / D (tanh(K* L) / K* when K^2 < 0).
namespace phasequiv::closed_forms {

struct Fraction {
  double numerator;
  double denominator;
  double value() const { return numerator / denominator; }
};

/// tan(K L) / K for K^2 > 0, tanh(K* L) / K* for K^2 < 0, L for K^2 = 0.
double tan_over_k(double k_squared, double length);

/// Wave number squared on the outermost segment of a two-phase problem.
double k1_squared(double a, double b, double range);
double k1_squared_from_phases(double k, double range, double delta0, double delta1);

/// l = 1 condition on [r1, R) with psi_1(r1) = 0.
Fraction l1_condition(double b, double k1_squared, double range, double r1);

/// l = 0 condition on [r1, R) with A(r1) = r1.
double l0_condition(double a, double k1_squared, double r1);

double k2_squared(double b, double c, double range);
double k2_squared_from_phases(double k, double range, double delta1, double delta2);

/// l = 2 condition on [r2, R) with psi_2(r2) = 0.
Fraction l2_condition(double c, double k2_squared, double range, double r2);

/// l = 1 condition on [r2, R) with B(r2) = r2 / 2, as printed.
Fraction l1_outer_condition_printed(double b, double k2_squared, double range, double r1,
                                    double r2);

/// l = 2 condition on [r1, r2) with C(r1) = -r1 / 2 and psi_2(r2) = 0.
Fraction r1_condition(double k1_squared, double r1, double r2);

/// A(r2) from A(R) across a constant K_2 segment.
double a_at_inner(double a, double k2_squared, double range, double r2);

/// K_1^2 from the polynomial relation in A(R), C(R), K_2^2, r_2.
double k1_squared_polynomial(double a, double c, double k2_squared, double range, double r2);

/// Candidate K_3^2 of a simply soluble four-phase problem.
double k3_squared_simple(double c, double d, double range);
double k3_squared_simple_from_phases(double k, double range, double delta2, double delta3);

/// l = 3 condition on [r3, R) with psi_3(r3) = 0.
Fraction l3_condition(double d, double k3_squared, double range, double r3);

/// l = 2 condition on [r3, R) linking C(r3) and C(R).
Fraction l2_inner_condition(double c_range, double c_r3, double k3_squared, double range,
                            double r3);

/// D(r1) when K_0 r1 is a zero x of j_1.
double d_at_first_zero(double r1, double x);

/// Product whose vanishing is required for C(r3) = r3 / 3.
double simply_soluble_obstruction(double k1_squared, double k2_squared, double r1, double r2,
                                  double x1);

/// General ladder relation: K^2 on a segment ending at `range` such that psi_{l-1} and psi_l
/// are linked by the lowering operator, from the ratios of l-1 (lower) and l (upper).
double ladder_k_squared(int l, double lower, double upper, double range);

}  // namespace phasequiv::closed_forms
