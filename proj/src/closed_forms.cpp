#include "phasequiv/closed_forms.hpp"

#include <cmath>

#include "phasequiv/errors.hpp"

namespace phasequiv::closed_forms {

double tan_over_k(double k_squared, double length) {
  if (k_squared > 0.0) {
    const double k = std::sqrt(k_squared);
    return std::tan(k * length) / k;
  }
  if (k_squared < 0.0) {
    const double k = std::sqrt(-k_squared);
    return std::tanh(k * length) / k;
  }
  return length;
}

double ladder_k_squared(int l, double lower, double upper, double range) {
  const double R = range;
  const double denom = lower * upper * R * R;
  if (denom == 0.0) throw DegenerateBoundaryError("ladder relation with a vanishing ratio");
  return (l * l * lower * upper + l * lower * R - R * R - l * upper * R) / denom;
}

double k1_squared(double a, double b, double range) {
  const double R = range;
  if (a * b == 0.0) throw DegenerateBoundaryError("A(R) B(R) = 0");
  return (a * b + a * R - b * R - R * R) / (a * b * R * R);
}

double k1_squared_from_phases(double k, double range, double delta0, double delta1) {
  const double x = k * range;
  const double n = k * k * k * range * std::sin(delta0 - delta1);
  const double d = std::sin(x + delta0) * (std::sin(x + delta1) - x * std::cos(x + delta1));
  return k * k + n / d;
}

Fraction l1_condition(double b, double k1_squared, double range, double r1) {
  const double R = range;
  const double K2 = k1_squared;
  return {-b * R - R * R + b * r1 + R * r1 - b * K2 * R * R * r1,
          -b - R + b * K2 * R * R - b * K2 * R * r1 - K2 * R * R * r1};
}

double l0_condition(double a, double k1_squared, double r1) {
  return (a - r1) / (1.0 + a * k1_squared * r1);
}

double k2_squared(double b, double c, double range) {
  const double R = range;
  if (b * c == 0.0) throw DegenerateBoundaryError("B(R) C(R) = 0");
  return (4.0 * b * c + 2.0 * b * R - 2.0 * c * R - R * R) / (b * c * R * R);
}

double k2_squared_from_phases(double k, double range, double delta1, double delta2) {
  const double x = k * range;
  const double n = std::pow(k, 5) * std::pow(range, 3) * std::sin(delta1 - delta2);
  const double d = (std::sin(x + delta1) - x * std::cos(x + delta1)) *
                   ((3.0 - x * x) * std::sin(x + delta2) - 3.0 * x * std::cos(x + delta2));
  return k * k + n / d;
}

Fraction l2_condition(double c, double k2_squared, double range, double r2) {
  const double R = range;
  const double R2 = R * R;
  const double R3 = R2 * R;
  const double K = k2_squared;
  const double K4 = K * K;
  const double s = r2;
  const double s2 = s * s;
  const double n = -18.0 * c * R - 9.0 * R2 + 3.0 * c * K * R3 + 18.0 * c * s + 9.0 * R * s -
                   9.0 * c * K * R2 * s - 3.0 * K * R3 * s + 6.0 * c * K * R * s2 +
                   3.0 * K * R2 * s2 - c * K4 * R3 * s2;
  const double d = -18.0 * c - 9.0 * R + 9.0 * c * K * R2 + 3.0 * K * R3 - 18.0 * c * K * R * s -
                   9.0 * K * R2 * s + 3.0 * c * K4 * R3 * s + 6.0 * c * K * s2 +
                   3.0 * K * R * s2 - 3.0 * c * K4 * R2 * s2 - K4 * R3 * s2;
  return {n, d};
}

Fraction l1_outer_condition_printed(double b, double k2_squared, double range, double r1,
                                    double r2) {
  const double R = range;
  const double R2 = R * R;
  const double K = k2_squared;
  const double s = r2;
  const double s2 = s * s;
  const double n = 3.0 * b * R + 3.0 * R2 - 3.0 * b * r1 - 3.0 * R * s + 3.0 * b * K * R2 * s -
                   b * K * R * s2 - K * R2 * s2;
  const double d = 3.0 * b + 3.0 * R - 3.0 * b * K * R2 + 3.0 * b * K * R * s +
                   3.0 * K * R2 * s - b * K * s2 - K * R * s2 + b * K * K * R2 * s2;
  return {n, d};
}

Fraction r1_condition(double k1_squared, double r1, double r2) {
  const double K = k1_squared;
  return {-3.0 * r1 + 3.0 * r2 + K * r1 * r2 * r2, 3.0 + 3.0 * K * r1 * r2 - K * r2 * r2};
}

double a_at_inner(double a, double k2_squared, double range, double r2) {
  const double t = tan_over_k(k2_squared, range - r2);
  return (a - t) / (a * k2_squared * t + 1.0);
}

double k1_squared_polynomial(double a, double c, double k2_squared, double range, double r2) {
  const double R = range;
  const double R2 = R * R;
  const double R3 = R2 * R;
  const double s = r2;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s3 * s;
  const double ac = a * c;
  const double f0 = 54.0 * ac + 27.0 * a * R - 54.0 * c * R - 27.0 * R2;
  const double f1 = -27.0 * ac * R2 - 9.0 * a * R3 + 9.0 * c * R3 + 36.0 * ac * s2 +
                    18.0 * a * R * s2 - 36.0 * c * R * s2 - 18.0 * R2 * s2 + 18.0 * c * s3 +
                    9.0 * R * s3;
  const double f2 = -18.0 * ac * R2 * s2 - 6.0 * a * R3 * s2 + 6.0 * c * R3 * s2 +
                    18.0 * ac * R * s3 + 9.0 * a * R2 * s3 - 9.0 * c * R2 * s3 - 3.0 * R3 * s3;
  const double f3 = -3.0 * ac * R3 * s3;
  const double g1 = -18.0 * ac * s2 - 9.0 * a * R * s2 + 18.0 * c * R * s2 + 9.0 * R2 * s2 -
                    18.0 * c * s3 - 9.0 * R * s3;
  const double g2 = 9.0 * ac * R2 * s2 + 3.0 * a * R3 * s2 - 3.0 * c * R3 * s2 -
                    18.0 * ac * R * s3 - 9.0 * a * R2 * s3 + 9.0 * c * R2 * s3 + 3.0 * R3 * s3 +
                    6.0 * ac * s4 + 3.0 * a * R * s4 - 6.0 * c * R * s4 - 3.0 * R2 * s4;
  const double g3 = 3.0 * ac * R3 * s3 - 3.0 * ac * R2 * s4 - a * R3 * s4 + c * R3 * s4;
  const double K = k2_squared;
  const double top = f0 + K * (f1 + K * (f2 + K * f3));
  const double bottom = g1 + K * (g2 + K * g3);
  return -top / bottom;
}

double k3_squared_simple(double c, double d, double range) {
  const double R = range;
  if (c * d == 0.0) throw DegenerateBoundaryError("C(R) D(R) = 0");
  return (9.0 * c * d + 3.0 * c * R - 3.0 * d * R - R * R) / (c * d * R * R);
}

double k3_squared_simple_from_phases(double k, double range, double delta2, double delta3) {
  const double x = k * range;
  const double n = std::pow(k, 7) * std::pow(range, 5) * std::sin(delta2 - delta3);
  const double d = ((3.0 - x * x) * std::sin(x + delta2) - 3.0 * x * std::cos(x + delta2)) *
                   (3.0 * (5.0 - 2.0 * x * x) * std::sin(x + delta3) +
                    x * (x * x - 15.0) * std::cos(x + delta3));
  return k * k + n / d;
}

Fraction l3_condition(double d, double k3_squared, double range, double r3) {
  const double R = range;
  const double R2 = R * R;
  const double R3 = R2 * R;
  const double R4 = R3 * R;
  const double K = k3_squared;
  const double K4 = K * K;
  const double K6 = K4 * K;
  const double s = r3;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double n = 675.0 * d * R + 225.0 * R2 - 90.0 * d * K * R3 - 15.0 * K * R4 -
                   675.0 * d * s - 225.0 * R * s + 315.0 * d * K * R2 * s + 90.0 * K * R3 * s -
                   15.0 * d * K4 * R4 * s - 270.0 * d * K * R * s2 - 90.0 * K * R2 * s2 +
                   36.0 * d * K4 * R3 * s2 + 6.0 * K4 * R4 * s2 + 45.0 * d * K * s3 +
                   15.0 * K * R * s3 - 21.0 * d * K4 * R2 * s3 - 6.0 * K4 * R3 * s3 +
                   d * K6 * R4 * s3;
  const double dd = 675.0 * d + 225.0 * R - 315.0 * d * K * R2 - 90.0 * K * R3 +
                    15.0 * d * K4 * R4 + 675.0 * d * K * R * s + 225.0 * K * R2 * s -
                    90.0 * d * K4 * R3 * s - 15.0 * K4 * R4 * s - 270.0 * d * K * s2 -
                    90.0 * K * R * s2 + 126.0 * d * K4 * R2 * s2 + 36.0 * K4 * R3 * s2 -
                    6.0 * d * K6 * R4 * s2 - 45.0 * d * K4 * R * s3 - 15.0 * K4 * R2 * s3 +
                    6.0 * d * K6 * R3 * s3 + K6 * R4 * s3;
  return {n, dd};
}

Fraction l2_inner_condition(double c_range, double c_r3, double k3_squared, double range,
                            double r3) {
  const double R = range;
  const double R2 = R * R;
  const double R3 = R2 * R;
  const double K = k3_squared;
  const double K4 = K * K;
  const double K6 = K4 * K;
  const double s = r3;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double C = c_range;
  const double c = c_r3;
  const double Cc = C * c;
  const double n = 9.0 * R2 * s - 9.0 * R * s2 + 3.0 * K * R3 * s2 - 3.0 * K * R2 * s3 +
                   18.0 * R * s * C - 3.0 * K * R3 * s * C - 18.0 * s2 * C +
                   9.0 * K * R2 * s2 * C - 6.0 * K * R * s3 * C + K4 * R3 * s3 * C +
                   18.0 * R2 * c - 18.0 * R * s * c + 6.0 * K * R3 * s * c -
                   9.0 * K * R2 * s2 * c + 3.0 * K * R * s3 * c - K4 * R3 * s3 * c +
                   36.0 * R * Cc - 6.0 * K * R3 * Cc - 36.0 * s * Cc + 18.0 * K * R2 * s * Cc -
                   18.0 * K * R * s2 * Cc + 3.0 * K4 * R3 * s2 * Cc + 6.0 * K * s3 * Cc -
                   3.0 * K4 * R2 * s3 * Cc;
  const double d = 9.0 * R * s - 3.0 * K * R3 * s + 9.0 * K * R2 * s2 - 3.0 * K * R * s3 +
                   K4 * R3 * s3 + 18.0 * s * C - 9.0 * K * R2 * s * C + 18.0 * K * R * s2 * C -
                   3.0 * K4 * R3 * s2 * C - 6.0 * K * s3 * C + 3.0 * K4 * R2 * s3 * C +
                   18.0 * R * c - 6.0 * K * R3 * c + 18.0 * K * R2 * s * c -
                   9.0 * K * R * s2 * c + 3.0 * K4 * R3 * s2 * c - 3.0 * K4 * R2 * s3 * c +
                   36.0 * Cc - 18.0 * K * R2 * Cc + 36.0 * K * R * s * Cc -
                   6.0 * K4 * R3 * s * Cc - 18.0 * K * s2 * Cc + 9.0 * K4 * R2 * s2 * Cc -
                   6.0 * K4 * R * s3 * Cc + K6 * R3 * s3 * Cc;
  return {n, d};
}

double d_at_first_zero(double r1, double x) { return 5.0 * r1 / (x * x - 15.0); }

double simply_soluble_obstruction(double k1_squared, double k2_squared, double r1, double r2,
                                  double x1) {
  const double a = k1_squared * r2 * r2;
  const double b = k2_squared * r2 * r2;
  return (9.0 + 3.0 * a + a * a) * (225.0 + 45.0 * b + 6.0 * b * b + b * b * b) *
         (k1_squared * r1 * r1 - x1 * x1);
}

}  // namespace phasequiv::closed_forms
