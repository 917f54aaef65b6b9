#pragma once

// Smooth dyadic cutoff family. The base profile equals 1 on (-inf, 1],
// 0 on [2, inf) and is C-infinity in between. Indices may be fractional.
namespace bolab::cutoff {

// Width of the "comparable" windows used by near/lesssim/gtrsim.
inline constexpr int kComparableWidth = 10;

double base(double x);             // chi^+_{<=0}
double base_derivative(double x);  // d/dx chi^+_{<=0}

double le(double j, double x);     // chi^+_{<=j}(x) = base(2^-j x)
double lt(double j, double x);     // chi^+_{<j} = chi^+_{<=j-1}
double ge(double j, double x);     // chi^+_{>=j} = 1 - chi^+_{<=j-1}
double shell(double j, double x);  // chi^+_j = chi^+_{<=j} - chi^+_{<=j-1}
double shell_derivative(double j, double x);
double range(double a, double b, double x);  // sum of shells a..b (integer steps)

double near(double j, double x, int width = kComparableWidth);     // chi^+_{~j}
double lesssim(double j, double x, int width = kComparableWidth);  // chi^+_{<=j+width}
double gtrsim(double j, double x, int width = kComparableWidth);   // chi^+_{>=j+width}

// Two-sided versions chi(|x|).
double le_abs(double j, double x);
double shell_abs(double j, double x);
double ge_abs(double j, double x);

// Low-frequency gauge cutoff chi_{<< k} at order N: chi_{< k - p N}(|x|).
double low_gauge(double k, int order, double p, double x);
// The matching complementary cutoff chi_{>~ k}: 1 - chi_{<< k} (one-sided).
double high_gauge(double k, int order, double p, double x);

}  // namespace bolab::cutoff
