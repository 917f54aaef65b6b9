#include "bolab/cutoff.hpp"

#include <cmath>

namespace bolab::cutoff {
namespace {

double psi(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double base(double x) {
    if (x <= 1.0) return 1.0;
    if (x >= 2.0) return 0.0;
    const double a = psi(2.0 - x);
    const double b = psi(x - 1.0);
    return a / (a + b);
}

double base_derivative(double x) {
    if (x <= 1.0 || x >= 2.0) return 0.0;
    const double s = 2.0 - x;
    const double r = x - 1.0;
    const double a = psi(s);
    const double b = psi(r);
    // a' = -a/s^2, b' = b/r^2
    const double num = -a * b * (1.0 / (s * s) + 1.0 / (r * r));
    return num / ((a + b) * (a + b));
}

double le(double j, double x) { return base(x * std::exp2(-j)); }
double lt(double j, double x) { return le(j - 1.0, x); }
double ge(double j, double x) { return 1.0 - le(j - 1.0, x); }
double shell(double j, double x) { return le(j, x) - le(j - 1.0, x); }

double shell_derivative(double j, double x) {
    const double s0 = std::exp2(-j);
    const double s1 = std::exp2(-(j - 1.0));
    return s0 * base_derivative(s0 * x) - s1 * base_derivative(s1 * x);
}

double range(double a, double b, double x) {
    if (b < a) return 0.0;
    return le(b, x) - le(a - 1.0, x);
}

double near(double j, double x, int width) { return range(j - width, j + width, x); }
double lesssim(double j, double x, int width) { return le(j + width, x); }
double gtrsim(double j, double x, int width) { return ge(j + width, x); }

double le_abs(double j, double x) { return le(j, std::abs(x)); }
double shell_abs(double j, double x) { return shell(j, std::abs(x)); }
double ge_abs(double j, double x) { return ge(j, std::abs(x)); }

double low_gauge(double k, int order, double p, double x) {
    return le_abs(k - p * order - 1.0, x);
}

double high_gauge(double k, int order, double p, double x) { return 1.0 - low_gauge(k, order, p, x); }

}  // namespace bolab::cutoff
