#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace bolab::quad {

struct Options {
    double rel_tol = 1e-13;  // relative to the integral of |f|
    double abs_tol = 0.0;
    std::size_t max_panels = std::size_t{1} << 16;
};

struct Result {
    std::complex<double> value;
    double error;      // sum of |Kronrod - Gauss| over panels
    double l1;         // Kronrod estimate of the integral of |f|
    std::size_t panels;
    bool converged;
};

using Integrand = std::function<std::complex<double>(double)>;

// Adaptive Gauss-Kronrod (7/15) bisection. Breakpoints split the interval
// into initial panels; each is further split into `initial_split` pieces.
Result integrate(const Integrand& f, std::span<const double> breakpoints, const Options& opts = {},
                 std::size_t initial_split = 1);
Result integrate(const Integrand& f, double a, double b, const Options& opts = {}, std::size_t initial_split = 1);

}  // namespace bolab::quad
