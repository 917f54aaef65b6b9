#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bolab/grid.hpp"
#include "bolab/quadrature.hpp"

namespace bolab::kernels {

// low_left / dyadic_left: source to the left of the target shell.
// low_right / dyadic_right: source in shell ell, valid after a waiting time.
// schrodinger: positive band k propagated by e^{t(d_x - i d_x^2)}.
enum class Variant { low_left, dyadic_left, low_right, dyadic_right, schrodinger };

std::string variant_name(Variant v);
Variant parse_variant(std::string_view name);

struct KernelSpec {
    Variant variant = Variant::low_left;
    int j = 0;              // target shell
    double epsilon = 0.5;   // sets k0 = -(1 - epsilon)/2 * j
    double k = 0.0;         // band for dyadic and Schrodinger variants
    int a = 0;              // derivative count
    int ell = 0;            // source shell for right variants
    double t = 0.0;
    bool positive_only = false;  // keep only xi > 0 (BO phase variants)
};

double low_band(const KernelSpec& spec);  // k0
// Time the right variants must exceed; -inf for the others.
double time_threshold(const KernelSpec& spec);
void validate(const KernelSpec& spec);

struct FrequencyIntegral {
    cplx value;  // int e^{i phi} cutoff(xi) xi^a d xi
    double error;
    double scale;  // int |cutoff(xi) xi^a| d xi
    bool converged;
    bool phase_monotone;  // d phi / d xi > 0 on the support
};

// Frequency integral at separation r = x - y.
FrequencyIntegral frequency_integral(const KernelSpec& spec, double r, const quad::Options& opts = {});

struct KernelValue {
    cplx value;
    double error;
    bool converged;
    bool phase_monotone;
};
KernelValue kernel_value(const KernelSpec& spec, double x, double y, const quad::Options& opts = {});

double target_weight(const KernelSpec& spec, double x);
double source_weight(const KernelSpec& spec, double y);

struct Sampling {
    int nx = 48;  // points across the target shell
    int ny = 0;   // points across the source region; 0 picks the x spacing
};

struct KernelSup {
    double sup;
    double x_at, y_at;
    double x_lo, x_hi, y_lo, y_hi;
    int nx, ny;
    std::size_t quadratures;
    bool all_converged;
};

// Max |K| over a tensor grid in the target shell and the source region.
KernelSup kernel_sup(const KernelSpec& spec, const Sampling& sampling = {}, const quad::Options& opts = {});

struct SampleGrid {
    std::vector<double> xs, ys;
};
SampleGrid sample_grid(const KernelSpec& spec, const Sampling& sampling);

struct FitResult {
    double slope;
    double intercept;
    double r2;
};
// Least squares of log2(value) against the parameter.
FitResult fit_decay(std::span<const std::pair<double, double>> points);

struct SweepRow {
    KernelSpec spec;
    double sup;
    bool converged;
};
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

}  // namespace bolab::kernels
