#pragma once

#include <string>
#include <string_view>

#include "bolab/grid.hpp"
#include "bolab/pseudoproduct.hpp"

namespace bolab::nf {

// Sign pattern (e1, e2, e3) of output, first input and second input.
struct Branch {
    int e1;
    int e2;
    int e3;
    static Branch parse(std::string_view tag);  // "+++", "++-", ...
    std::string tag() const;
    bool operator==(const Branch&) const = default;
};

struct NfOptions {
    double p = 100.0;                  // gauge gap: chi_{<< k} = chi_{< k - p N}
    bool inject_symbol_fault = false;  // flips the ++- branch sign (tests only)
    bool zero_correction = false;      // B = 0, leaving only the gauge
};

// Normalization taking the branch symbols to the operator that makes the
// quadratic obstruction vanish: B = kappa * sum of branch pseudoproducts.
double normalization();

// Smooth, nonsingular branch symbols b^{+,e1e2e3}_{k,N}(xi, eta).
double branch_symbol_value(int k, int order, Branch branch, double xi, double eta, const NfOptions& opts = {});
pseudo::BilinearSymbol branch_symbol(int k, int order, Branch branch, const NfOptions& opts = {});

// Full symbol of B on the branch its signs select, times the normalization.
double effective_symbol(int k, int order, double xi, double eta, const NfOptions& opts = {});

// Quadratic obstruction symbol K(alpha, beta) with alpha + beta = xi, i.e.
// the kernel of the quadratic part of the gauge-transformed equation
// before and after adding B. Returns the value with B included.
double obstruction_symbol(int k, int order, double alpha, double beta, const NfOptions& opts = {});

// Output frequency window of every nonzero branch.
pseudo::Interval output_support(int k, int order, const NfOptions& opts = {});

// B(f,g) = kappa * sum over nonzero branches P^{e1} B^{e}(P^{e2} f, P^{e3} g).
Spectrum assemble_B(int k, int order, const Spectrum& f, const Spectrum& g, const NfOptions& opts = {});
ComplexField assemble_B(int k, int order, const ComplexField& f, const ComplexField& g, const NfOptions& opts = {});
ComplexField assemble_B(int k, int order, const Field& f, const Field& g, const NfOptions& opts = {});

struct Obstruction {
    ComplexField total;
    double scale;  // largest sup norm among the six contributions
    bool aliasing_warning;
};

// The quadratic obstruction of the gauge-transformed equation, evaluated as
// a sum of six operator terms with B from assemble_B. Zero up to rounding.
Obstruction obstruction(const Field& u, int k, int order, const NfOptions& opts = {});

struct CancellationReport {
    double residual_inf;
    double scale;  // largest sup norm among the six contributions
    double relative() const { return scale > 0.0 ? residual_inf / scale : residual_inf; }
    bool aliasing_warning;
};

CancellationReport verify_cancellation(const Field& u, int k, int order, const NfOptions& opts = {});

}  // namespace bolab::nf
