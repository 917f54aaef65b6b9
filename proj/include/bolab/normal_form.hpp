#pragma once

#include <span>
#include <vector>

#include "bolab/grid.hpp"
#include "bolab/nf_symbols.hpp"

namespace bolab::nf {

// E_N(x) = sum_{n=0}^{N} (-i x)^n / n!; empty sums (N < 0) vanish.
cplx truncated_exp(int order, double x);
ComplexField truncated_exp(int order, const Field& x);

struct GaugeContext {
    Field phi;      // mean-removed antiderivative of u
    Field phi_low;  // chi_{<<k} applied to phi
    Field u_low;    // chi_{<<k} applied to u, zero mode included
    double mass;
    double mean;    // mass / L
};
GaugeContext make_gauge_context(const Field& u, int k, int order, const NfOptions& opts = {});

struct TransformedVariable {
    ComplexField v;      // (u_k^+ + B(u,u)) E_N(phi_low)
    ComplexField A;      // u_k^+ + B(u,u)
    ComplexField B;      // B(u,u)
    ComplexField gauge;  // E_N(phi_low)
};
TransformedVariable transform(const Field& u, int k, int order, const NfOptions& opts = {});

struct RhsTerms {
    ComplexField obstruction;  // vanishes for the chosen symbol
    ComplexField B_rem;
    ComplexField C_tilde;
    ComplexField C;
    ComplexField Q;
};
RhsTerms rhs_terms(const Field& u, int k, int order, const NfOptions& opts = {});

struct RhsEvaluation {
    ComplexField exact;       // right side including the finite-box mass terms
    ComplexField printed;     // the infinite-line form without them
    ComplexField mass_terms;  // E_{N-1}[mean(u^2) A - 2i mean(u) dA]
    double scale;             // largest sup norm among the assembled pieces
};
RhsEvaluation transformed_rhs(const Field& u, int k, int order, const NfOptions& opts = {});

struct ResidualOptions {
    NfOptions nf;
    bool linear_dynamics = false;  // compare against a zero right side
    bool disable_B = false;        // drop the quadratic correction
};

struct TimedField {
    double t;
    Field u;  // lab-frame solution
};

struct ResidualReport {
    double h;                  // snapshot spacing
    double residual_inf;       // max over interior snapshots, box-exact right side
    double residual_printed;   // same against the infinite-line right side
    double term_scale;
    double budget_dt2;         // h^2/6 ||d_t^3 v||, NaN with fewer than five snapshots
    double budget_massL;       // size of the finite-box mass terms
    double budget_alias;       // spectral content outside the lattice-sum band
    double relative() const { return term_scale > 0.0 ? residual_inf / term_scale : residual_inf; }
};

// Checks (i d_t - d_x^2) v against the transformed right side with centred
// differences on equally spaced snapshots.
ResidualReport transformed_residual(std::span<const TimedField> snapshots, int k, int order,
                                    const ResidualOptions& opts = {});

}  // namespace bolab::nf
