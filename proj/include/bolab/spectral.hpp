#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "bolab/grid.hpp"

namespace bolab {

// Continuous-transform normalization on the lattice:
//   c_m = dx/sqrt(2 pi) sum_i f_i e^{-i xi_m x_i},
//   f_i = dxi/sqrt(2 pi) sum_m c_m e^{i xi_m x_i}.
Spectrum analyze(const Field& f);
Spectrum analyze(const ComplexField& f);
ComplexField synthesize(const Spectrum& s);
Field synthesize_real(const Spectrum& s);

using Multiplier = std::function<cplx(double)>;

enum class NyquistRule { average, zero };

// Multiplies each coefficient by m(xi). At the Nyquist index the two
// lattice representatives +-xi_N are averaged, which keeps real fields real.
Spectrum multiply(const Spectrum& s, const Multiplier& m, NyquistRule rule = NyquistRule::average);
ComplexField apply_multiplier(const Multiplier& m, const Field& f, NyquistRule rule = NyquistRule::average);
ComplexField apply_multiplier(const Multiplier& m, const ComplexField& f,
                              NyquistRule rule = NyquistRule::average);

// Real-symbol-preserving helpers.
Field hilbert(const Field& f);
ComplexField hilbert(const ComplexField& f);
Field derivative(const Field& f, int order = 1);
ComplexField derivative(const ComplexField& f, int order = 1);

enum class LpVariant { full, plus, minus, low, high };

// Littlewood-Paley symbol of P_k, P_k^+, P_k^-, P_{<=k}, P_{>=k}.
double lp_symbol(double k, LpVariant variant, double xi);

struct Projection {
    ComplexField field;
    bool exceeds_nyquist;  // band reaches the Nyquist frequency
};

// Projectors zero the Nyquist mode.
Projection lp_project(const Field& f, double k, LpVariant variant);
Projection lp_project(const ComplexField& f, double k, LpVariant variant);
ComplexField lp_apply(const ComplexField& f, const std::function<double(double)>& symbol);

enum class Side { plus, minus, both };
enum class ShellFlavor { exact, near, lesssim, geq };

double spatial_weight(double j, Side side, ShellFlavor flavor, double x);
Field spatial_cutoff(const Field& f, double j, Side side, ShellFlavor flavor);
ComplexField spatial_cutoff(const ComplexField& f, double j, Side side, ShellFlavor flavor);

struct Antiderivative {
    Field phi;    // mean-zero with d/dx phi = u - mean(u)
    double mass;  // integral of u over the box
};
Antiderivative antiderivative_mean_removed(const Field& u);

struct ShellSup {
    double plus = 0.0;
    double minus = 0.0;
    double both = 0.0;
};

// Smoothly weighted shell maxima ||chi_j^{+-} f||_inf. Shells with no grid
// point inside their support are absent from the result.
std::map<int, ShellSup> weighted_shell_sup(const Field& f, std::span<const int> shells);
std::map<int, ShellSup> weighted_shell_sup(const ComplexField& f, std::span<const int> shells);

struct BesovShell {
    int k;
    double weighted;  // 2^{k/2} ||P_k f||_{L^2}
};
struct BesovDiagnostic {
    std::vector<BesovShell> shells;
    double total;
};
// Homogeneous B^{1/2}_{2,1} shells over the dyadic bands resolved by the grid.
BesovDiagnostic besov_half_diagnostic(const Field& f);

}  // namespace bolab
