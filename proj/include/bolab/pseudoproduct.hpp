#pragma once

#include <functional>
#include <optional>
#include <string>

#include "bolab/grid.hpp"

namespace bolab::pseudo {

struct Interval {
    double lo;
    double hi;
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

// b(xi, eta) acting as  B(f,g)^(xi) = int b(xi,eta) f^(xi-eta) g^(eta) d eta.
// Support hints are promises: the symbol vanishes outside them.
struct BilinearSymbol {
    std::function<cplx(double, double)> eval;
    std::optional<Interval> xi_support;
    std::optional<Interval> eta_support;
    std::string name = "bilinear";
};

// c(xi, eta, sigma) with inputs at xi-eta, eta-sigma, sigma.
struct CubicSymbol {
    std::function<cplx(double, double, double)> eval;
    std::optional<Interval> xi_support;
    std::string name = "cubic";
};

// q(xi, eta, sigma, tau) with inputs at xi-eta, eta-sigma, sigma-tau, tau.
struct QuarticSymbol {
    std::function<cplx(double, double, double, double)> eval;
    std::optional<Interval> xi_support;
    std::string name = "quartic";
};

BilinearSymbol constant_symbol(cplx value);

// Inputs are truncated to |xi| < Nyquist/2 (bilinear), /3 (cubic), /4
// (quartic) so the lattice sums equal the continuous convolution restricted
// to the grid window. Each output frequency is summed by one thread in a
// fixed order, so results do not depend on the thread count.
Spectrum bilinear_apply(const BilinearSymbol& b, const Spectrum& f, const Spectrum& g);
ComplexField bilinear_apply(const BilinearSymbol& b, const ComplexField& f, const ComplexField& g);
ComplexField bilinear_apply(const BilinearSymbol& b, const Field& f, const Field& g);

Spectrum cubic_apply(const CubicSymbol& c, const Spectrum& f, const Spectrum& g, const Spectrum& h);
ComplexField cubic_apply(const CubicSymbol& c, const ComplexField& f, const ComplexField& g,
                         const ComplexField& h);

Spectrum quartic_apply(const QuarticSymbol& q, const Spectrum& f, const Spectrum& g, const Spectrum& h,
                       const Spectrum& k);
ComplexField quartic_apply(const QuarticSymbol& q, const ComplexField& f, const ComplexField& g,
                           const ComplexField& h, const ComplexField& k);

struct LeibnitzReport {
    double residual;  // ||d B(f,g) - B(df,g) - B(f,dg)||_inf
    double scale;     // ||d B(f,g)||_inf
};
LeibnitzReport leibnitz_check(const BilinearSymbol& b, const ComplexField& f, const ComplexField& g);

// Lattice-mode bounds used by the truncation step.
long bilinear_mode_limit(const Grid& g);
long cubic_mode_limit(const Grid& g);
long quartic_mode_limit(const Grid& g);

}  // namespace bolab::pseudo
