#pragma once

#include "bolab/kernels.hpp"
#include "bolab/pseudoproduct.hpp"

// Serial reference implementations kept for testing the parallel kernels.
// They loop over the full lattice and ignore support hints.
namespace bolab::reference {

Spectrum bilinear_apply(const pseudo::BilinearSymbol& b, const Spectrum& f, const Spectrum& g);
Spectrum cubic_apply(const pseudo::CubicSymbol& c, const Spectrum& f, const Spectrum& g, const Spectrum& h);

// Evaluates every (x, y) pair with kernel_value, one after another.
kernels::KernelSup kernel_sup(const kernels::KernelSpec& spec, const kernels::Sampling& sampling = {},
                              const quad::Options& opts = {});

}  // namespace bolab::reference
