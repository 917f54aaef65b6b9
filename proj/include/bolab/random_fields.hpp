#pragma once

#include <cstdint>
#include <random>

#include "bolab/grid.hpp"

namespace bolab {

struct RandomFieldOptions {
    double band_fraction = 0.5;  // keep |m| <= band_fraction * n/2
    double min_frequency = 0.0;  // drop |xi| below this (0 keeps the mean)
    bool mean_zero = false;
};

// Real field with Gaussian Fourier coefficients, Hermitian-symmetric and
// without Nyquist content, normalized to unit sup norm.
Field random_field(const Grid& grid, std::mt19937_64& rng, const RandomFieldOptions& opts = {});

// Complex field with independent real and imaginary parts built as above.
ComplexField random_complex_field(const Grid& grid, std::mt19937_64& rng, const RandomFieldOptions& opts = {});

// Smooth compactly supported bump of the given half width centred at c.
double smooth_bump(double x, double centre, double half_width);

}  // namespace bolab
