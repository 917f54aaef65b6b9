#include "bolab/random_fields.hpp"

#include <cmath>

#include "bolab/spectral.hpp"

namespace bolab {

Field random_field(const Grid& grid, std::mt19937_64& rng, const RandomFieldOptions& opts) {
    const long n = static_cast<long>(grid.size());
    const long mmax = static_cast<long>(std::floor(opts.band_fraction * (n / 2 - 1)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> c(grid.size(), cplx(0.0));
    for (long m = 0; m <= mmax; ++m) {
        const double xi = grid.dxi() * static_cast<double>(m);
        if (m == 0 && opts.mean_zero) continue;
        if (m != 0 && xi < opts.min_frequency) continue;
        if (m == 0 && opts.min_frequency > 0.0) continue;
        const double re = gauss(rng);
        const double im = m == 0 ? 0.0 : gauss(rng);
        c[grid.index_of_mode(m)] = cplx(re, im);
        if (m != 0) c[grid.index_of_mode(-m)] = cplx(re, -im);
    }
    Field f = synthesize_real(Spectrum(grid, std::move(c)));
    const double s = sup_norm(f);
    return s > 0.0 ? (1.0 / s) * f : f;
}

ComplexField random_complex_field(const Grid& grid, std::mt19937_64& rng, const RandomFieldOptions& opts) {
    Field a = random_field(grid, rng, opts);
    Field b = random_field(grid, rng, opts);
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(a[i], b[i]);
    return ComplexField(grid, std::move(v));
}

double smooth_bump(double x, double centre, double half_width) {
    const double s = (x - centre) / half_width;
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

}  // namespace bolab
