#include "bolab/reference.hpp"

#include <algorithm>
#include <cmath>

namespace bolab::reference {

Spectrum bilinear_apply(const pseudo::BilinearSymbol& b, const Spectrum& f, const Spectrum& g) {
    require_same_grid(f.grid(), g.grid());
    const Grid& grid = f.grid();
    const long M = pseudo::bilinear_mode_limit(grid);
    const double dxi = grid.dxi();
    std::vector<cplx> out(grid.size(), cplx(0.0));
    for (long m = -2 * M; m <= 2 * M; ++m) {
        cplx sum(0.0);
        for (long q = -M; q <= M; ++q) {
            const long p = m - q;
            if (p < -M || p > M) continue;
            const double eta = dxi * static_cast<double>(q);
            if (b.eta_support && !b.eta_support->contains(eta)) continue;
            sum += b.eval(dxi * static_cast<double>(m), eta) * f[grid.index_of_mode(p)] * g[grid.index_of_mode(q)];
        }
        out[grid.index_of_mode(m)] = dxi * sum;
    }
    return Spectrum(grid, std::move(out));
}

Spectrum cubic_apply(const pseudo::CubicSymbol& c, const Spectrum& f, const Spectrum& g, const Spectrum& h) {
    const Grid& grid = f.grid();
    const long M = pseudo::cubic_mode_limit(grid);
    const double dxi = grid.dxi();
    std::vector<cplx> out(grid.size(), cplx(0.0));
    for (long m = -3 * M; m <= 3 * M; ++m) {
        cplx sum(0.0);
        for (long s = -M; s <= M; ++s) {
            for (long e = s - M; e <= s + M; ++e) {
                const long p = m - e;
                if (p < -M || p > M) continue;
                sum += c.eval(dxi * static_cast<double>(m), dxi * static_cast<double>(e), dxi * static_cast<double>(s)) *
                       f[grid.index_of_mode(p)] * g[grid.index_of_mode(e - s)] * h[grid.index_of_mode(s)];
            }
        }
        out[grid.index_of_mode(m)] = dxi * dxi * sum;
    }
    return Spectrum(grid, std::move(out));
}

kernels::KernelSup kernel_sup(const kernels::KernelSpec& spec, const kernels::Sampling& sampling,
                              const quad::Options& opts) {
    kernels::validate(spec);
    const auto g = kernels::sample_grid(spec, sampling);
    kernels::KernelSup out{0.0, 0.0, 0.0, g.xs.front(), g.xs.back(),
                           std::min(g.ys.front(), g.ys.back()), std::max(g.ys.front(), g.ys.back()),
                           static_cast<int>(g.xs.size()), static_cast<int>(g.ys.size()), 0, true};
    for (double x : g.xs)
        for (double y : g.ys) {
            const auto kv = kernels::kernel_value(spec, x, y, opts);
            ++out.quadratures;
            out.all_converged = out.all_converged && kv.converged;
            const double v = std::abs(kv.value);
            if (v > out.sup) {
                out.sup = v;
                out.x_at = x;
                out.y_at = y;
            }
        }
    return out;
}

}  // namespace bolab::reference
