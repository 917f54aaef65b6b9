#include "bolab/pseudoproduct.hpp"

#include <algorithm>
#include <cmath>

#include "bolab/spectral.hpp"

namespace bolab::pseudo {
namespace {

// Coefficients of modes -M..M stored at offset M.
struct ModeBand {
    long limit;
    std::vector<cplx> c;
    const cplx& at(long m) const { return c[static_cast<std::size_t>(m + limit)]; }
};

ModeBand band_of(const Spectrum& s, long limit) {
    ModeBand b{limit, std::vector<cplx>(static_cast<std::size_t>(2 * limit + 1))};
    for (long m = -limit; m <= limit; ++m) b.c[static_cast<std::size_t>(m + limit)] = s[s.grid().index_of_mode(m)];
    return b;
}

std::vector<long> active_modes(const ModeBand& b) {
    std::vector<long> out;
    for (long m = -b.limit; m <= b.limit; ++m)
        if (b.at(m) != cplx(0.0)) out.push_back(m);
    return out;
}

std::vector<long> output_modes(const Grid& g, long reach, const std::optional<Interval>& support) {
    std::vector<long> out;
    for (long m = -reach; m <= reach; ++m) {
        if (support && !support->contains(g.dxi() * static_cast<double>(m))) continue;
        out.push_back(m);
    }
    return out;
}

void require_finite(const std::vector<cplx>& v, const std::string& what) {
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericalError("non-finite", what + " produced a non-finite coefficient");
}

}  // namespace

long bilinear_mode_limit(const Grid& g) { return (static_cast<long>(g.size()) / 2 - 1) / 2; }
long cubic_mode_limit(const Grid& g) { return (static_cast<long>(g.size()) / 2 - 1) / 3; }
long quartic_mode_limit(const Grid& g) { return (static_cast<long>(g.size()) / 2 - 1) / 4; }

BilinearSymbol constant_symbol(cplx value) {
    return {[value](double, double) { return value; }, std::nullopt, std::nullopt, "constant"};
}

Spectrum bilinear_apply(const BilinearSymbol& b, const Spectrum& f, const Spectrum& g) {
    require_same_grid(f.grid(), g.grid());
    const Grid& grid = f.grid();
    const long M = bilinear_mode_limit(grid);
    const double dxi = grid.dxi();
    const ModeBand F = band_of(f, M);
    ModeBand G = band_of(g, M);
    if (b.eta_support)
        for (long q = -M; q <= M; ++q)
            if (!b.eta_support->contains(dxi * static_cast<double>(q))) G.c[static_cast<std::size_t>(q + M)] = 0.0;
    const std::vector<long> qs = active_modes(G);
    const std::vector<long> ms = output_modes(grid, 2 * M, b.xi_support);

    std::vector<cplx> out(grid.size(), cplx(0.0));
    const long count = static_cast<long>(ms.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long idx = 0; idx < count; ++idx) {
        const long m = ms[static_cast<std::size_t>(idx)];
        const double xi = dxi * static_cast<double>(m);
        cplx sum(0.0);
        auto it = std::lower_bound(qs.begin(), qs.end(), m - M);
        for (; it != qs.end() && *it <= m + M; ++it) {
            const long q = *it;
            const cplx fp = F.at(m - q);
            if (fp == cplx(0.0)) continue;
            sum += b.eval(xi, dxi * static_cast<double>(q)) * fp * G.at(q);
        }
        out[grid.index_of_mode(m)] = dxi * sum;
    }
    require_finite(out, b.name);
    return Spectrum(grid, std::move(out));
}

ComplexField bilinear_apply(const BilinearSymbol& b, const ComplexField& f, const ComplexField& g) {
    return synthesize(bilinear_apply(b, analyze(f), analyze(g)));
}

ComplexField bilinear_apply(const BilinearSymbol& b, const Field& f, const Field& g) {
    return synthesize(bilinear_apply(b, analyze(f), analyze(g)));
}

Spectrum cubic_apply(const CubicSymbol& c, const Spectrum& f, const Spectrum& g, const Spectrum& h) {
    require_same_grid(f.grid(), g.grid());
    require_same_grid(f.grid(), h.grid());
    const Grid& grid = f.grid();
    const long M = cubic_mode_limit(grid);
    const double dxi = grid.dxi();
    const ModeBand F = band_of(f, M), G = band_of(g, M), H = band_of(h, M);
    const std::vector<long> ss = active_modes(H);
    const std::vector<long> ms = output_modes(grid, 3 * M, c.xi_support);

    std::vector<cplx> out(grid.size(), cplx(0.0));
    const long count = static_cast<long>(ms.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long idx = 0; idx < count; ++idx) {
        const long m = ms[static_cast<std::size_t>(idx)];
        const double xi = dxi * static_cast<double>(m);
        cplx sum(0.0);
        for (long s : ss) {
            const long lo = std::max(s - M, m - M);
            const long hi = std::min(s + M, m + M);
            for (long e = lo; e <= hi; ++e) {
                const cplx fp = F.at(m - e);
                const cplx gr = G.at(e - s);
                if (fp == cplx(0.0) || gr == cplx(0.0)) continue;
                sum += c.eval(xi, dxi * static_cast<double>(e), dxi * static_cast<double>(s)) * fp * gr * H.at(s);
            }
        }
        out[grid.index_of_mode(m)] = dxi * dxi * sum;
    }
    require_finite(out, c.name);
    return Spectrum(grid, std::move(out));
}

ComplexField cubic_apply(const CubicSymbol& c, const ComplexField& f, const ComplexField& g,
                         const ComplexField& h) {
    return synthesize(cubic_apply(c, analyze(f), analyze(g), analyze(h)));
}

Spectrum quartic_apply(const QuarticSymbol& q, const Spectrum& f, const Spectrum& g, const Spectrum& h,
                       const Spectrum& k) {
    require_same_grid(f.grid(), g.grid());
    require_same_grid(f.grid(), h.grid());
    require_same_grid(f.grid(), k.grid());
    const Grid& grid = f.grid();
    const long M = quartic_mode_limit(grid);
    const double dxi = grid.dxi();
    const ModeBand F = band_of(f, M), G = band_of(g, M), H = band_of(h, M), K = band_of(k, M);
    const std::vector<long> ts = active_modes(K);
    const std::vector<long> ms = output_modes(grid, 4 * M, q.xi_support);

    std::vector<cplx> out(grid.size(), cplx(0.0));
    const long count = static_cast<long>(ms.size());
#pragma omp parallel for schedule(dynamic, 2)
    for (long idx = 0; idx < count; ++idx) {
        const long m = ms[static_cast<std::size_t>(idx)];
        const double xi = dxi * static_cast<double>(m);
        cplx sum(0.0);
        for (long t : ts) {
            for (long s = t - M; s <= t + M; ++s) {
                const cplx hs = H.at(s - t);
                if (hs == cplx(0.0)) continue;
                const long lo = std::max(s - M, m - M);
                const long hi = std::min(s + M, m + M);
                for (long e = lo; e <= hi; ++e) {
                    const cplx fp = F.at(m - e);
                    const cplx gr = G.at(e - s);
                    if (fp == cplx(0.0) || gr == cplx(0.0)) continue;
                    sum += q.eval(xi, dxi * static_cast<double>(e), dxi * static_cast<double>(s),
                                  dxi * static_cast<double>(t)) *
                           fp * gr * hs * K.at(t);
                }
            }
        }
        out[grid.index_of_mode(m)] = dxi * dxi * dxi * sum;
    }
    require_finite(out, q.name);
    return Spectrum(grid, std::move(out));
}

ComplexField quartic_apply(const QuarticSymbol& q, const ComplexField& f, const ComplexField& g,
                           const ComplexField& h, const ComplexField& k) {
    return synthesize(quartic_apply(q, analyze(f), analyze(g), analyze(h), analyze(k)));
}

LeibnitzReport leibnitz_check(const BilinearSymbol& b, const ComplexField& f, const ComplexField& g) {
    const long M = bilinear_mode_limit(f.grid());
    const double cut = f.grid().dxi() * static_cast<double>(M);
    // Truncate first so the derivative does not move content across the band edge.
    auto trunc = [&](double xi) { return std::abs(xi) <= cut ? cplx(1.0) : cplx(0.0); };
    auto ddx = [](double xi) { return cplx(0.0, xi); };
    const Spectrum F = multiply(analyze(f), trunc, NyquistRule::zero);
    const Spectrum G = multiply(analyze(g), trunc, NyquistRule::zero);
    const Spectrum lhs = multiply(bilinear_apply(b, F, G), ddx, NyquistRule::zero);
    const Spectrum rhs = bilinear_apply(b, multiply(F, ddx, NyquistRule::zero), G) +
                         bilinear_apply(b, F, multiply(G, ddx, NyquistRule::zero));
    const ComplexField diff = synthesize(lhs) - synthesize(rhs);
    return {sup_norm(diff), sup_norm(synthesize(lhs))};
}

}  // namespace bolab::pseudo
