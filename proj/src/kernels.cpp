#include "bolab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "bolab/cutoff.hpp"
#include "bolab/error.hpp"

namespace bolab::kernels {
namespace {

bool is_left(Variant v) { return v == Variant::low_left || v == Variant::dyadic_left || v == Variant::schrodinger; }
bool is_low(Variant v) { return v == Variant::low_left || v == Variant::low_right; }

struct Band {
    double lo, hi;
};

std::vector<Band> bands(const KernelSpec& s) {
    if (is_low(s.variant)) {
        const double edge = std::exp2(low_band(s) + 1.0);
        if (s.positive_only) return {{0.0, edge}};
        return {{-edge, 0.0}, {0.0, edge}};
    }
    const double lo = std::exp2(s.k - 1.0), hi = std::exp2(s.k + 1.0);
    if (s.variant == Variant::schrodinger || s.positive_only) return {{lo, hi}};
    return {{-hi, -lo}, {lo, hi}};
}

double frequency_cutoff(const KernelSpec& s, double xi) {
    if (s.positive_only && !(xi > 0.0)) return 0.0;
    switch (s.variant) {
        case Variant::low_left:
        case Variant::low_right: return cutoff::le_abs(low_band(s), xi);
        case Variant::dyadic_left:
        case Variant::dyadic_right: return cutoff::shell_abs(s.k, xi);
        case Variant::schrodinger: return cutoff::shell(s.k, xi);
    }
    return 0.0;
}

double phase(const KernelSpec& s, double r, double xi) {
    if (s.variant == Variant::schrodinger) return xi * r + s.t * (xi + xi * xi);
    return xi * (r + s.t) + s.t * std::abs(xi) * xi;
}

double phase_slope(const KernelSpec& s, double r, double xi) {
    if (s.variant == Variant::schrodinger) return r + s.t * (1.0 + 2.0 * xi);
    return r + s.t + 2.0 * s.t * std::abs(xi);
}

}  // namespace

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::low_left: return "low_left";
        case Variant::dyadic_left: return "dyadic_left";
        case Variant::low_right: return "low_right";
        case Variant::dyadic_right: return "dyadic_right";
        case Variant::schrodinger: return "schrodinger";
    }
    return "?";
}

Variant parse_variant(std::string_view name) {
    for (Variant v : {Variant::low_left, Variant::dyadic_left, Variant::low_right, Variant::dyadic_right,
                      Variant::schrodinger})
        if (variant_name(v) == name) return v;
    throw DomainError("variant", "unknown kernel variant '" + std::string(name) + "'");
}

double low_band(const KernelSpec& s) { return -(1.0 - s.epsilon) / 2.0 * s.j; }

double time_threshold(const KernelSpec& s) {
    if (s.variant == Variant::low_right) return std::exp2(s.ell + 10.0);
    if (s.variant == Variant::dyadic_right) {
        const double p = std::exp2(s.k);
        return std::exp2(s.ell + 10.0) / std::sqrt(1.0 + p * p);
    }
    return -std::numeric_limits<double>::infinity();
}

void validate(const KernelSpec& s) {
    if (!(s.epsilon > 0.0 && s.epsilon < 1.0)) throw DomainError("kernel", "epsilon must lie in (0,1)");
    if (s.j < 0) throw DomainError("kernel", "shell index j must be non-negative");
    if (s.a < 0) throw DomainError("kernel", "derivative count must be non-negative");
    if (!(s.t >= 0.0) || !std::isfinite(s.t)) throw DomainError("kernel", "time must be finite and non-negative");
    if (s.variant == Variant::low_right || s.variant == Variant::dyadic_right) {
        if (!(s.ell > s.j - 10)) throw PreconditionError("source shell must satisfy ell > j - 10");
        if (!(s.t > time_threshold(s)))
            throw PreconditionError("t = " + std::to_string(s.t) + " is below the threshold " +
                                    std::to_string(time_threshold(s)));
    }
}

FrequencyIntegral frequency_integral(const KernelSpec& s, double r, const quad::Options& opts) {
    FrequencyIntegral out{cplx(0.0), 0.0, 0.0, true, true};
    const int a = s.a;
    auto f = [&](double xi) {
        const double amp = frequency_cutoff(s, xi) * (a == 0 ? 1.0 : std::pow(xi, a));
        if (amp == 0.0) return cplx(0.0);
        return std::polar(amp, phase(s, r, xi));
    };
    for (const Band& b : bands(s)) {
        const double edge = std::max(std::abs(b.lo), std::abs(b.hi));
        // the slope grows with |xi|, so its minimum sits at the innermost point
        const double xi_min = b.lo >= 0.0 ? b.lo : (b.hi <= 0.0 ? b.hi : 0.0);
        if (!(phase_slope(s, r, xi_min) > 0.0)) out.phase_monotone = false;
        const double swing = std::abs(r) + std::abs(s.t) * (1.0 + 2.0 * edge);
        const double split = std::clamp(std::ceil(swing * (b.hi - b.lo) / std::numbers::pi) + 1.0, 1.0, 4096.0);
        const quad::Result q = quad::integrate(f, b.lo, b.hi, opts, static_cast<std::size_t>(split));
        out.value += q.value;
        out.error += q.error;
        out.scale += q.l1;
        out.converged = out.converged && q.converged;
    }
    return out;
}

double target_weight(const KernelSpec& s, double x) { return cutoff::shell(s.j, x); }

double source_weight(const KernelSpec& s, double y) {
    // Left variants draw from the region well left of the shell, where the
    // phase stays non-stationary.
    if (is_left(s.variant)) return cutoff::le(s.j - 10.0, y);
    return cutoff::shell(s.ell, y);
}

namespace {
cplx prefactor(int a) { return std::pow(cplx(0.0, 1.0), a) / (2.0 * std::numbers::pi); }
}  // namespace

KernelValue kernel_value(const KernelSpec& s, double x, double y, const quad::Options& opts) {
    validate(s);
    const double w = target_weight(s, x) * source_weight(s, y);
    const FrequencyIntegral fi = frequency_integral(s, x - y, opts);
    return {prefactor(s.a) * w * fi.value, std::abs(w) * fi.error / (2.0 * std::numbers::pi), fi.converged,
            fi.phase_monotone};
}

SampleGrid sample_grid(const KernelSpec& s, const Sampling& sampling) {
    if (sampling.nx < 1 || sampling.ny < 0) throw DomainError("kernel", "sampling counts must be positive");
    SampleGrid g;
    const double x_lo = std::exp2(s.j - 1.0);
    const double sx = 1.5 * std::exp2(s.j) / sampling.nx;
    for (int i = 0; i < sampling.nx; ++i) g.xs.push_back(x_lo + (i + 0.5) * sx);
    if (is_left(s.variant)) {
        const double y_hi = std::exp2(s.j - 9.0);
        const double width = std::exp2(s.j + 3.0);
        const int ny = sampling.ny > 0 ? sampling.ny : static_cast<int>(std::lround(width / sx));
        const double sy = width / ny;
        for (int i = 0; i < ny; ++i) g.ys.push_back(y_hi - (i + 0.5) * sy);
    } else {
        const int ny = sampling.ny > 0 ? sampling.ny : sampling.nx;
        const double y_lo = std::exp2(s.ell - 1.0);
        const double sy = 1.5 * std::exp2(s.ell) / ny;
        for (int i = 0; i < ny; ++i) g.ys.push_back(y_lo + (i + 0.5) * sy);
    }
    return g;
}

KernelSup kernel_sup(const KernelSpec& s, const Sampling& sampling, const quad::Options& opts) {
    validate(s);
    const SampleGrid g = sample_grid(s, sampling);
    std::vector<double> rs;
    rs.reserve(g.xs.size() * g.ys.size());
    for (double x : g.xs)
        for (double y : g.ys) rs.push_back(x - y);
    std::sort(rs.begin(), rs.end());
    std::vector<double> uniq;
    for (double r : rs)
        if (uniq.empty() || r - uniq.back() > 1e-12 * std::max(1.0, std::abs(r))) uniq.push_back(r);

    std::vector<double> mag(uniq.size());
    std::vector<char> ok(uniq.size(), 1);
    const long count = static_cast<long>(uniq.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const FrequencyIntegral fi = frequency_integral(s, uniq[static_cast<std::size_t>(i)], opts);
        mag[static_cast<std::size_t>(i)] = std::abs(fi.value);
        ok[static_cast<std::size_t>(i)] = fi.converged ? 1 : 0;
    }

    KernelSup out{0.0, 0.0, 0.0, g.xs.front(), g.xs.back(),
                  std::min(g.ys.front(), g.ys.back()), std::max(g.ys.front(), g.ys.back()),
                  static_cast<int>(g.xs.size()), static_cast<int>(g.ys.size()), uniq.size(), true};
    for (char c : ok) out.all_converged = out.all_converged && c;
    const double pre = std::abs(prefactor(s.a));
    for (double x : g.xs) {
        const double wx = target_weight(s, x);
        for (double y : g.ys) {
            const double r = x - y;
            auto it = std::lower_bound(uniq.begin(), uniq.end(), r - 1e-12 * std::max(1.0, std::abs(r)));
            const double v = pre * wx * source_weight(s, y) * mag[static_cast<std::size_t>(it - uniq.begin())];
            if (v > out.sup) {
                out.sup = v;
                out.x_at = x;
                out.y_at = y;
            }
        }
    }
    return out;
}

FitResult fit_decay(std::span<const std::pair<double, double>> pts) {
    if (pts.size() < 4) throw DomainError("fit", "need at least four points");
    double sx = 0, sy = 0;
    for (const auto& [p, v] : pts) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("fit", "values must be positive and finite");
        sx += p;
        sy += std::log2(v);
    }
    const double n = static_cast<double>(pts.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [p, v] : pts) {
        const double dx = p - mx, dy = std::log2(v) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw DomainError("fit", "parameter values are all equal");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ssr = 0;
    for (const auto& [p, v] : pts) {
        const double e = std::log2(v) - (intercept + slope * p);
        ssr += e * e;
    }
    const double r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return {slope, intercept, r2};
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << "variant,j,k,a,ell,t,sup,quad_flag\n";
    const auto prec = os.precision(17);
    for (const SweepRow& r : rows) {
        const double k = is_low(r.spec.variant) ? low_band(r.spec) : r.spec.k;
        os << variant_name(r.spec.variant) << ',' << r.spec.j << ',' << k << ',' << r.spec.a << ',' << r.spec.ell
           << ',' << r.spec.t << ',' << r.sup << ',' << (r.converged ? 0 : 1) << '\n';
    }
    os.precision(prec);
}

}  // namespace bolab::kernels
