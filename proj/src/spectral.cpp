#include "bolab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bolab/cutoff.hpp"
#include "fft.hpp"

namespace bolab {
namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

double parity(long m) { return (m % 2 == 0) ? 1.0 : -1.0; }

Spectrum analyze_values(const Grid& g, std::vector<cplx> data) {
    detail::fft_forward(data);
    const double scale = g.dx() * kInvSqrt2Pi;
    for (std::size_t q = 0; q < data.size(); ++q) data[q] *= scale * parity(g.mode(q));
    return Spectrum(g, std::move(data));
}

template <class Arr>
Arr cut(const Arr& f, double j, Side side, ShellFlavor flavor) {
    const Grid& g = f.grid();
    if (std::exp2(j) > 0.25 * g.length())
        throw DomainError("degenerate-shell", "shell 2^j exceeds a quarter of the box");
    auto v = f.to_vector();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= spatial_weight(j, side, flavor, g.x(i));
    return Arr(g, std::move(v));
}

template <class Arr>
std::map<int, ShellSup> shell_sup(const Arr& f, std::span<const int> shells) {
    const Grid& g = f.grid();
    std::map<int, ShellSup> out;
    for (int j : shells) {
        ShellSup s;
        bool present = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.x(i);
            const double wp = cutoff::shell(j, x);
            const double wm = cutoff::shell(j, -x);
            if (wp > 0.0 || wm > 0.0) present = true;
            const double a = std::abs(f[i]);
            s.plus = std::max(s.plus, wp * a);
            s.minus = std::max(s.minus, wm * a);
        }
        if (!present) continue;
        s.both = std::max(s.plus, s.minus);
        out.emplace(j, s);
    }
    return out;
}

}  // namespace

Spectrum analyze(const Field& f) {
    return analyze_values(f.grid(), std::vector<cplx>(f.values().begin(), f.values().end()));
}

Spectrum analyze(const ComplexField& f) { return analyze_values(f.grid(), f.to_vector()); }

ComplexField synthesize(const Spectrum& s) {
    const Grid& g = s.grid();
    auto data = s.to_vector();
    for (std::size_t q = 0; q < data.size(); ++q) data[q] *= parity(g.mode(q));
    detail::fft_backward(data);
    const double scale = g.dxi() * kInvSqrt2Pi;
    for (auto& z : data) z *= scale;
    return ComplexField(g, std::move(data));
}

Field synthesize_real(const Spectrum& s) { return real_part(synthesize(s)); }

Spectrum multiply(const Spectrum& s, const Multiplier& m, NyquistRule rule) {
    const Grid& g = s.grid();
    auto data = s.to_vector();
    for (std::size_t q = 0; q < data.size(); ++q) {
        cplx factor;
        if (g.is_nyquist(q)) {
            factor = rule == NyquistRule::zero ? cplx(0.0)
                                               : 0.5 * (m(g.nyquist()) + m(-g.nyquist()));
        } else {
            factor = m(g.xi(q));
        }
        if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag()))
            throw DomainError("multiplier-domain", "multiplier is not finite at xi = " + std::to_string(g.xi(q)));
        data[q] *= factor;
    }
    return Spectrum(g, std::move(data));
}

ComplexField apply_multiplier(const Multiplier& m, const Field& f, NyquistRule rule) {
    return synthesize(multiply(analyze(f), m, rule));
}

ComplexField apply_multiplier(const Multiplier& m, const ComplexField& f, NyquistRule rule) {
    return synthesize(multiply(analyze(f), m, rule));
}

namespace {
cplx hilbert_symbol(double xi) {
    if (xi > 0.0) return {0.0, -1.0};
    if (xi < 0.0) return {0.0, 1.0};
    return {0.0, 0.0};
}
Multiplier derivative_symbol(int order) {
    return [order](double xi) { return std::pow(cplx(0.0, xi), order); };
}
}  // namespace

Field hilbert(const Field& f) { return real_part(apply_multiplier(hilbert_symbol, f)); }
ComplexField hilbert(const ComplexField& f) { return apply_multiplier(hilbert_symbol, f); }

Field derivative(const Field& f, int order) {
    return real_part(apply_multiplier(derivative_symbol(order), f));
}
ComplexField derivative(const ComplexField& f, int order) {
    return apply_multiplier(derivative_symbol(order), f);
}

double lp_symbol(double k, LpVariant variant, double xi) {
    switch (variant) {
        case LpVariant::full: return cutoff::shell_abs(k, xi);
        case LpVariant::plus: return cutoff::shell(k, xi);
        case LpVariant::minus: return cutoff::shell(k, -xi);
        case LpVariant::low: return cutoff::le_abs(k, xi);
        case LpVariant::high: return cutoff::ge_abs(k, xi);
    }
    return 0.0;
}

ComplexField lp_apply(const ComplexField& f, const std::function<double(double)>& symbol) {
    return synthesize(multiply(analyze(f), [&](double xi) { return cplx(symbol(xi)); }, NyquistRule::zero));
}

namespace {
bool band_exceeds(const Grid& g, double k, LpVariant variant) {
    const double edge = variant == LpVariant::high ? std::exp2(k - 1.0) : std::exp2(k + 1.0);
    return edge >= g.nyquist();
}
}  // namespace

Projection lp_project(const Field& f, double k, LpVariant variant) {
    return lp_project(to_complex(f), k, variant);
}

Projection lp_project(const ComplexField& f, double k, LpVariant variant) {
    auto field = lp_apply(f, [=](double xi) { return lp_symbol(k, variant, xi); });
    return {std::move(field), band_exceeds(f.grid(), k, variant)};
}

double spatial_weight(double j, Side side, ShellFlavor flavor, double x) {
    auto one_sided = [&](double y) {
        switch (flavor) {
            case ShellFlavor::exact: return cutoff::shell(j, y);
            case ShellFlavor::near: return cutoff::near(j, y);
            case ShellFlavor::lesssim: return cutoff::lesssim(j, y);
            case ShellFlavor::geq: return cutoff::ge(j, y);
        }
        return 0.0;
    };
    switch (side) {
        case Side::plus: return one_sided(x);
        case Side::minus: return one_sided(-x);
        case Side::both: return one_sided(std::abs(x));
    }
    return 0.0;
}

Field spatial_cutoff(const Field& f, double j, Side side, ShellFlavor flavor) {
    return cut(f, j, side, flavor);
}

ComplexField spatial_cutoff(const ComplexField& f, double j, Side side, ShellFlavor flavor) {
    return cut(f, j, side, flavor);
}

Antiderivative antiderivative_mean_removed(const Field& u) {
    const Grid& g = u.grid();
    double mass = 0.0;
    for (double z : u.values()) mass += z;
    mass *= g.dx();
    auto phi_hat = multiply(
        analyze(u),
        [](double xi) { return xi == 0.0 ? cplx(0.0) : cplx(0.0, -1.0 / xi); },
        NyquistRule::zero);
    return {synthesize_real(phi_hat), mass};
}

std::map<int, ShellSup> weighted_shell_sup(const Field& f, std::span<const int> shells) {
    return shell_sup(f, shells);
}

std::map<int, ShellSup> weighted_shell_sup(const ComplexField& f, std::span<const int> shells) {
    return shell_sup(f, shells);
}

BesovDiagnostic besov_half_diagnostic(const Field& f) {
    const Grid& g = f.grid();
    const Spectrum s = analyze(f);
    const int k_lo = static_cast<int>(std::floor(std::log2(g.dxi())));
    const int k_hi = static_cast<int>(std::ceil(std::log2(g.nyquist()))) + 1;
    BesovDiagnostic out{{}, 0.0};
    for (int k = k_lo; k <= k_hi; ++k) {
        double sum = 0.0;
        bool any = false;
        for (std::size_t q = 0; q < s.size(); ++q) {
            if (g.is_nyquist(q)) continue;
            const double w = cutoff::shell_abs(k, g.xi(q));
            if (w > 0.0) any = true;
            sum += w * w * std::norm(s[q]);
        }
        if (!any) continue;
        const double weighted = std::exp2(0.5 * k) * std::sqrt(g.dxi() * sum);
        out.shells.push_back({k, weighted});
        out.total += weighted;
    }
    return out;
}

}  // namespace bolab
