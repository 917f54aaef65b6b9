#include "bolab/normal_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bolab/cutoff.hpp"
#include "bolab/pseudoproduct.hpp"
#include "bolab/spectral.hpp"

namespace bolab::nf {
namespace {

Spectrum mul(const Spectrum& s, const Multiplier& m) { return multiply(s, m, NyquistRule::zero); }

cplx ddx(double xi) { return {0.0, xi}; }

ComplexField scaled(cplx s, const ComplexField& f) { return s * f; }

struct Pieces {
    GaugeContext ctx;
    ComplexField u_kp;
    ComplexField Bf;
};

Pieces pieces(const Field& u, int k, int order, const NfOptions& opts) {
    GaugeContext ctx = make_gauge_context(u, k, order, opts);
    const Spectrum U = analyze(u);
    ComplexField u_kp = synthesize(mul(U, [=](double xi) { return cplx(cutoff::shell(k, xi)); }));
    ComplexField Bf = synthesize(assemble_B(k, order, U, U, opts));
    return {std::move(ctx), std::move(u_kp), std::move(Bf)};
}

}  // namespace

cplx truncated_exp(int order, double x) {
    cplx sum(0.0), term(1.0);
    for (int n = 0; n <= order; ++n) {
        if (n > 0) term *= cplx(0.0, -x) / static_cast<double>(n);
        sum += term;
    }
    return sum;
}

ComplexField truncated_exp(int order, const Field& x) {
    std::vector<cplx> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = truncated_exp(order, x[i]);
    return ComplexField(x.grid(), std::move(v));
}

GaugeContext make_gauge_context(const Field& u, int k, int order, const NfOptions& opts) {
    const Antiderivative anti = antiderivative_mean_removed(u);
    auto low = [=](double xi) { return cplx(cutoff::low_gauge(k, order, opts.p, xi)); };
    Field phi_low = real_part(synthesize(mul(analyze(anti.phi), low)));
    Field u_low = real_part(synthesize(mul(analyze(u), low)));
    return {anti.phi, std::move(phi_low), std::move(u_low), anti.mass, anti.mass / u.grid().length()};
}

TransformedVariable transform(const Field& u, int k, int order, const NfOptions& opts) {
    Pieces p = pieces(u, k, order, opts);
    ComplexField A = p.u_kp + p.Bf;
    ComplexField gauge = truncated_exp(order, p.ctx.phi_low);
    ComplexField v = A * gauge;
    return {std::move(v), std::move(A), std::move(p.Bf), std::move(gauge)};
}

RhsTerms rhs_terms(const Field& u, int k, int order, const NfOptions& opts) {
    const Pieces p = pieces(u, k, order, opts);
    const Spectrum U = analyze(u);
    auto low = [=](double xi) { return cplx(cutoff::low_gauge(k, order, opts.p, xi)); };
    // (H + i) d_x has symbol -2 xi 1_{xi < 0}
    auto hpi_d = [](double xi) { return xi < 0.0 ? cplx(-2.0 * xi) : cplx(0.0); };
    const ComplexField u_low = to_complex(p.ctx.u_low);
    const ComplexField hd_low = synthesize(mul(mul(U, low), hpi_d));
    const ComplexField du_kp = synthesize(mul(analyze(p.u_kp), ddx));

    ComplexField B_rem = hd_low * p.u_kp + scaled({0.0, 2.0}, u_low * du_kp);

    const Field u2 = u * u;
    const Spectrum dU2 = mul(analyze(u2), ddx);
    ComplexField C_tilde =
        scaled({0.0, -1.0}, synthesize(assemble_B(k, order, dU2, U, opts) + assemble_B(k, order, U, dU2, opts)));

    const ComplexField u2_low = synthesize(mul(analyze(u2), low));
    const ComplexField dB = synthesize(mul(analyze(p.Bf), ddx));
    ComplexField C = C_tilde - u2_low * p.u_kp + scaled({0.0, 2.0}, u_low * dB) + hd_low * p.Bf;
    ComplexField Q = scaled(-1.0, u2_low * p.Bf);

    ComplexField ob = obstruction(u, k, order, opts).total;
    return {std::move(ob), std::move(B_rem), std::move(C_tilde), std::move(C), std::move(Q)};
}

RhsEvaluation transformed_rhs(const Field& u, int k, int order, const NfOptions& opts) {
    const RhsTerms t = rhs_terms(u, k, order, opts);
    const TransformedVariable tv = transform(u, k, order, opts);
    const GaugeContext ctx = make_gauge_context(u, k, order, opts);
    const ComplexField eN = truncated_exp(order, ctx.phi_low);
    const ComplexField eN1 = truncated_exp(order - 1, ctx.phi_low);
    const ComplexField eN2 = truncated_exp(order - 2, ctx.phi_low);
    const ComplexField top = eN - eN1;  // (-i phi)^N / N!

    const Field u2 = u * u;
    const double mean_u2 = mean(u2);
    const ComplexField dA = synthesize(mul(analyze(tv.A), ddx));
    ComplexField mass_terms = eN1 * (scaled(mean_u2, tv.A) - scaled({0.0, 2.0 * ctx.mean}, dA));
    // d_x phi_low = u_low - mean(u)
    std::vector<double> dphi = ctx.u_low.to_vector();
    for (double& z : dphi) z -= ctx.mean;
    const Field drift(u.grid(), std::move(dphi));
    const ComplexField quad = eN2 * ((drift * drift) * tv.A);

    const ComplexField main = t.obstruction * eN + (t.C_tilde - t.B_rem) * top + (t.C + t.Q) * eN1;
    ComplexField exact = main + mass_terms + quad;
    ComplexField printed = t.obstruction * eN1 + (t.obstruction + t.B_rem) * top + t.C * eN1 + t.C_tilde * top +
                           t.Q * eN1;
    double scale = 0.0;
    for (const ComplexField* f : {&t.obstruction, &t.B_rem, &t.C_tilde, &t.C, &t.Q})
        scale = std::max(scale, sup_norm(*f));
    return {std::move(exact), std::move(printed), std::move(mass_terms), scale};
}

ResidualReport transformed_residual(std::span<const TimedField> snaps, int k, int order, const ResidualOptions& opts) {
    const std::size_t n = snaps.size();
    if (n < 3) throw DomainError("residual", "need at least three snapshots");
    const double h = snaps[1].t - snaps[0].t;
    if (!(h > 0.0)) throw DomainError("residual", "snapshot times must increase");
    for (std::size_t i = 1; i < n; ++i) {
        require_same_grid(snaps[i].u.grid(), snaps[0].u.grid());
        if (std::abs((snaps[i].t - snaps[i - 1].t) - h) > 1e-9 * h)
            throw DomainError("residual", "snapshots must be equally spaced");
    }
    NfOptions nfo = opts.nf;
    if (opts.disable_B) nfo.zero_correction = true;

    std::vector<ComplexField> v;
    v.reserve(n);
    for (const auto& s : snaps) v.push_back(transform(s.u, k, order, nfo).v);

    const Grid& grid = snaps[0].u.grid();
    ResidualReport rep{h, 0.0, 0.0, 0.0, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const ComplexField dv = scaled(1.0 / (2.0 * h), v[i + 1] - v[i - 1]);
        const ComplexField d2v = synthesize(mul(analyze(v[i]), [](double xi) { return cplx(-xi * xi); }));
        const ComplexField lhs = scaled({0.0, 1.0}, dv) - d2v;
        rep.term_scale = std::max({rep.term_scale, sup_norm(dv), sup_norm(d2v)});
        if (opts.linear_dynamics) {
            rep.residual_inf = std::max(rep.residual_inf, sup_norm(lhs));
            rep.residual_printed = rep.residual_inf;
            continue;
        }
        const RhsEvaluation r = transformed_rhs(snaps[i].u, k, order, nfo);
        rep.residual_inf = std::max(rep.residual_inf, sup_norm(lhs - r.exact));
        rep.residual_printed = std::max(rep.residual_printed, sup_norm(lhs - r.printed));
        rep.budget_massL = std::max(rep.budget_massL, sup_norm(r.mass_terms));
        rep.term_scale = std::max(rep.term_scale, r.scale);
    }
    if (n >= 5) {
        double d3 = 0.0;
        for (std::size_t i = 2; i + 2 < n; ++i) {
            const ComplexField t = v[i + 2] - scaled(2.0, v[i + 1]) + scaled(2.0, v[i - 1]) - v[i - 2];
            d3 = std::max(d3, sup_norm(t) / (2.0 * h * h * h));
        }
        rep.budget_dt2 = h * h / 6.0 * d3;
    }
    const long M = pseudo::bilinear_mode_limit(grid);
    for (const auto& s : snaps) {
        const Spectrum U = analyze(s.u);
        double tail = 0.0;
        for (std::size_t q = 0; q < U.size(); ++q)
            if (std::abs(grid.mode(q)) > M) tail += std::abs(U[q]);
        tail *= grid.dxi() / std::sqrt(2.0 * std::numbers::pi);
        rep.budget_alias = std::max(rep.budget_alias, tail * sup_norm(s.u));
    }
    return rep;
}

}  // namespace bolab::nf
