#include "bolab/nf_symbols.hpp"

#include <cmath>
#include <numbers>

#include "bolab/cutoff.hpp"
#include "bolab/spectral.hpp"

namespace bolab::nf {
namespace {

double neg_part(double x) { return x < 0.0 ? -x : 0.0; }

// (chi_k^+(xi) - chi_k^+(xi - h)) / (2h), with the h -> 0 limit.
double half_difference(int k, double xi, double h) {
    if (std::abs(h) < 1e-8 * std::exp2(k)) return 0.5 * cutoff::shell_derivative(k, xi);
    return (cutoff::shell(k, xi) - cutoff::shell(k, xi - h)) / (2.0 * h);
}

// chi_k^+(xi) chi_{>~k}(h) / (2h); the cutoff vanishes near h = 0.
double high_quotient(int k, int order, double p, double xi, double h) {
    const double hi = cutoff::high_gauge(k, order, p, h);
    if (hi == 0.0) return 0.0;
    return cutoff::shell(k, xi) * hi / (2.0 * h);
}

double ppm(int k, int order, double p, double xi, double eta) {
    return high_quotient(k, order, p, xi, eta) +
           cutoff::low_gauge(k, order, p, eta) * half_difference(k, xi, eta);
}

double ppp(int k, int order, double p, double xi, double eta) {
    const double alpha = xi - eta;
    return ppm(k, order, p, xi, eta) + ppm(k, order, p, xi, alpha);
}

}  // namespace

Branch Branch::parse(std::string_view tag) {
    if (tag.size() != 3) throw DomainError("branch", "branch tag must have three signs");
    Branch b{};
    int* slots[3] = {&b.e1, &b.e2, &b.e3};
    for (int i = 0; i < 3; ++i) {
        if (tag[static_cast<std::size_t>(i)] == '+') *slots[i] = 1;
        else if (tag[static_cast<std::size_t>(i)] == '-') *slots[i] = -1;
        else throw DomainError("branch", "invalid branch tag '" + std::string(tag) + "'");
    }
    return b;
}

std::string Branch::tag() const {
    auto c = [](int e) { return e > 0 ? '+' : '-'; };
    return {c(e1), c(e2), c(e3)};
}

double normalization() { return -1.0 / std::sqrt(2.0 * std::numbers::pi); }

double branch_symbol_value(int k, int order, Branch branch, double xi, double eta, const NfOptions& opts) {
    if (branch.e1 < 0) return 0.0;
    double v = 0.0;
    if (branch.e2 > 0 && branch.e3 > 0) v = ppp(k, order, opts.p, xi, eta);
    else if (branch.e2 > 0 && branch.e3 < 0) v = ppm(k, order, opts.p, xi, eta);
    else if (branch.e2 < 0 && branch.e3 > 0) v = ppm(k, order, opts.p, xi, xi - eta);
    if (opts.inject_symbol_fault && branch.e2 > 0 && branch.e3 < 0) v = -v;
    return v;
}

pseudo::Interval output_support(int k, int order, const NfOptions& opts) {
    const double gap = std::exp2(k - opts.p * order);
    return {std::max(0.0, std::exp2(k - 1) - gap), std::exp2(k + 1) + gap};
}

pseudo::BilinearSymbol branch_symbol(int k, int order, Branch branch, const NfOptions& opts) {
    pseudo::BilinearSymbol s;
    s.eval = [=](double xi, double eta) { return cplx(branch_symbol_value(k, order, branch, xi, eta, opts)); };
    s.xi_support = output_support(k, order, opts);
    s.name = "nf" + branch.tag();
    return s;
}

double effective_symbol(int k, int order, double xi, double eta, const NfOptions& opts) {
    if (!(xi > 0.0)) return 0.0;
    const double alpha = xi - eta;
    Branch br{1, alpha > 0.0 ? 1 : -1, eta > 0.0 ? 1 : -1};
    if (alpha == 0.0 || eta == 0.0) return 0.0;
    return normalization() * branch_symbol_value(k, order, br, xi, eta, opts);
}

double obstruction_symbol(int k, int order, double alpha, double beta, const NfOptions& opts) {
    const double xi = alpha + beta;
    const double inv = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    auto cross = [&](double a, double b) {
        return 2.0 * cutoff::low_gauge(k, order, opts.p, a) * cutoff::shell(k, b) * (neg_part(a) - b);
    };
    const double direct = inv * (xi * cutoff::shell(k, xi) + 0.5 * (cross(alpha, beta) + cross(beta, alpha)));
    const double weight = 2.0 * (neg_part(alpha) * neg_part(alpha) + neg_part(beta) * neg_part(beta) + alpha * beta);
    return direct + weight * effective_symbol(k, order, xi, beta, opts);
}

Spectrum assemble_B(int k, int order, const Spectrum& f, const Spectrum& g, const NfOptions& opts) {
    if (opts.zero_correction) return Spectrum(f.grid(), std::vector<cplx>(f.size(), cplx(0.0)));
    auto half = [](int e) {
        return [e](double xi) { return cplx(e * xi > 0.0 ? 1.0 : 0.0); };
    };
    const Spectrum fp = multiply(f, half(1), NyquistRule::zero);
    const Spectrum fm = multiply(f, half(-1), NyquistRule::zero);
    const Spectrum gp = multiply(g, half(1), NyquistRule::zero);
    const Spectrum gm = multiply(g, half(-1), NyquistRule::zero);
    const Branch ppp_b{1, 1, 1}, ppm_b{1, 1, -1}, pmp_b{1, -1, 1};
    Spectrum sum = pseudo::bilinear_apply(branch_symbol(k, order, ppp_b, opts), fp, gp) +
                   pseudo::bilinear_apply(branch_symbol(k, order, ppm_b, opts), fp, gm) +
                   pseudo::bilinear_apply(branch_symbol(k, order, pmp_b, opts), fm, gp);
    return multiply(normalization() * sum, half(1), NyquistRule::zero);
}

ComplexField assemble_B(int k, int order, const ComplexField& f, const ComplexField& g, const NfOptions& opts) {
    return synthesize(assemble_B(k, order, analyze(f), analyze(g), opts));
}

ComplexField assemble_B(int k, int order, const Field& f, const Field& g, const NfOptions& opts) {
    return synthesize(assemble_B(k, order, analyze(f), analyze(g), opts));
}

Obstruction obstruction(const Field& u, int k, int order, const NfOptions& opts) {
    const Grid& grid = u.grid();
    const Spectrum U = analyze(u);
    auto mul = [&](const Spectrum& s, auto&& m) { return multiply(s, m, NyquistRule::zero); };
    auto low = [&](double xi) { return cplx(cutoff::low_gauge(k, order, opts.p, xi)); };
    auto shell_p = [&](double xi) { return cplx(cutoff::shell(k, xi)); };
    auto d = [](double xi) { return cplx(0.0, xi); };
    // (H + i) = 2i 1_{xi < 0}
    auto h_plus_i = [](double xi) { return xi < 0.0 ? cplx(0.0, 2.0) : cplx(0.0); };

    const ComplexField uu = synthesize(U) * synthesize(U);
    const ComplexField t1 = synthesize(mul(mul(analyze(uu), d), [&](double xi) { return cplx(0.0, -1.0) * shell_p(xi); }));
    const ComplexField u_low = synthesize(mul(U, low));
    const ComplexField u_kp = synthesize(mul(U, shell_p));
    const ComplexField t2 = synthesize(mul(mul(mul(U, low), d), h_plus_i)) * u_kp;
    const ComplexField t3 = cplx(0.0, 2.0) * (u_low * synthesize(mul(mul(U, shell_p), d)));
    const Spectrum hd2 = mul(mul(mul(U, d), d), h_plus_i);
    const Spectrum du = mul(U, d);
    const ComplexField t4 = cplx(0.0, 1.0) * synthesize(assemble_B(k, order, hd2, U, opts));
    const ComplexField t5 = cplx(0.0, 1.0) * synthesize(assemble_B(k, order, U, hd2, opts));
    const ComplexField t6 = cplx(-2.0) * synthesize(assemble_B(k, order, du, du, opts));

    const ComplexField total = t1 + t2 + t3 + t4 + t5 + t6;
    double scale = 0.0;
    for (const ComplexField* t : {&t1, &t2, &t3, &t4, &t5, &t6}) scale = std::max(scale, sup_norm(*t));

    const long M = pseudo::bilinear_mode_limit(grid);
    double peak = 0.0, tail = 0.0;
    for (std::size_t q = 0; q < U.size(); ++q) {
        peak = std::max(peak, std::abs(U[q]));
        if (std::abs(grid.mode(q)) > M) tail = std::max(tail, std::abs(U[q]));
    }
    const bool alias = tail > 1e-14 * peak || std::exp2(k + 1) >= grid.dxi() * static_cast<double>(M);
    return {total, scale, alias};
}

CancellationReport verify_cancellation(const Field& u, int k, int order, const NfOptions& opts) {
    const Obstruction ob = obstruction(u, k, order, opts);
    return {sup_norm(ob.total), ob.scale, ob.aliasing_warning};
}

}  // namespace bolab::nf
