#include "bolab/solver.hpp"

#include <cmath>
#include <numbers>

#include "bolab/spectral.hpp"

namespace bolab::solver {
namespace {

bool in_band(const Grid& g, std::size_t q) {
    const long limit = static_cast<long>(g.size()) / 3;
    return !g.is_nyquist(q) && std::abs(g.mode(q)) <= limit;
}

cplx linear_symbol(double xi, double c) { return {0.0, std::abs(xi) * xi + c * xi}; }

class Integrator {
public:
    Integrator(const Grid& grid, const SolverConfig& cfg) : grid_(grid), cfg_(cfg), c_(effective_speed(cfg)) {
        const std::size_t n = grid.size();
        full_.resize(n);
        half_.resize(n);
        sym_.resize(n);
        mask_.resize(n);
        for (std::size_t q = 0; q < n; ++q) {
            mask_[q] = in_band(grid, q) ? 1.0 : 0.0;
            sym_[q] = mask_[q] * linear_symbol(grid.xi(q), c_);
            full_[q] = std::exp(sym_[q] * cfg.dt);
            half_[q] = std::exp(sym_[q] * (0.5 * cfg.dt));
        }
        if (cfg.sponge.enabled) {
            sigma_.resize(n);
            for (std::size_t i = 0; i < n; ++i) sigma_[i] = sponge_profile(grid, cfg.sponge, grid.x(i));
        }
    }

    std::vector<cplx> nonlinear(const std::vector<cplx>& w_hat) const {
        const std::size_t n = grid_.size();
        if (!cfg_.nonlinear && sigma_.empty()) return std::vector<cplx>(n, cplx(0.0));
        const ComplexField w = synthesize(Spectrum(grid_, w_hat));
        std::vector<cplx> sq(n), damp(n, cplx(0.0));
        for (std::size_t i = 0; i < n; ++i) {
            const double wi = w[i].real();
            sq[i] = cfg_.nonlinear ? cplx(wi * wi) : cplx(0.0);
            if (!sigma_.empty()) damp[i] = sigma_[i] * wi;
        }
        const Spectrum s = analyze(ComplexField(grid_, std::move(sq)));
        const Spectrum d = sigma_.empty() ? Spectrum(grid_, std::move(damp)) : analyze(ComplexField(grid_, std::move(damp)));
        std::vector<cplx> out(n);
        for (std::size_t q = 0; q < n; ++q)
            out[q] = mask_[q] * (cplx(0.0, -grid_.xi(q)) * s[q] - d[q]);
        return out;
    }

    std::vector<cplx> linear(const std::vector<cplx>& w_hat) const {
        std::vector<cplx> out(w_hat.size());
        for (std::size_t q = 0; q < out.size(); ++q) out[q] = sym_[q] * w_hat[q];
        return out;
    }

    std::vector<cplx> advance(const std::vector<cplx>& w) const {
        const std::size_t n = w.size();
        const double dt = cfg_.dt;
        std::vector<cplx> tmp(n);
        const auto k1 = nonlinear(w);
        for (std::size_t q = 0; q < n; ++q) tmp[q] = half_[q] * (w[q] + 0.5 * dt * k1[q]);
        const auto k2 = nonlinear(tmp);
        for (std::size_t q = 0; q < n; ++q) tmp[q] = half_[q] * w[q] + 0.5 * dt * k2[q];
        const auto k3 = nonlinear(tmp);
        for (std::size_t q = 0; q < n; ++q) tmp[q] = full_[q] * w[q] + dt * half_[q] * k3[q];
        const auto k4 = nonlinear(tmp);
        std::vector<cplx> out(n);
        for (std::size_t q = 0; q < n; ++q)
            out[q] = full_[q] * w[q] +
                     dt / 6.0 * (full_[q] * k1[q] + 2.0 * half_[q] * (k2[q] + k3[q]) + k4[q]);
        return out;
    }

private:
    Grid grid_;
    SolverConfig cfg_;
    double c_;
    std::vector<cplx> full_, half_, sym_;
    std::vector<double> mask_, sigma_;
};

double sup_of(const Spectrum& s) { return sup_norm(synthesize(s)); }

}  // namespace

double effective_speed(const SolverConfig& cfg) { return cfg.frame == Frame::moving ? cfg.frame_speed : 0.0; }

Field SolverState::field() const { return synthesize_real(spectrum); }

double soliton_value(double c, double x) { return 2.0 * c / (c * c * x * x + 1.0); }

Field soliton(const Grid& grid, double c, double x0, double t) {
    return sample(grid, [=](double x) { return soliton_value(c, x - x0 - c * t); });
}

PreparedState prepare(const Field& initial, double t0) {
    const Grid& g = initial.grid();
    auto s = analyze(initial).to_vector();
    double removed = 0.0;
    for (std::size_t q = 0; q < s.size(); ++q) {
        if (in_band(g, q)) continue;
        removed += std::norm(s[q]);
        s[q] = 0.0;
    }
    return {SolverState{Spectrum(g, std::move(s)), t0}, std::sqrt(g.dxi() * removed)};
}

double sponge_profile(const Grid& grid, const SpongeConfig& sponge, double x) {
    if (!sponge.enabled) return 0.0;
    const double left = -0.5 * grid.length();
    const double width = sponge.width_fraction * grid.length();
    const double s = (x - left) / width;
    if (s <= 0.0 || s >= 1.0) return 0.0;
    const double v = std::sin(std::numbers::pi * s);
    return sponge.strength * v * v;
}

Spectrum rhs(const SolverState& state, const SolverConfig& cfg) {
    const Integrator integ(state.spectrum.grid(), cfg);
    const auto w = state.spectrum.to_vector();
    auto n = integ.nonlinear(w);
    const auto l = integ.linear(w);
    for (std::size_t q = 0; q < n.size(); ++q) n[q] += l[q];
    return Spectrum(state.spectrum.grid(), std::move(n));
}

SolverState step(const SolverState& state, const SolverConfig& cfg) {
    const Integrator integ(state.spectrum.grid(), cfg);
    return {Spectrum(state.spectrum.grid(), integ.advance(state.spectrum.to_vector())), state.t + cfg.dt};
}

Conserved conserved(const Field& u) {
    const double dx = u.grid().dx();
    const Field hdu = real_part(apply_multiplier([](double xi) { return cplx(std::abs(xi)); }, u));
    double mass = 0.0, l2 = 0.0, quad = 0.0, cubic = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mass += u[i];
        l2 += u[i] * u[i];
        quad += u[i] * hdu[i];
        cubic += u[i] * u[i] * u[i];
    }
    return {dx * mass, dx * l2, dx * (0.5 * quad - cubic / 3.0)};
}

EvolveResult evolve(const Field& initial, const SolverConfig& cfg, const EvolveOptions& opts,
                    const SnapshotObserver& observer, bool keep_snapshots) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw DomainError("solver", "dt must be positive");
    if (!(opts.T >= 0.0)) throw DomainError("solver", "T must be non-negative");
    if (opts.snapshot_stride < 1) throw DomainError("solver", "snapshot stride must be >= 1");
    const long steps = std::max(1L, std::lround(opts.T / cfg.dt));
    SolverConfig run = cfg;
    run.dt = opts.T > 0.0 ? opts.T / static_cast<double>(steps) : cfg.dt;
    const long total = opts.T > 0.0 ? steps : 0;

    auto prepared = prepare(initial, 0.0);
    EvolveResult result{{}, {}, run.dt, total, prepared.truncation_l2};
    const Integrator integ(initial.grid(), run);
    std::vector<cplx> w = prepared.state.spectrum.to_vector();
    double last_sup = sup_of(prepared.state.spectrum);

    auto emit = [&](long s) {
        SolverState st{Spectrum(initial.grid(), w), run.dt * static_cast<double>(s)};
        const Field f = st.field();
        const double sup = sup_norm(f);
        if (!std::isfinite(sup)) throw NumericalError("instability", "non-finite field at t = " + std::to_string(st.t));
        if (last_sup > 0.0 && sup > cfg.instability_factor * last_sup)
            throw NumericalError("instability", "sup norm grew more than " + std::to_string(cfg.instability_factor) +
                                                    "x at t = " + std::to_string(st.t));
        last_sup = sup;
        result.ledger.push_back({st.t, conserved(f)});
        if (observer) observer(st);
        if (keep_snapshots) result.snapshots.push_back(std::move(st));
    };

    emit(0);
    for (long s = 1; s <= total; ++s) {
        w = integ.advance(w);
        if (s % opts.snapshot_stride == 0 || s == total) emit(s);
    }
    return result;
}

Field moving_to_lab(const Field& w, double c, double t) {
    const double shift = c * t;
    return real_part(apply_multiplier([=](double xi) { return std::exp(cplx(0.0, -xi * shift)); }, w));
}

Field lab_to_moving(const Field& u, double c, double t) { return moving_to_lab(u, -c, t); }

}  // namespace bolab::solver
