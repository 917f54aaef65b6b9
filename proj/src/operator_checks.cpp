#include "bolab/operator_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bolab/cutoff.hpp"
#include "bolab/error.hpp"
#include "bolab/kernels.hpp"
#include "bolab/pseudoproduct.hpp"
#include "bolab/random_fields.hpp"
#include "bolab/solver.hpp"
#include "bolab/spectral.hpp"

namespace bolab::checks {

namespace {

constexpr double pi = std::numbers::pi;

double rel_sup(const ComplexField& a, const ComplexField& b) {
    const double s = sup_norm(b);
    return sup_norm(a - b) / (s > 0.0 ? s : 1.0);
}

double rel_sup(const Field& a, const Field& b) {
    const double s = sup_norm(b);
    return sup_norm(a - b) / (s > 0.0 ? s : 1.0);
}

double japanese(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace

std::string to_csv(const std::vector<Measurement>& rows) {
    std::ostringstream os;
    os.precision(10);
    os << "suite,name,value,lo,hi,pass\n";
    for (const auto& r : rows)
        os << r.suite << ',' << r.name << ',' << r.value << ',' << r.lo << ',' << r.hi << ',' << (r.pass() ? 1 : 0)
           << '\n';
    return os.str();
}

std::vector<Measurement> operator_calculus(const CalculusOptions& o) {
    const Grid g(o.n, o.L);
    std::mt19937_64 rng(o.seed);
    double parseval = 0, round_trip = 0, composition = 0, hh = 0, half_line = 0, partition = 0;

    const Multiplier m1 = [](double xi) { return cplx(std::exp(-xi * xi / 50.0), 0.0); };
    const Multiplier m2 = [](double xi) { return cplx(0.0, xi / (1.0 + std::abs(xi))); };
    const Multiplier m12 = [&](double xi) { return m1(xi) * m2(xi); };
    const Multiplier minus = [](double xi) { return cplx(xi < 0.0 ? 1.0 : 0.0); };

    const int k_lo = static_cast<int>(std::floor(std::log2(g.dxi()))) - 1;
    const int k_hi = static_cast<int>(std::ceil(std::log2(g.nyquist()))) + 1;

    for (int trial = 0; trial < o.fields; ++trial) {
        const Field f = random_field(g, rng);
        const Spectrum c = analyze(f);
        double e_x = 0, e_xi = 0;
        for (double v : f.values()) e_x += v * v;
        for (std::size_t q = 0; q < c.size(); ++q) e_xi += std::norm(c[q]);
        e_x *= g.dx();
        e_xi *= g.dxi();
        parseval = std::max(parseval, std::abs(e_x - e_xi) / e_x);
        round_trip = std::max(round_trip, rel_sup(synthesize_real(c), f));

        const ComplexField fc = to_complex(f);
        composition = std::max(composition, rel_sup(apply_multiplier(m1, apply_multiplier(m2, fc)),
                                                    apply_multiplier(m12, fc)));

        RandomFieldOptions mz;
        mz.mean_zero = true;
        const Field f0 = random_field(g, rng, mz);
        hh = std::max(hh, rel_sup(hilbert(hilbert(f0)), -1.0 * f0));
        const ComplexField f0c = to_complex(f0);
        half_line = std::max(half_line, rel_sup(hilbert(f0c) + cplx(0.0, 1.0) * f0c,
                                                cplx(0.0, 2.0) * apply_multiplier(minus, f0c)));

        ComplexField sum = lp_project(f, k_lo, LpVariant::low).field;
        for (int k = k_lo + 1; k <= k_hi; ++k) sum = sum + lp_project(f, k, LpVariant::full).field;
        partition = std::max(partition, rel_sup(sum, fc));
    }
    const std::string s = "calculus";
    return {{s, "parseval", parseval, 0.0, o.tolerance},
            {s, "round_trip", round_trip, 0.0, o.tolerance},
            {s, "multiplier_composition", composition, 0.0, o.tolerance},
            {s, "hilbert_squared", hh, 0.0, o.tolerance},
            {s, "hilbert_half_line", half_line, 0.0, o.tolerance},
            {s, "lp_partition", partition, 0.0, o.tolerance}};
}

std::vector<Measurement> hilbert_closed_form(const HilbertOptions& o) {
    const Grid g(o.n, o.L);
    const double a = 2.0 * pi / o.L;
    auto denom = [&](double x) { return std::cosh(a) - std::cos(a * x); };
    const Field per = sample(g, [&](double x) { return (pi / o.L) * std::sinh(a) / denom(x); });
    const Field per_h = sample(g, [&](double x) { return (pi / o.L) * std::sin(a * x) / denom(x); });
    const double e_per = sup_norm(hilbert(per) - per_h);

    const Field line = sample(g, [](double x) { return 1.0 / (1.0 + x * x); });
    const Field h_line = hilbert(line);
    double e_core = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        if (std::abs(x) <= o.L / 100.0) e_core = std::max(e_core, std::abs(h_line[i] - x / (1.0 + x * x)));
    }

    const Field hs = hilbert(solver::soliton(g, 1.0));
    std::vector<int> shells;
    for (int j = o.j_min; j <= o.j_max; ++j) shells.push_back(j);
    std::vector<std::pair<double, double>> pts;
    for (const auto& [j, s] : weighted_shell_sup(hs, shells)) pts.emplace_back(j, s.plus);
    const double slope = kernels::fit_decay(pts).slope;

    const std::string s = "hilbert";
    return {{s, "periodized_closed_form", e_per, 0.0, o.tolerance},
            {s, "core_closed_form", e_core, 0.0, o.tolerance},
            {s, "soliton_shell_slope", slope, -1.0 - o.slope_tolerance, -1.0 + o.slope_tolerance}};
}

std::vector<Measurement> pseudoproduct_identities(const PseudoproductOptions& o) {
    const Grid g(o.n, o.L);
    const Grid fine(2 * o.n, o.L);
    std::mt19937_64 rng(o.seed);
    RandomFieldOptions band2;
    band2.band_fraction = 0.45;
    RandomFieldOptions band3;
    band3.band_fraction = 0.3;

    const auto one = pseudo::constant_symbol(1.0);
    pseudo::CubicSymbol one3{[](double, double, double) { return cplx(1.0); }, std::nullopt, "one"};
    pseudo::BilinearSymbol smooth{[](double xi, double eta) {
                                      return cplx(1.0 / (1.0 + xi * xi + eta * eta), 0.3 * eta / (1.0 + eta * eta));
                                  },
                                  std::nullopt, std::nullopt, "smooth"};

    double e_prod = 0, e_cubic = 0, e_leib = 0, e_refine = 0;
    for (int t = 0; t < o.trials; ++t) {
        const Field f = random_field(g, rng, band2);
        const Field h = random_field(g, rng, band2);
        const ComplexField prod = std::sqrt(2.0 * pi) * to_complex(f * h);
        e_prod = std::max(e_prod, rel_sup(pseudo::bilinear_apply(one, f, h), prod));

        const ComplexField a = to_complex(random_field(g, rng, band3));
        const ComplexField b = to_complex(random_field(g, rng, band3));
        const ComplexField c = to_complex(random_field(g, rng, band3));
        e_cubic = std::max(e_cubic, rel_sup(pseudo::cubic_apply(one3, a, b, c), 2.0 * pi * (a * b * c)));

        const auto lr = pseudo::leibnitz_check(smooth, to_complex(f), to_complex(h));
        e_leib = std::max(e_leib, lr.residual / lr.scale);

        // Same trigonometric polynomials sampled on a grid with half the spacing.
        auto refine = [&](const Field& u) {
            const Spectrum su = analyze(u);
            std::vector<cplx> v(fine.size(), cplx(0.0));
            for (std::size_t q = 0; q < su.size(); ++q)
                if (!g.is_nyquist(q)) v[fine.index_of_mode(g.mode(q))] = su[q];
            return synthesize_real(Spectrum(fine, std::move(v)));
        };
        const ComplexField coarse_out = pseudo::bilinear_apply(smooth, f, h);
        const ComplexField fine_out = pseudo::bilinear_apply(smooth, refine(f), refine(h));
        double d = 0;
        for (std::size_t i = 0; i < g.size(); ++i) d = std::max(d, std::abs(coarse_out[i] - fine_out[2 * i]));
        e_refine = std::max(e_refine, d / sup_norm(coarse_out));
    }

    // Hölder constant ||B(f,g)|| / (||f|| ||g||) for a band-limited symbol.
    // Its 90th percentile over each half of the sample must agree.
    pseudo::BilinearSymbol banded{[](double xi, double eta) {
                                      return cplx(cutoff::le_abs(1.0, xi) * cutoff::le_abs(1.0, eta) *
                                                  std::exp(-0.25 * (xi - eta) * (xi - eta)));
                                  },
                                  pseudo::Interval{-4.0, 4.0}, pseudo::Interval{-4.0, 4.0}, "banded"};
    std::vector<double> halves[2];
    for (int t = 0; t < o.holder_pairs; ++t) {
        const Field f = random_field(g, rng, band2);
        const Field h = random_field(g, rng, band2);
        const double c = sup_norm(pseudo::bilinear_apply(banded, f, h)) / (sup_norm(f) * sup_norm(h));
        halves[2 * t < o.holder_pairs ? 0 : 1].push_back(c);
    }
    auto q90 = [](std::vector<double> v) {
        if (v.empty()) return 0.0;
        std::sort(v.begin(), v.end());
        return v[static_cast<std::size_t>(0.9 * static_cast<double>(v.size() - 1))];
    };
    const double holder = std::abs(q90(halves[0]) / q90(halves[1]) - 1.0);
    double c_max = 0.0;
    for (const auto& h : halves)
        for (double c : h) c_max = std::max(c_max, c);

    const std::string s = "pseudoproduct";
    return {{s, "constant_symbol_product", e_prod, 0.0, o.tolerance},
            {s, "constant_cubic_product", e_cubic, 0.0, o.tolerance},
            {s, "leibnitz", e_leib, 0.0, o.tolerance},
            {s, "grid_refinement", e_refine, 0.0, o.tolerance},
            {s, "holder_constant", c_max, 0.0, INFINITY},
            {s, "holder_split_half", holder, 0.0, 0.5}};
}

LocalityResult bilinear_pseudolocality(const LocalityOptions& o) {
    const Grid g(o.n, o.L);
    if (std::exp2(o.j_max + 1) > o.L / 4.0) throw DomainError("degenerate-shell", "outer region leaves the box core");
    const double k = o.k;
    const double band = std::exp2(k + 1.0);
    pseudo::BilinearSymbol b{[k](double xi, double eta) {
                                 const double z = std::abs(xi - eta) * std::exp2(-k);
                                 return cplx(cutoff::le_abs(k, xi) * cutoff::le_abs(k, eta) * z * z * z);
                             },
                             pseudo::Interval{-band, band}, pseudo::Interval{-band, band}, "cubic-kink"};
    const Field f = sample(g, [](double x) { return smooth_bump(x, 0.0, 1.0); });
    std::mt19937_64 rng(7);
    RandomFieldOptions lo;
    lo.band_fraction = std::min(1.0, 1.5 * std::exp2(k) / g.nyquist());
    const Field h = random_field(g, rng, lo);
    const ComplexField out = pseudo::bilinear_apply(b, f, h);
    const double norm = sup_norm(f) * sup_norm(h);

    LocalityResult r;
    std::vector<std::pair<double, double>> pts;
    for (int j = o.j_min; j <= o.j_max; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.x(i);
            if (x >= std::exp2(j) && x <= std::exp2(j + 1)) m = std::max(m, std::abs(out[i]));
        }
        r.j.push_back(j);
        r.sup.push_back(m / norm);
        pts.emplace_back(j + k, m / norm);
    }
    const auto fit = kernels::fit_decay(pts);
    r.slope = fit.slope;
    r.r2 = fit.r2;
    return r;
}

CommutatorResult hilbert_commutator(const CommutatorOptions& o) {
    const Grid g(o.n, o.L);
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> centre(-0.5, 0.5), width(0.3, 0.6), amp(0.1, 1.0);
    CommutatorResult r;
    for (int j = o.j_min; j <= o.j_max; ++j) r.j.push_back(j);
    const std::size_t nj = r.j.size();
    r.constant.assign(nj, 0.0);
    r.constant_d1.assign(nj, 0.0);
    r.constant_d2.assign(nj, 0.0);
    std::vector<Field> chi;
    for (int j : r.j) chi.push_back(sample(g, [j](double x) { return cutoff::shell(j, x); }));

    for (int s = 0; s < o.samples; ++s) {
        double c[3], w[3], a[3];
        for (int i = 0; i < 3; ++i) {
            c[i] = centre(rng);
            w[i] = width(rng);
            a[i] = amp(rng);
        }
        const Field f = sample(g, [&](double x) {
            double v = 0.0;
            for (int i = 0; i < 3; ++i) v += a[i] * std::exp(-(x - c[i]) * (x - c[i]) / (w[i] * w[i]));
            return v;
        });
        const double l1 = l1_norm(f);
        const Field hf = hilbert(f);
        for (std::size_t q = 0; q < nj; ++q) {
            const Field comm = chi[q] * hf - hilbert(chi[q] * f);
            const double s2 = std::exp2(r.j[q]);
            r.constant[q] = std::max(r.constant[q], s2 * sup_norm(comm) / l1);
            r.constant_d1[q] = std::max(r.constant_d1[q], s2 * s2 * sup_norm(derivative(comm, 1)) / l1);
            r.constant_d2[q] = std::max(r.constant_d2[q], s2 * s2 * s2 * sup_norm(derivative(comm, 2)) / l1);
        }
    }
    auto spread = [](const std::vector<double>& c) {
        double mean = 0.0;
        for (double v : c) mean += v;
        mean /= static_cast<double>(c.size());
        double out = 0.0;
        for (double v : c) out = std::max(out, std::abs(v / mean - 1.0));
        return out;
    };
    r.spread = spread(r.constant);
    r.spread_d1 = spread(r.constant_d1);
    r.spread_d2 = spread(r.constant_d2);
    return r;
}

PrincipleResult pseudolocality_principle(const PrincipleOptions& o) {
    const Grid g(o.n, o.L);
    const int j = o.j;
    const Field f = sample(g, [j](double x) { return 1.0 - cutoff::near(j, x); });
    PrincipleResult r;
    double log_sum = 0.0;
    int count = 0;
    for (int s = o.s_min; s <= o.s_max; ++s) {
        const double k = s - j;
        const ComplexField low = lp_project(f, k, LpVariant::low).field;
        double m = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, cutoff::shell(j, g.x(i)) * std::abs(low[i]));
        const double scaled = m * std::pow(japanese(std::exp2(s)), 4);
        r.s.push_back(s);
        r.ratio.push_back(m);
        r.scaled.push_back(scaled);
        if (s <= o.fit_s_max && scaled > 0.0) {
            log_sum += std::log(scaled);
            ++count;
        }
    }
    if (count == 0) throw NumericalError("fit", "no positive values in the fit window");
    r.c_fit = std::exp(log_sum / count);
    r.worst_over_fit = 0.0;
    for (double v : r.scaled) r.worst_over_fit = std::max(r.worst_over_fit, v / r.c_fit);
    return r;
}

std::vector<Measurement> run_operator_suites(const SuiteOptions& o) {
    std::vector<Measurement> rows = operator_calculus(o.calculus);
    for (auto& m : hilbert_closed_form(o.hilbert)) rows.push_back(m);
    for (auto& m : pseudoproduct_identities(o.pseudo)) rows.push_back(m);

    const auto loc = bilinear_pseudolocality(o.locality);
    for (std::size_t i = 0; i < loc.j.size(); ++i)
        rows.push_back({"pseudolocality", "sup_j" + std::to_string(loc.j[i]), loc.sup[i], 0.0, INFINITY});
    rows.push_back({"pseudolocality", "decay_rate", -loc.slope, o.locality.min_decay, INFINITY});

    const auto com = hilbert_commutator(o.commutator);
    for (std::size_t i = 0; i < com.j.size(); ++i) {
        const std::string tag = "_j" + std::to_string(com.j[i]);
        rows.push_back({"commutator", "C" + tag, com.constant[i], 0.0, INFINITY});
        rows.push_back({"commutator", "C1" + tag, com.constant_d1[i], 0.0, INFINITY});
        rows.push_back({"commutator", "C2" + tag, com.constant_d2[i], 0.0, INFINITY});
    }
    rows.push_back({"commutator", "spread", com.spread, 0.0, 0.5});
    rows.push_back({"commutator", "spread_d1", com.spread_d1, 0.0, 0.5});
    rows.push_back({"commutator", "spread_d2", com.spread_d2, 0.0, 0.5});

    const auto pr = pseudolocality_principle(o.principle);
    for (std::size_t i = 0; i < pr.s.size(); ++i)
        rows.push_back({"pseudolocality_principle", "scaled_s" + std::to_string(pr.s[i]), pr.scaled[i], 0.0, INFINITY});
    rows.push_back({"pseudolocality_principle", "c_fit", pr.c_fit, 0.0, INFINITY});
    rows.push_back({"pseudolocality_principle", "worst_over_fit", pr.worst_over_fit, 0.0, 10.0});
    return rows;
}

}  // namespace bolab::checks
