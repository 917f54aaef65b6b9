#include "bolab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "bolab/error.hpp"
#include "bolab/kernels.hpp"
#include "bolab/normal_form.hpp"
#include "bolab/snapshot_io.hpp"
#include "bolab/spectral.hpp"
#include "json.hpp"

namespace bolab::decay {

namespace {

using Json = nlohmann::json;
using Table = std::vector<std::vector<double>>;

double k0_of(int j, double eps) { return -0.5 * (1.0 - eps) * j; }

// sup_x w(x)|f(x)|
template <class F>
double weighted_sup(const std::vector<double>& w, const F& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] > 0.0) m = std::max(m, w[i] * std::abs(f[i]));
    return m;
}

std::vector<double> plus_weight(const Grid& g, int j) {
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) w[i] = spatial_weight(j, Side::plus, ShellFlavor::exact, g.x(i));
    return w;
}

std::optional<kernels::FitResult> try_fit(const std::vector<int>& shells, const Table& table, std::size_t t,
                                          const std::vector<std::vector<char>>* clean, int& used) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t s = 0; s < shells.size(); ++s) {
        if (clean && !(*clean)[s][t]) continue;
        const double v = table[s][t];
        if (v > 0.0 && std::isfinite(v)) pts.emplace_back(shells[s], v);
    }
    used = static_cast<int>(pts.size());
    if (pts.size() < 4) return std::nullopt;
    return kernels::fit_decay(pts);
}

// Part of the initial data expected to radiate: everything except an exact soliton.
Field radiating_part(const ExperimentConfig& cfg, const Field& w0) {
    const auto& kind = cfg.initial.kind;
    if (kind == "soliton" || kind == "zero") return zeros(w0.grid());
    if (kind == "soliton_bump") return w0 - solver::soliton(w0.grid(), cfg.initial.speed, cfg.initial.offset);
    return w0;
}

struct Front {
    double frequency;
    double speed;
    double source;  // rightmost point carrying radiation
    bool present;
};

Front signal_front(const ExperimentConfig& cfg, const Field& r) {
    const Grid& g = r.grid();
    const double peak = sup_norm(r);
    if (peak == 0.0) return {0.0, cfg.frame_speed, 0.0, false};
    const Spectrum s = analyze(r);
    double smax = 0.0;
    for (std::size_t q = 0; q < s.size(); ++q) smax = std::max(smax, std::abs(s[q]));
    double xi_cut = 0.0;
    for (std::size_t q = 0; q < s.size(); ++q)
        if (std::abs(s[q]) > 1e-10 * smax) xi_cut = std::max(xi_cut, std::abs(g.xi(q)));
    // Prepared data is confined to the dealiased band.
    xi_cut = std::min(xi_cut, g.nyquist() * 2.0 / 3.0);
    double source = -0.5 * g.length();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(r[i]) > 1e-8 * peak) source = std::max(source, g.x(i));
    return {xi_cut, cfg.frame_speed + 2.0 * xi_cut, source, true};
}

Table make_table(std::size_t shells, std::size_t times) { return Table(shells, std::vector<double>(times, 0.0)); }

}  // namespace

void validate(const ExperimentConfig& cfg) {
    if (cfg.n_points < 4 || cfg.n_points % 2 != 0) throw DomainError("config", "n must be even and at least 4");
    if (!(cfg.box_length > 0.0)) throw DomainError("config", "L must be positive");
    if (!(cfg.T >= 0.0) || !(cfg.dt > 0.0)) throw DomainError("config", "need T >= 0 and dt > 0");
    if (cfg.snapshot_stride < 1) throw DomainError("config", "snapshot stride must be positive");
    if (cfg.j_min > cfg.j_max) throw DomainError("config", "empty shell range");
    if (std::exp2(cfg.j_max) > cfg.box_length / 4.0)
        throw DomainError("degenerate-shell", "2^j_max must not exceed L/4");
    const double dx = cfg.box_length / static_cast<double>(cfg.n_points);
    if (std::exp2(cfg.j_min - 1) < 2.0 * dx) throw DomainError("config", "innermost shell is not resolved by the grid");
    if (cfg.epsilon > 1.0) throw DomainError("config", "epsilon must not exceed 1");
    if (cfg.normal_form) {
        if (cfg.nf_order < 0) throw DomainError("config", "gauge order must be non-negative");
        if (cfg.nf_k_min > cfg.nf_k_max) throw DomainError("config", "empty normal-form band range");
        const double nyq = M_PI * static_cast<double>(cfg.n_points) / cfg.box_length;
        if (std::exp2(cfg.nf_k_max + 1) >= nyq / 2.0)
            throw DomainError("config", "normal-form bands exceed the dealiased range");
    }
    for (int m : cfg.derivative_orders)
        if (m < 1 || m > 4) throw DomainError("config", "derivative orders must lie in 1..4");
    const auto& k = cfg.initial.kind;
    if (k != "soliton" && k != "soliton_bump" && k != "bump" && k != "zero" && k != "file")
        throw DomainError("config", "unknown initial data kind '" + k + "'");
    if ((k == "soliton" || k == "soliton_bump") && !(cfg.initial.speed > 0.0))
        throw DomainError("config", "soliton speed must be positive");
    if ((k == "bump" || k == "soliton_bump") && !(cfg.initial.bump_width > 0.0))
        throw DomainError("config", "bump width must be positive");
    if (k == "file" && cfg.initial.file.empty()) throw DomainError("config", "initial file path missing");
}

Field make_initial(const InitialData& in, const Grid& g) {
    auto bump = [&] {
        return sample(g, [&](double x) {
            const double s = (x - in.bump_center) / in.bump_width;
            return in.bump_amplitude * std::exp(-s * s);
        });
    };
    if (in.kind == "zero") return zeros(g);
    if (in.kind == "soliton") return solver::soliton(g, in.speed, in.offset);
    if (in.kind == "soliton_bump") return solver::soliton(g, in.speed, in.offset) + bump();
    if (in.kind == "bump") return bump();
    if (in.kind == "file") {
        auto snap = io::read_snapshot(in.file);
        if (!(snap.field.grid() == g)) throw ShapeError("initial file grid does not match the configuration");
        return snap.field;
    }
    throw DomainError("config", "unknown initial data kind '" + in.kind + "'");
}

Field initial_field(const ExperimentConfig& cfg) {
    return make_initial(cfg.initial, Grid(cfg.n_points, cfg.box_length));
}

double bootstrap_predict(double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon", "bootstrap needs epsilon > 0");
    return std::min(1.0 + 1.5 * epsilon, 2.0);
}

int bootstrap_steps(double epsilon0) {
    double eps = epsilon0;
    for (int steps = 1; steps <= 10000; ++steps) {
        const double p = bootstrap_predict(eps);
        if (p >= 2.0) return steps;
        eps = p - 1.0;
    }
    throw NumericalError("bootstrap", "iteration did not terminate");
}

double measure_epsilon(const Field& w, int j_min, int j_max) {
    std::vector<int> shells;
    for (int j = j_min; j <= j_max; ++j) shells.push_back(j);
    const auto sups = weighted_shell_sup(w, shells);
    std::vector<std::pair<double, double>> pts;
    for (const auto& [j, s] : sups)
        if (s.plus > 0.0) pts.emplace_back(j, s.plus);
    if (pts.size() < 4) return std::numeric_limits<double>::quiet_NaN();
    const double slope = kernels::fit_decay(pts).slope;
    return std::clamp(-slope - 1.0, 0.05, 1.0);
}

DecayReport run(const ExperimentConfig& cfg) {
    validate(cfg);
    const Field w0 = initial_field(cfg);
    const Grid& g = w0.grid();

    DecayReport rep;
    rep.config_json = config_to_json(cfg);
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) rep.shells.push_back(j);
    const std::size_t ns = rep.shells.size();

    rep.epsilon_meas = measure_epsilon(w0, cfg.j_min, cfg.j_max);
    if (cfg.epsilon > 0.0) {
        rep.epsilon_used = cfg.epsilon;
    } else if (std::isfinite(rep.epsilon_meas)) {
        rep.epsilon_used = rep.epsilon_meas;
    } else {
        rep.epsilon_used = 0.05;
        rep.log.push_back("initial data gives no shell fit; k0 split uses epsilon = 0.05");
    }
    rep.predicted_exponent =
        std::isfinite(rep.epsilon_meas) ? bootstrap_predict(rep.epsilon_meas) : std::numeric_limits<double>::quiet_NaN();

    const Front front = signal_front(cfg, radiating_part(cfg, w0));
    rep.front_frequency = front.frequency;
    rep.front_speed = front.speed;

    std::vector<std::vector<double>> weights(ns);
    std::vector<double> k0(ns);
    std::vector<std::vector<double>> bands(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        weights[s] = plus_weight(g, rep.shells[s]);
        k0[s] = k0_of(rep.shells[s], rep.epsilon_used);
        for (double k = k0[s] + 1.0; std::exp2(k - 1.0) < g.nyquist(); k += 1.0) bands[s].push_back(k);
    }

    struct Row {
        std::vector<double> plus, minus, low, bsum, bsups, high, tilde;
        std::vector<std::vector<double>> deriv;
    };
    std::vector<Row> rows;
    std::vector<double> times;

    nf::NfOptions nfo;
    nfo.p = cfg.nf_p;

    auto measure = [&](const solver::SolverState& st) {
        const Field w = st.field();
        const Spectrum sw = analyze(w);
        Row row;
        row.plus.resize(ns);
        row.minus.resize(ns);
        row.low.resize(ns);
        row.bsum.resize(ns);
        row.bsups.resize(ns);
        row.high.resize(ns);
        row.tilde.assign(ns, 0.0);
        const auto sups = weighted_shell_sup(w, rep.shells);
        for (std::size_t s = 0; s < ns; ++s) {
            auto it = sups.find(rep.shells[s]);
            row.plus[s] = it == sups.end() ? 0.0 : it->second.plus;
            row.minus[s] = it == sups.end() ? 0.0 : it->second.minus;
        }
#pragma omp parallel for schedule(dynamic)
        for (std::size_t s = 0; s < ns; ++s) {
            const double kl = k0[s];
            const auto low = synthesize(multiply(
                sw, [&](double xi) { return cplx(lp_symbol(kl, LpVariant::low, xi)); }, NyquistRule::zero));
            row.low[s] = weighted_sup(weights[s], low);
            std::vector<double> high(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) high[i] = w[i] - low[i].real();
            row.high[s] = weighted_sup(weights[s], high);
            std::vector<double> acc(g.size(), 0.0);
            double per_band = 0.0;
            for (double k : bands[s]) {
                const auto wk = synthesize(multiply(
                    sw, [&](double xi) { return cplx(lp_symbol(k, LpVariant::plus, xi)); }, NyquistRule::zero));
                per_band += weighted_sup(weights[s], wk);
                for (std::size_t i = 0; i < g.size(); ++i) acc[i] += std::abs(wk[i]);
            }
            row.bsum[s] = weighted_sup(weights[s], acc);
            row.bsups[s] = per_band;
        }
        if (cfg.normal_form) {
            for (int k = cfg.nf_k_min; k <= cfg.nf_k_max; ++k) {
                const auto v = nf::transform(w, k, cfg.nf_order, nfo).v;
                for (std::size_t s = 0; s < ns; ++s)
                    if (k > k0[s]) row.tilde[s] += weighted_sup(weights[s], v);
            }
        }
        for (int m : cfg.derivative_orders) {
            const Field d = derivative(w, m);
            std::vector<double> col(ns);
            for (std::size_t s = 0; s < ns; ++s) col[s] = weighted_sup(weights[s], d);
            row.deriv.push_back(std::move(col));
        }
        times.push_back(st.t);
        rows.push_back(std::move(row));
    };

    solver::SolverConfig scfg;
    scfg.dt = cfg.dt;
    scfg.frame = solver::Frame::moving;
    scfg.frame_speed = cfg.frame_speed;
    scfg.sponge = cfg.sponge;
    const auto evo = solver::evolve(w0, scfg, {cfg.T, cfg.snapshot_stride}, measure, false);
    rep.truncation_l2 = evo.truncation_l2;
    if (!evo.ledger.empty()) rep.sponge_mass_loss = evo.ledger.front().q.mass - evo.ledger.back().q.mass;

    const std::size_t nt = times.size();
    rep.times = times;
    rep.sup_plus = make_table(ns, nt);
    rep.sup_minus = make_table(ns, nt);
    rep.lowpass = make_table(ns, nt);
    rep.band_sum = make_table(ns, nt);
    rep.band_sups = make_table(ns, nt);
    rep.high_part = make_table(ns, nt);
    if (cfg.normal_form) rep.tilde_sum = make_table(ns, nt);
    rep.derivative_sup.assign(cfg.derivative_orders.size(), make_table(ns, nt));
    rep.clean.assign(ns, std::vector<char>(nt, 1));
    for (std::size_t t = 0; t < nt; ++t) {
        const Row& r = rows[t];
        for (std::size_t s = 0; s < ns; ++s) {
            rep.sup_plus[s][t] = r.plus[s];
            rep.sup_minus[s][t] = r.minus[s];
            rep.lowpass[s][t] = r.low[s];
            rep.band_sum[s][t] = r.bsum[s];
            rep.band_sups[s][t] = r.bsups[s];
            rep.high_part[s][t] = r.high[s];
            if (cfg.normal_form) rep.tilde_sum[s][t] = r.tilde[s];
            for (std::size_t m = 0; m < r.deriv.size(); ++m) rep.derivative_sup[m][s][t] = r.deriv[m][s];
        }
    }

    // Wrapped radiation: leaves through x = -L/2, re-enters at +L/2 and
    // travels left to the outer edge 2^{j+1} of the shell.
    if (!cfg.sponge.enabled && front.present) {
        for (std::size_t s = 0; s < ns; ++s) {
            const double dist = (front.source + 0.5 * g.length()) + (0.5 * g.length() - std::exp2(rep.shells[s] + 1));
            const double t_hit = dist / front.speed;
            bool logged = false;
            for (std::size_t t = 0; t < nt; ++t) {
                if (times[t] > t_hit) {
                    rep.clean[s][t] = 0;
                    if (!logged) {
                        rep.log.push_back("shell " + std::to_string(rep.shells[s]) +
                                          " excluded from t = " + std::to_string(times[t]) +
                                          " (wrapped front at t = " + std::to_string(t_hit) + ")");
                        logged = true;
                    }
                }
            }
        }
    }

    auto add_fits = [&](const std::string& name, const Table& table, bool clean_only) {
        for (std::size_t t = 0; t < nt; ++t) {
            int used = 0;
            auto f = try_fit(rep.shells, table, t, clean_only ? &rep.clean : nullptr, used);
            if (f)
                rep.fits.push_back({times[t], name, f->slope, f->intercept, f->r2, used, false});
            else
                rep.fits.push_back({times[t], name, 0.0, 0.0, 0.0, used, true});
        }
    };
    add_fits("plus", rep.sup_plus, true);
    add_fits("minus", rep.sup_minus, false);
    add_fits("lowpass", rep.lowpass, true);
    if (cfg.normal_form) add_fits("tilde", rep.tilde_sum, true);
    for (std::size_t m = 0; m < cfg.derivative_orders.size(); ++m)
        add_fits("d" + std::to_string(cfg.derivative_orders[m]), rep.derivative_sup[m], true);
    return rep;
}

LowFreqCheck lowfreq_decay_check(const DecayReport& report) {
    LowFreqCheck out{{}, true};
    const bool have_eps = std::isfinite(report.epsilon_meas);
    for (std::size_t t = 0; t < report.times.size(); ++t) {
        bool all_zero = true;
        for (const auto& row : report.lowpass) all_zero = all_zero && row[t] == 0.0;
        if (all_zero) {
            out.entries.push_back({report.times[t], 0.0, 0.0, true, true});
            continue;
        }
        int used = 0;
        auto f = try_fit(report.shells, report.lowpass, t, &report.clean, used);
        if (!f) throw DomainError("insufficient-shells", "fewer than four clean shells at t = " +
                                                             std::to_string(report.times[t]));
        if (!have_eps) throw DomainError("epsilon", "report has no measured epsilon");
        const double threshold = -bootstrap_predict(report.epsilon_meas) + 0.3;
        const bool pass = f->slope <= threshold;
        out.entries.push_back({report.times[t], f->slope, threshold, pass, false});
        out.all_pass = out.all_pass && pass;
    }
    return out;
}

const FitRecord* find_fit(const DecayReport& report, const std::string& series, double t) {
    const FitRecord* best = nullptr;
    for (const auto& f : report.fits)
        if (f.series == series && f.t <= t + 1e-12 && (!best || f.t >= best->t)) best = &f;
    return best;
}

namespace {

Json nan_safe(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
double from_nan_safe(const Json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

}  // namespace

std::string report_to_json(const DecayReport& r) {
    Json meta;
    meta["epsilon_meas"] = nan_safe(r.epsilon_meas);
    meta["epsilon_used"] = r.epsilon_used;
    meta["predicted_exponent"] = nan_safe(r.predicted_exponent);
    meta["truncation_l2"] = r.truncation_l2;
    meta["sponge_mass_loss"] = r.sponge_mass_loss;
    meta["front_frequency"] = r.front_frequency;
    meta["front_speed"] = r.front_speed;
    meta["log"] = r.log;
    meta["config"] = r.config_json.empty() ? Json(nullptr) : Json::parse(r.config_json);
    Json j;
    j["metadata"] = meta;
    j["shells"] = r.shells;
    j["times"] = r.times;
    j["sup"]["plus"] = r.sup_plus;
    j["sup"]["minus"] = r.sup_minus;
    j["lowpass"] = r.lowpass;
    j["band_sum"] = r.band_sum;
    j["band_sups"] = r.band_sups;
    j["high_part"] = r.high_part;
    j["tilde_sum"] = r.tilde_sum;
    j["derivative_sup"] = r.derivative_sup;
    std::vector<std::vector<int>> clean;
    for (const auto& row : r.clean) clean.emplace_back(row.begin(), row.end());
    j["clean"] = clean;
    Json fits = Json::array();
    for (const auto& f : r.fits)
        fits.push_back({{"t", f.t},
                        {"series", f.series},
                        {"slope", f.slope},
                        {"intercept", f.intercept},
                        {"r2", f.r2},
                        {"shells_used", f.shells_used},
                        {"skipped", f.skipped}});
    j["fits"] = fits;
    return j.dump(1);
}

DecayReport report_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
        DecayReport r;
        const Json& meta = j.at("metadata");
        r.epsilon_meas = from_nan_safe(meta.at("epsilon_meas"));
        r.epsilon_used = meta.at("epsilon_used").get<double>();
        r.predicted_exponent = from_nan_safe(meta.at("predicted_exponent"));
        r.truncation_l2 = meta.at("truncation_l2").get<double>();
        r.sponge_mass_loss = meta.at("sponge_mass_loss").get<double>();
        r.front_frequency = meta.at("front_frequency").get<double>();
        r.front_speed = meta.at("front_speed").get<double>();
        r.log = meta.at("log").get<std::vector<std::string>>();
        if (!meta.at("config").is_null()) r.config_json = meta.at("config").dump();
        r.shells = j.at("shells").get<std::vector<int>>();
        r.times = j.at("times").get<std::vector<double>>();
        r.sup_plus = j.at("sup").at("plus").get<Table>();
        r.sup_minus = j.at("sup").at("minus").get<Table>();
        r.lowpass = j.at("lowpass").get<Table>();
        r.band_sum = j.at("band_sum").get<Table>();
        r.band_sups = j.at("band_sups").get<Table>();
        r.high_part = j.at("high_part").get<Table>();
        r.tilde_sum = j.at("tilde_sum").get<Table>();
        r.derivative_sup = j.at("derivative_sup").get<std::vector<Table>>();
        for (const auto& row : j.at("clean").get<std::vector<std::vector<int>>>())
            r.clean.emplace_back(row.begin(), row.end());
        for (const auto& f : j.at("fits"))
            r.fits.push_back({f.at("t").get<double>(), f.at("series").get<std::string>(), f.at("slope").get<double>(),
                              f.at("intercept").get<double>(), f.at("r2").get<double>(),
                              f.at("shells_used").get<int>(), f.at("skipped").get<bool>()});
        return r;
    } catch (const Json::exception& e) {
        throw Error("format", std::string("malformed decay report: ") + e.what());
    }
}

void write_report_csv(std::ostream& os, const DecayReport& r) {
    const auto prec = os.precision(17);
    os << "t,j,clean,sup_plus,sup_minus,lowpass,band_sum,band_sups,high_part,tilde_sum\n";
    for (std::size_t t = 0; t < r.times.size(); ++t)
        for (std::size_t s = 0; s < r.shells.size(); ++s) {
            os << r.times[t] << ',' << r.shells[s] << ',' << int(r.clean[s][t]) << ',' << r.sup_plus[s][t] << ','
               << r.sup_minus[s][t] << ',' << r.lowpass[s][t] << ',' << r.band_sum[s][t] << ','
               << r.band_sups[s][t] << ',' << r.high_part[s][t] << ','
               << (r.tilde_sum.empty() ? 0.0 : r.tilde_sum[s][t]) << '\n';
        }
    os.precision(prec);
}

std::string config_to_json(const ExperimentConfig& c) {
    Json j;
    j["n"] = c.n_points;
    j["L"] = c.box_length;
    j["initial"] = {{"kind", c.initial.kind},
                    {"speed", c.initial.speed},
                    {"offset", c.initial.offset},
                    {"bump_amplitude", c.initial.bump_amplitude},
                    {"bump_width", c.initial.bump_width},
                    {"bump_center", c.initial.bump_center},
                    {"file", c.initial.file}};
    j["frame_speed"] = c.frame_speed;
    j["T"] = c.T;
    j["dt"] = c.dt;
    j["snapshot_stride"] = c.snapshot_stride;
    j["j_min"] = c.j_min;
    j["j_max"] = c.j_max;
    j["epsilon"] = c.epsilon;
    j["normal_form"] = {{"enabled", c.normal_form}, {"N", c.nf_order}, {"k_min", c.nf_k_min},
                        {"k_max", c.nf_k_max}, {"p", c.nf_p}};
    j["sponge"] = {{"enabled", c.sponge.enabled},
                   {"width_fraction", c.sponge.width_fraction},
                   {"strength", c.sponge.strength}};
    j["derivative_orders"] = c.derivative_orders;
    j["seed"] = c.seed;
    return j.dump();
}

}  // namespace bolab::decay
