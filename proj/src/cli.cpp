#include "bolab/cli.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "bolab/config.hpp"
#include "bolab/decay.hpp"
#include "bolab/error.hpp"
#include "bolab/kernels.hpp"
#include "bolab/nf_symbols.hpp"
#include "bolab/normal_form.hpp"
#include "bolab/operator_checks.hpp"
#include "bolab/random_fields.hpp"
#include "bolab/snapshot_io.hpp"
#include "bolab/solver.hpp"

namespace bolab::cli {

namespace {

using config::Json;
namespace fs = std::filesystem;

// Writes artifacts atomically under one directory and remembers their hashes.
class Outputs {
public:
    explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, std::string_view contents) {
        io::atomic_write((dir_ / name).string(), contents);
        hashes_[name] = io::fnv1a(contents);
        sizes_[name] = contents.size();
    }

    Json listing() const {
        Json out = Json::array();
        for (const auto& [name, h] : hashes_) out.push_back({{"path", name}, {"bytes", sizes_.at(name)}, {"fnv1a", io::hex64(h)}});
        return out;
    }

    std::string combined_hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto& [name, v] : hashes_) {
            h = io::fnv1a(name, h);
            h = io::fnv1a(io::hex64(v), h);
        }
        return io::hex64(h);
    }

    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::map<std::string, std::uint64_t> hashes_;
    std::map<std::string, std::size_t> sizes_;
};

struct Context {
    std::string command;
    Json tree;
    int threads;
    Outputs out;
};


void write_manifest(Context& ctx, const std::string& status, int code) {
    Json m;
    m["tool"] = "bolab";
    m["version"] = version;
    m["fftw"] = std::string(fftw_version);
    m["command"] = ctx.command;
    m["config"] = ctx.tree;
    m["config_hash"] = io::hex64(io::fnv1a(config::dump(ctx.tree)));
    m["seed"] = config::seed(ctx.tree);
    m["threads"] = ctx.threads;
    m["outputs"] = ctx.out.listing();
    m["outputs_hash"] = ctx.out.combined_hash();
    m["status"] = status;
    m["exit_code"] = code;
    io::atomic_write((ctx.out.dir() / "manifest.json").string(), m.dump(2) + "\n");
}

int cmd_evolve(Context& ctx) {
    const auto c = config::evolve_config(ctx.tree);
    const Grid g(c.n, c.L);
    const Field u0 = decay::make_initial(c.initial, g);
    long index = 0;
    auto observer = [&](const solver::SolverState& st) {
        if (!c.write_snapshots) return;
        char name[64];
        std::snprintf(name, sizeof name, "snapshots/snap_%06ld.bin", index++);
        const auto bytes = io::encode_snapshot({st.field(), st.t, c.solver.frame, solver::effective_speed(c.solver)});
        ctx.out.write(name, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    };
    const auto res = solver::evolve(u0, c.solver, {c.T, c.snapshot_stride}, observer, false);
    ctx.out.write("ledger.csv", io::ledger_csv(res.ledger));
    Json summary{{"steps", res.steps}, {"dt", res.dt_used}, {"truncation_l2", res.truncation_l2}};
    if (!res.ledger.empty()) {
        const auto& a = res.ledger.front().q;
        const auto& b = res.ledger.back().q;
        summary["mass_drift"] = std::abs(b.mass - a.mass) / std::max(std::abs(a.mass), 1e-300);
        summary["l2_drift"] = std::abs(b.l2 - a.l2) / std::max(a.l2, 1e-300);
        summary["hamiltonian_drift"] = std::abs(b.hamiltonian - a.hamiltonian) / std::max(std::abs(a.hamiltonian), 1e-300);
    }
    ctx.out.write("evolve_summary.json", summary.dump(2) + "\n");
    std::cout << "evolve: " << res.steps << " steps to T = " << c.T << "\n";
    return 0;
}

int cmd_measure_decay(Context& ctx) {
    const auto c = config::experiment_config(ctx.tree);
    const auto rep = decay::run(c);
    ctx.out.write("decay_report.json", decay::report_to_json(rep) + "\n");
    std::ostringstream csv;
    decay::write_report_csv(csv, rep);
    ctx.out.write("decay_report.csv", csv.str());
    for (const auto& line : rep.log) std::cerr << "measure-decay: " << line << "\n";
    const auto* last = decay::find_fit(rep, "plus", rep.times.empty() ? 0.0 : rep.times.back());
    if (last && !last->skipped)
        std::cout << "measure-decay: final plus-shell exponent " << -last->slope << " (R^2 " << last->r2 << ")\n";
    else
        std::cout << "measure-decay: final fit skipped\n";
    return 0;
}

int cmd_verify_operators(Context& ctx) {
    const auto rows = checks::run_operator_suites(config::operator_suite(ctx.tree));
    ctx.out.write("operators.csv", checks::to_csv(rows));
    int failures = 0;
    for (const auto& r : rows)
        if (!r.pass()) {
            ++failures;
            std::cerr << "verify-operators: " << r.suite << "/" << r.name << " = " << r.value << " outside [" << r.lo
                      << ", " << r.hi << "]\n";
        }
    std::cout << "verify-operators: " << rows.size() - failures << "/" << rows.size() << " within bounds\n";
    return failures == 0 ? 0 : 3;
}

int cmd_verify_normal_form(Context& ctx) {
    const auto c = config::normal_form_check(ctx.tree);
    nf::NfOptions opts;
    opts.p = c.p;
    opts.inject_symbol_fault = c.inject_symbol_fault;
    const Grid g(c.n, c.L);
    std::mt19937_64 rng(config::seed(ctx.tree));
    RandomFieldOptions ro;
    ro.band_fraction = c.band_fraction;
    std::ostringstream csv;
    csv.precision(10);
    csv << "check,index,k,N,residual,scale,relative,aliasing_warning\n";
    double worst = 0.0;
    for (int i = 0; i < c.fields; ++i) {
        const Field u = random_field(g, rng, ro);
        const auto r = nf::verify_cancellation(u, c.k, c.N, opts);
        worst = std::max(worst, r.relative());
        csv << "cancellation," << i << ',' << c.k << ',' << c.N << ',' << r.residual_inf << ',' << r.scale << ','
            << r.relative() << ',' << int(r.aliasing_warning) << '\n';
    }
    bool ok = worst <= c.tolerance;
    std::cout << "verify-normal-form: worst cancellation residual " << worst << " (tolerance " << c.tolerance << ")\n";

    if (c.residual_enabled) {
        const Grid rg(c.residual_n, c.residual_L);
        solver::SolverConfig sc;
        sc.dt = c.residual_dt;
        sc.frame = solver::Frame::lab;
        const double T = c.residual_dt * (c.residual_snapshots - 1);
        const auto evo = solver::evolve(solver::soliton(rg, c.residual_speed), sc, {T, 1});
        std::vector<nf::TimedField> snaps;
        for (const auto& s : evo.snapshots) snaps.push_back({s.t, s.field()});
        nf::ResidualOptions ropts;
        ropts.nf = opts;
        const auto r = nf::transformed_residual(snaps, c.k, c.N, ropts);
        csv << "residual,0," << c.k << ',' << c.N << ',' << r.residual_inf << ',' << r.term_scale << ','
            << r.relative() << ",0\n";
        Json budgets{{"h", r.h},
                     {"residual_inf", r.residual_inf},
                     {"residual_printed_form", r.residual_printed},
                     {"term_scale", r.term_scale},
                     {"budget_dt2", std::isfinite(r.budget_dt2) ? Json(r.budget_dt2) : Json(nullptr)},
                     {"budget_mass_over_L", r.budget_massL},
                     {"budget_alias", r.budget_alias}};
        ctx.out.write("residual_budgets.json", budgets.dump(2) + "\n");
        std::cout << "verify-normal-form: transformed-equation residual " << r.relative() << " of term scale\n";
        ok = ok && r.relative() <= c.residual_tolerance;
    }
    ctx.out.write("normal_form.csv", csv.str());
    return ok ? 0 : 3;
}

int cmd_verify_kernels(Context& ctx) {
    const auto c = config::kernel_check(ctx.tree);
    quad::Options qo;
    qo.rel_tol = c.rel_tol;
    std::vector<kernels::SweepRow> rows;
    std::vector<std::pair<double, double>> pts;
    bool converged = true;
    for (double v : c.values) {
        kernels::KernelSpec s = c.spec;
        if (c.sweep == "t") s.t = v;
        else s.j = static_cast<int>(v);
        const auto sup = kernels::kernel_sup(s, c.sampling, qo);
        rows.push_back({s, sup.sup, sup.all_converged});
        converged = converged && sup.all_converged;
        pts.emplace_back(c.sweep == "t" ? std::log2(v) : v, sup.sup);
    }
    std::ostringstream csv;
    kernels::write_sweep_csv(csv, rows);
    ctx.out.write("kernels.csv", csv.str());
    const auto fit = kernels::fit_decay(pts);
    Json j{{"variant", kernels::variant_name(c.spec.variant)},
           {"sweep", c.sweep},
           {"slope", fit.slope},
           {"intercept", fit.intercept},
           {"r2", fit.r2},
           {"all_converged", converged},
           {"max_slope", c.max_slope}};
    ctx.out.write("kernel_fit.json", j.dump(2) + "\n");
    std::cout << "verify-kernels: " << c.sweep << "-slope " << fit.slope << " (R^2 " << fit.r2 << ")\n";
    return converged && fit.slope <= c.max_slope ? 0 : 3;
}

int cmd_report(Context& ctx) {
    std::string input = ctx.tree.at("report").at("input").get<std::string>();
    if (input.empty()) input = (ctx.out.dir() / "decay_report.json").string();
    std::ifstream is(input);
    if (!is) throw ConfigError("cannot read decay report '" + input + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    const auto rep = decay::report_from_json(ss.str());
    std::ostringstream csv;
    csv.precision(10);
    csv << "t,series,slope,intercept,r2,shells_used,skipped\n";
    for (const auto& f : rep.fits)
        csv << f.t << ',' << f.series << ',' << f.slope << ',' << f.intercept << ',' << f.r2 << ',' << f.shells_used
            << ',' << int(f.skipped) << '\n';
    ctx.out.write("fits.csv", csv.str());
    const auto lf = decay::lowfreq_decay_check(rep);
    std::ostringstream lcsv;
    lcsv.precision(10);
    lcsv << "t,slope,threshold,pass,vacuous\n";
    for (const auto& e : lf.entries)
        lcsv << e.t << ',' << e.slope << ',' << e.threshold << ',' << int(e.pass) << ',' << int(e.vacuous) << '\n';
    ctx.out.write("lowfreq_check.csv", lcsv.str());
    std::cout << "report: epsilon_meas " << rep.epsilon_meas << ", predicted exponent " << rep.predicted_exponent
              << ", low-frequency check " << (lf.all_pass ? "pass" : "fail") << "\n";
    return lf.all_pass ? 0 : 3;
}

using Handler = int (*)(Context&);

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Benjamin-Ono numerical laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"evolve", "Evolve initial data and write snapshots and the conserved-quantity ledger"},
        {"measure-decay", "Measure dyadic-shell decay of evolved data"},
        {"verify-operators", "Run the operator calculus, Hilbert and pseudoproduct suites"},
        {"verify-normal-form", "Check the normal-form cancellation and transformed-equation residual"},
        {"verify-kernels", "Sweep linear kernel bounds by quadrature"},
        {"report", "Summarize a decay report"}};
    const std::map<std::string, Handler> handlers = {{"evolve", cmd_evolve},
                                                     {"measure-decay", cmd_measure_decay},
                                                     {"verify-operators", cmd_verify_operators},
                                                     {"verify-normal-form", cmd_verify_normal_form},
                                                     {"verify-kernels", cmd_verify_kernels},
                                                     {"report", cmd_report}};

    std::string config_path, out_dir;
    std::vector<std::string> overrides;
    int threads = 0;
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config,-c", config_path, "Configuration file (JSON)");
        sub->add_option("--out,-o", out_dir, "Output directory (default: $BOLAB_OUTPUT_DIR or ./bolab_out)");
        sub->add_option("--override", overrides, "key=value assignments applied after the file")->expected(1, -1);
        sub->add_option("--threads", threads, "OpenMP thread count (0: runtime default)")->check(CLI::NonNegativeNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (threads > 0) omp_set_num_threads(threads);
        Json tree = config_path.empty() ? config::defaults() : config::load(config_path);
        const std::string section = config::section_of(command);
        for (const auto& o : overrides) config::apply_override(tree, section, o);

        if (out_dir.empty()) {
            const char* env = std::getenv("BOLAB_OUTPUT_DIR");
            out_dir = env && *env ? env : "bolab_out";
        }
        fs::create_directories(out_dir);
        Context ctx{command, tree, omp_get_max_threads(), Outputs(out_dir)};
        ctx.out.write("config.json", config::dump(tree) + "\n");
        int code = 0;
        try {
            code = handlers.at(command)(ctx);
        } catch (const NumericalError& e) {
            std::cerr << "bolab " << command << ": " << e.what() << "\n";
            write_manifest(ctx, "numerical-failure", 3);
            return 3;
        }
        write_manifest(ctx, code == 0 ? "pass" : "fail", code);
        return code;
    } catch (const NumericalError& e) {
        std::cerr << "bolab " << command << ": " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "bolab " << command << ": " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "bolab " << command << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "bolab " << command << ": unexpected error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace bolab::cli
