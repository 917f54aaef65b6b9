#include "bolab/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bolab/error.hpp"

namespace bolab::config {

namespace {

Json initial_defaults() {
    return {{"kind", "soliton"}, {"speed", 1.0},      {"offset", 0.0}, {"bump_amplitude", 0.05},
            {"bump_width", 1.0}, {"bump_center", 0.0}, {"file", ""}};
}

Json sponge_defaults(bool enabled) { return {{"enabled", enabled}, {"width_fraction", 0.1}, {"strength", 1.0}}; }

bool compatible(const Json& def, const Json& v) {
    if (def.is_boolean()) return v.is_boolean();
    if (def.is_string()) return v.is_string();
    if (def.is_number_float()) return v.is_number();
    if (def.is_number_integer()) {
        if (v.is_number_integer()) return true;
        return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
    }
    if (def.is_array()) {
        if (!v.is_array()) return false;
        for (const auto& e : v)
            if (!e.is_number()) return false;
        return true;
    }
    if (def.is_object()) return v.is_object();
    return false;
}

Json coerce(const Json& def, const Json& v) {
    if (def.is_number_float()) return Json(v.get<double>());
    if (def.is_number_integer() && v.is_number_float()) return Json(static_cast<std::int64_t>(v.get<double>()));
    return v;
}

void merge(Json& target, const Json& input, const std::string& path) {
    if (!input.is_object()) throw ConfigError("expected an object at '" + (path.empty() ? "<root>" : path) + "'");
    for (auto it = input.begin(); it != input.end(); ++it) {
        const std::string key = path.empty() ? it.key() : path + "." + it.key();
        if (!target.contains(it.key())) throw ConfigError("unknown key '" + key + "'");
        Json& slot = target[it.key()];
        if (slot.is_object()) {
            merge(slot, it.value(), key);
        } else {
            if (!compatible(slot, it.value())) throw ConfigError("wrong type for '" + key + "'");
            slot = coerce(slot, it.value());
        }
    }
}

void find_leaves(const Json& node, const std::string& name, const std::string& path,
                 std::vector<std::string>& out) {
    if (!node.is_object()) return;
    for (auto it = node.begin(); it != node.end(); ++it) {
        const std::string p = path.empty() ? it.key() : path + "." + it.key();
        if (it.key() == name && !it.value().is_object()) out.push_back(p);
        find_leaves(it.value(), name, p, out);
    }
}

Json* resolve(Json& root, const std::string& dotted) {
    Json* node = &root;
    std::stringstream ss(dotted);
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (!node->is_object() || !node->contains(part)) return nullptr;
        node = &(*node)[part];
    }
    return node;
}

decay::InitialData initial_from(const Json& j) {
    decay::InitialData in;
    in.kind = j.at("kind").get<std::string>();
    in.speed = j.at("speed").get<double>();
    in.offset = j.at("offset").get<double>();
    in.bump_amplitude = j.at("bump_amplitude").get<double>();
    in.bump_width = j.at("bump_width").get<double>();
    in.bump_center = j.at("bump_center").get<double>();
    in.file = j.at("file").get<std::string>();
    return in;
}

solver::SpongeConfig sponge_from(const Json& j) {
    return {j.at("enabled").get<bool>(), j.at("width_fraction").get<double>(), j.at("strength").get<double>()};
}

}  // namespace

Json defaults() {
    Json t;
    t["seed"] = 20240611;
    t["evolve"] = {{"n", 4096},
                   {"L", 400.0},
                   {"initial", initial_defaults()},
                   {"frame", "moving"},
                   {"frame_speed", 1.0},
                   {"T", 10.0},
                   {"dt", 1e-3},
                   {"snapshot_stride", 1000},
                   {"nonlinear", true},
                   {"sponge", sponge_defaults(false)},
                   {"write_snapshots", true}};
    t["measure_decay"] = {{"n", 4096},
                          {"L", 400.0},
                          {"initial", initial_defaults()},
                          {"frame_speed", 1.0},
                          {"T", 10.0},
                          {"dt", 1e-3},
                          {"snapshot_stride", 1000},
                          {"j_min", 2},
                          {"j_max", 6},
                          {"epsilon", 0.0},
                          {"normal_form", {{"enabled", false}, {"N", 4}, {"k_min", 0}, {"k_max", 2}, {"p", 100.0}}},
                          {"sponge", sponge_defaults(true)},
                          {"derivative_orders", Json::array()}};
    t["verify_operators"] = {
        {"calculus", {{"n", 2048}, {"L", 200.0}, {"fields", 1000}, {"tolerance", 1e-10}}},
        {"hilbert",
         {{"n", 4096}, {"L", 400.0}, {"tolerance", 1e-4}, {"j_min", 2}, {"j_max", 5}, {"slope_tolerance", 0.15}}},
        {"pseudoproduct", {{"n", 512}, {"L", 64.0}, {"trials", 20}, {"holder_pairs", 100}, {"tolerance", 1e-10}}},
        {"locality", {{"n", 16384}, {"L", 4096.0}, {"k", 0}, {"j_min", 3}, {"j_max", 9}, {"min_decay", 2.5}}},
        {"commutator", {{"n", 65536}, {"L", 4096.0}, {"j_min", 3}, {"j_max", 8}, {"samples", 100}}},
        {"principle", {{"n", 16384}, {"L", 128.0}, {"j", 3}, {"s_min", 2}, {"s_max", 10}, {"fit_s_max", 6}}}};
    t["verify_normal_form"] = {{"n", 1024},
                               {"L", 8.0 * std::numbers::pi},
                               {"k", 1},
                               {"N", 4},
                               {"p", 100.0},
                               {"fields", 10},
                               {"band_fraction", 0.1},
                               {"tolerance", 1e-8},
                               {"inject_symbol_fault", false},
                               {"residual",
                                {{"enabled", true},
                                 {"n", 4096},
                                 {"L", 400.0},
                                 {"dt", 1e-3},
                                 {"snapshots", 5},
                                 {"soliton_speed", 1.0},
                                 {"tolerance", 1e-3}}}};
    t["verify_kernels"] = {{"variant", "low_left"},
                           {"j", 0},
                           {"k", 0.0},
                           {"a", 1},
                           {"ell", 0},
                           {"epsilon", 0.5},
                           {"positive_only", false},
                           {"sweep", "t"},
                           {"values", {16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0, 2048.0}},
                           {"fixed_t", 1.0},
                           {"nx", 48},
                           {"ny", 0},
                           {"rel_tol", 1e-13},
                           {"max_slope", -2.8}};
    t["report"] = {{"input", ""}};
    return t;
}

Json parse(std::string_view text) {
    Json input;
    try {
        input = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    Json tree = defaults();
    merge(tree, input, "");
    return tree;
}

Json load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read configuration file '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

std::string dump(const Json& tree) { return tree.dump(2); }

std::string section_of(std::string_view command) {
    std::string s(command);
    for (char& c : s)
        if (c == '-') c = '_';
    return s;
}

void apply_override(Json& tree, std::string_view section, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) throw ConfigError("override must be key=value: '" +
                                                                   std::string(assignment) + "'");
    const std::string key(assignment.substr(0, eq));
    const std::string raw(assignment.substr(eq + 1));
    Json value;
    try {
        value = Json::parse(raw);
    } catch (const Json::parse_error&) {
        value = raw;
    }

    const std::string sec(section);
    Json* slot = nullptr;
    std::string where;
    if (key.find('.') != std::string::npos) {
        if (tree.contains(sec) && (slot = resolve(tree[sec], key))) where = sec + "." + key;
        else if ((slot = resolve(tree, key))) where = key;
    } else if (tree.contains(sec) && tree[sec].is_object() && tree[sec].contains(key) && !tree[sec][key].is_object()) {
        slot = &tree[sec][key];
        where = sec + "." + key;
    } else {
        std::vector<std::string> hits;
        if (tree.contains(sec)) find_leaves(tree[sec], key, sec, hits);
        if (hits.size() > 1) throw ConfigError("override key '" + key + "' is ambiguous; use a dotted path");
        if (hits.size() == 1) {
            where = hits.front();
            slot = resolve(tree, where);
        } else if (tree.contains(key) && !tree[key].is_object()) {
            slot = &tree[key];
            where = key;
        }
    }
    if (!slot) throw ConfigError("unknown override key '" + key + "'");
    if (slot->is_object()) throw ConfigError("override '" + where + "' names a section");
    if (!compatible(*slot, value)) throw ConfigError("wrong type for override '" + where + "'");
    *slot = coerce(*slot, value);
}

EvolveConfig evolve_config(const Json& tree) {
    const Json& s = tree.at("evolve");
    EvolveConfig c;
    c.n = s.at("n").get<std::size_t>();
    c.L = s.at("L").get<double>();
    c.initial = initial_from(s.at("initial"));
    const auto frame = s.at("frame").get<std::string>();
    if (frame != "moving" && frame != "lab") throw ConfigError("frame must be 'moving' or 'lab'");
    c.solver.frame = frame == "moving" ? solver::Frame::moving : solver::Frame::lab;
    c.solver.frame_speed = s.at("frame_speed").get<double>();
    c.solver.dt = s.at("dt").get<double>();
    c.solver.nonlinear = s.at("nonlinear").get<bool>();
    c.solver.sponge = sponge_from(s.at("sponge"));
    c.T = s.at("T").get<double>();
    c.snapshot_stride = s.at("snapshot_stride").get<long>();
    c.write_snapshots = s.at("write_snapshots").get<bool>();
    if (!(c.T >= 0.0) || !(c.solver.dt > 0.0) || c.snapshot_stride < 1)
        throw ConfigError("evolve needs T >= 0, dt > 0 and a positive snapshot stride");
    return c;
}

decay::ExperimentConfig experiment_config(const Json& tree) {
    const Json& s = tree.at("measure_decay");
    decay::ExperimentConfig c;
    c.n_points = s.at("n").get<std::size_t>();
    c.box_length = s.at("L").get<double>();
    c.initial = initial_from(s.at("initial"));
    c.frame_speed = s.at("frame_speed").get<double>();
    c.T = s.at("T").get<double>();
    c.dt = s.at("dt").get<double>();
    c.snapshot_stride = s.at("snapshot_stride").get<long>();
    c.j_min = s.at("j_min").get<int>();
    c.j_max = s.at("j_max").get<int>();
    c.epsilon = s.at("epsilon").get<double>();
    const Json& nf = s.at("normal_form");
    c.normal_form = nf.at("enabled").get<bool>();
    c.nf_order = nf.at("N").get<int>();
    c.nf_k_min = nf.at("k_min").get<int>();
    c.nf_k_max = nf.at("k_max").get<int>();
    c.nf_p = nf.at("p").get<double>();
    c.sponge = sponge_from(s.at("sponge"));
    c.derivative_orders = s.at("derivative_orders").get<std::vector<int>>();
    c.seed = seed(tree);
    return c;
}

NormalFormCheck normal_form_check(const Json& tree) {
    const Json& s = tree.at("verify_normal_form");
    const Json& r = s.at("residual");
    NormalFormCheck c{s.at("n").get<std::size_t>(),
                      s.at("L").get<double>(),
                      s.at("k").get<int>(),
                      s.at("N").get<int>(),
                      s.at("p").get<double>(),
                      s.at("fields").get<int>(),
                      s.at("band_fraction").get<double>(),
                      s.at("tolerance").get<double>(),
                      s.at("inject_symbol_fault").get<bool>(),
                      r.at("enabled").get<bool>(),
                      r.at("n").get<std::size_t>(),
                      r.at("L").get<double>(),
                      r.at("dt").get<double>(),
                      r.at("snapshots").get<int>(),
                      r.at("soliton_speed").get<double>(),
                      r.at("tolerance").get<double>()};
    if (c.fields < 1) throw ConfigError("verify_normal_form.fields must be positive");
    if (c.N < 0) throw ConfigError("verify_normal_form.N must be non-negative");
    if (c.residual_snapshots < 3) throw ConfigError("residual needs at least three snapshots");
    return c;
}

KernelCheck kernel_check(const Json& tree) {
    const Json& s = tree.at("verify_kernels");
    KernelCheck c;
    try {
        c.spec.variant = kernels::parse_variant(s.at("variant").get<std::string>());
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    c.spec.j = s.at("j").get<int>();
    c.spec.k = s.at("k").get<double>();
    c.spec.a = s.at("a").get<int>();
    c.spec.ell = s.at("ell").get<int>();
    c.spec.epsilon = s.at("epsilon").get<double>();
    c.spec.positive_only = s.at("positive_only").get<bool>();
    c.spec.t = s.at("fixed_t").get<double>();
    c.sweep = s.at("sweep").get<std::string>();
    if (c.sweep != "t" && c.sweep != "j") throw ConfigError("verify_kernels.sweep must be 't' or 'j'");
    c.values = s.at("values").get<std::vector<double>>();
    if (c.values.size() < 4) throw ConfigError("a kernel sweep needs at least four values");
    c.sampling.nx = s.at("nx").get<int>();
    c.sampling.ny = s.at("ny").get<int>();
    c.rel_tol = s.at("rel_tol").get<double>();
    c.max_slope = s.at("max_slope").get<double>();
    return c;
}

checks::SuiteOptions operator_suite(const Json& tree) {
    const Json& s = tree.at("verify_operators");
    checks::SuiteOptions o;
    const std::uint64_t base = seed(tree);
    const Json& c = s.at("calculus");
    o.calculus = {c.at("n").get<std::size_t>(), c.at("L").get<double>(), c.at("fields").get<int>(),
                  c.at("tolerance").get<double>(), base + 1};
    const Json& h = s.at("hilbert");
    o.hilbert = {h.at("n").get<std::size_t>(), h.at("L").get<double>(), h.at("tolerance").get<double>(),
                 h.at("j_min").get<int>(), h.at("j_max").get<int>(), h.at("slope_tolerance").get<double>()};
    const Json& p = s.at("pseudoproduct");
    o.pseudo = {p.at("n").get<std::size_t>(), p.at("L").get<double>(), p.at("trials").get<int>(),
                p.at("holder_pairs").get<int>(), p.at("tolerance").get<double>(), base + 2};
    const Json& l = s.at("locality");
    o.locality = {l.at("n").get<std::size_t>(), l.at("L").get<double>(), l.at("k").get<int>(),
                  l.at("j_min").get<int>(), l.at("j_max").get<int>(), l.at("min_decay").get<double>()};
    const Json& m = s.at("commutator");
    o.commutator = {m.at("n").get<std::size_t>(), m.at("L").get<double>(), m.at("j_min").get<int>(),
                    m.at("j_max").get<int>(), m.at("samples").get<int>(), base + 3};
    const Json& r = s.at("principle");
    o.principle = {r.at("n").get<std::size_t>(), r.at("L").get<double>(), r.at("j").get<int>(),
                   r.at("s_min").get<int>(), r.at("s_max").get<int>(), r.at("fit_s_max").get<int>()};
    return o;
}

std::uint64_t seed(const Json& tree) { return tree.at("seed").get<std::uint64_t>(); }

}  // namespace bolab::config
