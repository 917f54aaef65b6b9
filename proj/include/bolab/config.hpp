#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bolab/decay.hpp"
#include "bolab/kernels.hpp"
#include "bolab/operator_checks.hpp"
#include "bolab/solver.hpp"
#include "json.hpp"

// Configuration tree: a JSON object whose keys are fixed by defaults().
// Input files may give any subset of keys; unknown keys and type changes are
// rejected. Overrides are "path=value" where path is dotted (relative to the
// command's section or to the root) or a bare leaf name that is a direct key
// of the section or unique within it.
namespace bolab::config {

using Json = nlohmann::json;

Json defaults();
Json parse(std::string_view text);
Json load(const std::string& path);
std::string dump(const Json& tree);

// Section name for a subcommand: "measure-decay" -> "measure_decay".
std::string section_of(std::string_view command);

void apply_override(Json& tree, std::string_view section, std::string_view assignment);

struct EvolveConfig {
    std::size_t n;
    double L;
    decay::InitialData initial;
    solver::SolverConfig solver;
    double T;
    long snapshot_stride;
    bool write_snapshots;
};
EvolveConfig evolve_config(const Json& tree);

decay::ExperimentConfig experiment_config(const Json& tree);

struct NormalFormCheck {
    std::size_t n;
    double L;
    int k;
    int N;
    double p;
    int fields;
    double band_fraction;
    double tolerance;
    bool inject_symbol_fault;
    bool residual_enabled;
    std::size_t residual_n;
    double residual_L;
    double residual_dt;
    int residual_snapshots;
    double residual_speed;
    double residual_tolerance;
};
NormalFormCheck normal_form_check(const Json& tree);

struct KernelCheck {
    kernels::KernelSpec spec;
    std::string sweep;  // "t" or "j"
    std::vector<double> values;
    kernels::Sampling sampling;
    double rel_tol;
    double max_slope;
};
KernelCheck kernel_check(const Json& tree);

checks::SuiteOptions operator_suite(const Json& tree);

std::uint64_t seed(const Json& tree);

}  // namespace bolab::config
