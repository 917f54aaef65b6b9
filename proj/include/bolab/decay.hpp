#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bolab/grid.hpp"
#include "bolab/solver.hpp"

namespace bolab::decay {

struct InitialData {
    std::string kind = "soliton";  // soliton | soliton_bump | bump | zero | file
    double speed = 1.0;            // soliton speed c
    double offset = 0.0;           // soliton centre
    double bump_amplitude = 0.05;
    double bump_width = 1.0;
    double bump_center = 0.0;
    std::string file;  // snapshot path for kind == file
};

struct ExperimentConfig {
    std::size_t n_points = 4096;
    double box_length = 400.0;
    InitialData initial;
    double frame_speed = 1.0;
    double T = 10.0;
    double dt = 1e-3;
    long snapshot_stride = 1000;
    int j_min = 2;
    int j_max = 6;
    double epsilon = 0.0;  // <= 0: use the value measured from the initial data
    bool normal_form = false;
    int nf_order = 4;
    int nf_k_min = 0;
    int nf_k_max = 2;
    double nf_p = 100.0;
    solver::SpongeConfig sponge;
    std::vector<int> derivative_orders;  // optional d_x^m shell diagnostics
    std::uint64_t seed = 0;
};

void validate(const ExperimentConfig& cfg);
Field make_initial(const InitialData& in, const Grid& grid);
Field initial_field(const ExperimentConfig& cfg);

struct FitRecord {
    double t;
    std::string series;  // plus | minus | lowpass
    double slope;
    double intercept;
    double r2;
    int shells_used;
    bool skipped;
};

// Series are indexed [shell][time].
struct DecayReport {
    std::vector<int> shells;
    std::vector<double> times;
    std::vector<std::vector<double>> sup_plus, sup_minus;
    std::vector<std::vector<double>> lowpass;      // ||chi_j^+ w_{<=k0(j)}||
    std::vector<std::vector<double>> band_sum;     // ||chi_j^+ sum_k |w_k^+| ||
    std::vector<std::vector<double>> band_sups;    // sum_k ||chi_j^+ w_k^+||
    std::vector<std::vector<double>> high_part;    // ||chi_j^+ (w - w_{<=k0(j)})||
    std::vector<std::vector<double>> tilde_sum;    // sum_k ||chi_j^+ w~_k^+||, normal form only
    std::vector<std::vector<std::vector<double>>> derivative_sup;  // [m][shell][time]
    std::vector<std::vector<char>> clean;
    std::vector<FitRecord> fits;
    double epsilon_meas = 0.0;  // NaN when the initial data gives no fit
    double epsilon_used = 0.0;
    double predicted_exponent = 0.0;
    double truncation_l2 = 0.0;
    double sponge_mass_loss = 0.0;
    double front_frequency = 0.0;
    double front_speed = 0.0;
    std::vector<std::string> log;
    std::string config_json;
};

double bootstrap_predict(double epsilon);
// Steps of eps -> min(1 + 1.5 eps, 2) - 1 needed to reach exponent 2.
int bootstrap_steps(double epsilon0);

// Excess over exponent 1 from the plus-side shell slope, clamped to [0.05, 1].
double measure_epsilon(const Field& w, int j_min, int j_max);

DecayReport run(const ExperimentConfig& cfg);

struct LowFreqEntry {
    double t;
    double slope;
    double threshold;
    bool pass;
    bool vacuous;
};
struct LowFreqCheck {
    std::vector<LowFreqEntry> entries;
    bool all_pass;
};
LowFreqCheck lowfreq_decay_check(const DecayReport& report);

// Latest fit of a series at or before time t.
const FitRecord* find_fit(const DecayReport& report, const std::string& series, double t);

std::string report_to_json(const DecayReport& report);
DecayReport report_from_json(const std::string& text);
void write_report_csv(std::ostream& os, const DecayReport& report);

std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace bolab::decay
