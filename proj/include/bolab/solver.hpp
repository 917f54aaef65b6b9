#pragma once

#include <functional>
#include <vector>

#include "bolab/grid.hpp"

namespace bolab::solver {

enum class Frame { lab, moving };

// Absorbing layer on the leftmost part of the box, where the moving-frame
// linear flow carries radiation. Damping -sigma(x) w with a sin^2 profile.
struct SpongeConfig {
    bool enabled = false;
    double width_fraction = 0.1;
    double strength = 1.0;
};

struct SolverConfig {
    double dt = 1e-3;
    Frame frame = Frame::moving;
    double frame_speed = 1.0;  // used when frame == moving
    bool nonlinear = true;
    SpongeConfig sponge;
    double instability_factor = 10.0;  // abort if sup grows by more between snapshots
};

double effective_speed(const SolverConfig& cfg);

// Spectral state of the integrator; coefficients follow the analyze()
// normalization and are confined to the 2/3 band.
struct SolverState {
    Spectrum spectrum;
    double t = 0.0;
    Field field() const;
};

// Lab-frame soliton 2c / (c^2 (x - x0 - c t)^2 + 1).
Field soliton(const Grid& grid, double c, double x0 = 0.0, double t = 0.0);
double soliton_value(double c, double x);

// Truncates to the dealiased band; returns the state and the removed L^2 norm.
struct PreparedState {
    SolverState state;
    double truncation_l2;
};
PreparedState prepare(const Field& initial, double t0 = 0.0);

double sponge_profile(const Grid& grid, const SpongeConfig& sponge, double x);

// Full right-hand side: linear symbol plus dealiased nonlinear term.
Spectrum rhs(const SolverState& state, const SolverConfig& cfg);

// One integrating-factor RK4 step.
SolverState step(const SolverState& state, const SolverConfig& cfg);

struct Conserved {
    double mass;
    double l2;           // integral of u^2
    double hamiltonian;  // 1/2 int u H u_x - 1/3 int u^3
};
Conserved conserved(const Field& u);

struct LedgerRow {
    double t;
    Conserved q;
};

struct EvolveOptions {
    double T = 1.0;
    long snapshot_stride = 1;  // steps between snapshots
};

struct EvolveResult {
    std::vector<SolverState> snapshots;
    std::vector<LedgerRow> ledger;
    double dt_used;
    long steps;
    double truncation_l2;
};

using SnapshotObserver = std::function<void(const SolverState&)>;

// Steps from the prepared initial data to T, reporting every stride-th step
// and the final state. Throws NumericalError on instability.
EvolveResult evolve(const Field& initial, const SolverConfig& cfg, const EvolveOptions& opts,
                    const SnapshotObserver& observer = {}, bool keep_snapshots = true);

// Shift a moving-frame field (speed c, time t) to lab coordinates.
Field moving_to_lab(const Field& w, double c, double t);
Field lab_to_moving(const Field& u, double c, double t);

}  // namespace bolab::solver
