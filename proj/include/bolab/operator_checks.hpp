#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bolab::checks {

// One measured quantity with its acceptance band [lo, hi].
struct Measurement {
    std::string suite;
    std::string name;
    double value;
    double lo;
    double hi;
    bool pass() const { return value >= lo && value <= hi; }
};

std::string to_csv(const std::vector<Measurement>& rows);

struct CalculusOptions {
    std::size_t n = 2048;
    double L = 200.0;
    int fields = 1000;
    double tolerance = 1e-10;
    std::uint64_t seed = 1;
};
// Parseval, round trip, multiplier composition, H H = -I, (H + i) = 2i P^-,
// Littlewood-Paley partition of unity. Values are worst relative errors.
std::vector<Measurement> operator_calculus(const CalculusOptions& opts);

struct HilbertOptions {
    std::size_t n = 4096;
    double L = 400.0;
    double tolerance = 1e-4;
    int j_min = 2;  // shell range for the |H S_1| slope
    int j_max = 5;
    double slope_tolerance = 0.15;
};
// H[1/(1+x^2)] against the periodized closed form on the box and against
// x/(1+x^2) on the core |x| <= L/100; slope of |H S_1| over shells.
std::vector<Measurement> hilbert_closed_form(const HilbertOptions& opts);

struct PseudoproductOptions {
    std::size_t n = 512;
    double L = 64.0;
    int trials = 20;
    int holder_pairs = 100;
    double tolerance = 1e-10;
    std::uint64_t seed = 2;
};
// b = 1 product identity (bilinear and cubic), Leibnitz rule, Hölder
// constant stability, grid refinement consistency.
std::vector<Measurement> pseudoproduct_identities(const PseudoproductOptions& opts);

struct LocalityOptions {
    std::size_t n = 16384;
    double L = 4096.0;
    int k = 0;
    int j_min = 3;
    int j_max = 9;
    double min_decay = 2.5;
};
struct LocalityResult {
    std::vector<int> j;
    std::vector<double> sup;  // ||B(f,g)||_inf on [2^j, 2^{j+1}]
    double slope;
    double r2;
};
// Bilinear operator with a compactly supported symbol of limited smoothness
// (|xi - eta|^3 factor); f a bump at the origin, g a low-frequency field.
LocalityResult bilinear_pseudolocality(const LocalityOptions& opts);

struct CommutatorOptions {
    std::size_t n = 65536;
    double L = 4096.0;
    int j_min = 3;
    int j_max = 8;
    int samples = 100;
    std::uint64_t seed = 3;
};
struct CommutatorResult {
    std::vector<int> j;
    std::vector<double> constant;     // max over samples of 2^j ||[chi_j^+, H] f|| / ||f||_1
    std::vector<double> constant_d1;  // same for d_x[chi, H] f with 2^{2j}
    std::vector<double> constant_d2;  // same for d_x^2[chi, H] f with 2^{3j}
    double spread;                    // max |C_j / mean - 1|
    double spread_d1;
    double spread_d2;
};
// Samples are sums of three narrow Gaussians near the origin: below 1e-15
// outside [-3, 3] and resolved up to the Nyquist frequency.
CommutatorResult hilbert_commutator(const CommutatorOptions& opts);

struct PrincipleOptions {
    std::size_t n = 16384;
    double L = 128.0;
    int j = 3;
    int s_min = 2;
    int s_max = 10;
    int fit_s_max = 6;  // C is fitted over [s_min, fit_s_max] before the floor
};
struct PrincipleResult {
    std::vector<int> s;          // j + k
    std::vector<double> ratio;   // ||chi_j^+ P_{<=k}(1 - chi_{~j}) 1||_inf
    std::vector<double> scaled;  // ratio * <2^s>^4
    double c_fit;                // geometric mean of scaled over the fit window
    double worst_over_fit;       // max scaled / c_fit
};
PrincipleResult pseudolocality_principle(const PrincipleOptions& opts);

struct SuiteOptions {
    CalculusOptions calculus;
    HilbertOptions hilbert;
    PseudoproductOptions pseudo;
    LocalityOptions locality;
    CommutatorOptions commutator;
    PrincipleOptions principle;
};
std::vector<Measurement> run_operator_suites(const SuiteOptions& opts);

}  // namespace bolab::checks
