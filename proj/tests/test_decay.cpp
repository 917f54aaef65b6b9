#include "doctest.h"

#include <cmath>

#include "bolab/decay.hpp"
#include "bolab/solver.hpp"

using namespace bolab;

namespace {

decay::ExperimentConfig small(const std::string& kind, double T) {
    decay::ExperimentConfig c;
    c.n_points = 2048;
    c.box_length = 400.0;
    c.initial.kind = kind;
    c.T = T;
    c.dt = 2e-3;
    c.snapshot_stride = 250;
    c.j_min = 2;
    c.j_max = 6;
    return c;
}

}  // namespace

TEST_CASE("bootstrap prediction") {
    CHECK(decay::bootstrap_predict(0.5) == doctest::Approx(1.75));
    CHECK(decay::bootstrap_predict(1.0) == 2.0);
    CHECK(decay::bootstrap_predict(0.9) == 2.0);
    CHECK_THROWS_AS(decay::bootstrap_predict(0.0), DomainError);
    CHECK_THROWS_AS(decay::bootstrap_predict(-0.2), DomainError);
}

TEST_CASE("bootstrap iteration count") {
    // eps_n = eps_0 (3/2)^n, so the exponent 1 + eps_n reaches 2 once (3/2)^n >= 1/eps_0.
    for (double e0 : {0.1, 0.05, 0.3, 0.7}) {
        const int expected = static_cast<int>(std::ceil(std::log(1.0 / e0) / std::log(1.5)));
        CHECK(decay::bootstrap_steps(e0) == std::max(expected, 1));
    }
    CHECK(decay::bootstrap_steps(0.1) == 6);
}

TEST_CASE("epsilon estimate from initial shell slopes") {
    const Grid g(4096, 1600.0);
    CHECK(decay::measure_epsilon(solver::soliton(g, 1.0), 2, 7) == doctest::Approx(1.0).epsilon(0.05));
    const Field slow = sample(g, [](double x) { return std::pow(1.0 + x * x, -0.75); });
    CHECK(decay::measure_epsilon(slow, 3, 7) == doctest::Approx(0.5).epsilon(0.05));
    const Field fast = sample(g, [](double x) { return std::pow(1.0 + x * x, -2.0); });
    CHECK(decay::measure_epsilon(fast, 2, 7) == 1.0);
    CHECK(std::isnan(decay::measure_epsilon(zeros(g), 2, 7)));
}

TEST_CASE("configuration validation") {
    auto c = small("soliton", 0.1);
    c.j_max = 7;  // 2^7 > L/4
    CHECK_THROWS_AS(decay::validate(c), DomainError);
    c = small("wave", 0.1);
    CHECK_THROWS_AS(decay::validate(c), DomainError);
    c = small("soliton", 0.1);
    c.j_min = 7;
    CHECK_THROWS_AS(decay::validate(c), DomainError);
}

TEST_CASE("zero data: all sups vanish, fits are skipped, low-frequency check passes") {
    const auto rep = decay::run(small("zero", 0.5));
    for (const auto& row : rep.sup_plus)
        for (double v : row) CHECK(v == 0.0);
    for (const auto& f : rep.fits) CHECK(f.skipped);
    const auto lf = decay::lowfreq_decay_check(rep);
    CHECK(lf.all_pass);
    for (const auto& e : lf.entries) CHECK(e.vacuous);
}

TEST_CASE("soliton: exponent two and low-frequency check") {
    const auto rep = decay::run(small("soliton", 1.0));
    CHECK(rep.times.size() == 3);
    for (const auto& f : rep.fits)
        if (f.series == "plus") {
            CHECK_FALSE(f.skipped);
            CHECK(f.slope == doctest::Approx(-2.0).epsilon(0.05));
        }
    CHECK(rep.predicted_exponent == 2.0);
    CHECK(decay::lowfreq_decay_check(rep).all_pass);
}

TEST_CASE("band-sum audits hold") {
    auto c = small("soliton_bump", 0.5);
    c.sponge.enabled = true;
    const auto rep = decay::run(c);
    for (std::size_t s = 0; s < rep.shells.size(); ++s)
        for (std::size_t t = 0; t < rep.times.size(); ++t) {
            CHECK(rep.sup_plus[s][t] >= 0.0);
            CHECK(rep.band_sups[s][t] >= rep.band_sum[s][t] * (1 - 1e-12));
            CHECK(rep.band_sum[s][t] >= 0.5 * rep.high_part[s][t] * (1 - 1e-9) - 1e-15);
        }
}

TEST_CASE("bump data before evolution reports its own decay") {
    auto c = small("bump", 0.0);
    c.initial.bump_amplitude = 1.0;
    c.initial.bump_width = 2.0;
    const auto rep = decay::run(c);
    CHECK(rep.times.size() == 1);
    CHECK(rep.epsilon_meas == 1.0);  // Gaussian tails clamp the estimate
    CHECK(decay::lowfreq_decay_check(rep).all_pass);
}

TEST_CASE("wrapped radiation excludes shells without a sponge") {
    auto c = small("bump", 16.0);
    c.snapshot_stride = 2000;
    const auto rep = decay::run(c);
    bool excluded = false;
    for (const auto& row : rep.clean)
        for (char v : row) excluded = excluded || !v;
    CHECK(excluded);
    CHECK_FALSE(rep.log.empty());
    c.sponge.enabled = true;
    const auto sp = decay::run(c);
    for (const auto& row : sp.clean)
        for (char v : row) CHECK(v);
}

TEST_CASE("sponge is invisible on clean shells before waves reach it") {
    auto c = small("file", 0.0);
    c.initial.kind = "bump";
    c.initial.bump_amplitude = 0.2;
    c.T = 1.0;
    c.snapshot_stride = 100;
    const auto off = decay::run(c);
    c.sponge.enabled = true;
    const auto on = decay::run(c);
    for (std::size_t s = 0; s < off.shells.size(); ++s)
        for (std::size_t t = 0; t < off.times.size(); ++t) {
            if (!off.clean[s][t]) continue;
            CHECK(std::abs(off.sup_plus[s][t] - on.sup_plus[s][t]) <= 1e-10);
            CHECK(std::abs(off.lowpass[s][t] - on.lowpass[s][t]) <= 1e-10);
        }
}

TEST_CASE("identical configurations give identical reports") {
    const auto c = small("soliton_bump", 0.5);
    CHECK(decay::report_to_json(decay::run(c)) == decay::report_to_json(decay::run(c)));
}

TEST_CASE("report JSON round-trip") {
    auto c = small("soliton", 0.5);
    c.derivative_orders = {1};
    const auto rep = decay::run(c);
    const std::string text = decay::report_to_json(rep);
    CHECK(decay::report_to_json(decay::report_from_json(text)) == text);
    CHECK_THROWS_AS(decay::report_from_json("{}"), Error);
}

TEST_CASE("normal-form bands are recorded when enabled") {
    auto c = small("soliton", 0.5);
    c.n_points = 1024;
    c.normal_form = true;
    c.nf_order = 2;
    c.nf_k_min = 0;
    c.nf_k_max = 1;
    const auto rep = decay::run(c);
    REQUIRE(rep.tilde_sum.size() == rep.shells.size());
    CHECK(rep.tilde_sum[0][0] > 0.0);
}
