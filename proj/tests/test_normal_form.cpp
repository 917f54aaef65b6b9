#include "doctest.h"

#include <cmath>

#include "bolab/normal_form.hpp"
#include "bolab/solver.hpp"

using namespace bolab;

namespace {

std::vector<nf::TimedField> soliton_run(const Grid& g, double h, int count, bool nonlinear = true) {
    solver::SolverConfig c;
    c.dt = h;
    c.frame = solver::Frame::lab;
    c.nonlinear = nonlinear;
    const auto evo = solver::evolve(solver::soliton(g, 1.0), c, {h * (count - 1), 1});
    std::vector<nf::TimedField> out;
    for (const auto& s : evo.snapshots) out.push_back({s.t, s.field()});
    return out;
}

}  // namespace

TEST_CASE("truncated exponential") {
    CHECK(nf::truncated_exp(0, 3.0) == cplx(1.0));
    CHECK(nf::truncated_exp(-1, 3.0) == cplx(0.0));
    CHECK(std::abs(nf::truncated_exp(1, 0.5) - cplx(1.0, -0.5)) < 1e-15);
    CHECK(std::abs(nf::truncated_exp(30, 1.3) - std::exp(cplx(0.0, -1.3))) < 1e-14);
}

TEST_CASE("transform of zero data is zero") {
    const Grid g(256, 50.0);
    const auto t = nf::transform(zeros(g), 1, 2);
    CHECK(sup_norm(t.v) == 0.0);
    CHECK(sup_norm(t.gauge - sample_complex(g, [](double) { return cplx(1.0); })) == 0.0);
}

TEST_CASE("linear flow: the projected band solves the free equation") {
    const Grid g(1024, 100.0);
    nf::ResidualOptions o;
    o.linear_dynamics = true;
    o.disable_B = true;
    const auto a = nf::transformed_residual(soliton_run(g, 1e-3, 3, false), 1, 0, o);
    const auto b = nf::transformed_residual(soliton_run(g, 5e-4, 3, false), 1, 0, o);
    CHECK(a.residual_inf / b.residual_inf == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("transformed-equation residual converges at second order") {
    const Grid g(1024, 100.0);
    double prev = 0.0;
    for (double h : {2e-3, 1e-3, 5e-4}) {
        const auto r = nf::transformed_residual(soliton_run(g, h, 5, true), 1, 2);
        CHECK(r.relative() < 1e-3);
        CHECK(std::isfinite(r.budget_dt2));
        if (prev > 0.0) CHECK(prev / r.residual_inf == doctest::Approx(4.0).epsilon(0.15));
        prev = r.residual_inf;
    }
}

TEST_CASE("the printed right side misses the finite-box mass terms") {
    const Grid g(1024, 100.0);
    const auto r = nf::transformed_residual(soliton_run(g, 1e-3, 3, true), 1, 2);
    CHECK(r.residual_printed > 10.0 * r.residual_inf);
    CHECK(r.budget_massL > 0.0);
    CHECK(r.residual_printed == doctest::Approx(r.budget_massL).epsilon(0.2));
}

TEST_CASE("residual input validation") {
    const Grid g(128, 20.0);
    const Field u = solver::soliton(g, 1.0);
    std::vector<nf::TimedField> two{{0.0, u}, {0.1, u}};
    CHECK_THROWS_AS(nf::transformed_residual(two, 1, 2), DomainError);
    std::vector<nf::TimedField> uneven{{0.0, u}, {0.1, u}, {0.3, u}};
    CHECK_THROWS_AS(nf::transformed_residual(uneven, 1, 2), DomainError);
}
