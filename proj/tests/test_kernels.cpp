#include "doctest.h"

#include <cmath>
#include <sstream>

#include "bolab/cutoff.hpp"
#include "bolab/kernels.hpp"
#include "bolab/reference.hpp"

using namespace bolab;
using kernels::KernelSpec;
using kernels::Variant;

namespace {

// Trapezoid rule on a fine grid: the integrand is smooth and compactly
// supported, so this converges spectrally and shares no code with the
// adaptive quadrature.
cplx trapezoid(double lo, double hi, int n, const std::function<cplx(double)>& f) {
    const double h = (hi - lo) / n;
    cplx s = 0.5 * (f(lo) + f(hi));
    for (int i = 1; i < n; ++i) s += f(lo + i * h);
    return h * s;
}

}  // namespace

TEST_CASE("variant names round-trip") {
    for (auto v : {Variant::low_left, Variant::dyadic_left, Variant::low_right, Variant::dyadic_right,
                   Variant::schrodinger})
        CHECK(kernels::parse_variant(kernels::variant_name(v)) == v);
    CHECK_THROWS_AS(kernels::parse_variant("nope"), DomainError);
}

TEST_CASE("right variants enforce their waiting time") {
    KernelSpec s;
    s.variant = Variant::low_right;
    s.j = 2;
    s.ell = -7;
    s.t = std::exp2(3.0) * 0.99;
    CHECK_THROWS_AS(kernels::validate(s), PreconditionError);
    s.t = std::exp2(3.0) * 1.01;
    CHECK_NOTHROW(kernels::validate(s));
    s.ell = -9;
    CHECK_THROWS_AS(kernels::validate(s), PreconditionError);
    s.variant = Variant::dyadic_right;
    s.ell = -7;
    s.k = 2.0;
    s.t = std::exp2(3.0) / std::sqrt(17.0) * 1.01;
    CHECK_NOTHROW(kernels::validate(s));
}

TEST_CASE("frequency integral matches an independent trapezoid sum") {
    KernelSpec s;
    s.variant = Variant::low_left;
    s.j = 2;
    s.a = 1;
    s.t = 3.0;
    const double r = 5.5;
    const double k0 = kernels::low_band(s);
    const auto fi = kernels::frequency_integral(s, r);
    const double edge = std::exp2(k0 + 1.0);
    const cplx ref = trapezoid(-edge, edge, 200000, [&](double xi) {
        return cutoff::le_abs(k0, xi) * xi * std::exp(cplx(0.0, xi * (r + s.t) + s.t * std::abs(xi) * xi));
    });
    CHECK(fi.converged);
    CHECK(std::abs(fi.value - ref) < 1e-10 * std::max(1.0, fi.scale));

    s.variant = Variant::schrodinger;
    s.k = 1.0;
    const auto fs = kernels::frequency_integral(s, r);
    const cplx rs = trapezoid(0.5, 4.0, 200000, [&](double xi) {
        return cutoff::shell(1.0, xi) * xi * std::exp(cplx(0.0, xi * r + s.t * (xi + xi * xi)));
    });
    CHECK(std::abs(fs.value - rs) < 1e-10 * std::max(1.0, fs.scale));
}

TEST_CASE("parallel kernel sup matches the serial reference") {
    KernelSpec s;
    s.variant = Variant::dyadic_left;
    s.j = 1;
    s.k = 0.0;
    s.a = 1;
    s.t = 4.0;
    const kernels::Sampling sm{6, 6};
    const auto par = kernels::kernel_sup(s, sm);
    const auto ref = reference::kernel_sup(s, sm);
    CHECK(par.sup == doctest::Approx(ref.sup).epsilon(1e-12));
    CHECK(par.x_at == ref.x_at);
    CHECK(par.y_at == ref.y_at);
    CHECK(par.all_converged);
}

TEST_CASE("Schrodinger reduction of the positive-frequency kernel") {
    KernelSpec bo;
    bo.variant = Variant::dyadic_left;
    bo.positive_only = true;
    bo.j = 2;
    bo.k = 1.0;
    bo.a = 1;
    bo.t = 8.0;
    KernelSpec sch = bo;
    sch.variant = Variant::schrodinger;
    sch.positive_only = false;
    for (double x : {2.5, 3.7, 6.0})
        for (double y : {-3.0, -10.0}) {
            const auto a = kernels::kernel_value(bo, x, y);
            const auto b = kernels::kernel_value(sch, x, y);
            CHECK(std::abs(a.value - b.value) <= 1e-10 * std::max(std::abs(b.value), 1e-300));
        }
}

TEST_CASE("decay fit recovers an exact power law") {
    std::vector<std::pair<double, double>> pts;
    for (int j = 0; j < 6; ++j) pts.emplace_back(j, 3.0 * std::exp2(-2.5 * j));
    const auto f = kernels::fit_decay(pts);
    CHECK(f.slope == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0));
    pts.resize(3);
    CHECK_THROWS_AS(kernels::fit_decay(pts), DomainError);
}

TEST_CASE("sweep CSV layout") {
    std::ostringstream os;
    const std::vector<kernels::SweepRow> rows{{KernelSpec{}, 0.5, true}};
    kernels::write_sweep_csv(os, rows);
    CHECK(os.str().rfind("variant,j,k,a,ell,t,sup,quad_flag\n", 0) == 0);
}

TEST_CASE("low-frequency kernel decays in time") {
    KernelSpec s;
    s.variant = Variant::low_left;
    s.j = 0;
    s.a = 1;
    const kernels::Sampling sm{12, 0};
    std::vector<std::pair<double, double>> pts;
    for (int p = 6; p <= 9; ++p) {
        s.t = std::exp2(p);
        pts.emplace_back(p, kernels::kernel_sup(s, sm).sup);
    }
    CHECK(kernels::fit_decay(pts).slope <= -2.5);
}
