#include "doctest.h"

#include <omp.h>

#include <cmath>
#include <random>

#include "bolab/cutoff.hpp"
#include "bolab/operator_checks.hpp"
#include "bolab/pseudoproduct.hpp"
#include "bolab/random_fields.hpp"
#include "bolab/reference.hpp"
#include "bolab/spectral.hpp"

using namespace bolab;

namespace {

RandomFieldOptions band(double fraction) {
    RandomFieldOptions o;
    o.band_fraction = fraction;
    return o;
}

pseudo::BilinearSymbol smooth_symbol() {
    return {[](double xi, double eta) { return cplx(std::cos(0.3 * xi) / (1.0 + eta * eta), 0.2 * xi * eta); },
            std::nullopt, std::nullopt, "smooth"};
}

}  // namespace

TEST_CASE("constant symbol reproduces sqrt(2 pi) f g") {
    const Grid g(256, 30.0);
    std::mt19937_64 rng(1);
    const Field f = random_field(g, rng, band(0.45));
    const Field h = random_field(g, rng, band(0.45));
    const ComplexField b = pseudo::bilinear_apply(pseudo::constant_symbol(1.0), f, h);
    CHECK(sup_norm(b - std::sqrt(2.0 * M_PI) * to_complex(f * h)) < 1e-12);
}

TEST_CASE("constant cubic symbol reproduces 2 pi f g h") {
    const Grid g(192, 30.0);
    std::mt19937_64 rng(2);
    const ComplexField a = to_complex(random_field(g, rng, band(0.3)));
    const ComplexField b = to_complex(random_field(g, rng, band(0.3)));
    const ComplexField c = to_complex(random_field(g, rng, band(0.3)));
    pseudo::CubicSymbol one{[](double, double, double) { return cplx(1.0); }, std::nullopt, "one"};
    CHECK(sup_norm(pseudo::cubic_apply(one, a, b, c) - 2.0 * M_PI * (a * b * c)) < 1e-12);
}

TEST_CASE("constant quartic symbol reproduces (2 pi)^{3/2} f g h k") {
    const Grid g(128, 20.0);
    std::mt19937_64 rng(3);
    const ComplexField a = to_complex(random_field(g, rng, band(0.2)));
    const ComplexField b = to_complex(random_field(g, rng, band(0.2)));
    const ComplexField c = to_complex(random_field(g, rng, band(0.2)));
    const ComplexField d = to_complex(random_field(g, rng, band(0.2)));
    pseudo::QuarticSymbol one{[](double, double, double, double) { return cplx(1.0); }, std::nullopt, "one"};
    CHECK(sup_norm(pseudo::quartic_apply(one, a, b, c, d) - std::pow(2.0 * M_PI, 1.5) * (a * b * c * d)) < 1e-11);
}

TEST_CASE("parallel applies agree with the serial reference") {
    const Grid g(256, 25.0);
    std::mt19937_64 rng(4);
    const Spectrum f = analyze(random_field(g, rng));
    const Spectrum h = analyze(random_field(g, rng));
    const Spectrum k = analyze(random_field(g, rng));
    auto b = smooth_symbol();
    const Spectrum par = pseudo::bilinear_apply(b, f, h);
    const Spectrum ref = reference::bilinear_apply(b, f, h);
    double d = 0, s = 0;
    for (std::size_t q = 0; q < g.size(); ++q) {
        d = std::max(d, std::abs(par[q] - ref[q]));
        s = std::max(s, std::abs(ref[q]));
    }
    CHECK(d <= 1e-13 * s);

    pseudo::CubicSymbol c{[](double xi, double eta, double sigma) { return cplx(std::cos(xi - eta), sigma); },
                          std::nullopt, "c"};
    const Spectrum cp = pseudo::cubic_apply(c, f, h, k);
    const Spectrum cr = reference::cubic_apply(c, f, h, k);
    d = s = 0;
    for (std::size_t q = 0; q < g.size(); ++q) {
        d = std::max(d, std::abs(cp[q] - cr[q]));
        s = std::max(s, std::abs(cr[q]));
    }
    CHECK(d <= 1e-13 * s);
}

TEST_CASE("support hints do not change the result") {
    const Grid g(256, 25.0);
    std::mt19937_64 rng(6);
    const Field f = random_field(g, rng), h = random_field(g, rng);
    auto eval = [](double xi, double eta) {
        return cplx(cutoff::shell_abs(1.0, xi) * cutoff::le_abs(0.0, eta));
    };
    pseudo::BilinearSymbol hinted{eval, pseudo::Interval{-4.0, 4.0}, pseudo::Interval{-2.0, 2.0}, "hinted"};
    pseudo::BilinearSymbol plain{eval, std::nullopt, std::nullopt, "plain"};
    CHECK(sup_norm(pseudo::bilinear_apply(hinted, f, h) - pseudo::bilinear_apply(plain, f, h)) < 1e-15);
}

TEST_CASE("results do not depend on the thread count") {
    const Grid g(256, 25.0);
    std::mt19937_64 rng(7);
    const Field f = random_field(g, rng), h = random_field(g, rng);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const ComplexField one = pseudo::bilinear_apply(smooth_symbol(), f, h);
    omp_set_num_threads(4);
    const ComplexField four = pseudo::bilinear_apply(smooth_symbol(), f, h);
    omp_set_num_threads(saved);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(one[i] == four[i]);
}

TEST_CASE("Leibnitz rule") {
    const Grid g(256, 25.0);
    std::mt19937_64 rng(8);
    const auto r = pseudo::leibnitz_check(smooth_symbol(), to_complex(random_field(g, rng)),
                                          to_complex(random_field(g, rng)));
    CHECK(r.residual <= 1e-10 * r.scale);
}

TEST_CASE("grid mismatch and non-finite symbols are rejected") {
    const Field a = zeros(Grid(64, 10.0)), b = zeros(Grid(64, 11.0));
    CHECK_THROWS_AS(pseudo::bilinear_apply(pseudo::constant_symbol(1.0), a, b), ShapeError);
    const Grid g(64, 10.0);
    const Field one = sample(g, [](double) { return 1.0; });
    pseudo::BilinearSymbol bad{[](double, double) { return cplx(NAN); }, std::nullopt, std::nullopt, "bad"};
    CHECK_THROWS_AS(pseudo::bilinear_apply(bad, one, one), NumericalError);
}

TEST_CASE("zero inputs give zero") {
    const Grid g(64, 10.0);
    CHECK(sup_norm(pseudo::bilinear_apply(smooth_symbol(), zeros(g), zeros(g))) == 0.0);
}

TEST_CASE("pseudoproduct suite: identities, Hölder stability, refinement") {
    checks::PseudoproductOptions o;
    o.trials = 5;
    for (const auto& m : checks::pseudoproduct_identities(o)) {
        INFO(m.name << " = " << m.value);
        CHECK(m.pass());
    }
}

TEST_CASE("bilinear pseudolocality decays faster than the third power") {
    const auto r = checks::bilinear_pseudolocality({});
    INFO("slope " << r.slope);
    CHECK(-r.slope >= 2.5);
    for (std::size_t i = 1; i < r.sup.size(); ++i) CHECK(r.sup[i] < r.sup[i - 1]);
}
