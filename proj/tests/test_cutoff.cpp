#include "doctest.h"

#include <initializer_list>
#include <cmath>

#include "bolab/cutoff.hpp"

using namespace bolab;

namespace {
// Independent transcription of the base profile.
double psi(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
double profile(double x) { return psi(2.0 - x) / (psi(2.0 - x) + psi(x - 1.0)); }
}  // namespace

TEST_CASE("base profile plateaus and midpoint") {
    for (double x : {-100.0, -1.0, 0.0, 0.5, 1.0}) CHECK(cutoff::base(x) == 1.0);
    for (double x : {2.0, 2.5, 1e6}) CHECK(cutoff::base(x) == 0.0);
    CHECK(cutoff::base(1.5) == doctest::Approx(0.5).epsilon(1e-15));
    for (double x = 1.01; x < 2.0; x += 0.07) CHECK(cutoff::base(x) == doctest::Approx(profile(x)).epsilon(1e-14));
}

TEST_CASE("base profile is monotone with the analytic derivative") {
    double prev = 1.0;
    for (double x = 1.0; x <= 2.0; x += 1e-3) {
        const double v = cutoff::base(x);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    for (double x = 1.05; x < 1.96; x += 0.1) {
        const double h = 1e-6;
        const double fd = (cutoff::base(x + h) - cutoff::base(x - h)) / (2 * h);
        CHECK(cutoff::base_derivative(x) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("dyadic shells telescope and have the expected support") {
    for (double x : {0.3, 1.7, 5.0, 40.0, 300.0}) {
        double sum = 0.0;
        for (int j = -3; j <= 6; ++j) sum += cutoff::shell(j, x);
        CHECK(sum == doctest::Approx(cutoff::le(6, x) - cutoff::le(-4, x)).epsilon(1e-14));
        CHECK(cutoff::range(-3, 6, x) == doctest::Approx(sum).epsilon(1e-14));
    }
    for (int j : {-2, 0, 3}) {
        CHECK(cutoff::shell(j, std::exp2(j - 1) * 0.999) == 0.0);
        CHECK(cutoff::shell(j, std::exp2(j + 1) * 1.001) == 0.0);
        CHECK(cutoff::shell(j, std::exp2(j)) == 1.0);
    }
}

TEST_CASE("one-sided cutoffs equal one on the negative half-line") {
    CHECK(cutoff::le(-5, -3.0) == 1.0);
    CHECK(cutoff::shell(2, -3.0) == 0.0);
    CHECK(cutoff::lt(3, 5.0) == cutoff::le(2, 5.0));
    CHECK(cutoff::ge(3, 5.0) == doctest::Approx(1.0 - cutoff::le(2, 5.0)));
    CHECK(cutoff::le_abs(1, -3.0) == cutoff::le(1, 3.0));
}

TEST_CASE("fractional indices scale continuously") {
    CHECK(cutoff::le(-2.5, 1.5 * std::exp2(-2.5)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cutoff::shell_abs(0.5, -std::exp2(0.5)) == 1.0);
}

TEST_CASE("gauge cutoffs split at k - pN") {
    const double k = 2.0, p = 0.5;
    const int order = 2;
    for (double x : {0.01, 0.3, 1.0, 2.0, 5.0}) {
        CHECK(cutoff::low_gauge(k, order, p, x) == cutoff::le(k - p * order - 1.0, std::abs(x)));
        CHECK(cutoff::low_gauge(k, order, p, x) + cutoff::high_gauge(k, order, p, x) == doctest::Approx(1.0));
    }
}
