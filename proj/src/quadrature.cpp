#include "bolab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "bolab/error.hpp"

namespace bolab::quad {
namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    std::complex<double> value;
    double error;
    double l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const std::complex<double> fc = f(c);
    std::complex<double> k = kWgk[7] * fc;
    std::complex<double> g = kWg[3] * fc;
    double l1 = kWgk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const std::complex<double> f1 = f(c - h * kXgk[i]);
        const std::complex<double> f2 = f(c + h * kXgk[i]);
        k += kWgk[i] * (f1 + f2);
        l1 += kWgk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) g += kWg[i / 2] * (f1 + f2);
    }
    return {a, b, k * h, std::abs((k - g) * h), l1 * std::abs(h)};
}

}  // namespace

Result integrate(const Integrand& f, std::span<const double> breakpoints, const Options& opts,
                 std::size_t initial_split) {
    if (breakpoints.size() < 2) throw DomainError("quadrature", "need at least two breakpoints");
    std::priority_queue<Panel> heap;
    std::complex<double> value(0.0);
    double error = 0.0, l1 = 0.0;
    const std::size_t split = std::max<std::size_t>(1, initial_split);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i], b = breakpoints[i + 1];
        if (!(b > a)) continue;
        for (std::size_t s = 0; s < split; ++s) {
            const double lo = a + (b - a) * static_cast<double>(s) / static_cast<double>(split);
            const double hi = a + (b - a) * static_cast<double>(s + 1) / static_cast<double>(split);
            Panel p = gk15(f, lo, hi);
            value += p.value;
            error += p.error;
            l1 += p.l1;
            heap.push(p);
        }
    }
    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * l1); };
    while (!heap.empty() && error > target() && heap.size() < opts.max_panels) {
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            break;
        }
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to remove drift from the running updates.
    value = 0.0;
    error = 0.0;
    l1 = 0.0;
    const std::size_t panels = heap.size();
    std::vector<Panel> all;
    all.reserve(panels);
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const Panel& p : all) {
        value += p.value;
        error += p.error;
        l1 += p.l1;
    }
    const bool ok = error <= std::max(opts.abs_tol, opts.rel_tol * l1) && std::isfinite(value.real()) &&
                    std::isfinite(value.imag());
    return {value, error, l1, panels, ok};
}

Result integrate(const Integrand& f, double a, double b, const Options& opts, std::size_t initial_split) {
    const double bp[2] = {a, b};
    return integrate(f, std::span<const double>(bp, 2), opts, initial_split);
}

}  // namespace bolab::quad
