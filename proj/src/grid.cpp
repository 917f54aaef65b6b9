#include "bolab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bolab {

Grid::Grid(std::size_t n_points, double box_length) : n_(n_points), length_(box_length) {
    if (n_points < 4 || n_points % 2 != 0)
        throw ShapeError("grid size must be even and >= 4, got " + std::to_string(n_points));
    if (!std::isfinite(box_length) || box_length <= 0.0)
        throw DomainError("grid", "box length must be positive and finite");
}

double Grid::dxi() const noexcept { return 2.0 * std::numbers::pi / length_; }

double Grid::nyquist() const noexcept { return std::numbers::pi * static_cast<double>(n_) / length_; }

long Grid::mode(std::size_t q) const noexcept {
    const long n = static_cast<long>(n_);
    const long iq = static_cast<long>(q);
    return iq < n / 2 ? iq : iq - n;
}

double Grid::xi(std::size_t q) const noexcept { return dxi() * static_cast<double>(mode(q)); }

std::size_t Grid::index_of_mode(long m) const {
    const long n = static_cast<long>(n_);
    if (m < -n / 2 || m >= n / 2) throw DomainError("mode", "mode " + std::to_string(m) + " off the lattice");
    return static_cast<std::size_t>(m >= 0 ? m : m + n);
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw ShapeError("operands live on different grids");
}

Field sample(const Grid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
    return Field(grid, std::move(v));
}

ComplexField sample_complex(const Grid& grid, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
    return ComplexField(grid, std::move(v));
}

Field zeros(const Grid& grid) { return Field(grid, std::vector<double>(grid.size(), 0.0)); }

ComplexField to_complex(const Field& f) {
    std::vector<cplx> v(f.values().begin(), f.values().end());
    return ComplexField(f.grid(), std::move(v));
}

Field real_part(const ComplexField& f) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i].real();
    return Field(f.grid(), std::move(v));
}

Field imag_part(const ComplexField& f) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i].imag();
    return Field(f.grid(), std::move(v));
}

namespace {

template <class Out, class A, class B, class Op>
Out zip(const A& a, const B& b, Op op) {
    require_same_grid(a.grid(), b.grid());
    std::vector<typename Out::value_type> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
    return Out(a.grid(), std::move(v));
}

template <class Arr>
double sup_of(const Arr& f) {
    double m = 0.0;
    for (const auto& z : f.values()) m = std::max(m, std::abs(z));
    return m;
}

template <class Arr>
double sumsq(const Arr& f) {
    double s = 0.0;
    for (const auto& z : f.values()) s += std::norm(z);
    return s;
}

}  // namespace

Field operator+(const Field& a, const Field& b) { return zip<Field>(a, b, std::plus<>()); }
Field operator-(const Field& a, const Field& b) { return zip<Field>(a, b, std::minus<>()); }
Field operator*(const Field& a, const Field& b) { return zip<Field>(a, b, std::multiplies<>()); }
Field operator*(double s, const Field& a) {
    std::vector<double> v(a.values().begin(), a.values().end());
    for (auto& z : v) z *= s;
    return Field(a.grid(), std::move(v));
}
ComplexField operator+(const ComplexField& a, const ComplexField& b) {
    return zip<ComplexField>(a, b, std::plus<>());
}
ComplexField operator-(const ComplexField& a, const ComplexField& b) {
    return zip<ComplexField>(a, b, std::minus<>());
}
ComplexField operator*(const ComplexField& a, const ComplexField& b) {
    return zip<ComplexField>(a, b, std::multiplies<>());
}
ComplexField operator*(cplx s, const ComplexField& a) {
    std::vector<cplx> v(a.values().begin(), a.values().end());
    for (auto& z : v) z *= s;
    return ComplexField(a.grid(), std::move(v));
}
ComplexField operator*(const Field& a, const ComplexField& b) {
    return zip<ComplexField>(a, b, [](double x, cplx y) { return x * y; });
}
Spectrum operator+(const Spectrum& a, const Spectrum& b) { return zip<Spectrum>(a, b, std::plus<>()); }
Spectrum operator*(cplx s, const Spectrum& a) {
    std::vector<cplx> v(a.values().begin(), a.values().end());
    for (auto& z : v) z *= s;
    return Spectrum(a.grid(), std::move(v));
}

double sup_norm(const Field& f) { return sup_of(f); }
double sup_norm(const ComplexField& f) { return sup_of(f); }
double l2_norm(const Field& f) { return std::sqrt(f.grid().dx() * sumsq(f)); }
double l2_norm(const ComplexField& f) { return std::sqrt(f.grid().dx() * sumsq(f)); }
double l1_norm(const Field& f) {
    double s = 0.0;
    for (double z : f.values()) s += std::abs(z);
    return s * f.grid().dx();
}
double l1_norm(const ComplexField& f) {
    double s = 0.0;
    for (const cplx& z : f.values()) s += std::abs(z);
    return s * f.grid().dx();
}
double l2_norm(const Spectrum& s) { return std::sqrt(s.grid().dxi() * sumsq(s)); }
double mean(const Field& f) {
    double s = 0.0;
    for (double z : f.values()) s += z;
    return s / static_cast<double>(f.size());
}

}  // namespace bolab
