#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bolab/error.hpp"

namespace bolab {

using cplx = std::complex<double>;

// Uniform periodic grid on [-L/2, L/2). Sample i sits at x_i = -L/2 + i*dx.
// Frequencies use FFT storage order: index q holds mode m = q for q < n/2
// and m = q - n otherwise, so the Nyquist mode is m = -n/2.
class Grid {
public:
    Grid(std::size_t n_points, double box_length);

    std::size_t size() const noexcept { return n_; }
    double length() const noexcept { return length_; }
    double dx() const noexcept { return length_ / static_cast<double>(n_); }
    double dxi() const noexcept;
    double nyquist() const noexcept;

    double x(std::size_t i) const noexcept { return -0.5 * length_ + static_cast<double>(i) * dx(); }
    long mode(std::size_t q) const noexcept;
    double xi(std::size_t q) const noexcept;
    std::size_t index_of_mode(long m) const;
    bool is_nyquist(std::size_t q) const noexcept { return q == n_ / 2; }

    bool operator==(const Grid& other) const noexcept {
        return n_ == other.n_ && length_ == other.length_;
    }

private:
    std::size_t n_;
    double length_;
};

struct PhysicalTag {};
struct FrequencyTag {};

// Immutable array tied to a grid. Physical arrays hold samples x_i,
// frequency arrays hold Fourier coefficients in FFT order.
template <class T, class Tag>
class GridArray {
public:
    using value_type = T;

    GridArray(Grid grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw ShapeError("array has " + std::to_string(values_.size()) + " entries, grid has " +
                             std::to_string(grid_.size()));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const T> values() const noexcept { return values_; }
    const T& operator[](std::size_t i) const noexcept { return values_[i]; }
    std::vector<T> to_vector() const { return values_; }

private:
    Grid grid_;
    std::vector<T> values_;
};

using Field = GridArray<double, PhysicalTag>;
using ComplexField = GridArray<cplx, PhysicalTag>;
using Spectrum = GridArray<cplx, FrequencyTag>;

void require_same_grid(const Grid& a, const Grid& b);

Field sample(const Grid& grid, const std::function<double(double)>& f);
ComplexField sample_complex(const Grid& grid, const std::function<cplx(double)>& f);
Field zeros(const Grid& grid);

ComplexField to_complex(const Field& f);
Field real_part(const ComplexField& f);
Field imag_part(const ComplexField& f);

// Pointwise algebra on the grid.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(const ComplexField& a, const ComplexField& b);
ComplexField operator*(cplx s, const ComplexField& a);
ComplexField operator*(const Field& a, const ComplexField& b);
Spectrum operator+(const Spectrum& a, const Spectrum& b);
Spectrum operator*(cplx s, const Spectrum& a);

double sup_norm(const Field& f);
double sup_norm(const ComplexField& f);
double l2_norm(const Field& f);
double l2_norm(const ComplexField& f);
double l1_norm(const Field& f);
double l1_norm(const ComplexField& f);
double l2_norm(const Spectrum& s);
double mean(const Field& f);

}  // namespace bolab
