#ifndef BESOV_BOUNDARY_GRID_HPP
#define BESOV_BOUNDARY_GRID_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "besov/common.hpp"
#include "besov/fft.hpp"

namespace besov {

/// Uniform samples on the circle at theta_j = 2 pi j / 2^m.
template <typename T>
struct BasicBoundaryGrid {
    int log2_size = 0;
    std::vector<T> values;

    std::size_t size() const { return values.size(); }
    double theta(std::size_t j) const { return two_pi * static_cast<double>(j) / size(); }

    /// Periodic linear interpolation at an arbitrary angle.
    T interpolate(double angle) const {
        const std::size_t n = size();
        double pos = angle * static_cast<double>(n) / two_pi;
        pos -= std::floor(pos / static_cast<double>(n)) * static_cast<double>(n);
        const std::size_t i0 = static_cast<std::size_t>(pos) % n;
        const std::size_t i1 = (i0 + 1) % n;
        const double frac = pos - std::floor(pos);
        return values[i0] * (1.0 - frac) + values[i1] * frac;
    }
};

using BoundaryGrid = BasicBoundaryGrid<double>;
using ComplexBoundaryGrid = BasicBoundaryGrid<complex>;

template <typename T>
BasicBoundaryGrid<T> make_boundary_grid(int log2_size, const std::function<T(double)>& f) {
    if (log2_size < 8) throw validation_error("boundary grid requires log2 size >= 8");
    BasicBoundaryGrid<T> g;
    g.log2_size = log2_size;
    const std::size_t n = std::size_t{1} << log2_size;
    g.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) g.values[j] = f(two_pi * static_cast<double>(j) / n);
    return g;
}

inline BoundaryGrid make_real_grid(int log2_size, const std::function<double(double)>& f) {
    return make_boundary_grid<double>(log2_size, f);
}

inline BoundaryGrid boundary_grid_from_samples(std::vector<double> samples) {
    if (!is_pow2(samples.size()) || samples.size() < 256)
        throw validation_error("boundary samples must number a power of two >= 256");
    for (double v : samples)
        if (!std::isfinite(v)) throw validation_error("boundary samples must be finite");
    BoundaryGrid g;
    g.values = std::move(samples);
    g.log2_size = 0;
    for (std::size_t n = g.values.size(); n > 1; n >>= 1) ++g.log2_size;
    return g;
}

/// Trapezoid mean (1/2pi) int g dtheta; exact for the periodic grid.
template <typename T>
T grid_mean(const BasicBoundaryGrid<T>& g) {
    KahanAccumulator re, im;
    for (const T& v : g.values) {
        if constexpr (std::is_same_v<T, complex>) {
            re.add(v.real());
            im.add(v.imag());
        } else {
            re.add(v);
        }
    }
    if constexpr (std::is_same_v<T, complex>)
        return complex(re.value(), im.value()) / static_cast<double>(g.size());
    else
        return re.value() / static_cast<double>(g.size());
}

/// (int_0^{2pi} |g|^p dtheta)^{1/p} without the 1/2pi normalization.
template <typename T>
double grid_lp_norm(const BasicBoundaryGrid<T>& g, double p) {
    KahanAccumulator acc;
    for (const T& v : g.values) acc.add(std::pow(std::abs(v), p));
    return std::pow(acc.value() * two_pi / static_cast<double>(g.size()), 1.0 / p);
}

}  // namespace besov

#endif
