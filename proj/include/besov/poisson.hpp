#ifndef BESOV_POISSON_HPP
#define BESOV_POISSON_HPP

#include <cmath>
#include <vector>

#include "besov/boundary_grid.hpp"
#include "besov/common.hpp"
#include "besov/fft.hpp"
#include "besov/quadrature.hpp"

namespace besov {

/// Poisson means int g dmu_z are computed by substituting the boundary
/// parametrization of the disc automorphism b_z(w) = (w + z)/(1 + conj(z) w):
/// harmonicity gives  int g dmu_z = (1/2pi) int g(arg b_z(e^{i s})) ds,
/// so a uniform trapezoid in s is an equal-weight rule whose nodes follow
/// the kernel's own quantiles.  Discrete weights are exactly 1/N (they sum
/// to one, so the mean of g = 1 is exactly 1), and about half of the nodes
/// land inside one kernel half-width 1 - |z| whatever the depth.
namespace detail {

inline std::size_t warp_node_count(double u, std::size_t grid_size, const QuadratureConfig& cfg) {
    const double resolve = 16.0 / std::max(u, 1e-12);
    std::size_t n = std::size_t{1} << cfg.sigma_floor_log2;
    n = std::max(n, std::min(grid_size, std::size_t{4096}));
    const std::size_t cap = std::size_t{1} << cfg.sigma_cap_log2;
    std::size_t need = next_pow2(static_cast<std::size_t>(std::min(resolve, 1e18)));
    need = std::min(need, cap);
    return std::max(n, need);
}

/// Angular offsets arg b_r(e^{i s_j}) for midpoint nodes s_j, measured in
/// grid-index units; the same offsets serve every point of the shell
/// |z| = r because b_{re^{it}}(e^{is}) = e^{it} b_r(e^{i(s - t)}).
inline std::vector<double> warp_offsets_index(double r, std::size_t n_nodes,
                                              std::size_t grid_size) {
    std::vector<double> off(n_nodes);
    const double idx_per_rad = static_cast<double>(grid_size) / two_pi;
    for (std::size_t j = 0; j < n_nodes; ++j) {
        const double s = two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n_nodes);
        const complex w = std::polar(1.0, s);
        const complex b = (w + r) / (1.0 + r * w);
        off[j] = std::arg(b) * idx_per_rad;
    }
    return off;
}

}  // namespace detail

struct PoissonMeanResult {
    double value = 0.0;
    bool upsampled = false;  // warp rule used more nodes than the grid
};

/// int g dmu_z for a single point z, |z| <= 1 - 1e-6.
inline PoissonMeanResult poisson_mean_ex(const BoundaryGrid& g, complex z,
                                         const QuadratureConfig& cfg = {}) {
    const double r = std::abs(z);
    if (r > 1.0 - 1e-6 + 1e-15)
        throw resolution_error("poisson_mean: |z| exceeds the kernel resolution guard");
    PoissonMeanResult res;
    if (r < 1e-15) {
        res.value = grid_mean(g);
        return res;
    }
    const std::size_t m = g.size();
    const std::size_t n = detail::warp_node_count(1.0 - r, m, cfg);
    res.upsampled = n > m;
    const auto off = detail::warp_offsets_index(r, n, m);
    const double base = std::arg(z) * static_cast<double>(m) / two_pi;
    KahanAccumulator acc;
    const std::size_t mask = m - 1;
    for (double o : off) {
        double pos = base + o;
        pos -= std::floor(pos / static_cast<double>(m)) * static_cast<double>(m);
        const std::size_t i0 = static_cast<std::size_t>(pos) & mask;
        const double frac = pos - std::floor(pos);
        acc.add(g.values[i0] * (1.0 - frac) + g.values[(i0 + 1) & mask] * frac);
    }
    res.value = acc.value() / static_cast<double>(n);
    return res;
}

inline double poisson_mean(const BoundaryGrid& g, complex z, const QuadratureConfig& cfg = {}) {
    return poisson_mean_ex(g, z, cfg).value;
}

/// Shared warp nodes for one radial shell; the inner quantities of the
/// triple integrals call these once per (r, t) pair.  Offsets are stored
/// as (integer index, fraction) pairs so that grid-aligned t keeps the
/// hot loop in integer index arithmetic.
class ShellWarp {
public:
    ShellWarp(double u, std::size_t grid_size, const QuadratureConfig& cfg)
        : m_(grid_size), n_(detail::warp_node_count(u, grid_size, cfg)) {
        const auto off = detail::warp_offsets_index(1.0 - u, n_, grid_size);
        idx_.resize(n_);
        w0_.resize(n_);
        w1_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            double pos = off[j];
            pos -= std::floor(pos / static_cast<double>(m_)) * static_cast<double>(m_);
            const double fl = std::floor(pos);
            idx_[j] = static_cast<std::size_t>(fl) & (m_ - 1);
            const double frac = pos - fl;
            w0_[j] = 1.0 - frac;
            w1_[j] = frac;
        }
    }

    std::size_t nodes() const { return n_; }

    /// (1/N) sum |g(theta_j(t)) - w| over the warp nodes of z = r e^{it};
    /// t given as a whole number of grid cells.
    double mean_abs_diff(const ComplexBoundaryGrid& g, std::size_t t_cells, complex w) const {
        const std::size_t mask = m_ - 1;
        double sum = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const std::size_t i0 = (idx_[j] + t_cells) & mask;
            const std::size_t i1 = (i0 + 1) & mask;
            const double re = g.values[i0].real() * w0_[j] + g.values[i1].real() * w1_[j] -
                              w.real();
            const double im = g.values[i0].imag() * w0_[j] + g.values[i1].imag() * w1_[j] -
                              w.imag();
            sum += std::sqrt(re * re + im * im);
        }
        return sum / static_cast<double>(n_);
    }

    /// (1/N) sum |g(theta_j(t)) - c| for real samples g.
    double mean_abs_dev(const BoundaryGrid& g, std::size_t t_cells, double c) const {
        const std::size_t mask = m_ - 1;
        double sum = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const std::size_t i0 = (idx_[j] + t_cells) & mask;
            const double gv = g.values[i0] * w0_[j] + g.values[(i0 + 1) & mask] * w1_[j];
            sum += std::abs(gv - c);
        }
        return sum / static_cast<double>(n_);
    }

    /// Same means at an arbitrary angle t (in radians).
    double mean_abs_dev_at(const BoundaryGrid& g, double t, double c) const {
        const std::size_t mask = m_ - 1;
        double base = t * static_cast<double>(m_) / two_pi;
        base -= std::floor(base / static_cast<double>(m_)) * static_cast<double>(m_);
        const double fl = std::floor(base);
        const std::size_t cells = static_cast<std::size_t>(fl) & mask;
        const double shift = base - fl;  // sub-cell part of t
        double sum = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double w1 = w1_[j] + shift;
            const std::size_t carry = w1 >= 1.0 ? 1 : 0;
            const double frac = w1 - static_cast<double>(carry);
            const std::size_t i0 = (idx_[j] + cells + carry) & mask;
            const double gv = g.values[i0] * (1.0 - frac) + g.values[(i0 + 1) & mask] * frac;
            sum += std::abs(gv - c);
        }
        return sum / static_cast<double>(n_);
    }

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<std::size_t> idx_;
    std::vector<double> w0_;
    std::vector<double> w1_;
};

/// P[g] on whole shells through the Fourier multiplier r^{|k|}: one
/// forward FFT at construction, one inverse FFT per radius, values at
/// every grid angle at once.
class PoissonExtender {
public:
    explicit PoissonExtender(const BoundaryGrid& g)
        : m_(g.size()), coef_(fourier_coefficients(g.values)) {}

    std::vector<double> at_radius(double r) const {
        std::vector<complex> spec(m_, complex(0.0, 0.0));
        spec[0] = coef_[0];
        double rk = 1.0;
        for (std::size_t k = 1; k <= m_ / 2; ++k) {
            rk *= r;
            spec[k] = coef_[k] * rk;
            if (k < m_ / 2) spec[m_ - k] = coef_[m_ - k] * rk;
        }
        const auto vals = fourier_synthesis(std::move(spec));
        std::vector<double> out(m_);
        for (std::size_t j = 0; j < m_; ++j) out[j] = vals[j].real();
        return out;
    }

private:
    std::size_t m_;
    std::vector<complex> coef_;
};

}  // namespace besov

#endif
