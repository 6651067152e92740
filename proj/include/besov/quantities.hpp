#ifndef BESOV_QUANTITIES_HPP
#define BESOV_QUANTITIES_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "besov/analytic_function.hpp"
#include "besov/boundary_grid.hpp"
#include "besov/common.hpp"
#include "besov/poisson.hpp"
#include "besov/quadrature.hpp"
#include "besov/radial_weight.hpp"
#include "besov/weight_classify.hpp"

namespace besov {

inline constexpr double divergence_threshold = 1e12;

struct EstimateGrid {
    double lambda = 0.0;
    double epsilon = 0.0;
    std::size_t radial_points = 0;
    std::size_t angular_size = 0;
    std::size_t t_size = 0;
};

/// value carries the displayed quantity (a norm for hardy/besov, the raw
/// iterated integral for the seminorm-type functionals); value_pow_q is
/// always the q-th-power scale on which the theorem chains combine.
/// tail_bound estimates truncation plus grid discretization error on the
/// value_pow_q scale.
struct NormEstimate {
    double value = 0.0;
    double value_pow_q = 0.0;
    double tail_bound = 0.0;
    bool divergent = false;
    bool tail_flagged = false;  // shell values still growing at the cut
    EstimateGrid grid;
};

namespace detail {

// ((2pi / n_used) * sum vals[j]^p, j stepping by stride)^{e/p}
inline double angular_power_mean(const std::vector<double>& vals, double p, double e,
                                 std::size_t stride) {
    KahanAccumulator acc;
    std::size_t used = 0;
    for (std::size_t j = 0; j < vals.size(); j += stride) {
        acc.add(std::pow(vals[j], p));
        ++used;
    }
    return std::pow(acc.value() * two_pi / static_cast<double>(used), e / p);
}

struct RadialResult {
    double total = 0.0;
    double richardson = 0.0;
    bool divergent = false;
};

/// Integral of A(u) * nu(1-u) / u^qexp over u in [u_min, u_start] with
/// exact cell masses and endpoint averages of A, plus a nested-grid
/// Richardson estimate of the radial discretization error.
inline RadialResult integrate_radial(const RadialGrid& grid, const std::vector<double>& a_vals,
                                     const RadialWeight& nu, double qexp,
                                     double u_start = 1.0) {
    RadialResult res;
    const std::size_t n = grid.size();
    const auto a_at = [&](double u, std::size_t k) {
        const double x = std::log(u / grid.u[k]) / std::log(grid.u[k + 1] / grid.u[k]);
        return a_vals[k] + (a_vals[k + 1] - a_vals[k]) * x;
    };
    const auto sweep = [&](std::size_t step) {
        KahanAccumulator acc;
        for (std::size_t k = 0; k + step < n; k += step) {
            const std::size_t k2 = k + step;
            double hi = grid.u[k], lo = grid.u[k2];
            if (lo >= u_start) continue;
            double a_hi = a_vals[k];
            if (hi > u_start) {
                hi = u_start;
                a_hi = a_at(u_start, k);
            }
            acc.add(nu.cell_mass(lo, hi, qexp) * 0.5 * (a_hi + a_vals[k2]));
        }
        // leftover cell when the stride does not divide the grid
        if (step == 2 && (n - 1) % 2 == 1 && n >= 2) {
            const std::size_t k = n - 2;
            double hi = grid.u[k], lo = grid.u[k + 1];
            if (lo < u_start) {
                double a_hi = a_vals[k];
                if (hi > u_start) {
                    hi = u_start;
                    a_hi = a_at(u_start, k);
                }
                acc.add(nu.cell_mass(lo, hi, qexp) * 0.5 * (a_hi + a_vals[k + 1]));
            }
        }
        return acc.value();
    };
    res.total = sweep(1);
    res.divergent = res.total > divergence_threshold;
    res.richardson = std::abs(res.total - sweep(2)) / 3.0;
    return res;
}

struct TailEstimate {
    double bound = 0.0;
    bool flagged = false;
};

/// Truncation estimate for the discarded interval (1-eps, 1): last shell
/// value times the remaining weighted mass, doubled for envelope slack;
/// flagged when the shell values are still growing at the cut.
inline TailEstimate radial_tail(const RadialGrid& grid, const std::vector<double>& a_vals,
                                const RadialWeight& nu, double qexp) {
    TailEstimate t;
    const std::size_t n = grid.size();
    if (n < 2) return t;
    const double u_last = grid.u[n - 1];
    const double a_last = a_vals[n - 1];
    const int ppd = points_per_decade(grid.lambda);
    double growth = 1.0;
    if (n > static_cast<std::size_t>(ppd)) {
        const double prev = a_vals[n - 1 - ppd];
        if (prev > 0.0) growth = a_last / prev;
    }
    t.flagged = growth > 1.05;
    const double base = 2.0 * a_last * nu.tail_u(u_last) * std::pow(u_last, -qexp);
    t.bound = t.flagged ? base * growth * growth : base;
    return t;
}

inline NormEstimate assemble_integral_estimate(const RadialGrid& grid,
                                               const std::vector<double>& a_full,
                                               const std::vector<double>& a_halfang,
                                               const RadialWeight& nu, double qexp,
                                               double u_start, std::size_t angular,
                                               std::size_t t_size) {
    const auto fine = integrate_radial(grid, a_full, nu, qexp, u_start);
    const auto half = integrate_radial(grid, a_halfang, nu, qexp, u_start);
    const auto tail = radial_tail(grid, a_full, nu, qexp);
    NormEstimate est;
    est.value = fine.total;
    est.value_pow_q = fine.total;
    est.tail_bound = tail.bound + fine.richardson + std::abs(fine.total - half.total) / 3.0;
    est.tail_flagged = tail.flagged;
    est.divergent = fine.divergent;
    est.grid = {grid.lambda, grid.u.back(), grid.size(), angular, t_size};
    return est;
}

}  // namespace detail

/// M_p(r, f) = ((1/2pi) int |f(r e^{i t})|^p dt)^{1/p}.
inline double integral_mean(const AnalyticFunction& f, double r, double p,
                            const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0)) throw validation_error("integral_mean: p must be positive");
    if (!(r >= 0.0 && r < 1.0)) throw validation_error("integral_mean: r must lie in [0,1)");
    const std::size_t m = std::size_t{1} << cfg.angular_log2_size;
    const auto vals = f.values_on_circle(r, m);
    KahanAccumulator acc;
    for (const complex& v : vals) acc.add(std::pow(std::abs(v), p));
    return std::pow(acc.value() / static_cast<double>(m), 1.0 / p);
}

/// sup_r M_p(r, f), computed as the boundary L^p mean (they agree for
/// every constructible variant).
inline NormEstimate hardy_norm(const AnalyticFunction& f, double p,
                               const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0)) throw validation_error("hardy_norm: p must be positive");
    const auto modulus = f.boundary_modulus(cfg.angular_log2_size);
    KahanAccumulator acc;
    for (double v : modulus.values) acc.add(std::pow(v, p));
    NormEstimate est;
    est.value = std::pow(acc.value() / static_cast<double>(modulus.size()), 1.0 / p);
    est.value_pow_q = est.value;  // caller raises to the exponent in use
    est.grid.angular_size = modulus.size();
    return est;
}

/// || f' ||_{A^{p,q}_nu}: value is the norm, value_pow_q the integral
/// int_0^{1-eps} M_p^q(r, f') nu(r) dr.
inline NormEstimate besov_norm(const AnalyticFunction& f, double p, double q,
                               const RadialWeight& nu, const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0 && q > 0.0)) throw validation_error("besov_norm: exponents must be positive");
    // boundary-data variants cannot be evaluated beyond the kernel guard
    const double eps =
        f.requires_boundary_guard() ? std::max(cfg.epsilon_1d, 1e-6) : cfg.epsilon_1d;
    const RadialGrid grid = RadialGrid::geometric(cfg.radial_ratio, eps);
    const std::size_t m = std::size_t{1} << cfg.angular_log2_size;
    const std::size_t n = grid.size();
    const double norm_pow = std::pow(two_pi, q / p);  // M_p carries a 1/2pi
    std::vector<double> a_full(n), a_half(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto dv = f.derivative_on_circle(grid.r(k), m);
        std::vector<double> mods(m);
        for (std::size_t j = 0; j < m; ++j) mods[j] = std::abs(dv[j]);
        a_full[k] = detail::angular_power_mean(mods, p, q, 1) / norm_pow;
        a_half[k] = detail::angular_power_mean(mods, p, q, 2) / norm_pow;
    }
    NormEstimate est =
        detail::assemble_integral_estimate(grid, a_full, a_half, nu, 0.0, 1.0, m, 0);
    est.value = std::pow(std::max(est.value_pow_q, 0.0), 1.0 / q);
    return est;
}

// --- modulus of continuity ---------------------------------------------------

/// Geometric shift grid in (0, hmax], densest-to-coarsest ascending.
inline std::vector<double> omega_shift_grid(double h_max, double h_min, int per_decade) {
    std::vector<double> hs;
    const double ratio = std::pow(10.0, -1.0 / per_decade);
    for (double h = h_max; h > h_min; h *= ratio) hs.push_back(h);
    hs.push_back(h_min);
    std::reverse(hs.begin(), hs.end());
    return hs;
}

namespace detail {

/// (int |g(theta + h) - g(theta)|^p dtheta)^{1/p} with the shift realized
/// by periodic linear resampling; no 1/2pi normalization.
template <typename T>
double shift_difference_lp(const BasicBoundaryGrid<T>& g, double h, double p) {
    const std::size_t n = g.size();
    const double shift = h * static_cast<double>(n) / two_pi;
    const double fl = std::floor(shift);
    const std::size_t base = static_cast<std::size_t>(fl) % n;
    const double frac = shift - fl;
    KahanAccumulator acc;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i0 = (j + base) % n;
        const std::size_t i1 = (i0 + 1) % n;
        const T shifted = g.values[i0] * (1.0 - frac) + g.values[i1] * frac;
        acc.add(std::pow(std::abs(shifted - g.values[j]), p));
    }
    return std::pow(acc.value() * two_pi / static_cast<double>(n), 1.0 / p);
}

/// Running sup of the shift differences over the master geometric grid;
/// omega_p(t) is then a prefix maximum, exactly monotone in t.
template <typename T>
struct OmegaProfile {
    std::vector<double> h;        // ascending
    std::vector<double> sup_le;   // sup of D over shifts <= h[i]

    double at(double t) const {
        if (h.empty() || t <= 0.0) return 0.0;
        const double cap = std::min(t, two_pi);
        const auto it = std::upper_bound(h.begin(), h.end(), cap);
        if (it == h.begin()) {
            // below the finest shift: differences scale linearly
            return sup_le.front() * (cap / h.front());
        }
        return sup_le[static_cast<std::size_t>(it - h.begin()) - 1];
    }
};

template <typename T>
OmegaProfile<T> omega_profile(const BasicBoundaryGrid<T>& g, double p, double h_min,
                              int per_decade) {
    OmegaProfile<T> prof;
    prof.h = omega_shift_grid(two_pi, std::max(h_min, 1e-12), per_decade);
    prof.sup_le.resize(prof.h.size());
    double run = 0.0;
    for (std::size_t i = 0; i < prof.h.size(); ++i) {
        run = std::max(run, shift_difference_lp(g, prof.h[i], p));
        prof.sup_le[i] = run;
    }
    return prof;
}

}  // namespace detail

/// omega_p(t, g): sup over a geometric grid of shifts h in (0, min(t, 2pi)]
/// together with the endpoint h = min(t, 2pi) itself.  Monotone
/// nondecreasing in t up to grid resolution.
template <typename T>
double modulus_of_continuity(const BasicBoundaryGrid<T>& g, double t, double p,
                             const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0)) throw validation_error("modulus_of_continuity: p must be positive");
    if (!(t > 0.0)) throw validation_error("modulus_of_continuity: t must be positive");
    const double h_min = two_pi / static_cast<double>(g.size());
    const auto prof = detail::omega_profile(g, p, h_min, cfg.h_per_decade);
    const double cap = std::min(t, two_pi);
    return std::max(prof.at(t), detail::shift_difference_lp(g, cap, p));
}

enum class OmegaRange { Half, Full };

/// int over the range of omega_p(1-r, f)^q nu(r)/(1-r)^q dr with the
/// boundary data of f; range Half starts at r = 1/2.
inline NormEstimate omega_seminorm(const AnalyticFunction& f, double p, double q,
                                   const RadialWeight& nu, OmegaRange range,
                                   const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0 && q > 0.0))
        throw validation_error("omega_seminorm: exponents must be positive");
    const RadialGrid grid = RadialGrid::geometric(cfg.radial_ratio, cfg.epsilon_1d);
    const std::size_t m = std::size_t{1} << cfg.angular_log2_size;
    const auto g = f.boundary_values(cfg.angular_log2_size);
    ComplexBoundaryGrid g_half;  // subsampled copy for the angular error proxy
    g_half.log2_size = g.log2_size - 1;
    for (std::size_t j = 0; j < g.size(); j += 2) g_half.values.push_back(g.values[j]);
    const auto prof = detail::omega_profile(g, p, 0.5 * grid.u.back(), cfg.h_per_decade);
    const auto prof_half = detail::omega_profile(g_half, p, 0.5 * grid.u.back(), cfg.h_per_decade);
    const std::size_t n = grid.size();
    std::vector<double> omega(n), omega_half(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double cap = std::min(grid.u[k], two_pi);
        omega[k] = std::max(prof.at(grid.u[k]), detail::shift_difference_lp(g, cap, p));
        omega_half[k] =
            std::max(prof_half.at(grid.u[k]), detail::shift_difference_lp(g_half, cap, p));
    }
    // sup over a nested family of shift ranges is monotone; enforce it
    for (std::size_t k = n - 1; k-- > 0;) {
        omega[k] = std::max(omega[k], omega[k + 1]);
        omega_half[k] = std::max(omega_half[k], omega_half[k + 1]);
    }
    std::vector<double> a(n), a_half(n);
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = std::pow(omega[k], q);
        a_half[k] = std::pow(omega_half[k], q);
    }
    const double u_start = range == OmegaRange::Half ? 0.5 : 1.0;
    return detail::assemble_integral_estimate(grid, a, a_half, nu, q, u_start, m, 0);
}

// --- triple-nested functionals ------------------------------------------------

namespace detail {

struct TripleSpec {
    const AnalyticFunction* f = nullptr;
    double p = 0.0, q = 0.0;
    const RadialWeight* nu = nullptr;
    const QuadratureConfig* cfg = nullptr;
};

/// Shared outer scaffolding of the triple-nested quantities: geometric
/// radial shells truncated at 1 - eps_triple, a uniform t-grid aligned
/// with the boundary grid, and the q/p power applied after the angular
/// quadrature at each shell, mirroring the iterated-integral order.
template <typename ShellFn>
NormEstimate triple_integral(const TripleSpec& spec, double qexp, ShellFn&& shell_values) {
    const QuadratureConfig& cfg = *spec.cfg;
    const RadialGrid grid = RadialGrid::geometric(cfg.radial_ratio, cfg.epsilon_triple);
    const std::size_t m = std::size_t{1} << cfg.angular_log2_size;
    const std::size_t mt = std::min<std::size_t>(std::size_t{1} << cfg.t_log2_size, m);
    const std::size_t n = grid.size();
    std::vector<double> a_full(n), a_half(n);
    std::vector<double> inner(mt);
    for (std::size_t k = 0; k < n; ++k) {
        shell_values(grid.u[k], mt, inner);
        a_full[k] = angular_power_mean(inner, spec.p, spec.q, 1);
        a_half[k] = angular_power_mean(inner, spec.p, spec.q, 2);
    }
    return assemble_integral_estimate(grid, a_full, a_half, *spec.nu, qexp, 1.0, m, mt);
}

}  // namespace detail

/// Middle quantity of the three-link chain:
/// int_0^1 ( int ( int |f(e^{i th}) - f(re^{it})| dmu_{re^{it}}(th) )^p dt )^{q/p}
///         nu(r)/(1-r)^q dr.
inline NormEstimate theorem2_middle(const AnalyticFunction& f, double p, double q,
                                    const RadialWeight& nu, const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0 && q > 0.0))
        throw validation_error("theorem2_middle: exponents must be positive");
    const std::size_t m = std::size_t{1} << cfg.angular_log2_size;
    const auto g = f.boundary_values(cfg.angular_log2_size);
    detail::TripleSpec spec{&f, p, q, &nu, &cfg};
    return detail::triple_integral(spec, q, [&](double u, std::size_t mt,
                                                std::vector<double>& inner) {
        const double r = 1.0 - u;
        const ShellWarp warp(u, m, cfg);
        const auto fvals = f.values_on_circle(r, mt);
        const std::size_t stride = m / mt;
        for (std::size_t j = 0; j < mt; ++j)
            inner[j] = warp.mean_abs_diff(g, j * stride, fvals[j]);
    });
}

/// F1: Poisson mean of |f| minus |f(z)|, nonnegative by subharmonicity;
/// negative values beyond the quadrature tolerance abort.
inline NormEstimate f1_functional(const AnalyticFunction& f, double p, double q,
                                  const RadialWeight& nu, const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0 && q > 0.0)) throw validation_error("F1: exponents must be positive");
    const auto modulus = f.boundary_modulus(cfg.angular_log2_size);
    const PoissonExtender ext(modulus);
    const std::size_t m = modulus.size();
    detail::TripleSpec spec{&f, p, q, &nu, &cfg};
    return detail::triple_integral(spec, q, [&](double u, std::size_t mt,
                                                std::vector<double>& inner) {
        const double r = 1.0 - u;
        const auto pmean = ext.at_radius(r);
        const auto fvals = f.values_on_circle(r, mt);
        const std::size_t stride = m / mt;
        for (std::size_t j = 0; j < mt; ++j) {
            const double pm = pmean[j * stride];
            double v = pm - std::abs(fvals[j]);
            if (v < 0.0) {
                if (v < -cfg.tolerance * (1.0 + std::abs(pm)))
                    throw resolution_error(
                        "F1 inner quantity negative beyond tolerance (under-resolved)");
                v = 0.0;
            }
            inner[j] = v;
        }
    });
}

/// F2: Poisson mean of | |f| - Poisson mean of |f| |; exactly zero for
/// inner variants (unimodular boundary modulus short-circuit).
inline NormEstimate f2_functional(const AnalyticFunction& f, double p, double q,
                                  const RadialWeight& nu, const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0 && q > 0.0)) throw validation_error("F2: exponents must be positive");
    if (f.is_inner()) {
        NormEstimate zero;
        zero.grid.angular_size = std::size_t{1} << cfg.angular_log2_size;
        return zero;
    }
    const auto modulus = f.boundary_modulus(cfg.angular_log2_size);
    const PoissonExtender ext(modulus);
    const std::size_t m = modulus.size();
    detail::TripleSpec spec{&f, p, q, &nu, &cfg};
    return detail::triple_integral(spec, q, [&](double u, std::size_t mt,
                                                std::vector<double>& inner) {
        const double r = 1.0 - u;
        const ShellWarp warp(u, m, cfg);
        const auto pmean = ext.at_radius(r);
        const std::size_t stride = m / mt;
        for (std::size_t j = 0; j < mt; ++j)
            inner[j] = warp.mean_abs_dev(modulus, j * stride, pmean[j * stride]);
    });
}

/// Multiplier integral of the inner-factor criterion:
/// int ( int ( |f(re^{it})| (1 - |I(re^{it})|) / (1-r) )^p dt )^{q/p} nu(r) dr.
inline NormEstimate multiplier_integral(const AnalyticFunction& f, const AnalyticFunction& inner_f,
                                        double p, double q, const RadialWeight& nu,
                                        const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0 && q > 0.0))
        throw validation_error("multiplier_integral: exponents must be positive");
    if (!inner_f.is_inner())
        throw validation_error("multiplier_integral: second argument must be inner");
    detail::TripleSpec spec{&f, p, q, &nu, &cfg};
    return detail::triple_integral(spec, 0.0, [&](double u, std::size_t mt,
                                                  std::vector<double>& inner) {
        const double r = 1.0 - u;
        const auto fvals = f.values_on_circle(r, mt);
        const auto ivals = inner_f.values_on_circle(r, mt);
        for (std::size_t j = 0; j < mt; ++j)
            inner[j] = std::abs(fvals[j]) * (1.0 - std::abs(ivals[j])) / u;
    });
}

}  // namespace besov

#endif
