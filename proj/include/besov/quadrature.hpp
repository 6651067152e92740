#ifndef BESOV_QUADRATURE_HPP
#define BESOV_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "besov/common.hpp"

namespace besov {

/// Grid and tolerance knobs shared by all norm/integral computations.
/// Radial grids are geometric toward the boundary: u_k = lambda^k with
/// u = 1 - r, truncated at u >= epsilon (1e-8 for one-dimensional
/// integrals, 1e-6 for the triple-nested ones).
struct QuadratureConfig {
    int angular_log2_size = 12;   // boundary grid size 2^m
    int t_log2_size = 10;         // middle angular grid of triple integrals
    double radial_ratio = 0.9;    // lambda
    double epsilon_1d = 1e-8;
    double epsilon_triple = 1e-6;
    int h_per_decade = 64;        // modulus-of-continuity sup grid density
    double tolerance = 1e-6;      // clamp / inconsistency threshold
    int sigma_cap_log2 = 13;      // cap on Poisson-mean nodes per point
    int sigma_floor_log2 = 11;

    QuadratureConfig refined() const {
        QuadratureConfig c = *this;
        c.angular_log2_size += 1;
        c.t_log2_size += 1;
        c.radial_ratio = std::sqrt(c.radial_ratio);
        return c;
    }

    void validate() const {
        if (!(radial_ratio > 0.0 && radial_ratio < 1.0))
            throw validation_error("config: radial_ratio must lie in (0,1)");
        if (!(epsilon_1d > 0.0 && epsilon_triple > 0.0))
            throw validation_error("config: epsilons must be positive");
        if (angular_log2_size < 3 || t_log2_size < 3)
            throw validation_error("config: grid sizes must be >= 8");
        if (h_per_decade < 1) throw validation_error("config: h_per_decade must be >= 1");
    }
};

/// Radii stored as distances to the boundary, u_k = lambda^k, k = 0..n,
/// with u_n >= epsilon > u_{n+1}.  Working in u avoids cancellation in
/// 1 - r for radii extremely close to 1.
struct RadialGrid {
    std::vector<double> u;  // decreasing, u[0] = 1 (r = 0)
    double lambda = 0.9;

    static RadialGrid geometric(double lambda, double epsilon) {
        RadialGrid g;
        g.lambda = lambda;
        double v = 1.0;
        while (v >= epsilon) {
            g.u.push_back(v);
            v *= lambda;
        }
        return g;
    }

    std::size_t size() const { return u.size(); }
    double r(std::size_t k) const { return 1.0 - u[k]; }
};

namespace detail {

// 4-point Gauss-Legendre on [-1, 1].
inline constexpr std::array<double, 4> gl4_x = {
    -0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
inline constexpr std::array<double, 4> gl4_w = {
    0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};

// 8-point Gauss-Legendre on [-1, 1].
inline constexpr std::array<double, 8> gl8_x = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> gl8_w = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace detail

template <typename F>
double gauss4(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += detail::gl4_w[i] * f(c + h * detail::gl4_x[i]);
    return s * h;
}

template <typename F>
double gauss8(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += detail::gl8_w[i] * f(c + h * detail::gl8_x[i]);
    return s * h;
}

}  // namespace besov

#endif
