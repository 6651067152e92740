#ifndef BESOV_ANALYTIC_FUNCTION_HPP
#define BESOV_ANALYTIC_FUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "besov/boundary_grid.hpp"
#include "besov/common.hpp"
#include "besov/fft.hpp"

namespace besov {

namespace detail {
struct FunctionNode;
}

/// Constructible analytic functions on the unit disc: monomials,
/// polynomials, lacunary series, finite Blaschke products, singular
/// inner functions with atomic measures, outer functions given by
/// boundary data, and products/quotients of these.
///
/// Values are immutable and shared; copying is cheap.  Evaluation close
/// to the boundary is guarded for the variants backed by boundary data
/// (outer, singular): |z| <= 1 - 1e-6.
class AnalyticFunction {
public:
    static AnalyticFunction constant(complex c);
    static AnalyticFunction monomial(int n);
    static AnalyticFunction polynomial(std::vector<complex> coefficients);
    static AnalyticFunction lacunary(std::vector<complex> coefficients, std::vector<int> exponents);
    static AnalyticFunction blaschke(std::vector<complex> zeros, double rotation = 0.0);
    /// atoms are (angle on the circle, mass > 0) pairs.
    static AnalyticFunction singular_inner(std::vector<std::pair<double, double>> atoms,
                                           double rotation = 0.0);
    /// Outer function from samples of log phi on a dyadic grid.
    static AnalyticFunction outer_from_log_modulus(BoundaryGrid log_phi, bool clamped = false);
    /// Outer function from samples of phi >= 0; values below 1e-8 are
    /// clamped there (flag recorded on the function).
    static AnalyticFunction outer(const BoundaryGrid& phi);
    static AnalyticFunction product(std::vector<AnalyticFunction> factors);
    static AnalyticFunction quotient(AnalyticFunction numerator, AnalyticFunction denominator);

    complex evaluate(complex z) const;
    complex derivative(complex z) const;

    /// f at the 2^m-th roots of unity scaled by r (FFT-backed for outer
    /// parts, so whole-circle evaluation is cheap).
    std::vector<complex> values_on_circle(double r, std::size_t m_points) const;
    std::vector<complex> derivative_on_circle(double r, std::size_t m_points) const;

    /// Non-tangential boundary values on the dyadic grid.
    ComplexBoundaryGrid boundary_values(int log2_size) const;

    /// |f| on the boundary grid.  Inner variants return the constant-1
    /// grid exactly, with no numerical evaluation at the boundary.
    BoundaryGrid boundary_modulus(int log2_size) const;

    /// Structurally inner: monomial, Blaschke, singular inner, or a
    /// product of such.
    bool is_inner() const;

    /// True when the tree contains an outer or singular-inner part, whose
    /// interior evaluation is guarded at |z| <= 1 - 1e-6.
    bool requires_boundary_guard() const;

    bool is_outer() const;
    bool was_clamped() const;
    /// log phi data of an outer variant (throws otherwise).
    const BoundaryGrid& outer_log_modulus() const;

    /// Zeros of a Blaschke variant (throws otherwise).
    const std::vector<complex>& blaschke_zeros() const;

    /// Splits a product into (inner factors..., outer factors...); the
    /// function itself when not a product.
    std::vector<AnalyticFunction> factors() const;

    std::string describe() const;

private:
    explicit AnalyticFunction(std::shared_ptr<const detail::FunctionNode> node)
        : node_(std::move(node)) {}
    std::shared_ptr<const detail::FunctionNode> node_;
};

/// O_min and O_max built from pointwise min{phi,1} and max{phi,1}; their
/// Herglotz coefficients add up to those of O_phi exactly, so the
/// pointwise identity O_min * O_max = O_phi holds to round-off.
struct MinMaxSplit {
    AnalyticFunction o_min;
    AnalyticFunction o_max;
    bool clamped = false;
};
inline MinMaxSplit split_min_max(const BoundaryGrid& phi);

// ===========================================================================
// implementation
// ===========================================================================

namespace detail {

struct Monomial {
    int n = 0;
};

struct Polynomial {
    std::vector<complex> coeffs;  // c0 + c1 z + ...
};

struct Lacunary {
    std::vector<complex> coeffs;
    std::vector<int> exponents;
};

struct Blaschke {
    std::vector<complex> zeros;
    double rotation = 0.0;
    double blaschke_sum = 0.0;
};

struct SingularAtom {
    complex xi;
    double mass = 0.0;
};

struct SingularInner {
    std::vector<SingularAtom> atoms;
    double rotation = 0.0;
};

struct Outer {
    BoundaryGrid log_phi;
    std::vector<complex> herglotz;  // log O(z) = sum_j herglotz[j] z^j
    bool clamped = false;
};

struct Product {
    std::vector<AnalyticFunction> factors;
};

struct Quotient {
    std::vector<AnalyticFunction> num_den;  // exactly two entries
};

using FunctionVariant =
    std::variant<Monomial, Polynomial, Lacunary, Blaschke, SingularInner, Outer, Product, Quotient>;

struct FunctionNode {
    FunctionVariant v;
};

inline constexpr double boundary_eval_guard = 1e-6;
inline constexpr double division_floor = 1e-12;

inline void check_interior(complex z) {
    if (!(std::abs(z) < 1.0))
        throw validation_error("evaluation point must lie in the open unit disc");
}

inline void check_kernel_resolution(complex z) {
    if (std::abs(z) > 1.0 - boundary_eval_guard)
        throw resolution_error("evaluation too close to the boundary for boundary-data variants");
}

inline complex blaschke_prefactor(complex a) {
    if (a == complex(0.0, 0.0)) return complex(-1.0, 0.0);
    return std::abs(a) / a;
}

inline complex blaschke_factor(complex a, complex z) {
    return blaschke_prefactor(a) * (a - z) / (1.0 - std::conj(a) * z);
}

inline complex blaschke_factor_derivative(complex a, complex z) {
    const complex d = 1.0 - std::conj(a) * z;
    return blaschke_prefactor(a) * (std::norm(a) - 1.0) / (d * d);
}

// b'/b summed over the given factor indices; singular at the zeros.
inline complex blaschke_logderiv_sum(const std::vector<complex>& zeros, complex z,
                                     const std::vector<std::size_t>& skip) {
    complex s(0.0, 0.0);
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        if (std::find(skip.begin(), skip.end(), k) != skip.end()) continue;
        const complex a = zeros[k];
        s += (std::norm(a) - 1.0) / ((a - z) * (1.0 - std::conj(a) * z));
    }
    return s;
}

inline complex blaschke_value(const Blaschke& b, complex z) {
    complex v = std::polar(1.0, b.rotation);
    for (complex a : b.zeros) v *= blaschke_factor(a, z);
    return v;
}

/// Product-rule derivative with the (up to two) factors nearest to z
/// split out, so points at or near zeros stay finite.
inline complex blaschke_derivative(const Blaschke& b, complex z) {
    const std::size_t n = b.zeros.size();
    if (n == 0) return complex(0.0, 0.0);
    std::vector<std::size_t> near;
    for (std::size_t k = 0; k < n && near.size() < 2; ++k)
        if (std::abs(b.zeros[k] - z) < 1e-7) near.push_back(k);

    complex rest_value = std::polar(1.0, b.rotation);
    for (std::size_t k = 0; k < n; ++k)
        if (std::find(near.begin(), near.end(), k) == near.end())
            rest_value *= blaschke_factor(b.zeros[k], z);
    const complex rest_deriv = rest_value * blaschke_logderiv_sum(b.zeros, z, near);

    if (near.empty()) return rest_deriv;
    if (near.size() == 1) {
        const complex a = b.zeros[near[0]];
        return blaschke_factor_derivative(a, z) * rest_value +
               blaschke_factor(a, z) * rest_deriv;
    }
    const complex a1 = b.zeros[near[0]], a2 = b.zeros[near[1]];
    const complex f1 = blaschke_factor(a1, z), f2 = blaschke_factor(a2, z);
    const complex d1 = blaschke_factor_derivative(a1, z), d2 = blaschke_factor_derivative(a2, z);
    return d1 * f2 * rest_value + f1 * d2 * rest_value + f1 * f2 * rest_deriv;
}

inline complex singular_value(const SingularInner& s, complex z) {
    complex expo(0.0, s.rotation);
    for (const auto& atom : s.atoms) expo += atom.mass * (z + atom.xi) / (z - atom.xi);
    return std::exp(expo);
}

inline complex singular_derivative(const SingularInner& s, complex z) {
    complex sum(0.0, 0.0);
    for (const auto& atom : s.atoms) {
        const complex d = z - atom.xi;
        sum += atom.mass * (-2.0 * atom.xi) / (d * d);
    }
    return singular_value(s, z) * sum;
}

inline complex horner(const std::vector<complex>& coeffs, complex z) {
    complex v(0.0, 0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * z + coeffs[i];
    return v;
}

inline complex outer_log(const Outer& o, complex z) { return horner(o.herglotz, z); }

inline complex outer_log_derivative(const Outer& o, complex z) {
    complex v(0.0, 0.0);
    for (std::size_t j = o.herglotz.size(); j-- > 1;)
        v = v * z + o.herglotz[j] * static_cast<double>(j);
    return v;
}

/// Herglotz power-series coefficients of log O from samples of log phi:
/// c_0 + 2 sum_{j>=1} c_j z^j with c_j the positive-frequency Fourier
/// coefficients (Nyquist term taken with weight 1).
inline std::vector<complex> herglotz_coefficients(const BoundaryGrid& log_phi) {
    const auto c = fourier_coefficients(log_phi.values);
    const std::size_t m = c.size();
    std::vector<complex> h(m / 2 + 1);
    h[0] = c[0];
    for (std::size_t j = 1; j < m / 2; ++j) h[j] = 2.0 * c[j];
    h[m / 2] = c[m / 2];
    double scale = 1.0;
    for (const complex& v : h) scale = std::max(scale, std::abs(v));
    std::size_t last = 0;
    for (std::size_t j = 0; j < h.size(); ++j)
        if (std::abs(h[j]) > 1e-16 * scale) last = j;
    h.resize(last + 1);
    return h;
}

/// Samples of sum_j a_j (r e^{i theta})^j on the size-n dyadic grid via
/// one inverse FFT (indices fold modulo n).
inline std::vector<complex> power_series_on_circle(const std::vector<complex>& coeffs, double r,
                                                   std::size_t n) {
    std::vector<complex> spec(n, complex(0.0, 0.0));
    double rj = 1.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        spec[j % n] += coeffs[j] * rj;
        rj *= r;
    }
    return fourier_synthesis(std::move(spec));
}

}  // namespace detail

// --- factories -------------------------------------------------------------

inline AnalyticFunction AnalyticFunction::constant(complex c) {
    return polynomial({c});
}

inline AnalyticFunction AnalyticFunction::monomial(int n) {
    if (n < 0) throw validation_error("monomial exponent must be nonnegative");
    detail::Monomial m{n};
    return AnalyticFunction(std::make_shared<detail::FunctionNode>(detail::FunctionNode{m}));
}

inline AnalyticFunction AnalyticFunction::polynomial(std::vector<complex> coefficients) {
    if (coefficients.empty()) coefficients.push_back(complex(0.0, 0.0));
    detail::Polynomial p{std::move(coefficients)};
    return AnalyticFunction(
        std::make_shared<detail::FunctionNode>(detail::FunctionNode{std::move(p)}));
}

inline AnalyticFunction AnalyticFunction::lacunary(std::vector<complex> coefficients,
                                                   std::vector<int> exponents) {
    if (coefficients.size() != exponents.size() || coefficients.empty())
        throw validation_error("lacunary series needs matching coefficients and exponents");
    for (int e : exponents)
        if (e < 0) throw validation_error("lacunary exponents must be nonnegative");
    detail::Lacunary l{std::move(coefficients), std::move(exponents)};
    return AnalyticFunction(
        std::make_shared<detail::FunctionNode>(detail::FunctionNode{std::move(l)}));
}

inline AnalyticFunction AnalyticFunction::blaschke(std::vector<complex> zeros, double rotation) {
    detail::Blaschke b;
    for (complex z : zeros) {
        if (!(std::abs(z) < 1.0))
            throw validation_error("Blaschke zeros must lie in the open unit disc");
        b.blaschke_sum += 1.0 - std::abs(z);
    }
    b.zeros = std::move(zeros);
    b.rotation = rotation;
    return AnalyticFunction(
        std::make_shared<detail::FunctionNode>(detail::FunctionNode{std::move(b)}));
}

inline AnalyticFunction AnalyticFunction::singular_inner(
    std::vector<std::pair<double, double>> atoms, double rotation) {
    detail::SingularInner s;
    for (const auto& [angle, mass] : atoms) {
        if (!(mass > 0.0)) throw validation_error("singular inner atoms need positive mass");
        s.atoms.push_back({std::polar(1.0, angle), mass});
    }
    s.rotation = rotation;
    return AnalyticFunction(
        std::make_shared<detail::FunctionNode>(detail::FunctionNode{std::move(s)}));
}

inline AnalyticFunction AnalyticFunction::outer_from_log_modulus(BoundaryGrid log_phi,
                                                                 bool clamped) {
    for (double v : log_phi.values)
        if (!std::isfinite(v)) throw validation_error("outer log-modulus must be finite");
    detail::Outer o;
    o.herglotz = detail::herglotz_coefficients(log_phi);
    o.log_phi = std::move(log_phi);
    o.clamped = clamped;
    return AnalyticFunction(
        std::make_shared<detail::FunctionNode>(detail::FunctionNode{std::move(o)}));
}

inline AnalyticFunction AnalyticFunction::outer(const BoundaryGrid& phi) {
    BoundaryGrid logs;
    logs.log2_size = phi.log2_size;
    logs.values.reserve(phi.size());
    bool clamped = false;
    for (double v : phi.values) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw validation_error("outer boundary modulus must be nonnegative and finite");
        if (v < 1e-8) {
            clamped = true;
            v = 1e-8;
        }
        logs.values.push_back(std::log(v));
    }
    return outer_from_log_modulus(std::move(logs), clamped);
}

inline AnalyticFunction AnalyticFunction::product(std::vector<AnalyticFunction> factors) {
    if (factors.empty()) throw validation_error("product needs at least one factor");
    if (factors.size() == 1) return factors.front();
    detail::Product p{std::move(factors)};
    return AnalyticFunction(
        std::make_shared<detail::FunctionNode>(detail::FunctionNode{std::move(p)}));
}

inline AnalyticFunction AnalyticFunction::quotient(AnalyticFunction numerator,
                                                   AnalyticFunction denominator) {
    detail::Quotient q{{std::move(numerator), std::move(denominator)}};
    return AnalyticFunction(
        std::make_shared<detail::FunctionNode>(detail::FunctionNode{std::move(q)}));
}

// --- evaluation --------------------------------------------------------------

inline complex AnalyticFunction::evaluate(complex z) const {
    using namespace detail;
    check_interior(z);
    return std::visit(
        [&](const auto& node) -> complex {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Monomial>) {
                return node.n == 0 ? complex(1.0, 0.0) : std::pow(z, node.n);
            } else if constexpr (std::is_same_v<T, Polynomial>) {
                return horner(node.coeffs, z);
            } else if constexpr (std::is_same_v<T, Lacunary>) {
                complex v(0.0, 0.0);
                for (std::size_t i = 0; i < node.coeffs.size(); ++i)
                    v += node.coeffs[i] * std::pow(z, node.exponents[i]);
                return v;
            } else if constexpr (std::is_same_v<T, Blaschke>) {
                return blaschke_value(node, z);
            } else if constexpr (std::is_same_v<T, SingularInner>) {
                check_kernel_resolution(z);
                return singular_value(node, z);
            } else if constexpr (std::is_same_v<T, Outer>) {
                check_kernel_resolution(z);
                return std::exp(outer_log(node, z));
            } else if constexpr (std::is_same_v<T, Product>) {
                complex v(1.0, 0.0);
                for (const auto& f : node.factors) v *= f.evaluate(z);
                return v;
            } else {
                const complex den = node.num_den[1].evaluate(z);
                if (std::abs(den) < division_floor)
                    throw resolution_error("quotient evaluated at a denominator singularity");
                return node.num_den[0].evaluate(z) / den;
            }
        },
        node_->v);
}

inline complex AnalyticFunction::derivative(complex z) const {
    using namespace detail;
    check_interior(z);
    return std::visit(
        [&](const auto& node) -> complex {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Monomial>) {
                if (node.n == 0) return complex(0.0, 0.0);
                return static_cast<double>(node.n) * std::pow(z, node.n - 1);
            } else if constexpr (std::is_same_v<T, Polynomial>) {
                complex v(0.0, 0.0);
                for (std::size_t i = node.coeffs.size(); i-- > 1;)
                    v = v * z + node.coeffs[i] * static_cast<double>(i);
                return v;
            } else if constexpr (std::is_same_v<T, Lacunary>) {
                complex v(0.0, 0.0);
                for (std::size_t i = 0; i < node.coeffs.size(); ++i) {
                    const int e = node.exponents[i];
                    if (e > 0) v += node.coeffs[i] * static_cast<double>(e) * std::pow(z, e - 1);
                }
                return v;
            } else if constexpr (std::is_same_v<T, Blaschke>) {
                return blaschke_derivative(node, z);
            } else if constexpr (std::is_same_v<T, SingularInner>) {
                check_kernel_resolution(z);
                return singular_derivative(node, z);
            } else if constexpr (std::is_same_v<T, Outer>) {
                check_kernel_resolution(z);
                return std::exp(outer_log(node, z)) * outer_log_derivative(node, z);
            } else if constexpr (std::is_same_v<T, Product>) {
                const std::size_t n = node.factors.size();
                std::vector<complex> vals(n), ders(n);
                for (std::size_t i = 0; i < n; ++i) {
                    vals[i] = node.factors[i].evaluate(z);
                    ders[i] = node.factors[i].derivative(z);
                }
                complex total(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) {
                    complex term = ders[i];
                    for (std::size_t k = 0; k < n; ++k)
                        if (k != i) term *= vals[k];
                    total += term;
                }
                return total;
            } else {
                const complex den = node.num_den[1].evaluate(z);
                if (std::abs(den) < division_floor)
                    throw resolution_error("quotient derivative at a denominator singularity");
                const complex num = node.num_den[0].evaluate(z);
                const complex dn = node.num_den[0].derivative(z);
                const complex dd = node.num_den[1].derivative(z);
                return (dn * den - num * dd) / (den * den);
            }
        },
        node_->v);
}

// --- whole-circle evaluation --------------------------------------------------

inline std::vector<complex> AnalyticFunction::values_on_circle(double r,
                                                               std::size_t m_points) const {
    using namespace detail;
    if (!(r >= 0.0 && r < 1.0)) throw validation_error("circle radius must lie in [0,1)");
    if (!is_pow2(m_points)) throw validation_error("circle grid size must be a power of two");
    return std::visit(
        [&](const auto& node) -> std::vector<complex> {
            using T = std::decay_t<decltype(node)>;
            std::vector<complex> out(m_points);
            if constexpr (std::is_same_v<T, Monomial>) {
                const double rn = node.n == 0 ? 1.0 : std::pow(r, node.n);
                for (std::size_t j = 0; j < m_points; ++j)
                    out[j] = std::polar(rn, node.n * two_pi * static_cast<double>(j) / m_points);
            } else if constexpr (std::is_same_v<T, Polynomial>) {
                return power_series_on_circle(node.coeffs, r, m_points);
            } else if constexpr (std::is_same_v<T, Lacunary>) {
                std::vector<complex> coeffs;
                for (std::size_t i = 0; i < node.coeffs.size(); ++i) {
                    const std::size_t e = static_cast<std::size_t>(node.exponents[i]);
                    if (coeffs.size() <= e) coeffs.resize(e + 1, complex(0.0, 0.0));
                    coeffs[e] += node.coeffs[i];
                }
                return power_series_on_circle(coeffs, r, m_points);
            } else if constexpr (std::is_same_v<T, Outer>) {
                if (r > 1.0 - boundary_eval_guard)
                    throw resolution_error("outer circle evaluation too close to the boundary");
                out = power_series_on_circle(node.herglotz, r, m_points);
                for (auto& v : out) v = std::exp(v);
            } else if constexpr (std::is_same_v<T, Product>) {
                out.assign(m_points, complex(1.0, 0.0));
                for (const auto& f : node.factors) {
                    const auto fv = f.values_on_circle(r, m_points);
                    for (std::size_t j = 0; j < m_points; ++j) out[j] *= fv[j];
                }
            } else if constexpr (std::is_same_v<T, Quotient>) {
                const auto nv = node.num_den[0].values_on_circle(r, m_points);
                const auto dv = node.num_den[1].values_on_circle(r, m_points);
                for (std::size_t j = 0; j < m_points; ++j) {
                    if (std::abs(dv[j]) < division_floor)
                        throw resolution_error("quotient circle evaluation hit a singularity");
                    out[j] = nv[j] / dv[j];
                }
            } else {
                for (std::size_t j = 0; j < m_points; ++j)
                    out[j] = evaluate(std::polar(r, two_pi * static_cast<double>(j) / m_points));
            }
            return out;
        },
        node_->v);
}

inline std::vector<complex> AnalyticFunction::derivative_on_circle(double r,
                                                                   std::size_t m_points) const {
    using namespace detail;
    if (!(r >= 0.0 && r < 1.0)) throw validation_error("circle radius must lie in [0,1)");
    if (!is_pow2(m_points)) throw validation_error("circle grid size must be a power of two");
    return std::visit(
        [&](const auto& node) -> std::vector<complex> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Outer>) {
                if (r > 1.0 - boundary_eval_guard)
                    throw resolution_error("outer circle evaluation too close to the boundary");
                std::vector<complex> dcoef(node.herglotz.size() > 0 ? node.herglotz.size() - 1 : 0);
                for (std::size_t j = 1; j < node.herglotz.size(); ++j)
                    dcoef[j - 1] = node.herglotz[j] * static_cast<double>(j);
                auto logs = power_series_on_circle(node.herglotz, r, m_points);
                auto dlog = power_series_on_circle(dcoef, r, m_points);
                std::vector<complex> out(m_points);
                for (std::size_t j = 0; j < m_points; ++j) out[j] = std::exp(logs[j]) * dlog[j];
                return out;
            } else if constexpr (std::is_same_v<T, Product>) {
                const std::size_t n = node.factors.size();
                std::vector<std::vector<complex>> vals(n), ders(n);
                for (std::size_t i = 0; i < n; ++i) {
                    vals[i] = node.factors[i].values_on_circle(r, m_points);
                    ders[i] = node.factors[i].derivative_on_circle(r, m_points);
                }
                std::vector<complex> out(m_points, complex(0.0, 0.0));
                for (std::size_t j = 0; j < m_points; ++j) {
                    complex total(0.0, 0.0);
                    for (std::size_t i = 0; i < n; ++i) {
                        complex term = ders[i][j];
                        for (std::size_t k = 0; k < n; ++k)
                            if (k != i) term *= vals[k][j];
                        total += term;
                    }
                    out[j] = total;
                }
                return out;
            } else if constexpr (std::is_same_v<T, Quotient>) {
                const auto nv = node.num_den[0].values_on_circle(r, m_points);
                const auto dv = node.num_den[1].values_on_circle(r, m_points);
                const auto nd = node.num_den[0].derivative_on_circle(r, m_points);
                const auto dd = node.num_den[1].derivative_on_circle(r, m_points);
                std::vector<complex> out(m_points);
                for (std::size_t j = 0; j < m_points; ++j) {
                    if (std::abs(dv[j]) < division_floor)
                        throw resolution_error("quotient circle derivative hit a singularity");
                    out[j] = (nd[j] * dv[j] - nv[j] * dd[j]) / (dv[j] * dv[j]);
                }
                return out;
            } else {
                std::vector<complex> out(m_points);
                for (std::size_t j = 0; j < m_points; ++j)
                    out[j] = derivative(std::polar(r, two_pi * static_cast<double>(j) / m_points));
                return out;
            }
        },
        node_->v);
}

// --- boundary data -------------------------------------------------------------

inline ComplexBoundaryGrid AnalyticFunction::boundary_values(int log2_size) const {
    using namespace detail;
    if (log2_size < 8) throw validation_error("boundary grid requires log2 size >= 8");
    const std::size_t n = std::size_t{1} << log2_size;
    ComplexBoundaryGrid g;
    g.log2_size = log2_size;
    return std::visit(
        [&](const auto& node) -> ComplexBoundaryGrid {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Monomial>) {
                g.values.resize(n);
                for (std::size_t j = 0; j < n; ++j)
                    g.values[j] = std::polar(1.0, node.n * two_pi * static_cast<double>(j) / n);
            } else if constexpr (std::is_same_v<T, Polynomial>) {
                g.values = power_series_on_circle(node.coeffs, 1.0, n);
            } else if constexpr (std::is_same_v<T, Lacunary>) {
                std::vector<complex> coeffs;
                for (std::size_t i = 0; i < node.coeffs.size(); ++i) {
                    const std::size_t e = static_cast<std::size_t>(node.exponents[i]);
                    if (coeffs.size() <= e) coeffs.resize(e + 1, complex(0.0, 0.0));
                    coeffs[e] += node.coeffs[i];
                }
                g.values = power_series_on_circle(coeffs, 1.0, n);
            } else if constexpr (std::is_same_v<T, Blaschke>) {
                g.values.resize(n);
                for (std::size_t j = 0; j < n; ++j) {
                    const complex xi = std::polar(1.0, two_pi * static_cast<double>(j) / n);
                    complex v = std::polar(1.0, node.rotation);
                    for (complex a : node.zeros) v *= blaschke_factor(a, xi);
                    g.values[j] = v;
                }
            } else if constexpr (std::is_same_v<T, SingularInner>) {
                g.values.resize(n);
                for (std::size_t j = 0; j < n; ++j) {
                    const complex xi = std::polar(1.0, two_pi * static_cast<double>(j) / n);
                    for (const auto& atom : node.atoms)
                        if (std::abs(xi - atom.xi) < 1e-9)
                            throw resolution_error(
                                "singular inner boundary values requested at an atom");
                    g.values[j] = singular_value(node, xi);
                }
            } else if constexpr (std::is_same_v<T, Outer>) {
                g.values = power_series_on_circle(node.herglotz, 1.0, n);
                for (auto& v : g.values) v = std::exp(v);
            } else if constexpr (std::is_same_v<T, Product>) {
                g.values.assign(n, complex(1.0, 0.0));
                for (const auto& f : node.factors) {
                    const auto fv = f.boundary_values(log2_size);
                    for (std::size_t j = 0; j < n; ++j) g.values[j] *= fv.values[j];
                }
            } else {
                const auto nv = node.num_den[0].boundary_values(log2_size);
                const auto dv = node.num_den[1].boundary_values(log2_size);
                g.values.resize(n);
                for (std::size_t j = 0; j < n; ++j) {
                    if (std::abs(dv.values[j]) < division_floor)
                        throw resolution_error("quotient boundary values hit a singularity");
                    g.values[j] = nv.values[j] / dv.values[j];
                }
            }
            return g;
        },
        node_->v);
}

inline bool AnalyticFunction::is_inner() const {
    using namespace detail;
    return std::visit(
        [&](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Monomial>) return true;
            else if constexpr (std::is_same_v<T, Blaschke>) return true;
            else if constexpr (std::is_same_v<T, SingularInner>) return true;
            else if constexpr (std::is_same_v<T, Product>) {
                for (const auto& f : node.factors)
                    if (!f.is_inner()) return false;
                return true;
            } else
                return false;
        },
        node_->v);
}

inline BoundaryGrid AnalyticFunction::boundary_modulus(int log2_size) const {
    using namespace detail;
    if (log2_size < 8) throw validation_error("boundary grid requires log2 size >= 8");
    const std::size_t n = std::size_t{1} << log2_size;
    BoundaryGrid g;
    g.log2_size = log2_size;
    if (is_inner()) {
        g.values.assign(n, 1.0);
        return g;
    }
    return std::visit(
        [&](const auto& node) -> BoundaryGrid {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Outer>) {
                if (static_cast<std::size_t>(node.log_phi.log2_size) ==
                    static_cast<std::size_t>(log2_size)) {
                    g.values.resize(n);
                    for (std::size_t j = 0; j < n; ++j) g.values[j] = std::exp(node.log_phi.values[j]);
                } else {
                    const auto logs = power_series_on_circle(node.herglotz, 1.0, n);
                    g.values.resize(n);
                    for (std::size_t j = 0; j < n; ++j) g.values[j] = std::exp(logs[j].real());
                }
            } else if constexpr (std::is_same_v<T, Product>) {
                g.values.assign(n, 1.0);
                for (const auto& f : node.factors) {
                    const auto fm = f.boundary_modulus(log2_size);
                    for (std::size_t j = 0; j < n; ++j) g.values[j] *= fm.values[j];
                }
            } else if constexpr (std::is_same_v<T, Quotient>) {
                const auto nm = node.num_den[0].boundary_modulus(log2_size);
                const auto dm = node.num_den[1].boundary_modulus(log2_size);
                g.values.resize(n);
                for (std::size_t j = 0; j < n; ++j) {
                    if (dm.values[j] < division_floor)
                        throw resolution_error(
                            "quotient boundary modulus vanishes at a grid node");
                    g.values[j] = nm.values[j] / dm.values[j];
                }
            } else {
                const auto bv = boundary_values(log2_size);
                g.values.resize(n);
                for (std::size_t j = 0; j < n; ++j) g.values[j] = std::abs(bv.values[j]);
            }
            return g;
        },
        node_->v);
}

// --- structure accessors ---------------------------------------------------

inline bool AnalyticFunction::requires_boundary_guard() const {
    using namespace detail;
    return std::visit(
        [&](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Outer> || std::is_same_v<T, SingularInner>)
                return true;
            else if constexpr (std::is_same_v<T, Product>) {
                for (const auto& f : node.factors)
                    if (f.requires_boundary_guard()) return true;
                return false;
            } else if constexpr (std::is_same_v<T, Quotient>) {
                return node.num_den[0].requires_boundary_guard() ||
                       node.num_den[1].requires_boundary_guard();
            } else
                return false;
        },
        node_->v);
}

inline bool AnalyticFunction::is_outer() const {
    return std::holds_alternative<detail::Outer>(node_->v);
}

inline bool AnalyticFunction::was_clamped() const {
    if (const auto* o = std::get_if<detail::Outer>(&node_->v)) return o->clamped;
    return false;
}

inline const BoundaryGrid& AnalyticFunction::outer_log_modulus() const {
    const auto* o = std::get_if<detail::Outer>(&node_->v);
    if (!o) throw validation_error("not an outer function");
    return o->log_phi;
}

inline const std::vector<complex>& AnalyticFunction::blaschke_zeros() const {
    const auto* b = std::get_if<detail::Blaschke>(&node_->v);
    if (!b) throw validation_error("not a Blaschke product");
    return b->zeros;
}

inline std::vector<AnalyticFunction> AnalyticFunction::factors() const {
    if (const auto* p = std::get_if<detail::Product>(&node_->v)) {
        std::vector<AnalyticFunction> out;
        for (const auto& f : p->factors) {
            auto sub = f.factors();
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    return {*this};
}

inline std::string AnalyticFunction::describe() const {
    using namespace detail;
    return std::visit(
        [&](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Monomial>)
                return "monomial(" + std::to_string(node.n) + ")";
            else if constexpr (std::is_same_v<T, Polynomial>)
                return "polynomial(deg " + std::to_string(node.coeffs.size() - 1) + ")";
            else if constexpr (std::is_same_v<T, Lacunary>)
                return "lacunary(" + std::to_string(node.coeffs.size()) + " terms)";
            else if constexpr (std::is_same_v<T, Blaschke>)
                return "blaschke(" + std::to_string(node.zeros.size()) + " zeros)";
            else if constexpr (std::is_same_v<T, SingularInner>)
                return "singular_inner(" + std::to_string(node.atoms.size()) + " atoms)";
            else if constexpr (std::is_same_v<T, Outer>)
                return "outer(m=" + std::to_string(node.log_phi.log2_size) + ")";
            else if constexpr (std::is_same_v<T, Product>) {
                std::string s = "product(";
                for (std::size_t i = 0; i < node.factors.size(); ++i) {
                    if (i) s += " * ";
                    s += node.factors[i].describe();
                }
                return s + ")";
            } else
                return "quotient(" + node.num_den[0].describe() + " / " +
                       node.num_den[1].describe() + ")";
        },
        node_->v);
}

inline MinMaxSplit split_min_max(const BoundaryGrid& phi) {
    MinMaxSplit out{AnalyticFunction::constant(1.0), AnalyticFunction::constant(1.0), false};
    BoundaryGrid lo, hi;
    lo.log2_size = hi.log2_size = phi.log2_size;
    lo.values.reserve(phi.size());
    hi.values.reserve(phi.size());
    for (double v : phi.values) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw validation_error("split_min_max: boundary modulus must be nonnegative");
        double w = v;
        if (w < 1e-8) {
            out.clamped = true;
            w = 1e-8;
        }
        lo.values.push_back(std::min(w, 1.0));
        hi.values.push_back(std::max(w, 1.0));
    }
    out.o_min = AnalyticFunction::outer(lo);
    out.o_max = AnalyticFunction::outer(hi);
    return out;
}

}  // namespace besov

#endif
