#ifndef BESOV_RADIAL_WEIGHT_HPP
#define BESOV_RADIAL_WEIGHT_HPP

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "besov/common.hpp"
#include "besov/quadrature.hpp"

namespace besov {

/// A radial weight nu on the unit disc together with its tail integral
///     tail(r) = integral of nu over [r, 1).
///
/// Three representations:
///  * power:      nu(r) = (1-r)^alpha,                      alpha > -1
///  * power_log:  nu(r) = (1-r)^alpha (log(e/(1-r)))^beta,  alpha > -1
///  * sampled:    nonnegative values on a strictly increasing radius grid
///
/// Radial positions are handled internally as u = 1 - r so that radii
/// like 1 - 1e-12 stay exactly representable.  The power_log tail has no
/// closed form; it is tabulated at construction on a uniform grid in
/// y = log(1/u) with per-cell Gauss-Legendre panels.
class RadialWeight {
public:
    enum class Kind { Power, PowerLog, Sampled };

    static RadialWeight power(double alpha) {
        if (!(alpha > -1.0)) throw validation_error("power weight requires alpha > -1");
        RadialWeight w;
        w.kind_ = Kind::Power;
        w.alpha_ = alpha;
        return w;
    }

    static RadialWeight power_log(double alpha, double beta) {
        if (!(alpha > -1.0)) throw validation_error("power_log weight requires alpha > -1");
        RadialWeight w;
        w.kind_ = Kind::PowerLog;
        w.alpha_ = alpha;
        w.beta_ = beta;
        w.build_log_tail_table();
        return w;
    }

    static RadialWeight sampled(std::vector<double> radii, std::vector<double> values) {
        if (radii.size() != values.size() || radii.size() < 2)
            throw validation_error("sampled weight needs >= 2 matching (radius, value) pairs");
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (!(radii[i] >= 0.0 && radii[i] < 1.0) || !std::isfinite(radii[i]))
                throw validation_error("sampled weight radii must lie in [0,1)");
            if (i > 0 && !(radii[i] > radii[i - 1]))
                throw validation_error("sampled weight radii must be strictly increasing");
            if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
                throw validation_error("sampled weight values must be finite and nonnegative");
        }
        if (radii.back() < 1.0 - 1e-6)
            throw validation_error(
                "sampled weight grid must reach 1 - 1e-6 (insufficient boundary resolution)");
        RadialWeight w;
        w.kind_ = Kind::Sampled;
        w.radii_ = std::move(radii);
        w.values_ = std::move(values);
        w.build_sampled_tail_table();
        return w;
    }

    Kind kind() const { return kind_; }
    bool is_power() const { return kind_ == Kind::Power; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    /// Distance from the last sampled radius to the boundary; closed-form
    /// kinds are evaluable arbitrarily close to 1.
    double boundary_gap() const {
        return kind_ == Kind::Sampled ? 1.0 - radii_.back() : 0.0;
    }

    std::string kind_name() const {
        switch (kind_) {
            case Kind::Power: return "power";
            case Kind::PowerLog: return "power_log";
            default: return "sampled";
        }
    }

    /// Density at radius r in [0,1).  Sampled weights interpolate
    /// linearly and extend by a constant beyond the grid ends.
    double density(double r) const { return density_u(1.0 - r); }

    double density_u(double u) const {
        switch (kind_) {
            case Kind::Power:
                return std::pow(u, alpha_);
            case Kind::PowerLog:
                return std::pow(u, alpha_) * std::pow(1.0 - std::log(u), beta_);
            default: {
                const double r = 1.0 - u;
                if (r <= radii_.front()) return values_.front();
                if (r >= radii_.back()) return values_.back();
                const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
                const std::size_t i = static_cast<std::size_t>(it - radii_.begin());
                const double t = (r - radii_[i - 1]) / (radii_[i] - radii_[i - 1]);
                return values_[i - 1] + t * (values_[i] - values_[i - 1]);
            }
        }
    }

    /// tail(r) = integral_r^1 nu(s) ds, nonincreasing, tail(1) = 0.
    double tail(double r) const {
        if (!(r >= 0.0 && r <= 1.0)) throw validation_error("tail: radius must lie in [0,1]");
        return tail_u(1.0 - r);
    }

    /// Same as tail but parametrized by u = 1 - r (u in [0,1]).
    double tail_u(double u) const {
        if (u <= 0.0) return 0.0;
        if (u > 1.0) u = 1.0;
        switch (kind_) {
            case Kind::Power:
                return std::pow(u, alpha_ + 1.0) / (alpha_ + 1.0);
            case Kind::PowerLog:
                return log_tail(u);
            default:
                return sampled_tail(u);
        }
    }

    double total_mass() const { return tail_u(1.0); }

    /// integral over {u_lo <= 1-s <= u_hi} of nu(s) * (1-s)^{-q} ds,
    /// i.e. the exact mass of nu(r)/(1-r)^q on one radial cell.
    double cell_mass(double u_lo, double u_hi, double q) const {
        if (u_hi <= u_lo) return 0.0;
        switch (kind_) {
            case Kind::Power: {
                const double e = alpha_ - q + 1.0;
                if (std::abs(e) < 1e-12) return std::log(u_hi / u_lo);
                return (std::pow(u_hi, e) - std::pow(u_lo, e)) / e;
            }
            default:
                // Short geometric cells: one 8-point panel in y = log(1/u).
                return gauss8(
                    [this, q](double y) {
                        const double u = std::exp(-y);
                        return density_u(u) * std::pow(u, 1.0 - q);
                    },
                    std::log(1.0 / u_hi), std::log(1.0 / u_lo));
        }
    }

private:
    RadialWeight() = default;

    // --- power_log tail table -------------------------------------------
    static constexpr double y_max_ = 60.0;
    static constexpr int y_cells_ = 6000;

    void build_log_tail_table() {
        const double dy = y_max_ / y_cells_;
        log_tail_table_.assign(y_cells_ + 1, 0.0);
        log_tail_table_[y_cells_] = log_tail_asymptotic(y_max_);
        for (int j = y_cells_ - 1; j >= 0; --j) {
            const double piece = gauss4([this](double y) { return log_integrand(y); },
                                        j * dy, (j + 1) * dy);
            log_tail_table_[j] = log_tail_table_[j + 1] + piece;
        }
    }

    double log_integrand(double y) const {
        return std::exp(-(alpha_ + 1.0) * y) * std::pow(1.0 + y, beta_);
    }

    double log_tail_asymptotic(double y) const {
        const double a = alpha_ + 1.0;
        const double lead = log_integrand(y) / a;
        return lead * (1.0 + beta_ / (a * (1.0 + y)));
    }

    double log_tail(double u) const {
        const double y = -std::log(u);
        if (y >= y_max_) return log_tail_asymptotic(y);
        const double dy = y_max_ / y_cells_;
        const std::size_t j = static_cast<std::size_t>(y / dy);
        const double upper = (j + 1) * dy;
        const double piece =
            gauss4([this](double t) { return log_integrand(t); }, y, upper);
        return log_tail_table_[j + 1] + piece;
    }

    // --- sampled tail ----------------------------------------------------
    void build_sampled_tail_table() {
        // cumulative trapezoid from the outer end, plus the constant
        // extension over [r_last, 1).
        const std::size_t n = radii_.size();
        sampled_tail_table_.assign(n, 0.0);
        sampled_tail_table_[n - 1] = values_.back() * (1.0 - radii_.back());
        for (std::size_t i = n - 1; i-- > 0;) {
            const double seg =
                0.5 * (values_[i] + values_[i + 1]) * (radii_[i + 1] - radii_[i]);
            sampled_tail_table_[i] = sampled_tail_table_[i + 1] + seg;
        }
    }

    double sampled_tail(double u) const {
        const double r = 1.0 - u;
        if (r <= radii_.front())
            return sampled_tail_table_.front() + values_.front() * (radii_.front() - r);
        if (r >= radii_.back()) return values_.back() * (1.0 - r);
        const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
        const std::size_t i = static_cast<std::size_t>(it - radii_.begin());
        const double vr = density(r);
        const double partial = 0.5 * (vr + values_[i]) * (radii_[i] - r);
        return sampled_tail_table_[i] + partial;
    }

    Kind kind_ = Kind::Power;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    std::vector<double> radii_;
    std::vector<double> values_;
    std::vector<double> log_tail_table_;
    std::vector<double> sampled_tail_table_;
};

}  // namespace besov

#endif
