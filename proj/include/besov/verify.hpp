#ifndef BESOV_VERIFY_HPP
#define BESOV_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "besov/analytic_function.hpp"
#include "besov/common.hpp"
#include "besov/disc_geometry.hpp"
#include "besov/quantities.hpp"
#include "besov/radial_weight.hpp"
#include "besov/weight_classify.hpp"

namespace besov {

struct NamedFunction {
    std::string name;
    AnalyticFunction fn;
};
using Family = std::vector<NamedFunction>;

enum class BoundVerdict { Bounded, Unbounded, Unresolved };

inline std::string to_string(BoundVerdict v) {
    switch (v) {
        case BoundVerdict::Bounded: return "BOUNDED";
        case BoundVerdict::Unbounded: return "UNBOUNDED";
        default: return "UNRESOLVED";
    }
}

struct MemberRatio {
    std::string member;
    double left = 0.0;
    double right = 0.0;
    double ratio = 0.0;
    bool usable = false;
};

/// Paired quantity values across a family with a bounded-ratio verdict.
/// "Bounded" is operationalized as stability of the max ratio under one
/// grid refinement; a clear monotone growth pattern is "Unbounded";
/// everything else stays "Unresolved".
struct RatioReport {
    std::string label;
    std::vector<MemberRatio> members;          // base resolution
    std::vector<MemberRatio> members_refined;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double refined_max_ratio = 0.0;
    double stability = 0.0;  // relative change of max ratio under refinement
    BoundVerdict verdict = BoundVerdict::Unresolved;
    double bound_constant = 0.0;     // when Bounded
    double trend_growth = 0.0;       // when Unbounded
    std::vector<std::string> excluded;
};

namespace detail {

inline MemberRatio make_ratio(const std::string& name, double left, double right) {
    MemberRatio m;
    m.member = name;
    m.left = left;
    m.right = right;
    m.usable = std::isfinite(left) && std::isfinite(right) && right > 1e-300;
    m.ratio = m.usable ? left / right : 0.0;
    return m;
}

inline void judge_ratio_report(RatioReport& rep) {
    double lo = 1e300, hi = 0.0, hi_ref = 0.0;
    std::vector<double> ratios;
    bool any_left = false;
    for (const auto& m : rep.members) {
        if (!m.usable) continue;
        ratios.push_back(m.ratio);
        lo = std::min(lo, m.ratio);
        hi = std::max(hi, m.ratio);
        if (m.left > 1e-14) any_left = true;
    }
    for (const auto& m : rep.members_refined)
        if (m.usable) hi_ref = std::max(hi_ref, m.ratio);
    rep.min_ratio = ratios.empty() ? 0.0 : lo;
    rep.max_ratio = hi;
    rep.refined_max_ratio = hi_ref;
    if (ratios.empty() || !any_left) {
        // nothing to bound (left sides vanish): trivially bounded
        rep.verdict = BoundVerdict::Bounded;
        rep.bound_constant = hi;
        rep.stability = 0.0;
        return;
    }
    rep.stability = std::abs(hi_ref - hi) / std::max(hi, 1e-300);
    // A monotone growth pattern along the family order means the ratio
    // sup has not been exhausted, however resolution-stable each member
    // is; check the trend before accepting boundedness.
    const std::size_t n = ratios.size();
    if (n >= 4) {
        const std::size_t half = n / 2;
        std::size_t increases = 0;
        for (std::size_t i = half; i + 1 < n; ++i)
            if (ratios[i + 1] > ratios[i]) ++increases;
        const double growth = ratios[n - 1] / std::max(ratios[half], 1e-300);
        if (increases + 1 >= n - half && growth > 1.3) {
            rep.verdict = BoundVerdict::Unbounded;
            rep.trend_growth = ratios[n - 1] / std::max(ratios[0], 1e-300);
            return;
        }
    }
    if (rep.stability < 0.2) {
        rep.verdict = BoundVerdict::Bounded;
        rep.bound_constant = std::max(hi, hi_ref);
        return;
    }
    rep.verdict = BoundVerdict::Unresolved;
}

inline bool estimate_finite(const NormEstimate& e) {
    return !e.divergent && std::isfinite(e.value_pow_q) &&
           e.value_pow_q < divergence_threshold;
}

}  // namespace detail

// --- Theorem 1 ---------------------------------------------------------------

struct Theorem1Report {
    RatioReport link;  // omega half-range seminorm vs besov^q
    WeightClassReport weight_class;
};

/// Left side: int_{1/2}^1 omega_p(1-r,f)^q nu(r)/(1-r)^q dr.  Right side:
/// ||f'||^q.  Bounded ratios across the family are expected exactly when
/// the weight passes the D_q test.
inline Theorem1Report run_theorem1(const Family& family, double p, double q,
                                   const RadialWeight& nu, const QuadratureConfig& cfg = {}) {
    if (!(p >= 1.0)) throw validation_error("run_theorem1: requires p >= 1");
    Theorem1Report rep;
    rep.weight_class = classify(nu, q, cfg);
    rep.link.label = "omega_half / besov^q";
    const QuadratureConfig fine = cfg.refined();
    for (const auto& [name, f] : family) {
        const auto right = besov_norm(f, p, q, nu, cfg);
        if (!detail::estimate_finite(right)) {
            rep.link.excluded.push_back(name);
            continue;
        }
        const auto left = omega_seminorm(f, p, q, nu, OmegaRange::Half, cfg);
        rep.link.members.push_back(detail::make_ratio(name, left.value, right.value_pow_q));
        const auto right2 = besov_norm(f, p, q, nu, fine);
        const auto left2 = omega_seminorm(f, p, q, nu, OmegaRange::Half, fine);
        rep.link.members_refined.push_back(
            detail::make_ratio(name, left2.value, right2.value_pow_q));
    }
    detail::judge_ratio_report(rep.link);
    return rep;
}

// --- Theorem 2 ---------------------------------------------------------------

struct MemberMargin {
    std::string member;
    double lhs = 0.0;   // besov^q
    double rhs = 0.0;   // middle quantity
    double rel_margin = 0.0;  // (rhs - lhs) / max(rhs, tiny)
};

struct Theorem2Report {
    std::vector<MemberMargin> constant_free;  // link (a), no constant allowed
    double min_rel_margin = 0.0;
    RatioReport middle_vs_omega;   // link (b)
    RatioReport omega_vs_besov;    // link (c)
    WeightClassReport weight_class;
    std::vector<std::string> excluded;
};

inline Theorem2Report run_theorem2(const Family& family, double p, double q,
                                   const RadialWeight& nu, const QuadratureConfig& cfg = {}) {
    if (!(p >= 1.0)) throw validation_error("run_theorem2: requires p >= 1");
    Theorem2Report rep;
    rep.weight_class = classify(nu, q, cfg);
    if (rep.weight_class.in_R == Verdict::Out || rep.weight_class.d_p.verdict == Verdict::Out)
        throw validation_error("run_theorem2: weight fails the R and D_q hypotheses");
    rep.middle_vs_omega.label = "middle / (omega_full + hardy^q)";
    rep.omega_vs_besov.label = "(omega_full + hardy^q) / (besov^q + hardy^q)";
    const QuadratureConfig fine = cfg.refined();
    rep.min_rel_margin = 1e300;
    for (const auto& [name, f] : family) {
        const auto bes = besov_norm(f, p, q, nu, cfg);
        if (!detail::estimate_finite(bes)) {
            rep.excluded.push_back(name);
            continue;
        }
        const auto mid = theorem2_middle(f, p, q, nu, cfg);
        const auto om = omega_seminorm(f, p, q, nu, OmegaRange::Full, cfg);
        const double hq = std::pow(hardy_norm(f, p, cfg).value, q);

        MemberMargin mm;
        mm.member = name;
        mm.lhs = bes.value_pow_q;
        mm.rhs = mid.value;
        mm.rel_margin = (mm.rhs - mm.lhs) / std::max(mm.rhs, 1e-300);
        rep.constant_free.push_back(mm);
        rep.min_rel_margin = std::min(rep.min_rel_margin, mm.rel_margin);

        rep.middle_vs_omega.members.push_back(
            detail::make_ratio(name, mid.value, om.value + hq));
        rep.omega_vs_besov.members.push_back(
            detail::make_ratio(name, om.value + hq, bes.value_pow_q + hq));

        const auto bes2 = besov_norm(f, p, q, nu, fine);
        const auto mid2 = theorem2_middle(f, p, q, nu, fine);
        const auto om2 = omega_seminorm(f, p, q, nu, OmegaRange::Full, fine);
        const double hq2 = std::pow(hardy_norm(f, p, fine).value, q);
        rep.middle_vs_omega.members_refined.push_back(
            detail::make_ratio(name, mid2.value, om2.value + hq2));
        rep.omega_vs_besov.members_refined.push_back(
            detail::make_ratio(name, om2.value + hq2, bes2.value_pow_q + hq2));
    }
    if (rep.constant_free.empty()) rep.min_rel_margin = 0.0;
    detail::judge_ratio_report(rep.middle_vs_omega);
    detail::judge_ratio_report(rep.omega_vs_besov);
    return rep;
}

// --- Theorem 3 ---------------------------------------------------------------

struct Theorem3Report {
    RatioReport lower;  // besov^q / (F1 + F2)
    RatioReport upper;  // (F1 + F2) / (besov^q + hardy^q)
    WeightClassReport weight_class;
};

inline Theorem3Report run_theorem3(const Family& family, double p, double q,
                                   const RadialWeight& nu, const QuadratureConfig& cfg = {}) {
    if (!(p >= 1.0)) throw validation_error("run_theorem3: requires p >= 1");
    Theorem3Report rep;
    rep.weight_class = classify(nu, q, cfg);
    if (rep.weight_class.in_R == Verdict::Out || rep.weight_class.d_p.verdict == Verdict::Out)
        throw validation_error("run_theorem3: weight fails the R and D_q hypotheses");
    rep.lower.label = "besov^q / (F1 + F2)";
    rep.upper.label = "(F1 + F2) / (besov^q + hardy^q)";
    const QuadratureConfig fine = cfg.refined();
    for (const auto& [name, f] : family) {
        const auto bes = besov_norm(f, p, q, nu, cfg);
        if (!detail::estimate_finite(bes)) {
            rep.lower.excluded.push_back(name);
            rep.upper.excluded.push_back(name);
            continue;
        }
        const auto f1 = f1_functional(f, p, q, nu, cfg);
        const auto f2 = f2_functional(f, p, q, nu, cfg);
        const double hq = std::pow(hardy_norm(f, p, cfg).value, q);
        rep.lower.members.push_back(
            detail::make_ratio(name, bes.value_pow_q, f1.value + f2.value));
        rep.upper.members.push_back(
            detail::make_ratio(name, f1.value + f2.value, bes.value_pow_q + hq));

        const auto bes2 = besov_norm(f, p, q, nu, fine);
        const auto f12 = f1_functional(f, p, q, nu, fine);
        const auto f22 = f2_functional(f, p, q, nu, fine);
        const double hq2 = std::pow(hardy_norm(f, p, fine).value, q);
        rep.lower.members_refined.push_back(
            detail::make_ratio(name, bes2.value_pow_q, f12.value + f22.value));
        rep.upper.members_refined.push_back(
            detail::make_ratio(name, f12.value + f22.value, bes2.value_pow_q + hq2));
    }
    detail::judge_ratio_report(rep.lower);
    detail::judge_ratio_report(rep.upper);
    return rep;
}

// --- Theorem 4 quotient factorization -----------------------------------------

struct FactorizationResult {
    AnalyticFunction f1;
    AnalyticFunction f2;
    double reconstruction_error = 0.0;  // max |f - f1/f2| over the test grid
    double max_f1_modulus = 0.0;
    double max_f2_modulus = 0.0;
    double min_f2_modulus = 0.0;        // zero-free evidence
    NormEstimate besov_f1;
    NormEstimate besov_f2;
    double proposition_ratio = 0.0;     // inner-outer inequality bracket
    bool clamped = false;
};

/// f = f1 / f2 with f1 = I * O_min and f2 = 1 / O_max, from the splitting
/// O_phi = O_min * O_max of the outer part of f.  Requires f in factored
/// form (a product of inner factors and outer factors).
inline FactorizationResult factorize_quotient(const AnalyticFunction& f, double p, double q,
                                              const RadialWeight& nu,
                                              const QuadratureConfig& cfg = {}) {
    std::vector<AnalyticFunction> inner_parts, outer_parts;
    for (const auto& factor : f.factors()) {
        if (factor.is_inner())
            inner_parts.push_back(factor);
        else if (factor.is_outer())
            outer_parts.push_back(factor);
        else
            throw validation_error(
                "factorize_quotient: f must be a product of inner and outer factors");
    }
    BoundaryGrid phi;
    phi.log2_size = cfg.angular_log2_size;
    phi.values.assign(std::size_t{1} << cfg.angular_log2_size, 1.0);
    for (const auto& o : outer_parts) {
        const auto m = o.boundary_modulus(cfg.angular_log2_size);
        for (std::size_t j = 0; j < phi.values.size(); ++j) phi.values[j] *= m.values[j];
    }
    const auto split = split_min_max(phi);

    FactorizationResult res{AnalyticFunction::constant(1.0), AnalyticFunction::constant(1.0),
                            0.0, 0.0, 0.0, 0.0, {}, {}, 0.0, false};
    std::vector<AnalyticFunction> f1_factors = inner_parts;
    f1_factors.push_back(split.o_min);
    res.f1 = AnalyticFunction::product(std::move(f1_factors));
    res.f2 = AnalyticFunction::quotient(AnalyticFunction::constant(1.0), split.o_max);
    res.clamped = split.clamped;

    double min_f2 = 1e300;
    for (double r : {0.0, 0.15, 0.3, 0.45, 0.6, 0.75, 0.9}) {
        for (int j = 0; j < 128; ++j) {
            const complex z = std::polar(r, two_pi * j / 128.0 + 0.0123);
            const complex want = f.evaluate(z);
            const complex got = res.f1.evaluate(z) / res.f2.evaluate(z);
            res.reconstruction_error = std::max(res.reconstruction_error, std::abs(want - got));
            res.max_f1_modulus = std::max(res.max_f1_modulus, std::abs(res.f1.evaluate(z)));
            const double m2 = std::abs(res.f2.evaluate(z));
            res.max_f2_modulus = std::max(res.max_f2_modulus, m2);
            min_f2 = std::min(min_f2, m2);
        }
    }
    res.min_f2_modulus = min_f2;
    if (res.reconstruction_error > 1e-8)
        throw resolution_error("factorize_quotient: reconstruction exceeds 1e-8");

    res.besov_f1 = besov_norm(res.f1, p, q, nu, cfg);
    res.besov_f2 = besov_norm(res.f2, p, q, nu, cfg);

    // empirical version of the inner-outer proposition bound
    const auto bes_omax = besov_norm(split.o_max, p, q, nu, cfg);
    const double h_omax = std::pow(hardy_norm(split.o_max, p, cfg).value, q);
    const auto bes_f = besov_norm(f, p, q, nu, cfg);
    const double h_f = std::pow(hardy_norm(f, p, cfg).value, q);
    res.proposition_ratio = (bes_omax.value_pow_q + res.besov_f1.value_pow_q + h_omax) /
                            (bes_f.value_pow_q + h_f + 1.0);
    return res;
}

// --- Theorem fI-SP -------------------------------------------------------------

struct FispReport {
    NormEstimate besov_fI;
    NormEstimate besov_f;
    NormEstimate multiplier;
    double hardy_f_pow_q = 0.0;
    bool finite_fI = false;
    bool finite_f = false;
    bool finite_multiplier = false;
    bool consistent = false;  // finite(fI) == finite(f) && finite(multiplier)
    double bracket = 0.0;     // besov^q(fI) / (besov^q(f) + multiplier + hardy^q(f))
};

inline FispReport run_fisp(const AnalyticFunction& f, const AnalyticFunction& inner_f, double p,
                           double q, const RadialWeight& nu, const QuadratureConfig& cfg = {}) {
    if (!inner_f.is_inner()) throw validation_error("run_fisp: second argument must be inner");
    FispReport rep;
    rep.besov_fI = besov_norm(AnalyticFunction::product({f, inner_f}), p, q, nu, cfg);
    rep.besov_f = besov_norm(f, p, q, nu, cfg);
    rep.multiplier = multiplier_integral(f, inner_f, p, q, nu, cfg);
    rep.hardy_f_pow_q = std::pow(hardy_norm(f, p, cfg).value, q);
    rep.finite_fI = detail::estimate_finite(rep.besov_fI);
    rep.finite_f = detail::estimate_finite(rep.besov_f);
    rep.finite_multiplier = detail::estimate_finite(rep.multiplier);
    rep.consistent = rep.finite_fI == (rep.finite_f && rep.finite_multiplier);
    const double denom = rep.besov_f.value_pow_q + rep.multiplier.value + rep.hardy_f_pow_q;
    rep.bracket = denom > 0.0 ? rep.besov_fI.value_pow_q / denom : 0.0;
    return rep;
}

// --- zero sets -----------------------------------------------------------------

struct ZeroSetSums {
    double weighted_sum = 0.0;       // sum |O(z_n)|^p tail(|z_n|) / (1-|z_n|)^{p-1}
    bool power_form_valid = false;
    double power_sum = 0.0;          // sum |O(z_n)|^p (1-|z_n|)^{alpha+2-p}
    std::size_t terms = 0;
};

inline ZeroSetSums zero_set_sum(const std::vector<complex>& zeros, const AnalyticFunction& outer_f,
                                double p, const RadialWeight& nu) {
    if (!(p > 0.0)) throw validation_error("zero_set_sum: p must be positive");
    ZeroSetSums sums;
    sums.terms = zeros.size();
    sums.power_form_valid = nu.is_power();
    KahanAccumulator acc, acc_pow;
    for (complex z : zeros) {
        const double r = std::abs(z);
        if (!(r < 1.0)) throw validation_error("zero_set_sum: zeros must lie in the disc");
        const double mod_p = std::pow(std::abs(outer_f.evaluate(z)), p);
        acc.add(mod_p * nu.tail(r) / std::pow(1.0 - r, p - 1.0));
        if (sums.power_form_valid)
            acc_pow.add(mod_p * std::pow(1.0 - r, nu.alpha() + 2.0 - p));
    }
    sums.weighted_sum = acc.value();
    sums.power_sum = acc_pow.value();
    return sums;
}

struct BfispReport {
    SequenceGeometry geometry;
    bool separation_warning = false;  // uniform separation below 1e-3
    NormEstimate besov_fB;
    NormEstimate besov_f;
    double zero_sum = 0.0;  // sum |f(z_n)|^p (1-|z_n|)^{alpha+2-p}
    bool finite_fB = false;
    bool finite_f = false;
    bool consistent = false;
};

/// Carleson-Newman zero-set criterion at (p, p) with the power weight
/// (1-r)^alpha, p-2 < alpha < p-1.
inline BfispReport run_bfisp(const std::vector<complex>& zeros, const AnalyticFunction& f,
                             double p, double alpha, const QuadratureConfig& cfg = {}) {
    if (!(p > 1.0)) throw validation_error("run_bfisp: requires 1 < p");
    if (!(alpha > p - 2.0 && alpha < p - 1.0))
        throw validation_error("run_bfisp: requires p-2 < alpha < p-1");
    BfispReport rep;
    rep.geometry = sequence_geometry(zeros);
    rep.separation_warning = !zeros.empty() && rep.geometry.uniform_separation < 1e-3;
    const auto nu = RadialWeight::power(alpha);
    const auto B = AnalyticFunction::blaschke(zeros);
    rep.besov_fB = besov_norm(AnalyticFunction::product({f, B}), p, p, nu, cfg);
    rep.besov_f = besov_norm(f, p, p, nu, cfg);
    KahanAccumulator acc;
    for (complex z : zeros)
        acc.add(std::pow(std::abs(f.evaluate(z)), p) *
                std::pow(1.0 - std::abs(z), alpha + 2.0 - p));
    rep.zero_sum = acc.value();
    rep.finite_fB = detail::estimate_finite(rep.besov_fB);
    rep.finite_f = detail::estimate_finite(rep.besov_f);
    rep.consistent = rep.finite_fB == (rep.finite_f && std::isfinite(rep.zero_sum));
    return rep;
}

// --- Lemma F -------------------------------------------------------------------

struct LemmaFReport {
    double max_violation = 0.0;  // relative, positive means lhs exceeded rhs
    std::size_t points = 0;
    complex worst_point;
};

/// |O'(z)| <= 4/(1-|z|) * ( int |phi - int phi dmu_z| dmu_z
///                          + int phi dmu_z - |O(z)| ) pointwise.
inline LemmaFReport lemma_f_check(const AnalyticFunction& outer_f,
                                  const std::vector<complex>& points,
                                  const QuadratureConfig& cfg = {}) {
    if (!outer_f.is_outer()) throw validation_error("lemma_f_check: function must be outer");
    const auto phi = outer_f.boundary_modulus(cfg.angular_log2_size);
    LemmaFReport rep;
    rep.points = points.size();
    for (complex z : points) {
        const double u = 1.0 - std::abs(z);
        const double c = poisson_mean(phi, z, cfg);
        const ShellWarp warp(u, phi.size(), cfg);
        const double dev = warp.mean_abs_dev_at(phi, std::arg(z), c);
        const double lhs = std::abs(outer_f.derivative(z));
        const double rhs = 4.0 / u * (dev + c - std::abs(outer_f.evaluate(z)));
        const double viol = (lhs - rhs) / std::max({rhs, lhs, 1e-300});
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_point = z;
        }
    }
    return rep;
}

}  // namespace besov

#endif
