#ifndef BESOV_WEIGHT_CLASSIFY_HPP
#define BESOV_WEIGHT_CLASSIFY_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "besov/common.hpp"
#include "besov/quadrature.hpp"
#include "besov/radial_weight.hpp"

namespace besov {

/// Numerical classification of an asymptotic condition is three-valued:
/// a running supremum can stabilize, clearly diverge, or do neither.
enum class Verdict { In, Out, Unresolved };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::In: return "IN";
        case Verdict::Out: return "OUT";
        default: return "UNRESOLVED";
    }
}

struct ConditionReport {
    Verdict verdict = Verdict::Unresolved;
    double constant = 0.0;
};

struct DoublingDownReport {
    Verdict verdict = Verdict::Unresolved;
    int K = 0;
    double constant = 0.0;
};

struct GridMeta {
    double lambda = 0.0;
    double epsilon = 0.0;
    std::size_t points = 0;
};

struct WeightClassReport {
    ConditionReport d_hat;       // upper doubling: tail(r) <= C tail((1+r)/2)
    DoublingDownReport d_check;  // lower doubling with dyadic K
    Verdict in_R = Verdict::Unresolved;
    double p = 0.0;
    ConditionReport d_p;         // sup of (1-r)^p/tail(r) * int_0^r nu/(1-s)^p
    double beta_exponent = 0.0;  // steepest tail decay exponent observed
    double alpha_exponent = 0.0; // shallowest tail decay exponent observed
    GridMeta grid;

    bool in_r_and_dp() const { return in_R == Verdict::In && d_p.verdict == Verdict::In; }
};

namespace detail {

struct SupAnalysis {
    Verdict verdict = Verdict::Unresolved;
    double limit = 0.0;
};

/// Decide whether a nondecreasing running-sup sequence over the geometric
/// radius grid has stabilized, diverged, or neither.  Samples one decade
/// apart feed a three-point Aitken extrapolation; tails approaching their
/// limit at a power-law rate in (1-r) are geometric in the grid index, so
/// the extrapolated limit is essentially exact for such weights.
inline SupAnalysis analyze_sup(const std::vector<double>& sup_seq, int pts_per_decade) {
    SupAnalysis out;
    const std::size_t n = sup_seq.size();
    if (n == 0) return out;
    const double end = sup_seq.back();
    out.limit = end;
    if (end <= 1e-300) {
        out.verdict = Verdict::In;
        out.limit = 0.0;
        return out;
    }
    const bool plain_stable =
        n >= 21 && (sup_seq[n - 1] - sup_seq[n - 21]) < 1e-2 * sup_seq[n - 1];
    const std::size_t d = static_cast<std::size_t>(pts_per_decade);
    if (n < 3 * d + 1) {
        out.verdict = plain_stable ? Verdict::In : Verdict::Unresolved;
        return out;
    }
    const double a = sup_seq[n - 1 - 3 * d];
    const double b = sup_seq[n - 1 - 2 * d];
    const double c = sup_seq[n - 1 - d];
    const double i1 = b - a, i2 = c - b, i3 = end - c;

    const auto aitken = [&]() {
        if (i3 > 0.0 && i2 > i3) return end + i3 * i3 / (i2 - i3);
        return end;
    };

    if (i3 <= 1e-3 * end) {
        out.verdict = Verdict::In;
        out.limit = (i2 > 0.0 && i3 > 0.0 && i3 / i2 <= 0.98) ? aitken() : end;
        return out;
    }
    if (i1 > 0.0 && i2 > 0.0 && i3 / i2 <= 0.97 && i2 / i1 <= 0.985) {
        out.verdict = Verdict::In;
        out.limit = aitken();
        return out;
    }
    if (i1 > 0.0 && i2 / i1 >= 1.15 && i3 / i2 >= 1.15 && end >= 1.5 * a) {
        out.verdict = Verdict::Out;
        return out;
    }
    out.verdict = plain_stable ? Verdict::In : Verdict::Unresolved;
    return out;
}

inline int points_per_decade(double lambda) {
    return std::max(2, static_cast<int>(std::lround(std::log(10.0) / std::log(1.0 / lambda))));
}

/// Least-squares slope of log tail against log u over [i0, i1].
inline double loglog_slope(const std::vector<double>& u, const std::vector<double>& nuhat,
                           std::size_t i0, std::size_t i1) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(i1 - i0 + 1);
    for (std::size_t i = i0; i <= i1; ++i) {
        const double x = std::log(u[i]);
        const double y = std::log(std::max(nuhat[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = m * sxx - sx * sx;
    return den > 0 ? (m * sxy - sx * sy) / den : 0.0;
}

}  // namespace detail

/// Classify a radial weight into the doubling classes with quantitative
/// constants.  Suprema over [0,1) are estimated on the geometric radius
/// grid; membership requires the running sup to stabilize (directly or
/// through decade extrapolation), and a clear divergence pattern is
/// reported as OUT.  Everything else stays UNRESOLVED.
inline WeightClassReport classify(const RadialWeight& nu, double p,
                                  const QuadratureConfig& cfg = {}) {
    if (!(p > 0.0)) throw validation_error("classify: exponent p must be positive");
    cfg.validate();

    double eps = cfg.epsilon_1d;
    if (nu.kind() == RadialWeight::Kind::Sampled) {
        // Certification cannot probe beyond the data's own boundary
        // resolution; the upper-doubling test needs tails at u/2.
        eps = std::max(eps, 2.0 * std::max(nu.boundary_gap(), 1e-7));
    }
    const RadialGrid grid = RadialGrid::geometric(cfg.radial_ratio, eps);
    const std::size_t n = grid.size();
    const int ppd = detail::points_per_decade(cfg.radial_ratio);

    std::vector<double> nuhat(n);
    for (std::size_t k = 0; k < n; ++k) nuhat[k] = nu.tail_u(grid.u[k]);

    WeightClassReport rep;
    rep.p = p;
    rep.grid = {cfg.radial_ratio, eps, n};

    // --- upper doubling D-hat ---------------------------------------------
    {
        std::vector<double> sup_seq(n);
        double sup = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double half = nu.tail_u(0.5 * grid.u[k]);
            if (half > 0.0) sup = std::max(sup, nuhat[k] / half);
            sup_seq[k] = sup;
        }
        const auto an = detail::analyze_sup(sup_seq, ppd);
        rep.d_hat = {an.verdict, an.limit};
    }

    // --- lower doubling D-check (dyadic K search) --------------------------
    {
        const double margin = 1e-3;
        double best = 0.0;
        bool any_usable = false;
        for (int K = 2; K <= 1024; K *= 2) {
            double inf = std::numeric_limits<double>::infinity();
            std::size_t usable = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const double inner_u = grid.u[k] / K;
                if (nu.kind() == RadialWeight::Kind::Sampled && inner_u < nu.boundary_gap())
                    break;
                const double denom = nu.tail_u(inner_u);
                if (denom <= 0.0) break;
                inf = std::min(inf, nuhat[k] / denom);
                ++usable;
            }
            if (usable < 20) continue;
            any_usable = true;
            best = std::max(best, inf);
            if (inf > 1.0 + margin) {
                rep.d_check = {Verdict::In, K, inf};
                break;
            }
        }
        if (rep.d_check.verdict != Verdict::In)
            rep.d_check = {any_usable ? Verdict::Out : Verdict::Unresolved, 0, best};
    }

    // --- D_p supremum -------------------------------------------------------
    {
        std::vector<double> sup_seq(n);
        double sup = 0.0;
        KahanAccumulator inner;  // integral of nu(s)/(1-s)^p from 0 to r_k
        sup_seq[0] = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            inner.add(nu.cell_mass(grid.u[k], grid.u[k - 1], p));
            if (nuhat[k] > 0.0)
                sup = std::max(sup, std::pow(grid.u[k], p) / nuhat[k] * inner.value());
            sup_seq[k] = sup;
        }
        const auto an = detail::analyze_sup(sup_seq, ppd);
        rep.d_p = {an.verdict, an.limit};
    }

    // --- tail decay exponents over the last two decades ---------------------
    if (n >= static_cast<std::size_t>(2 * ppd + 1)) {
        const std::size_t lo = n - 1 - 2 * ppd;
        double bmax = -1e300, amin = 1e300;
        for (std::size_t off = 0; off + static_cast<std::size_t>(ppd) <= 2 * static_cast<std::size_t>(ppd);
             off += std::max<std::size_t>(1, ppd / 4)) {
            const std::size_t i0 = lo + off;
            const std::size_t i1 = i0 + ppd;
            if (i1 >= n) break;
            const double s = detail::loglog_slope(grid.u, nuhat, i0, i1);
            bmax = std::max(bmax, s);
            amin = std::min(amin, s);
        }
        rep.beta_exponent = bmax;
        rep.alpha_exponent = amin;
    }

    // D_p finite implies upper doubling; reconcile numerical verdicts.
    if (rep.d_p.verdict == Verdict::In) {
        if (rep.d_hat.verdict == Verdict::Unresolved)
            rep.d_hat.verdict = Verdict::In;
        else if (rep.d_hat.verdict == Verdict::Out) {
            rep.d_hat.verdict = Verdict::Unresolved;
            rep.d_p.verdict = Verdict::Unresolved;
        }
    }

    if (rep.d_hat.verdict == Verdict::In && rep.d_check.verdict == Verdict::In)
        rep.in_R = Verdict::In;
    else if (rep.d_hat.verdict == Verdict::Out || rep.d_check.verdict == Verdict::Out)
        rep.in_R = Verdict::Out;
    else
        rep.in_R = Verdict::Unresolved;
    return rep;
}

// ---------------------------------------------------------------------------

struct LemmaAReport {
    Verdict verdict = Verdict::Unresolved;
    double c_ii = 0.0;        // worst envelope constant with the fitted beta
    double c_iii = 0.0;       // worst constant of the gamma-moment bound
    Verdict c_iii_verdict = Verdict::Unresolved;
    double gamma = 0.0;
    double iv_min_ratio = 0.0;  // moment / tail(1 - 1/x) over dyadic x
    double iv_max_ratio = 0.0;
};

/// Cross-check the equivalent descriptions of upper doubling on a weight
/// already classified there: the power envelope (ii), the gamma-weighted
/// integral bound (iii) with gamma = beta + 1, and the moment comparison
/// (iv) over x in {1, 2, 4, ..., 1024}.
inline LemmaAReport lemma_a_crosscheck(const RadialWeight& nu,
                                       const QuadratureConfig& cfg = {}) {
    const WeightClassReport cls = classify(nu, 2.0, cfg);
    LemmaAReport rep;
    if (cls.d_hat.verdict != Verdict::In) {
        rep.verdict = cls.d_hat.verdict;
        return rep;
    }
    const double eps = cls.grid.epsilon;
    const RadialGrid grid = RadialGrid::geometric(cfg.radial_ratio, eps);
    const std::size_t n = grid.size();
    const int ppd = detail::points_per_decade(cfg.radial_ratio);

    std::vector<double> nuhat(n);
    for (std::size_t k = 0; k < n; ++k) nuhat[k] = nu.tail_u(grid.u[k]);

    // (ii): nuhat(r) <= C ((1-r)/(1-s))^beta nuhat(s) for r <= s.
    {
        const double beta = cls.beta_exponent;
        double worst = 0.0;
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < n; k += std::max<std::size_t>(1, ppd / 2)) idx.push_back(k);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a; b < idx.size(); ++b) {
                const std::size_t i = idx[a], j = idx[b];  // u_i >= u_j
                if (nuhat[j] <= 0.0) continue;
                const double env = std::pow(grid.u[i] / grid.u[j], beta);
                worst = std::max(worst, nuhat[i] / (nuhat[j] * env));
            }
        rep.c_ii = worst;
    }

    // (iii) with gamma = beta + 1.
    {
        const double gamma = cls.beta_exponent + 1.0;
        rep.gamma = gamma;
        std::vector<double> sup_seq(n, 0.0);
        double sup = 0.0;
        KahanAccumulator inner;
        for (std::size_t k = 1; k < n; ++k) {
            inner.add(nu.cell_mass(grid.u[k], grid.u[k - 1], gamma));
            if (nuhat[k] > 0.0)
                sup = std::max(sup, std::pow(grid.u[k], gamma) / nuhat[k] * inner.value());
            sup_seq[k] = sup;
        }
        const auto an = detail::analyze_sup(sup_seq, ppd);
        rep.c_iii = an.limit;
        rep.c_iii_verdict = an.verdict;
    }

    // (iv): integral of s^x nu(s) ds against tail(1 - 1/x).
    {
        double lo = 1e300, hi = 0.0;
        for (int x = 1; x <= 1024; x *= 2) {
            KahanAccumulator m;
            for (std::size_t k = 1; k < n; ++k) {
                m.add(gauss8(
                    [&](double y) {
                        const double u = std::exp(-y);
                        return std::exp(x * std::log1p(-u)) * nu.density_u(u) * u;
                    },
                    std::log(1.0 / grid.u[k - 1]), std::log(1.0 / grid.u[k])));
            }
            m.add(nu.tail_u(grid.u[n - 1]));  // s^x <= 1 on the residual sliver
            const double denom = nu.tail_u(std::min(1.0, 1.0 / x));
            if (denom <= 0.0) continue;
            const double ratio = m.value() / denom;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        rep.iv_min_ratio = lo;
        rep.iv_max_ratio = hi;
    }

    rep.verdict = rep.c_iii_verdict;
    return rep;
}

/// psi(r) = tail(r)/(1-r) as a sampled weight; for nu in R this carries
/// the same norm information as nu.  Rejects weights not classified in R.
inline RadialWeight effective_weight(const RadialWeight& nu,
                                     const QuadratureConfig& cfg = {}) {
    const WeightClassReport cls = classify(nu, 2.0, cfg);
    if (cls.in_R != Verdict::In)
        throw validation_error("effective_weight: weight not classified in R");
    const RadialGrid grid = RadialGrid::geometric(cfg.radial_ratio, cfg.epsilon_1d);
    std::vector<double> radii(grid.size()), values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        radii[k] = grid.r(k);
        values[k] = nu.tail_u(grid.u[k]) / grid.u[k];
    }
    return RadialWeight::sampled(std::move(radii), std::move(values));
}

// ---------------------------------------------------------------------------

/// A nonnegative function sampled on an increasing grid in [0,1).
struct SampledFunction {
    std::vector<double> s;
    std::vector<double> v;
};

struct LemmaEReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Check (int_r^1 g)^p <= 2 int_r^1 (sup_{[0,s]} g)^p (1-s)^{p-1} ds for
/// 0 < p <= 1.  The running sup is a single forward scan; the singular
/// (1-s)^{p-1} factor is integrated in closed form on each cell.
inline LemmaEReport lemma_e_check(const SampledFunction& g, double p, double r) {
    if (!(p > 0.0 && p <= 1.0)) throw validation_error("lemma_e_check: p must lie in (0,1]");
    if (!(r >= 0.0 && r < 1.0)) throw validation_error("lemma_e_check: r must lie in [0,1)");
    const std::size_t n = g.s.size();
    if (n < 2 || g.v.size() != n)
        throw validation_error("lemma_e_check: need a sampled function with >= 2 nodes");

    std::vector<double> run_sup(n);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sup = std::max(sup, g.v[i]);
        run_sup[i] = sup;
    }

    const auto interp = [&](double x) {
        if (x <= g.s.front()) return g.v.front();
        if (x >= g.s.back()) return g.v.back();
        const auto it = std::upper_bound(g.s.begin(), g.s.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - g.s.begin());
        const double t = (x - g.s[i - 1]) / (g.s[i] - g.s[i - 1]);
        return g.v[i - 1] + t * (g.v[i] - g.v[i - 1]);
    };

    KahanAccumulator lhs_int, rhs_int;
    double sup_at_r = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s0 = g.s[i], s1 = g.s[i + 1];
        if (s1 <= r) {
            sup_at_r = run_sup[i + 1];
            continue;
        }
        const double a = std::max(s0, r);
        const double va = (a == s0) ? g.v[i] : interp(a);
        const double supa = (a == s0) ? run_sup[i] : std::max(sup_at_r, va);
        lhs_int.add(0.5 * (va + g.v[i + 1]) * (s1 - a));
        const double wcell = (std::pow(1.0 - a, p) - std::pow(1.0 - s1, p)) / p;
        rhs_int.add(0.5 * (std::pow(supa, p) + std::pow(run_sup[i + 1], p)) * wcell);
    }
    LemmaEReport rep;
    rep.lhs = std::pow(std::max(lhs_int.value(), 0.0), p);
    rep.rhs = 2.0 * rhs_int.value();
    rep.holds = rep.lhs <= rep.rhs + 1e-9 * (1.0 + rep.rhs);
    return rep;
}

}  // namespace besov

#endif
