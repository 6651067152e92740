#ifndef BESOV_CORPUS_HPP
#define BESOV_CORPUS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "besov/analytic_function.hpp"
#include "besov/verify.hpp"

namespace besov {

/// The frozen test-function corpus used by the comparability experiments.
/// Reports record member names, so alternative corpora are drop-in.
namespace corpus {

inline std::vector<complex> ring_zeros(std::size_t count, double radius, double phase = 0.3) {
    std::vector<complex> zs;
    for (std::size_t k = 0; k < count; ++k)
        zs.push_back(std::polar(radius, phase + two_pi * static_cast<double>(k) /
                                                     static_cast<double>(count)));
    return zs;
}

inline std::vector<complex> radial_zeros(int count) {
    std::vector<complex> zs;
    for (int k = 1; k <= count; ++k) zs.push_back(complex(1.0 - std::pow(2.0, -k), 0.0));
    return zs;
}

inline std::vector<complex> cluster_zeros(std::size_t count, double radius, double center_angle,
                                          double spread) {
    std::vector<complex> zs;
    for (std::size_t k = 0; k < count; ++k) {
        const double frac =
            count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 0.5;
        zs.push_back(std::polar(radius - 0.002 * static_cast<double>(k % 3),
                                center_angle + spread * (frac - 0.5)));
    }
    return zs;
}

inline BoundaryGrid modulus_grid(int m, const std::function<double(double)>& phi) {
    return make_real_grid(m, phi);
}

inline AnalyticFunction outer_cos(double c, int m = 12) {
    return AnalyticFunction::outer(modulus_grid(m, [c](double t) { return c + std::cos(t); }));
}

inline AnalyticFunction outer_expcos(int m = 12) {
    return AnalyticFunction::outer(modulus_grid(m, [](double t) { return std::exp(std::cos(t)); }));
}

inline AnalyticFunction outer_abs(int m = 12) {
    return AnalyticFunction::outer(
        modulus_grid(m, [](double t) { return std::abs(2.0 + std::polar(1.0, t)); }));
}

/// Ten finite Blaschke products: separated, exponential and clustered
/// zero patterns with 1..32 zeros.
inline Family blaschke_family() {
    Family fam;
    fam.push_back({"blaschke:origin", AnalyticFunction::blaschke({complex(0, 0)})});
    fam.push_back({"blaschke:half", AnalyticFunction::blaschke({complex(0.5, 0)})});
    fam.push_back(
        {"blaschke:pair", AnalyticFunction::blaschke({complex(0.5, 0), complex(-0.3, 0.4)})});
    fam.push_back({"blaschke:ring4", AnalyticFunction::blaschke(ring_zeros(4, 0.6))});
    fam.push_back({"blaschke:ring8", AnalyticFunction::blaschke(ring_zeros(8, 0.7))});
    fam.push_back({"blaschke:ring16", AnalyticFunction::blaschke(ring_zeros(16, 0.85))});
    fam.push_back({"blaschke:ring32", AnalyticFunction::blaschke(ring_zeros(32, 0.9))});
    fam.push_back({"blaschke:radial5", AnalyticFunction::blaschke(radial_zeros(5))});
    fam.push_back({"blaschke:radial7", AnalyticFunction::blaschke(radial_zeros(7))});
    fam.push_back(
        {"blaschke:cluster12", AnalyticFunction::blaschke(cluster_zeros(12, 0.95, 0.5, 0.12))});
    return fam;
}

inline Family monomial_family(int max_n = 256) {
    Family fam;
    for (int n = 1; n <= max_n; n *= 2)
        fam.push_back({"monomial:" + std::to_string(n), AnalyticFunction::monomial(n)});
    return fam;
}

inline Family outer_family(int m = 12) {
    return {
        {"outer:cos1.5", outer_cos(1.5, m)}, {"outer:cos2", outer_cos(2.0, m)},
        {"outer:cos3", outer_cos(3.0, m)},   {"outer:expcos", outer_expcos(m)},
        {"outer:abs2", outer_abs(m)},
    };
}

/// Ten structurally inner members (Blaschke, singular, monomial).
inline Family inner_family() {
    Family fam;
    auto bl = blaschke_family();
    for (const auto& name :
         {"blaschke:origin", "blaschke:half", "blaschke:pair", "blaschke:ring8",
          "blaschke:ring16", "blaschke:radial7", "blaschke:cluster12"})
        for (const auto& entry : bl)
            if (entry.name == name) fam.push_back(entry);
    fam.push_back({"monomial:6", AnalyticFunction::monomial(6)});
    fam.push_back({"singular:one", AnalyticFunction::singular_inner({{1.0, 0.5}})});
    fam.push_back({"singular:two", AnalyticFunction::singular_inner({{1.0, 0.4}, {3.5, 0.8}})});
    return fam;
}

/// Wide family for the one-dimensional comparability experiments.
inline Family theorem1_family() {
    Family fam = monomial_family(256);
    for (auto& e : blaschke_family()) fam.push_back(e);
    for (auto& e : outer_family()) fam.push_back(e);
    fam.push_back({"product:half*cos2",
                   AnalyticFunction::product(
                       {AnalyticFunction::blaschke({complex(0.5, 0)}), outer_cos(2.0)})});
    fam.push_back({"product:ring8*expcos",
                   AnalyticFunction::product(
                       {AnalyticFunction::blaschke(ring_zeros(8, 0.7)), outer_expcos()})});
    return fam;
}

/// Leaner family for the triple-integral experiments.
inline Family triple_family() {
    Family fam = monomial_family(32);
    fam.push_back({"blaschke:origin", AnalyticFunction::blaschke({complex(0, 0)})});
    fam.push_back({"blaschke:half", AnalyticFunction::blaschke({complex(0.5, 0)})});
    fam.push_back(
        {"blaschke:pair", AnalyticFunction::blaschke({complex(0.5, 0), complex(-0.3, 0.4)})});
    fam.push_back({"blaschke:ring8", AnalyticFunction::blaschke(ring_zeros(8, 0.7))});
    fam.push_back({"blaschke:radial5", AnalyticFunction::blaschke(radial_zeros(5))});
    fam.push_back({"outer:cos2", outer_cos(2.0)});
    fam.push_back({"outer:expcos", outer_expcos()});
    fam.push_back({"outer:abs2", outer_abs()});
    fam.push_back({"product:half*cos2",
                   AnalyticFunction::product(
                       {AnalyticFunction::blaschke({complex(0.5, 0)}), outer_cos(2.0)})});
    fam.push_back({"product:mono4*expcos",
                   AnalyticFunction::product({AnalyticFunction::monomial(4), outer_expcos()})});
    return fam;
}

/// Ten inner-times-outer products for the factorization experiment.
inline Family factorization_family() {
    const std::vector<std::pair<std::string, AnalyticFunction>> inners = {
        {"origin", AnalyticFunction::blaschke({complex(0, 0)})},
        {"half", AnalyticFunction::blaschke({complex(0.5, 0)})},
        {"pair", AnalyticFunction::blaschke({complex(0.5, 0), complex(-0.3, 0.4)})},
        {"ring8", AnalyticFunction::blaschke(ring_zeros(8, 0.7))},
        {"singular", AnalyticFunction::singular_inner({{1.0, 0.5}})},
    };
    const std::vector<std::pair<std::string, AnalyticFunction>> outers = {
        {"cos2", outer_cos(2.0)},
        {"expcos", outer_expcos()},
    };
    Family fam;
    for (const auto& [iname, ifn] : inners)
        for (const auto& [oname, ofn] : outers)
            fam.push_back({"product:" + iname + "*" + oname,
                           AnalyticFunction::product({ifn, ofn})});
    return fam;
}

/// Every named corpus member (for the CLI listing).
inline Family all_members() {
    Family fam = theorem1_family();
    for (auto& e : inner_family()) {
        bool seen = false;
        for (const auto& x : fam) seen = seen || x.name == e.name;
        if (!seen) fam.push_back(e);
    }
    for (auto& e : factorization_family()) {
        bool seen = false;
        for (const auto& x : fam) seen = seen || x.name == e.name;
        if (!seen) fam.push_back(e);
    }
    fam.push_back({"constant:1", AnalyticFunction::constant(1.0)});
    return fam;
}

/// Look a member up by name (throws when absent).
inline AnalyticFunction by_name(const std::string& name) {
    for (const auto& e : all_members())
        if (e.name == name) return e.fn;
    throw validation_error("unknown corpus member: " + name);
}

}  // namespace corpus
}  // namespace besov

#endif
