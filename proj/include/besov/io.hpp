#ifndef BESOV_IO_HPP
#define BESOV_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "besov/analytic_function.hpp"
#include "besov/corpus.hpp"
#include "besov/quantities.hpp"
#include "besov/radial_weight.hpp"
#include "besov/verify.hpp"
#include "besov/weight_classify.hpp"

namespace besov {

using json = nlohmann::ordered_json;

namespace io {

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw validation_error("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

/// Two-column CSV (radius, density); '#' lines are comments.
inline std::pair<std::vector<double>, std::vector<double>> load_two_column_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open CSV: " + path);
    std::vector<double> a, b;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, y;
        if (!(ss >> x >> y)) throw validation_error("bad CSV row in " + path + ": " + line);
        a.push_back(x);
        b.push_back(y);
    }
    return {a, b};
}

/// Single-column CSV of 2^m boundary samples.
inline std::vector<double> load_one_column_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open CSV: " + path);
    std::vector<double> v;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        double x;
        if (!(ss >> x)) throw validation_error("bad CSV row in " + path + ": " + line);
        v.push_back(x);
    }
    return v;
}

// --- weights -----------------------------------------------------------------

inline RadialWeight parse_weight(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw validation_error("weight spec must be an object with a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return RadialWeight::power(j.at("alpha").get<double>());
    if (kind == "power_log")
        return RadialWeight::power_log(j.at("alpha").get<double>(), j.at("beta").get<double>());
    if (kind == "sampled") {
        if (j.contains("csv")) {
            auto [grid, values] = load_two_column_csv(j.at("csv").get<std::string>());
            return RadialWeight::sampled(std::move(grid), std::move(values));
        }
        return RadialWeight::sampled(j.at("grid").get<std::vector<double>>(),
                                     j.at("values").get<std::vector<double>>());
    }
    throw validation_error("unknown weight kind: " + kind);
}

inline json weight_to_json(const RadialWeight& w) {
    json j;
    j["kind"] = w.kind_name();
    if (w.kind() != RadialWeight::Kind::Sampled) {
        j["alpha"] = w.alpha();
        if (w.kind() == RadialWeight::Kind::PowerLog) j["beta"] = w.beta();
    }
    return j;
}

// --- functions ---------------------------------------------------------------

inline complex parse_complex(const json& j) {
    if (j.is_number()) return complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return complex(j.at(0).get<double>(), j.at(1).get<double>());
    throw validation_error("complex values are numbers or [re, im] pairs");
}

inline std::vector<complex> parse_complex_list(const json& j) {
    std::vector<complex> out;
    for (const auto& e : j) out.push_back(parse_complex(e));
    return out;
}

inline AnalyticFunction parse_function(const json& j) {
    if (j.is_string()) return corpus::by_name(j.get<std::string>());
    if (!j.is_object()) throw validation_error("function spec must be an object or corpus name");
    if (j.contains("corpus")) return corpus::by_name(j.at("corpus").get<std::string>());
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "monomial") return AnalyticFunction::monomial(j.at("n").get<int>());
    if (variant == "constant") return AnalyticFunction::constant(parse_complex(j.at("value")));
    if (variant == "polynomial")
        return AnalyticFunction::polynomial(parse_complex_list(j.at("coefficients")));
    if (variant == "lacunary")
        return AnalyticFunction::lacunary(parse_complex_list(j.at("coefficients")),
                                          j.at("exponents").get<std::vector<int>>());
    if (variant == "blaschke")
        return AnalyticFunction::blaschke(parse_complex_list(j.at("zeros")),
                                          j.value("rotation", 0.0));
    if (variant == "singular_inner") {
        std::vector<std::pair<double, double>> atoms;
        for (const auto& a : j.at("atoms"))
            atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
        return AnalyticFunction::singular_inner(std::move(atoms), j.value("rotation", 0.0));
    }
    if (variant == "outer") {
        std::vector<double> samples;
        if (j.contains("modulus_csv"))
            samples = load_one_column_csv(j.at("modulus_csv").get<std::string>());
        else if (j.contains("samples"))
            samples = j.at("samples").get<std::vector<double>>();
        else
            throw validation_error("outer spec needs 'samples' or 'modulus_csv'");
        return AnalyticFunction::outer(boundary_grid_from_samples(std::move(samples)));
    }
    if (variant == "product") {
        std::vector<AnalyticFunction> factors;
        for (const auto& e : j.at("factors")) factors.push_back(parse_function(e));
        return AnalyticFunction::product(std::move(factors));
    }
    if (variant == "quotient")
        return AnalyticFunction::quotient(parse_function(j.at("numerator")),
                                          parse_function(j.at("denominator")));
    throw validation_error("unknown function variant: " + variant);
}

inline Family parse_family(const json& j) {
    Family fam;
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "corpus:theorem1") return corpus::theorem1_family();
        if (name == "corpus:triple") return corpus::triple_family();
        if (name == "corpus:blaschke") return corpus::blaschke_family();
        if (name == "corpus:inner") return corpus::inner_family();
        if (name == "corpus:factorization") return corpus::factorization_family();
        if (name == "corpus:all") return corpus::all_members();
        throw validation_error("unknown family name: " + name);
    }
    if (!j.is_array()) throw validation_error("family must be an array or a corpus name");
    int idx = 0;
    for (const auto& e : j) {
        std::string name = e.is_string() ? e.get<std::string>()
                                         : e.is_object() && e.contains("corpus")
                                               ? e.at("corpus").get<std::string>()
                                               : "member:" + std::to_string(idx);
        fam.push_back({std::move(name), parse_function(e)});
        ++idx;
    }
    return fam;
}

// --- config ------------------------------------------------------------------

inline QuadratureConfig parse_config(const json& j) {
    QuadratureConfig cfg;
    if (j.is_null()) return cfg;
    cfg.angular_log2_size = j.value("angular_log2_size", cfg.angular_log2_size);
    cfg.t_log2_size = j.value("t_log2_size", cfg.t_log2_size);
    cfg.radial_ratio = j.value("radial_ratio", cfg.radial_ratio);
    cfg.epsilon_1d = j.value("epsilon_1d", cfg.epsilon_1d);
    cfg.epsilon_triple = j.value("epsilon_triple", cfg.epsilon_triple);
    cfg.h_per_decade = j.value("h_per_decade", cfg.h_per_decade);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    cfg.sigma_cap_log2 = j.value("sigma_cap_log2", cfg.sigma_cap_log2);
    cfg.validate();
    return cfg;
}

inline json config_to_json(const QuadratureConfig& cfg) {
    json j;
    j["angular_log2_size"] = cfg.angular_log2_size;
    j["t_log2_size"] = cfg.t_log2_size;
    j["radial_ratio"] = cfg.radial_ratio;
    j["epsilon_1d"] = cfg.epsilon_1d;
    j["epsilon_triple"] = cfg.epsilon_triple;
    j["h_per_decade"] = cfg.h_per_decade;
    j["tolerance"] = cfg.tolerance;
    j["sigma_cap_log2"] = cfg.sigma_cap_log2;
    return j;
}

// --- report serialization ------------------------------------------------------

inline json to_json(const ConditionReport& c) {
    return json{{"verdict", to_string(c.verdict)}, {"constant", c.constant}};
}

inline json to_json(const WeightClassReport& r) {
    json j;
    j["d_hat"] = to_json(r.d_hat);
    j["d_check"] = json{{"verdict", to_string(r.d_check.verdict)},
                        {"K", r.d_check.K},
                        {"constant", r.d_check.constant}};
    j["in_R"] = to_string(r.in_R);
    j["p"] = r.p;
    j["d_p"] = to_json(r.d_p);
    j["beta_exponent"] = r.beta_exponent;
    j["alpha_exponent"] = r.alpha_exponent;
    j["grid"] = json{{"lambda", r.grid.lambda},
                     {"epsilon", r.grid.epsilon},
                     {"points", r.grid.points}};
    return j;
}

inline json to_json(const NormEstimate& e) {
    json j;
    j["value"] = e.value;
    j["value_pow_q"] = e.value_pow_q;
    j["tail_bound"] = e.tail_bound;
    j["divergent"] = e.divergent;
    j["tail_flagged"] = e.tail_flagged;
    j["grid"] = json{{"lambda", e.grid.lambda},
                     {"epsilon", e.grid.epsilon},
                     {"radial_points", e.grid.radial_points},
                     {"angular_size", e.grid.angular_size},
                     {"t_size", e.grid.t_size}};
    return j;
}

inline json to_json(const RatioReport& r) {
    json j;
    j["label"] = r.label;
    j["verdict"] = to_string(r.verdict);
    j["min_ratio"] = r.min_ratio;
    j["max_ratio"] = r.max_ratio;
    j["refined_max_ratio"] = r.refined_max_ratio;
    j["stability"] = r.stability;
    j["bound_constant"] = r.bound_constant;
    j["trend_growth"] = r.trend_growth;
    j["excluded"] = r.excluded;
    json members = json::array();
    for (const auto& m : r.members)
        members.push_back(json{{"member", m.member},
                               {"left", m.left},
                               {"right", m.right},
                               {"ratio", m.ratio},
                               {"usable", m.usable}});
    j["members"] = members;
    return j;
}

inline json to_json(const SequenceGeometry& g) {
    json j;
    j["blaschke_sum"] = g.blaschke_sum;
    if (std::isnan(g.min_separation))
        j["min_separation"] = nullptr;
    else
        j["min_separation"] = g.min_separation;
    j["uniform_separation"] = g.uniform_separation;
    return j;
}

}  // namespace io
}  // namespace besov

#endif
