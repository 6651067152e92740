#ifndef BESOV_MANIFEST_HPP
#define BESOV_MANIFEST_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "besov/io.hpp"
#include "besov/version.hpp"

namespace besov {

struct RunOptions {
    bool assert_mode = false;  // invariant violations exit nonzero
    bool refine = false;       // run at one refinement step up
};

namespace io {

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "classify", "norm",  "theorem1", "theorem2", "theorem3", "theorem4",
        "fisp",     "bfisp", "zeros",    "lemmaE",   "lemmaF"};
    return names;
}

struct TableRow {
    std::string member;
    std::string quantity;
    double value;
};

struct AssertRecord {
    std::string name;
    bool ok;
};

namespace detail {

inline SampledFunction parse_sampled_function(const json& j) {
    if (j.contains("csv")) {
        auto [s, v] = load_two_column_csv(j.at("csv").get<std::string>());
        return SampledFunction{std::move(s), std::move(v)};
    }
    const std::string kind = j.value("kind", "constant");
    const int n = j.value("points", 4000);
    const double gap = j.value("gap", 1e-9);
    SampledFunction g;
    const double lam = std::pow(gap, 1.0 / (n - 1));
    for (int k = 0; k < n; ++k) {
        const double s = 1.0 - std::pow(lam, k);
        g.s.push_back(s);
        if (kind == "constant")
            g.v.push_back(j.value("value", 1.0));
        else if (kind == "power_singularity")
            g.v.push_back(j.value("amplitude", 1.0) *
                          std::pow(1.0 - s, -j.value("c", 0.5)));
        else
            throw validation_error("unknown sampled-function kind: " + kind);
    }
    return g;
}

inline json norm_members_to_table(const std::string& member, const NormEstimate& bes,
                                  const NormEstimate& hardy, std::vector<TableRow>& rows) {
    rows.push_back({member, "besov_norm", bes.value});
    rows.push_back({member, "besov_pow_q", bes.value_pow_q});
    rows.push_back({member, "besov_tail_bound", bes.tail_bound});
    rows.push_back({member, "hardy_norm", hardy.value});
    json j;
    j["besov"] = to_json(bes);
    j["hardy"] = to_json(hardy);
    return j;
}

inline void ratio_rows(const RatioReport& r, const std::string& prefix,
                       std::vector<TableRow>& rows) {
    for (const auto& m : r.members) {
        rows.push_back({m.member, prefix + "_left", m.left});
        rows.push_back({m.member, prefix + "_right", m.right});
        rows.push_back({m.member, prefix + "_ratio", m.ratio});
    }
}

}  // namespace detail

/// Execute one experiment manifest; returns the report document plus the
/// flat value table and the assert records.
inline json run_experiment(const json& manifest, const RunOptions& opt,
                           std::vector<TableRow>& rows, std::vector<AssertRecord>& asserts) {
    if (!manifest.is_object()) throw validation_error("manifest must be a JSON object");
    const std::string experiment = manifest.value("experiment", "");
    bool known = false;
    for (const auto& n : experiment_names()) known = known || n == experiment;
    if (!known) throw validation_error("unknown experiment: '" + experiment + "'");

    QuadratureConfig cfg = parse_config(manifest.value("config", json()));
    if (opt.refine) cfg = cfg.refined();

    json report;
    report["tool"] = "besov";
    report["version"] = version_string;
    report["experiment"] = experiment;
    report["refined"] = opt.refine;
    report["config"] = config_to_json(cfg);

    const double p = manifest.value("p", 2.0);
    const double q = manifest.value("q", p);
    report["parameters"] = json{{"p", p}, {"q", q}};

    json results;

    if (experiment == "classify") {
        const auto nu = parse_weight(manifest.at("weight"));
        report["weight"] = weight_to_json(nu);
        const auto cls = classify(nu, p, cfg);
        const auto cross = lemma_a_crosscheck(nu, cfg);
        results["class"] = to_json(cls);
        results["lemmaA"] = json{{"verdict", to_string(cross.verdict)},
                                 {"c_ii", cross.c_ii},
                                 {"c_iii", cross.c_iii},
                                 {"gamma", cross.gamma},
                                 {"iv_min_ratio", cross.iv_min_ratio},
                                 {"iv_max_ratio", cross.iv_max_ratio}};
        rows.push_back({"weight", "d_hat_constant", cls.d_hat.constant});
        rows.push_back({"weight", "d_p_constant", cls.d_p.constant});
        rows.push_back({"weight", "beta_exponent", cls.beta_exponent});
        rows.push_back({"weight", "alpha_exponent", cls.alpha_exponent});
        asserts.push_back({"classification_resolved", cls.in_R != Verdict::Unresolved &&
                                                          cls.d_p.verdict != Verdict::Unresolved});
    } else if (experiment == "norm") {
        const auto nu = parse_weight(manifest.at("weight"));
        report["weight"] = weight_to_json(nu);
        const auto f = parse_function(manifest.at("function"));
        const auto bes = besov_norm(f, p, q, nu, cfg);
        const auto hdy = hardy_norm(f, p, cfg);
        results["function"] = f.describe();
        results["norms"] = detail::norm_members_to_table(f.describe(), bes, hdy, rows);
        asserts.push_back({"norm_finite", !bes.divergent});
    } else if (experiment == "theorem1") {
        const auto nu = parse_weight(manifest.at("weight"));
        report["weight"] = weight_to_json(nu);
        const auto fam = manifest.contains("family") ? parse_family(manifest.at("family"))
                                                     : corpus::theorem1_family();
        const auto rep = run_theorem1(fam, p, q, nu, cfg);
        results["weight_class"] = to_json(rep.weight_class);
        results["link"] = to_json(rep.link);
        detail::ratio_rows(rep.link, "t1", rows);
        if (rep.weight_class.d_p.verdict == Verdict::In)
            asserts.push_back({"bounded_for_dq_weight",
                               rep.link.verdict == BoundVerdict::Bounded});
        if (rep.weight_class.d_p.verdict == Verdict::Out)
            asserts.push_back({"not_bounded_for_non_dq_weight",
                               rep.link.verdict != BoundVerdict::Bounded});
    } else if (experiment == "theorem2") {
        const auto nu = parse_weight(manifest.at("weight"));
        report["weight"] = weight_to_json(nu);
        const auto fam = manifest.contains("family") ? parse_family(manifest.at("family"))
                                                     : corpus::triple_family();
        const auto rep = run_theorem2(fam, p, q, nu, cfg);
        results["weight_class"] = to_json(rep.weight_class);
        json cf = json::array();
        for (const auto& m : rep.constant_free) {
            cf.push_back(json{{"member", m.member},
                              {"besov_pow_q", m.lhs},
                              {"middle", m.rhs},
                              {"rel_margin", m.rel_margin}});
            rows.push_back({m.member, "besov_pow_q", m.lhs});
            rows.push_back({m.member, "middle", m.rhs});
            rows.push_back({m.member, "rel_margin", m.rel_margin});
        }
        results["constant_free"] = cf;
        results["min_rel_margin"] = rep.min_rel_margin;
        results["middle_vs_omega"] = to_json(rep.middle_vs_omega);
        results["omega_vs_besov"] = to_json(rep.omega_vs_besov);
        results["excluded"] = rep.excluded;
        detail::ratio_rows(rep.middle_vs_omega, "t2b", rows);
        detail::ratio_rows(rep.omega_vs_besov, "t2c", rows);
        asserts.push_back({"constant_free_link", rep.min_rel_margin >= -0.05});
        asserts.push_back(
            {"link_b_bounded", rep.middle_vs_omega.verdict == BoundVerdict::Bounded});
        asserts.push_back(
            {"link_c_bounded", rep.omega_vs_besov.verdict == BoundVerdict::Bounded});
    } else if (experiment == "theorem3") {
        const auto nu = parse_weight(manifest.at("weight"));
        report["weight"] = weight_to_json(nu);
        const auto fam = manifest.contains("family") ? parse_family(manifest.at("family"))
                                                     : corpus::triple_family();
        const auto rep = run_theorem3(fam, p, q, nu, cfg);
        results["weight_class"] = to_json(rep.weight_class);
        results["lower"] = to_json(rep.lower);
        results["upper"] = to_json(rep.upper);
        detail::ratio_rows(rep.lower, "t3_lower", rows);
        detail::ratio_rows(rep.upper, "t3_upper", rows);
        asserts.push_back({"lower_bounded", rep.lower.verdict == BoundVerdict::Bounded});
        asserts.push_back({"upper_bounded", rep.upper.verdict == BoundVerdict::Bounded});
    } else if (experiment == "theorem4") {
        const auto nu = parse_weight(manifest.at("weight"));
        report["weight"] = weight_to_json(nu);
        const auto fam = manifest.contains("family") ? parse_family(manifest.at("family"))
                                                     : corpus::factorization_family();
        json members = json::array();
        bool all_bounded = true, all_finite = true;
        for (const auto& [name, f] : fam) {
            const auto res = factorize_quotient(f, p, q, nu, cfg);
            members.push_back(json{{"member", name},
                                   {"reconstruction_error", res.reconstruction_error},
                                   {"max_f1_modulus", res.max_f1_modulus},
                                   {"max_f2_modulus", res.max_f2_modulus},
                                   {"min_f2_modulus", res.min_f2_modulus},
                                   {"besov_f1", to_json(res.besov_f1)},
                                   {"besov_f2", to_json(res.besov_f2)},
                                   {"proposition_ratio", res.proposition_ratio},
                                   {"clamped", res.clamped}});
            rows.push_back({name, "reconstruction_error", res.reconstruction_error});
            rows.push_back({name, "max_f1_modulus", res.max_f1_modulus});
            rows.push_back({name, "max_f2_modulus", res.max_f2_modulus});
            rows.push_back({name, "besov_f1_pow_q", res.besov_f1.value_pow_q});
            rows.push_back({name, "besov_f2_pow_q", res.besov_f2.value_pow_q});
            rows.push_back({name, "proposition_ratio", res.proposition_ratio});
            all_bounded = all_bounded && res.max_f1_modulus <= 1.0 + 1e-8 &&
                          res.max_f2_modulus <= 1.0 + 1e-8;
            all_finite = all_finite && !res.besov_f1.divergent && !res.besov_f2.divergent;
        }
        results["members"] = members;
        asserts.push_back({"factors_bounded_by_one", all_bounded});
        asserts.push_back({"factor_norms_finite", all_finite});
    } else if (experiment == "fisp") {
        const auto nu = parse_weight(manifest.at("weight"));
        report["weight"] = weight_to_json(nu);
        const auto f = parse_function(manifest.at("function"));
        const auto inner_f = parse_function(manifest.at("inner"));
        const auto rep = run_fisp(f, inner_f, p, q, nu, cfg);
        results["besov_fI"] = to_json(rep.besov_fI);
        results["besov_f"] = to_json(rep.besov_f);
        results["multiplier"] = to_json(rep.multiplier);
        results["hardy_f_pow_q"] = rep.hardy_f_pow_q;
        results["consistent"] = rep.consistent;
        results["bracket"] = rep.bracket;
        rows.push_back({"fI", "besov_pow_q", rep.besov_fI.value_pow_q});
        rows.push_back({"f", "besov_pow_q", rep.besov_f.value_pow_q});
        rows.push_back({"f", "multiplier", rep.multiplier.value});
        rows.push_back({"f", "bracket", rep.bracket});
        asserts.push_back({"fisp_consistent", rep.consistent});
    } else if (experiment == "bfisp") {
        const auto f = parse_function(manifest.at("function"));
        const auto zeros = parse_complex_list(manifest.at("zeros"));
        const double alpha = manifest.at("alpha").get<double>();
        const auto rep = run_bfisp(zeros, f, p, alpha, cfg);
        results["geometry"] = to_json(rep.geometry);
        results["separation_warning"] = rep.separation_warning;
        results["besov_fB"] = to_json(rep.besov_fB);
        results["besov_f"] = to_json(rep.besov_f);
        results["zero_sum"] = rep.zero_sum;
        results["consistent"] = rep.consistent;
        rows.push_back({"fB", "besov_pow_q", rep.besov_fB.value_pow_q});
        rows.push_back({"f", "besov_pow_q", rep.besov_f.value_pow_q});
        rows.push_back({"zeros", "zero_sum", rep.zero_sum});
        asserts.push_back({"bfisp_consistent", rep.consistent});
    } else if (experiment == "zeros") {
        const auto nu = parse_weight(manifest.at("weight"));
        report["weight"] = weight_to_json(nu);
        const auto zeros = parse_complex_list(manifest.at("zeros"));
        const auto outer_f = manifest.contains("outer") ? parse_function(manifest.at("outer"))
                                                        : AnalyticFunction::constant(1.0);
        const auto sums = zero_set_sum(zeros, outer_f, p, nu);
        const auto geom = sequence_geometry(zeros);
        results["geometry"] = to_json(geom);
        results["weighted_sum"] = sums.weighted_sum;
        results["power_form_valid"] = sums.power_form_valid;
        results["power_sum"] = sums.power_sum;
        results["terms"] = sums.terms;
        rows.push_back({"zeros", "weighted_sum", sums.weighted_sum});
        rows.push_back({"zeros", "power_sum", sums.power_sum});
        rows.push_back({"zeros", "blaschke_sum", geom.blaschke_sum});
        asserts.push_back({"sum_finite", std::isfinite(sums.weighted_sum)});
    } else if (experiment == "lemmaE") {
        const auto g = detail::parse_sampled_function(manifest.at("g"));
        const double r = manifest.value("r", 0.0);
        const auto rep = lemma_e_check(g, p, r);
        results["lhs"] = rep.lhs;
        results["rhs"] = rep.rhs;
        results["holds"] = rep.holds;
        rows.push_back({"g", "lhs", rep.lhs});
        rows.push_back({"g", "rhs", rep.rhs});
        asserts.push_back({"lemmaE_holds", rep.holds});
    } else if (experiment == "lemmaF") {
        const auto outer_f = parse_function(manifest.at("outer"));
        const int npts = manifest.value("points", 100);
        std::mt19937 gen(manifest.value("seed", 20240901u));
        std::uniform_real_distribution<double> ur(0.0, 1.0);
        std::vector<complex> pts;
        for (int i = 0; i < npts; ++i)
            pts.push_back(std::polar(0.9 * std::sqrt(ur(gen)), two_pi * ur(gen)));
        const auto rep = lemma_f_check(outer_f, pts, cfg);
        results["max_violation"] = rep.max_violation;
        results["points"] = rep.points;
        rows.push_back({"outer", "max_violation", rep.max_violation});
        asserts.push_back({"lemmaF_holds", rep.max_violation <= 1e-6});
    }

    report["results"] = results;
    json arr = json::array();
    for (const auto& a : asserts) arr.push_back(json{{"name", a.name}, {"ok", a.ok}});
    report["asserts"] = arr;
    json table = json::array();
    for (const auto& r : rows)
        table.push_back(json{{"member", r.member}, {"quantity", r.quantity}, {"value", r.value}});
    report["table"] = table;
    return report;
}

/// Full-precision CSV mirror of the report table.
inline void write_csv(const std::string& path, const std::vector<TableRow>& rows) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw validation_error("cannot open output CSV: " + path);
    std::fprintf(f, "member,quantity,value\n");
    for (const auto& r : rows)
        std::fprintf(f, "%s,%s,%.17g\n", r.member.c_str(), r.quantity.c_str(), r.value);
    std::fclose(f);
}

/// Run a manifest file and write report.json / results.csv into
/// output_dir.  Returns the process exit status (0 ok, 4 when assert
/// mode is on and an invariant failed); validation and resolution
/// problems propagate as exceptions.
inline int run_manifest(const std::string& manifest_path, const std::string& output_dir,
                        const RunOptions& opt = {}) {
    const json manifest = load_json_file(manifest_path);
    std::vector<TableRow> rows;
    std::vector<AssertRecord> asserts;
    json report;
    try {
        report = run_experiment(manifest, opt, rows, asserts);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("manifest field error: ") + e.what());
    }

    std::filesystem::create_directories(output_dir);
    {
        std::ofstream out(output_dir + "/report.json");
        if (!out) throw validation_error("cannot open output: " + output_dir + "/report.json");
        out << report.dump(2) << "\n";
    }
    write_csv(output_dir + "/results.csv", rows);

    if (opt.assert_mode)
        for (const auto& a : asserts)
            if (!a.ok) return 4;
    return 0;
}

}  // namespace io
}  // namespace besov

#endif
