// Command-line surface: dispatches experiment manifests to the library
// and serializes reports.  Exit codes: 0 success, 2 validation error,
// 3 quadrature-resolution error, 4 assert-mode invariant failure.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "besov/manifest.hpp"
#include "besov/version.hpp"

namespace {

int cmd_run(const std::string& manifest, const std::string& outdir, bool assert_mode,
            bool refine) {
    besov::RunOptions opt;
    opt.assert_mode = assert_mode;
    opt.refine = refine;
    return besov::io::run_manifest(manifest, outdir, opt);
}

int cmd_classify(const std::string& weight_path, double p) {
    const auto nu = besov::io::parse_weight(besov::io::load_json_file(weight_path));
    const auto cls = besov::classify(nu, p);
    besov::json out;
    out["weight"] = besov::io::weight_to_json(nu);
    out["class"] = besov::io::to_json(cls);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_norm(const std::string& fn_path, const std::string& weight_path, double p, double q) {
    const auto f = besov::io::parse_function(besov::io::load_json_file(fn_path));
    const auto nu = besov::io::parse_weight(besov::io::load_json_file(weight_path));
    const auto bes = besov::besov_norm(f, p, q, nu);
    const auto hdy = besov::hardy_norm(f, p);
    besov::json out;
    out["function"] = f.describe();
    out["besov"] = besov::io::to_json(bes);
    out["hardy"] = besov::io::to_json(hdy);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_list_corpus() {
    for (const auto& [name, fn] : besov::corpus::all_members())
        std::printf("%-24s %s\n", name.c_str(), fn.describe().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted Besov space numerics on the unit disc"};
    app.set_version_flag("--version", besov::version_string);
    app.require_subcommand(1);

    std::string manifest_path, output_dir = ".", weight_path, function_path;
    bool assert_mode = false, refine = false;
    double p = 2.0, q = 2.0;

    auto* run = app.add_subcommand("run", "run an experiment manifest");
    run->add_option("manifest", manifest_path, "manifest JSON path")->required();
    run->add_option("-o,--output", output_dir, "output directory");
    run->add_flag("--assert", assert_mode, "invariant violations exit with status 4");
    run->add_flag("--refine", refine, "double resolutions for the stability check");

    auto* cw = app.add_subcommand("classify-weight", "classify a weight spec");
    cw->add_option("spec", weight_path, "weight JSON path")->required();
    cw->add_option("-p", p, "positivity exponent for the D_p test");

    auto* nm = app.add_subcommand("norm", "Besov and Hardy norms of a function");
    nm->add_option("function", function_path, "function JSON path")->required();
    nm->add_option("weight", weight_path, "weight JSON path")->required();
    nm->add_option("-p", p, "p exponent");
    nm->add_option("-q", q, "q exponent");

    app.add_subcommand("list-corpus", "list the frozen function corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(manifest_path, output_dir, assert_mode, refine);
        if (cw->parsed()) return cmd_classify(weight_path, p);
        if (nm->parsed()) return cmd_norm(function_path, weight_path, p, q);
        return cmd_list_corpus();
    } catch (const besov::resolution_error& e) {
        std::fprintf(stderr, "resolution error: %s\n", e.what());
        return 3;
    } catch (const besov::validation_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
