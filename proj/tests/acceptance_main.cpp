// Acceptance harness: runs every gate criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit status is nonzero
// when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "besov/corpus.hpp"
#include "besov/manifest.hpp"
#include "besov/quantities.hpp"
#include "besov/verify.hpp"

using namespace besov;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

int g_failures = 0;

template <typename Fn>
void criterion(int id, const std::string& label, double budget_seconds, Fn&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        body(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.require(secs < budget_seconds, "runtime budget exceeded");
    if (!out.pass) ++g_failures;
    std::printf("[%s] %2d. %-38s (%.1f s%s)\n", out.pass ? "PASS" : "FAIL", id, label.c_str(),
                secs, out.detail.empty() ? "" : ("; " + out.detail).c_str());
    std::fflush(stdout);
}

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    std::printf("acceptance suite, tool version %s\n", version_string);

    // ---------------------------------------------------------------- 1
    criterion(1, "weight classification sweep", 10.0, [](Outcome& out) {
        for (double a : {-0.5, 0.0, 0.5, 0.9, 1.1, 1.5}) {
            const auto rep = classify(RadialWeight::power(a), 2.0);
            const bool member = rep.in_r_and_dp();
            out.require(member == (a < 1.0),
                        "membership flag wrong at alpha=" + std::to_string(a));
        }
        for (double a : {-0.5, 0.0, 0.5}) {
            const auto rep = classify(RadialWeight::power(a), 2.0);
            const double want = (a + 1.0) / (2.0 - a - 1.0);
            out.require(std::abs(rep.d_p.constant - want) <= 0.02 * want,
                        "Dp constant off at alpha=" + std::to_string(a));
        }
    });

    // ---------------------------------------------------------------- 2
    criterion(2, "monomial Besov asymptotics", 30.0, [](Outcome& out) {
        for (double a : {0.0, 0.5}) {
            const auto nu = RadialWeight::power(a);
            double lo = 1e300, hi = 0.0;
            for (int n = 2; n <= 256; n *= 2) {
                const auto est = besov_norm(AnalyticFunction::monomial(n), 2.0, 2.0, nu);
                const double ratio =
                    est.value_pow_q / (std::pow(n, 2.0) * nu.tail(1.0 - 1.0 / n));
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            out.require(lo > 0.0 && hi / lo < 3.0,
                        "bracket too wide at alpha=" + std::to_string(a));
        }
    });

    // ---------------------------------------------------------------- 3
    criterion(3, "theorem 1 both directions", 300.0, [](Outcome& out) {
        const auto fam = corpus::theorem1_family();
        const auto r1 = run_theorem1(fam, 2.0, 2.0, RadialWeight::power(0.0));
        out.require(r1.link.verdict == BoundVerdict::Bounded, "(2,2,0) not BOUNDED");
        const auto r2 = run_theorem1(fam, 1.0, 1.0, RadialWeight::power(-0.5));
        out.require(r2.link.verdict == BoundVerdict::Bounded, "(1,1,-0.5) not BOUNDED");

        Family monos;
        for (int n = 4; n <= 256; n *= 2)
            monos.push_back({"monomial:" + std::to_string(n), AnalyticFunction::monomial(n)});
        const auto rn = run_theorem1(monos, 2.0, 2.0, RadialWeight::power(1.2));
        out.require(rn.link.members.size() == monos.size(), "necessity members missing");
        for (std::size_t i = 0; i + 1 < rn.link.members.size(); ++i)
            out.require(rn.link.members[i + 1].ratio > rn.link.members[i].ratio,
                        "necessity ratio not strictly increasing");
    });

    // ---------------------------------------------------------------- 4
    criterion(4, "theorem 2 chain", 600.0, [](Outcome& out) {
        const auto rep =
            run_theorem2(corpus::triple_family(), 2.0, 2.0, RadialWeight::power(0.0));
        out.require(rep.min_rel_margin >= -0.05, "constant-free link violated");
        out.require(rep.middle_vs_omega.verdict == BoundVerdict::Bounded,
                    "link (b) not BOUNDED");
        out.require(rep.middle_vs_omega.stability < 0.2, "link (b) unstable");
        out.require(rep.omega_vs_besov.verdict == BoundVerdict::Bounded, "link (c) not BOUNDED");
        out.require(rep.omega_vs_besov.stability < 0.2, "link (c) unstable");
        out.require(rep.excluded.empty(), "members unexpectedly excluded");
    });

    // ---------------------------------------------------------------- 5
    criterion(5, "theorem 3 characterization", 600.0, [](Outcome& out) {
        for (double a : {0.0, 0.5}) {
            const auto nu = RadialWeight::power(a);
            const auto b = AnalyticFunction::blaschke({complex(0, 0)});
            const double f1 = f1_functional(b, 2.0, 2.0, nu).value;
            const double f2 = f2_functional(b, 2.0, 2.0, nu).value;
            const double want = 2.0 * pi / (a + 1.0);
            out.require(std::abs(f1 + f2 - want) <= 0.02 * want,
                        "F1+F2 closed form off at alpha=" + std::to_string(a));
        }
        for (const auto& [name, f] : corpus::inner_family())
            out.require(f2_functional(f, 2.0, 2.0, RadialWeight::power(0.5)).value == 0.0,
                        "F2 not exactly zero for " + name);
        const auto rep =
            run_theorem3(corpus::triple_family(), 2.0, 2.0, RadialWeight::power(0.5));
        out.require(rep.lower.verdict == BoundVerdict::Bounded, "lower link not BOUNDED");
        out.require(rep.upper.verdict == BoundVerdict::Bounded, "upper link not BOUNDED");
    });

    // ---------------------------------------------------------------- 6
    criterion(6, "theorem 4 factorization", 120.0, [](Outcome& out) {
        const auto nu = RadialWeight::power(0.0);
        std::size_t count = 0;
        for (const auto& [name, f] : corpus::factorization_family()) {
            const auto res = factorize_quotient(f, 2.0, 2.0, nu);
            out.require(res.reconstruction_error <= 1e-8, name + " reconstruction");
            out.require(res.max_f1_modulus <= 1.0 + 1e-8, name + " |f1| bound");
            out.require(res.max_f2_modulus <= 1.0 + 1e-8, name + " |f2| bound");
            out.require(!res.besov_f1.divergent && !res.besov_f2.divergent,
                        name + " norms not finite");
            ++count;
        }
        out.require(count == 10, "expected 10 factorization products");
    });

    // ---------------------------------------------------------------- 7
    criterion(7, "inner multiplier criterion", 300.0, [](Outcome& out) {
        const auto one = AnalyticFunction::constant(1.0);
        const auto bz = AnalyticFunction::blaschke({complex(0, 0)});
        for (double a : {0.0, 0.5}) {
            const auto nu = RadialWeight::power(a);
            const double got = multiplier_integral(one, bz, 2.0, 2.0, nu).value;
            const double want = 2.0 * pi / (a + 1.0);
            out.require(std::abs(got - want) <= 0.02 * want,
                        "multiplier closed form off at alpha=" + std::to_string(a));
        }
        const auto nu = RadialWeight::power(0.0);
        QuadratureConfig cfg;
        double hi = 0.0, lo = 1e300, hi_ref = 0.0;
        for (const auto& [name, I] : corpus::blaschke_family()) {
            const double base = besov_norm(I, 2.0, 2.0, nu, cfg).value_pow_q /
                                multiplier_integral(one, I, 2.0, 2.0, nu, cfg).value;
            const double fine = besov_norm(I, 2.0, 2.0, nu, cfg.refined()).value_pow_q /
                                multiplier_integral(one, I, 2.0, 2.0, nu, cfg.refined()).value;
            hi = std::max(hi, base);
            lo = std::min(lo, base);
            hi_ref = std::max(hi_ref, fine);
        }
        out.require(lo > 0.0 && std::isfinite(hi), "bracket degenerate");
        out.require(std::abs(hi_ref - hi) < 0.2 * hi, "bracket not refinement stable");
    });

    // ---------------------------------------------------------------- 8
    criterion(8, "lemma E and lemma F", 60.0, [](Outcome& out) {
        std::mt19937 gen(424243u);
        std::uniform_real_distribution<double> uc(0.0, 0.9);
        std::uniform_real_distribution<double> ua(0.0, 3.0);
        std::uniform_real_distribution<double> ur(0.0, 0.95);
        const int n_grid = 3000;
        for (double p : {0.3, 0.7, 1.0}) {
            for (int trial = 0; trial < 100; ++trial) {
                const double c = uc(gen), amp = ua(gen), bump = ua(gen), ctr = ur(gen);
                SampledFunction g;
                const double lam = std::pow(1e-9, 1.0 / (n_grid - 1));
                for (int k = 0; k < n_grid; ++k) {
                    const double s = 1.0 - std::pow(lam, k);
                    g.s.push_back(s);
                    g.v.push_back(amp * std::pow(1.0 - s, -c) +
                                  bump * std::exp(-50.0 * (s - ctr) * (s - ctr)));
                }
                const auto rep = lemma_e_check(g, p, ur(gen));
                out.require(rep.holds, "lemma E violated (p=" + std::to_string(p) + ")");
            }
        }

        std::vector<complex> pts;
        for (int i = 0; i < 100; ++i)
            pts.push_back(std::polar(0.9 * std::sqrt(ur(gen) / 0.95), two_pi * ur(gen)));
        for (const auto& of : {corpus::outer_cos(2.0), corpus::outer_expcos(),
                               corpus::outer_abs()}) {
            const auto rep = lemma_f_check(of, pts);
            out.require(rep.max_violation <= 1e-6, "lemma F violated");
        }
    });

    // ---------------------------------------------------------------- 9
    criterion(9, "numerical bedrock", 60.0, [](Outcome& out) {
        const auto ones = make_real_grid(12, [](double) { return 1.0; });
        for (double r : {0.0, 0.37, 0.9, 0.999}) {
            out.require(poisson_mean(ones, std::polar(r, 1.1)) == 1.0,
                        "Poisson mean of 1 not exact");
        }
        const auto cosg = make_real_grid(16, [](double t) { return std::cos(t); });
        for (double r : {0.0, 0.5, 0.9, 0.99})
            out.require(std::abs(poisson_mean(cosg, complex(r, 0)) - r) <= 1e-8,
                        "harmonic extension off at r=" + std::to_string(r));

        const std::vector<AnalyticFunction> zoo = {
            AnalyticFunction::monomial(3),
            AnalyticFunction::polynomial({complex(1, 0), complex(0, 2), complex(-0.5, 0.25)}),
            AnalyticFunction::lacunary({complex(1, 0), complex(0.5, 0)}, {2, 9}),
            AnalyticFunction::blaschke({complex(0.5, 0), complex(-0.3, 0.4), complex(0, 0)}),
            AnalyticFunction::singular_inner({{1.0, 0.7}, {4.0, 0.3}}),
            corpus::outer_expcos(),
            AnalyticFunction::product(
                {AnalyticFunction::blaschke({complex(0.5, 0)}), corpus::outer_cos(2.0)}),
            AnalyticFunction::quotient(AnalyticFunction::constant(1.0), corpus::outer_cos(2.0)),
        };
        std::mt19937 gen(99u);
        std::uniform_real_distribution<double> ur(0.0, 1.0);
        for (const auto& f : zoo) {
            for (int i = 0; i < 200; ++i) {
                const complex z = std::polar(0.9 * std::sqrt(ur(gen)), two_pi * ur(gen));
                const complex d = f.derivative(z);
                const complex fd = (f.evaluate(z + 1e-6) - f.evaluate(z - 1e-6)) / 2e-6;
                out.require(std::abs(d - fd) <= 1e-4 * (1.0 + std::abs(d)),
                            "derivative mismatch: " + f.describe());
            }
        }
    });

    // ---------------------------------------------------------------- 10
    criterion(10, "deterministic reports", 120.0, [](Outcome& out) {
        const auto dir = fs::temp_directory_path() / "besov_acceptance";
        fs::create_directories(dir);
        const auto manifest = dir / "manifest.json";
        {
            std::ofstream m(manifest);
            m << R"({
                "experiment": "theorem1",
                "weight": {"kind": "power", "alpha": 0.0},
                "family": ["monomial:1", "monomial:4", "blaschke:half", "outer:cos2"],
                "p": 2.0, "q": 2.0
            })";
        }
        const auto d1 = (dir / "run1").string(), d2 = (dir / "run2").string();
        out.require(io::run_manifest(manifest.string(), d1) == 0, "first run failed");
        out.require(io::run_manifest(manifest.string(), d2) == 0, "second run failed");
        out.require(slurp(d1 + "/report.json") == slurp(d2 + "/report.json"),
                    "report.json differs between runs");
        out.require(!slurp(d1 + "/report.json").empty(), "empty report");
        out.require(slurp(d1 + "/results.csv") == slurp(d2 + "/results.csv"),
                    "results.csv differs between runs");
    });

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
