#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "besov/corpus.hpp"
#include "besov/verify.hpp"
#include "oracle_helpers.hpp"

using namespace besov;

namespace {

QuadratureConfig unit_cfg() {
    QuadratureConfig cfg;
    cfg.angular_log2_size = 11;
    cfg.t_log2_size = 9;
    cfg.epsilon_triple = 1e-4;
    return cfg;
}

}  // namespace

TEST_CASE("theorem 1: bounded for a D_q weight, trivially bounded for constants") {
    const auto nu = RadialWeight::power(0.0);
    const auto rep = run_theorem1(corpus::monomial_family(256), 2.0, 2.0, nu);
    CHECK(rep.weight_class.in_r_and_dp());
    CHECK(rep.link.verdict == BoundVerdict::Bounded);
    CHECK(rep.link.max_ratio > 0.0);

    Family consts = {{"constant:2", AnalyticFunction::constant(2.0)},
                     {"constant:i", AnalyticFunction::constant(complex(0, 1))}};
    const auto triv = run_theorem1(consts, 2.0, 2.0, nu);
    CHECK(triv.link.verdict == BoundVerdict::Bounded);
}

TEST_CASE("theorem 1 necessity: ratio grows for alpha = q-1+0.2") {
    const auto nu = RadialWeight::power(1.2);
    Family fam;
    for (int n = 4; n <= 256; n *= 2)
        fam.push_back({"monomial:" + std::to_string(n), AnalyticFunction::monomial(n)});
    const auto rep = run_theorem1(fam, 2.0, 2.0, nu);
    REQUIRE(rep.link.members.size() == fam.size());
    for (std::size_t i = 0; i + 1 < rep.link.members.size(); ++i) {
        CHECK(rep.link.members[i + 1].ratio > rep.link.members[i].ratio);
    }
    CHECK(rep.link.verdict != BoundVerdict::Bounded);
}

TEST_CASE("theorem 2 chain on a small family") {
    const auto nu = RadialWeight::power(0.0);
    const auto cfg = unit_cfg();
    Family fam = {{"monomial:1", AnalyticFunction::monomial(1)},
                  {"monomial:4", AnalyticFunction::monomial(4)},
                  {"blaschke:half", AnalyticFunction::blaschke({complex(0.5, 0)})},
                  {"outer:cos2", corpus::outer_cos(2.0, 11)}};
    const auto rep = run_theorem2(fam, 2.0, 2.0, nu, cfg);
    CHECK(rep.min_rel_margin >= -0.05);
    CHECK(rep.middle_vs_omega.verdict == BoundVerdict::Bounded);
    CHECK(rep.omega_vs_besov.verdict == BoundVerdict::Bounded);
    CHECK(rep.excluded.empty());
}

TEST_CASE("theorem 2 rejects a weight that clearly fails the hypotheses") {
    const auto nu = RadialWeight::power(1.5);  // not in D_2
    Family fam = {{"monomial:1", AnalyticFunction::monomial(1)}};
    CHECK_THROWS_AS(run_theorem2(fam, 2.0, 2.0, nu, unit_cfg()), validation_error);
}

TEST_CASE("theorem 3: closed-form member and bounded links") {
    const auto nu = RadialWeight::power(0.0);
    const auto cfg = unit_cfg();
    Family fam = {{"blaschke:origin", AnalyticFunction::blaschke({complex(0, 0)})},
                  {"monomial:2", AnalyticFunction::monomial(2)},
                  {"outer:cos2", corpus::outer_cos(2.0, 11)}};
    const auto rep = run_theorem3(fam, 2.0, 2.0, nu, cfg);
    REQUIRE(rep.lower.members.size() == 3);
    // B(z) = z: F1 + F2 = 2 pi, besov^q = 1, hardy^q = 1
    CHECK(rep.lower.members[0].right == Catch::Approx(2.0 * oracle::pi).epsilon(0.02));
    CHECK(rep.lower.members[0].ratio == Catch::Approx(1.0 / (2.0 * oracle::pi)).epsilon(0.03));
    CHECK(rep.upper.members[0].ratio == Catch::Approx(oracle::pi).epsilon(0.03));
    CHECK(rep.lower.verdict == BoundVerdict::Bounded);
    CHECK(rep.upper.verdict == BoundVerdict::Bounded);
}

TEST_CASE("factorization: closed-form splits") {
    const auto nu = RadialWeight::power(0.0);
    const auto cfg = unit_cfg();
    // f = 2z
    const auto f = AnalyticFunction::product(
        {AnalyticFunction::blaschke({complex(0, 0)}),
         AnalyticFunction::outer(make_real_grid(11, [](double) { return 2.0; }))});
    const auto res = factorize_quotient(f, 2.0, 2.0, nu, cfg);
    CHECK(res.reconstruction_error <= 1e-10);
    CHECK(std::abs(res.f1.evaluate(complex(0.3, 0)) - complex(0.3, 0)) < 1e-10);
    CHECK(std::abs(res.f2.evaluate(complex(0.3, 0)) - complex(0.5, 0)) < 1e-10);

    // phi <= 1 everywhere: f2 is constant one
    const auto g = AnalyticFunction::product(
        {AnalyticFunction::blaschke({complex(0.4, 0.1)}),
         AnalyticFunction::outer(make_real_grid(11, [](double) { return 0.5; }))});
    const auto res2 = factorize_quotient(g, 2.0, 2.0, nu, cfg);
    CHECK(res2.max_f2_modulus == Catch::Approx(1.0).epsilon(1e-10));
    CHECK(res2.min_f2_modulus == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("factorization: generic product with bounds and finite norms") {
    const auto nu = RadialWeight::power(0.0);
    const auto cfg = unit_cfg();
    const auto f = AnalyticFunction::product(
        {AnalyticFunction::blaschke({complex(0.5, 0)}), corpus::outer_expcos(11)});
    const auto res = factorize_quotient(f, 2.0, 2.0, nu, cfg);
    CHECK(res.reconstruction_error <= 1e-8);
    CHECK(res.max_f1_modulus <= 1.0 + 1e-8);
    CHECK(res.max_f2_modulus <= 1.0 + 1e-8);
    CHECK(res.min_f2_modulus > 0.0);
    CHECK_FALSE(res.besov_f1.divergent);
    CHECK_FALSE(res.besov_f2.divergent);
    CHECK(res.proposition_ratio > 0.0);
    CHECK(res.proposition_ratio < 50.0);
}

TEST_CASE("factorization rejects functions not in factored form") {
    const auto nu = RadialWeight::power(0.0);
    CHECK_THROWS_AS(
        factorize_quotient(AnalyticFunction::polynomial({complex(1, 0), complex(2, 0)}), 2.0, 2.0,
                           nu, unit_cfg()),
        validation_error);
}

TEST_CASE("fI criterion: closed form and trivial cases") {
    const auto cfg = unit_cfg();
    const auto one = AnalyticFunction::constant(1.0);
    const auto bz = AnalyticFunction::blaschke({complex(0, 0)});
    const auto rep = run_fisp(one, bz, 2.0, 2.0, RadialWeight::power(0.5), cfg);
    CHECK(rep.multiplier.value == Catch::Approx(2.0 * oracle::pi / 1.5).epsilon(0.02));
    CHECK(rep.finite_fI);
    CHECK(rep.finite_f);
    CHECK(rep.finite_multiplier);
    CHECK(rep.consistent);

    const auto zero = run_fisp(AnalyticFunction::constant(0.0), bz, 2.0, 2.0,
                               RadialWeight::power(0.0), cfg);
    CHECK(zero.besov_fI.value == 0.0);
    CHECK(zero.multiplier.value == 0.0);
    CHECK(zero.consistent);
}

TEST_CASE("fI criterion: bracket is refinement stable for a Blaschke multiplier") {
    const auto cfg = unit_cfg();
    const auto nu = RadialWeight::power(0.0);
    const auto one = AnalyticFunction::constant(1.0);
    const auto B = AnalyticFunction::blaschke(corpus::ring_zeros(8, 0.7));
    const auto a = run_fisp(one, B, 2.0, 2.0, nu, cfg);
    const auto b = run_fisp(one, B, 2.0, 2.0, nu, cfg.refined());
    CHECK(a.bracket > 0.0);
    CHECK(std::abs(a.bracket - b.bracket) / a.bracket < 0.2);
}

TEST_CASE("zero set sums: closed forms and additivity") {
    const auto one = AnalyticFunction::constant(1.0);
    const auto s1 = zero_set_sum({complex(0, 0)}, one, 2.0, RadialWeight::power(0.0));
    CHECK(s1.weighted_sum == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(s1.power_form_valid);
    CHECK(s1.power_sum == Catch::Approx(1.0).epsilon(1e-12));

    CHECK(zero_set_sum({}, one, 2.0, RadialWeight::power(0.0)).weighted_sum == 0.0);

    std::vector<complex> zs;
    for (int k = 1; k <= 10; ++k) zs.push_back(complex(1.0 - std::pow(2.0, -k), 0));
    const auto s = zero_set_sum(zs, one, 2.0, RadialWeight::power(0.5));
    double want = 0.0;
    for (int k = 1; k <= 10; ++k) want += std::pow(2.0, -0.5 * k);
    CHECK(s.power_sum == Catch::Approx(want).epsilon(1e-12));
    // for the power weight: tail(r)/(1-r)^{p-1} = (1-r)^{alpha+2-p}/(alpha+1)
    CHECK(s.weighted_sum == Catch::Approx(want / 1.5).epsilon(1e-12));

    const auto a = zero_set_sum({zs[0], zs[1]}, one, 2.0, RadialWeight::power(0.5));
    const auto b = zero_set_sum({zs[2]}, one, 2.0, RadialWeight::power(0.5));
    const auto ab = zero_set_sum({zs[0], zs[1], zs[2]}, one, 2.0, RadialWeight::power(0.5));
    CHECK(ab.weighted_sum == Catch::Approx(a.weighted_sum + b.weighted_sum).epsilon(1e-12));
}

TEST_CASE("bfisp: conventions, consistency, and hypothesis validation") {
    const auto one = AnalyticFunction::constant(1.0);
    const auto r1 = run_bfisp({complex(0, 0)}, one, 2.0, 0.5, unit_cfg());
    CHECK(r1.zero_sum == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(r1.consistent);
    CHECK_FALSE(r1.separation_warning);

    const auto r0 = run_bfisp({}, one, 2.0, 0.5, unit_cfg());
    CHECK(r0.zero_sum == 0.0);
    CHECK(r0.consistent);

    std::vector<complex> zs;
    for (int k = 1; k <= 20; ++k) zs.push_back(complex(1.0 - std::pow(2.0, -k), 0));
    const auto r20 = run_bfisp(zs, one, 2.0, 0.5, unit_cfg());
    CHECK(r20.consistent);
    CHECK(r20.geometry.uniform_separation > 1e-3);

    CHECK_THROWS_AS(run_bfisp({complex(0, 0)}, one, 1.0, 0.5, unit_cfg()), validation_error);
    CHECK_THROWS_AS(run_bfisp({complex(0, 0)}, one, 2.0, 1.5, unit_cfg()), validation_error);
}

TEST_CASE("lemma F: equality for constants and margin for smooth outers") {
    const auto cfg = unit_cfg();
    const auto oc = AnalyticFunction::outer(make_real_grid(11, [](double) { return 3.0; }));
    const auto rc = lemma_f_check(oc, {complex(0, 0), complex(0.5, 0.2)}, cfg);
    CHECK(rc.max_violation <= 1e-9);

    std::mt19937 gen(7u);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    std::vector<complex> pts;
    for (int i = 0; i < 100; ++i)
        pts.push_back(std::polar(0.9 * std::sqrt(ur(gen)), two_pi * ur(gen)));
    const auto r2 = lemma_f_check(corpus::outer_cos(2.0, 11), pts, cfg);
    CHECK(r2.max_violation <= 1e-6);
    const auto r3 = lemma_f_check(corpus::outer_expcos(11), {complex(0, 0)}, cfg);
    CHECK(r3.max_violation <= 1e-6);

    CHECK_THROWS_AS(lemma_f_check(AnalyticFunction::monomial(2), pts, cfg), validation_error);
}

TEST_CASE("corpus: members are well formed and lookup works") {
    const auto all = corpus::all_members();
    CHECK(all.size() >= 25);
    for (const auto& [name, fn] : all) {
        CHECK_NOTHROW(fn.evaluate(complex(0.3, 0.2)));
    }
    CHECK_NOTHROW(corpus::by_name("monomial:4"));
    CHECK_THROWS_AS(corpus::by_name("nope"), validation_error);
    CHECK(corpus::inner_family().size() == 10);
    CHECK(corpus::blaschke_family().size() == 10);
    CHECK(corpus::factorization_family().size() == 10);
    for (const auto& [name, fn] : corpus::inner_family()) CHECK(fn.is_inner());
}
