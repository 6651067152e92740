#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "besov/analytic_function.hpp"
#include "besov/disc_geometry.hpp"
#include "oracle_helpers.hpp"

using namespace besov;
using oracle::derivative_fd;
using oracle::random_disc_point;

namespace {

BoundaryGrid grid_of(int m, const std::function<double(double)>& f) {
    return make_real_grid(m, f);
}

std::vector<AnalyticFunction> variant_zoo() {
    return {
        AnalyticFunction::monomial(3),
        AnalyticFunction::polynomial({complex(1, 0), complex(0, 2), complex(-0.5, 0.25)}),
        AnalyticFunction::lacunary({complex(1, 0), complex(0.5, 0), complex(0.25, 0)}, {1, 4, 16}),
        AnalyticFunction::blaschke({complex(0.5, 0), complex(-0.3, 0.4), complex(0, 0)}),
        AnalyticFunction::singular_inner({{1.0, 0.7}, {4.0, 0.3}}),
        AnalyticFunction::outer(make_real_grid(12, [](double t) { return std::exp(std::cos(t)); })),
        AnalyticFunction::product({AnalyticFunction::blaschke({complex(0.5, 0)}),
                                   AnalyticFunction::outer(make_real_grid(
                                       12, [](double t) { return 2.0 + std::cos(t); }))}),
        AnalyticFunction::quotient(
            AnalyticFunction::constant(1.0),
            AnalyticFunction::outer(make_real_grid(12, [](double t) { return 2.0 + std::cos(t); }))),
    };
}

}  // namespace

TEST_CASE("evaluate: pinned values") {
    CHECK(std::abs(AnalyticFunction::blaschke({complex(0, 0)}).evaluate(0.5) - complex(0.5, 0)) <
          1e-14);
    const auto o2 = AnalyticFunction::outer(grid_of(10, [](double) { return 2.0; }));
    const complex v = o2.evaluate(complex(0.3, 0.1));
    CHECK(std::abs(v - complex(2.0, 0.0)) < 1e-12);
    const auto s = AnalyticFunction::singular_inner({{0.0, 1.0}});
    CHECK(std::abs(s.evaluate(complex(0, 0)) - std::exp(-1.0)) < 1e-14);
    const auto m3 = AnalyticFunction::monomial(3);
    CHECK(std::abs(m3.evaluate(complex(0, 0.5)) - complex(0, -0.125)) < 1e-15);
}

TEST_CASE("derivative: pinned values") {
    CHECK(std::abs(AnalyticFunction::monomial(3).derivative(0.5) - complex(0.75, 0)) < 1e-14);
    CHECK(std::abs(AnalyticFunction::blaschke({complex(0, 0)}).derivative(0.2) - complex(1, 0)) <
          1e-14);
    const auto o = AnalyticFunction::outer(grid_of(12, [](double t) { return std::exp(std::cos(t)); }));
    const complex fd = derivative_fd([&](complex z) { return o.evaluate(z); }, complex(0.4, 0));
    CHECK(std::abs(o.derivative(complex(0.4, 0)) - fd) < 1e-5 * (1.0 + std::abs(fd)));
}

TEST_CASE("derivative matches central differences at random interior points") {
    for (const auto& f : variant_zoo()) {
        INFO(f.describe());
        for (int i = 0; i < 200; ++i) {
            const complex z = random_disc_point(0.9);
            const complex d = f.derivative(z);
            const complex fd = derivative_fd([&](complex w) { return f.evaluate(w); }, z);
            CHECK(std::abs(d - fd) <= 1e-4 * (1.0 + std::abs(d)));
        }
    }
}

TEST_CASE("derivative at a Blaschke zero stays finite and correct") {
    const auto b = AnalyticFunction::blaschke({complex(0.5, 0), complex(-0.2, 0.1)});
    const complex z(0.5, 0);  // exactly a zero
    const complex d = b.derivative(z);
    const complex fd = derivative_fd([&](complex w) { return b.evaluate(w); }, z);
    CHECK(std::abs(d - fd) < 1e-6 * (1.0 + std::abs(d)));
}

TEST_CASE("boundary modulus: inner variants are exactly one") {
    const auto b = AnalyticFunction::blaschke({complex(0.5, 0)});
    for (double v : b.boundary_modulus(10).values) CHECK(v == 1.0);
    const auto m5 = AnalyticFunction::monomial(5);
    for (double v : m5.boundary_modulus(8).values) CHECK(v == 1.0);
    const auto s = AnalyticFunction::singular_inner({{1.0, 1.0}});
    for (double v : s.boundary_modulus(9).values) CHECK(v == 1.0);
}

TEST_CASE("boundary modulus: products multiply") {
    const auto f = AnalyticFunction::product(
        {AnalyticFunction::outer(grid_of(10, [](double) { return 2.0; })),
         AnalyticFunction::blaschke({complex(0.5, 0)})});
    for (double v : f.boundary_modulus(10).values) CHECK(v == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("inner variants are bounded by one in the disc") {
    const auto inners = {AnalyticFunction::blaschke({complex(0.5, 0), complex(-0.3, 0.4)}),
                         AnalyticFunction::singular_inner({{2.0, 0.5}}),
                         AnalyticFunction::monomial(7)};
    for (const auto& f : inners) {
        for (int i = 0; i < 300; ++i) {
            const complex z = random_disc_point(0.999);
            if (std::abs(z) > 1 - 2e-6) continue;
            CHECK(std::abs(f.evaluate(z)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("Schwarz-Pick bound for inner functions") {
    const auto inners = {AnalyticFunction::blaschke({complex(0.5, 0), complex(-0.3, 0.4),
                                                     complex(0.1, -0.6)}),
                         AnalyticFunction::singular_inner({{1.0, 0.8}})};
    for (const auto& f : inners) {
        for (int i = 0; i < 500; ++i) {
            const complex z = random_disc_point(0.95);
            const double lhs = std::abs(f.derivative(z)) * (1.0 - std::norm(z));
            const double rhs = 1.0 - std::norm(f.evaluate(z));
            CHECK(lhs <= rhs + 1e-9);
        }
    }
}

TEST_CASE("product evaluation equals product of evaluations") {
    const auto f = AnalyticFunction::blaschke({complex(0.4, 0.2)});
    const auto g = AnalyticFunction::outer(grid_of(10, [](double t) { return 2.0 + std::sin(t); }));
    const auto fg = AnalyticFunction::product({f, g});
    for (int i = 0; i < 50; ++i) {
        const complex z = random_disc_point(0.9);
        CHECK(std::abs(fg.evaluate(z) - f.evaluate(z) * g.evaluate(z)) < 1e-13);
    }
}

TEST_CASE("values_on_circle agrees with pointwise evaluation") {
    for (const auto& f : variant_zoo()) {
        INFO(f.describe());
        const std::size_t M = 256;
        const auto vals = f.values_on_circle(0.7, M);
        for (std::size_t j = 0; j < M; j += 17) {
            const complex z = std::polar(0.7, two_pi * static_cast<double>(j) / M);
            CHECK(std::abs(vals[j] - f.evaluate(z)) < 1e-10);
        }
        const auto ders = f.derivative_on_circle(0.7, M);
        for (std::size_t j = 0; j < M; j += 31) {
            const complex z = std::polar(0.7, two_pi * static_cast<double>(j) / M);
            CHECK(std::abs(ders[j] - f.derivative(z)) < 1e-9);
        }
    }
}

TEST_CASE("boundary values are consistent with boundary modulus") {
    const auto f = AnalyticFunction::outer(grid_of(10, [](double t) { return 2.0 + std::cos(t); }));
    const auto bv = f.boundary_values(10);
    const auto bm = f.boundary_modulus(10);
    for (std::size_t j = 0; j < bv.size(); ++j)
        CHECK(std::abs(bv.values[j]) == Catch::Approx(bm.values[j]).epsilon(1e-10));
}

TEST_CASE("quotient evaluation guards against singularities") {
    const auto q = AnalyticFunction::quotient(AnalyticFunction::constant(1.0),
                                              AnalyticFunction::blaschke({complex(0.5, 0)}));
    CHECK_THROWS_AS(q.evaluate(complex(0.5, 0)), resolution_error);
    CHECK(std::abs(q.evaluate(complex(0, 0)) - complex(2.0, 0)) < 1e-12);  // 1/B(0) = 1/0.5
}

TEST_CASE("outer evaluation rejects points too close to the boundary") {
    const auto o = AnalyticFunction::outer(grid_of(10, [](double) { return 2.0; }));
    CHECK_THROWS_AS(o.evaluate(complex(1.0 - 1e-8, 0)), resolution_error);
    CHECK_THROWS_AS(o.evaluate(complex(1.5, 0)), validation_error);
}

TEST_CASE("split_min_max: constant moduli") {
    const auto lo = split_min_max(grid_of(10, [](double) { return 0.5; }));
    CHECK(std::abs(lo.o_min.evaluate(complex(0.2, 0.1)) - complex(0.5, 0)) < 1e-12);
    CHECK(std::abs(lo.o_max.evaluate(complex(0.2, 0.1)) - complex(1.0, 0)) < 1e-12);
    const auto hi = split_min_max(grid_of(10, [](double) { return 2.0; }));
    CHECK(std::abs(hi.o_min.evaluate(complex(0.5, -0.3)) - complex(1.0, 0)) < 1e-12);
    CHECK(std::abs(hi.o_max.evaluate(complex(0.5, -0.3)) - complex(2.0, 0)) < 1e-12);
}

TEST_CASE("split_min_max: product identity and one-sided bounds") {
    const auto phi = grid_of(12, [](double t) { return std::exp(std::cos(t)); });
    const auto split = split_min_max(phi);
    const auto full = AnalyticFunction::outer(phi);
    for (int i = 0; i < 100; ++i) {
        const complex z = random_disc_point(0.9);
        const complex prod = split.o_min.evaluate(z) * split.o_max.evaluate(z);
        CHECK(std::abs(prod - full.evaluate(z)) < 1e-8);
        CHECK(std::abs(split.o_min.evaluate(z)) <= 1.0 + 1e-8);
        CHECK(std::abs(split.o_max.evaluate(z)) >= 1.0 - 1e-8);
    }
}

TEST_CASE("split_min_max flags clamping") {
    auto phi = grid_of(10, [](double t) { return t < 1.0 ? 0.0 : 1.5; });
    const auto split = split_min_max(phi);
    CHECK(split.clamped);
}

TEST_CASE("pseudo-hyperbolic distance") {
    CHECK(pseudo_hyperbolic(complex(0, 0), complex(0.3, 0.4)) == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(pseudo_hyperbolic(complex(0.5, 0), complex(0.5, 0)) == 0.0);
    CHECK(pseudo_hyperbolic(complex(0.5, 0), complex(-0.5, 0)) ==
          Catch::Approx(0.8).epsilon(1e-14));
    // symmetry
    const complex a(0.3, -0.2), b(-0.1, 0.7);
    CHECK(pseudo_hyperbolic(a, b) == Catch::Approx(pseudo_hyperbolic(b, a)).epsilon(1e-14));
}

TEST_CASE("sequence geometry: conventions and oracle") {
    const auto single = sequence_geometry({complex(0, 0)});
    CHECK(single.blaschke_sum == 1.0);
    CHECK(std::isnan(single.min_separation));
    CHECK(single.uniform_separation == 1.0);

    const auto pair = sequence_geometry({complex(0, 0), complex(0.5, 0)});
    CHECK(pair.min_separation == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(pair.blaschke_sum == Catch::Approx(1.5).epsilon(1e-14));

    std::vector<complex> expo;
    for (int k = 1; k <= 10; ++k) expo.push_back(complex(1.0 - std::pow(2.0, -k), 0));
    const auto geo = sequence_geometry(expo);
    CHECK(geo.uniform_separation > 0.0);
    // brute-force product oracle for the first point
    double prod = 1.0;
    for (int k = 2; k <= 10; ++k)
        prod *= pseudo_hyperbolic(expo[static_cast<std::size_t>(k - 1)], expo[0]);
    CHECK(geo.uniform_separation <= prod + 1e-12);
}

TEST_CASE("is_inner is structural") {
    CHECK(AnalyticFunction::monomial(2).is_inner());
    CHECK(AnalyticFunction::blaschke({complex(0.5, 0)}).is_inner());
    CHECK(AnalyticFunction::product({AnalyticFunction::monomial(1),
                                     AnalyticFunction::singular_inner({{1.0, 0.5}})})
              .is_inner());
    CHECK_FALSE(AnalyticFunction::constant(2.0).is_inner());
    CHECK_FALSE(AnalyticFunction::outer(grid_of(10, [](double) { return 1.0; })).is_inner());
}
