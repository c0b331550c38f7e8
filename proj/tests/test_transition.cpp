#include <doctest.h>

#include <cmath>

#include "asep/errors.hpp"
#include "asep/transition.hpp"
#include "test_util.hpp"

using namespace asep;
using asep::testing::word;

namespace {

ParticleState st(std::vector<long> x, const char* species) { return {std::move(x), word(species)}; }

QuadratureSpec fixed(double t, double p, int nodes, double radius = 0.0) {
    QuadratureSpec q;
    q.t = t;
    q.p = p;
    q.nodes = nodes;
    q.radius = radius;
    q.adaptive = false;
    return q;
}

}  // namespace

TEST_CASE("epsilon") {
    CHECK(std::abs(epsilon(1.0, 0.3)) < 1e-15);
    CHECK(std::abs(epsilon(-1.0, 0.5) - cplx(-2.0)) < 1e-15);
    CHECK(std::abs(epsilon(0.5, 0.7) - cplx(0.55)) < 1e-14);
    CHECK_THROWS_AS(epsilon(0.0, 0.5), ZeroArgument);
}

TEST_CASE("radius rule") {
    CHECK(default_radius(0.7) == doctest::Approx(0.5));
    // at p = 1/2 the pole-free radius is sqrt(2) - 1 and the cap applies
    CHECK(critical_radius(0.5) == doctest::Approx(std::sqrt(2.0) - 1.0));
    CHECK(default_radius(0.5) == doctest::Approx(0.85 * (std::sqrt(2.0) - 1.0)));
    // small p: the p/q branch, then the cap below the pole-free radius
    CHECK(default_radius(0.2) < 0.85 * critical_radius(0.2) + 1e-15);
    for (double p : {0.05, 0.2, 0.5, 0.7, 0.95}) {
        const double r = critical_radius(p);
        CHECK(r * (1.0 + (1.0 - p) * r) == doctest::Approx(p));
        CHECK(default_radius(p) < r);
        CHECK_NOTHROW(check_radius(default_radius(p), p, 3));
        CHECK_THROWS_AS(check_radius(r * 1.01, p, 3), DenominatorVanishes);
    }
    CHECK_THROWS_AS(check_radius(-0.1, 0.5, 2), InvalidArgument);
}

TEST_CASE("state validation") {
    CHECK_THROWS_AS(st({0, 0}, "21").validate(), InvalidArgument);
    CHECK_THROWS_AS(st({1, 0}, "21").validate(), InvalidArgument);
    CHECK_THROWS_AS(st({0, 1, 2}, "21").validate(), InvalidArgument);
    CHECK_NOTHROW(st({-3, 4}, "12").validate());
    CHECK_THROWS_AS(transition_probability(st({0, 1}, "21"), st({0, 1}, "21"), fixed(1.0, 0.5, 8)), InvalidArgument);
    CHECK(parse_path("oracle") == AmplitudePath::Oracle);
    CHECK_THROWS_AS(parse_path("exact"), InvalidArgument);
}

TEST_CASE("time zero gives the initial state") {
    QuadratureSpec q;
    q.t = 0.0;
    q.p = 0.7;
    const ParticleState init = st({0, 1, 2}, "221");
    CHECK(transition_probability(init, init, q).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(transition_probability(init, st({0, 1, 3}, "221"), q).value) < 1e-8);
    CHECK(std::abs(transition_probability(init, st({0, 1, 2}, "212"), q).value) < 1e-8);
    // a different multiset can never be reached
    CHECK(transition_probability(init, st({0, 1, 2}, "211"), q).value == 0.0);
}

TEST_CASE("one particle against the series") {
    for (double t : {0.3, 1.0, 2.0}) {
        for (double p : {0.3, 0.7}) {
            QuadratureSpec q;
            q.t = t;
            q.p = p;
            for (long d = -5; d <= 5; ++d) {
                const ProbabilityResult r = transition_probability(st({0}, "1"), st({d}, "1"), q);
                CHECK(std::abs(r.value - single_particle_series(d, t, p)) < 1e-10);
                CHECK(std::abs(r.imag) < 1e-8);
            }
        }
    }
    // the series itself is a probability distribution
    double total = 0.0;
    for (long d = -40; d <= 40; ++d) total += single_particle_series(d, 1.5, 0.6);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two particles: normalization and bounds") {
    QuadratureSpec q;
    q.t = 1.0;
    q.p = 0.7;
    const Distribution d = transition_distribution(st({0, 1}, "21"), q, 12);
    CHECK(std::abs(d.total() - 1.0) < 1e-4);
    CHECK(d.max_imag < 1e-8);
    for (const auto& e : d.entries) {
        CHECK(e.value > -1e-6);
        CHECK(e.value < 1.0 + 1e-6);
    }
    // every state in the window, both species orders
    CHECK(d.find(st({-12, 13}, "12")) != nullptr);
    CHECK(d.find(st({-13, 0}, "12")) == nullptr);
    // the single-state path agrees with the distribution
    const ParticleState x = st({0, 2}, "12");
    CHECK(std::abs(transition_probability(st({0, 1}, "21"), x, q).value - d.find(x)->value) < 1e-8);
}

TEST_CASE("radius invariance") {
    const ParticleState init = st({0, 1}, "21");
    for (const auto& x : {st({0, 1}, "21"), st({1, 2}, "12"), st({0, 3}, "21"), st({-1, 1}, "12")}) {
        const auto a = transition_probability(init, x, fixed(0.8, 0.7, 256, 0.5));
        const auto b = transition_probability(init, x, fixed(0.8, 0.7, 256, 0.25));
        CHECK(std::abs(a.value - b.value) < 1e-8);
    }
    const ParticleState init3 = st({0, 1, 2}, "221");
    const auto a = transition_probability(init3, st({0, 2, 3}, "212"), fixed(0.5, 0.7, 128, 0.5));
    const auto b = transition_probability(init3, st({0, 2, 3}, "212"), fixed(0.5, 0.7, 128, 0.25));
    CHECK(std::abs(a.value - b.value) < 1e-8);
}

TEST_CASE("quadrature change shrinks as nodes double") {
    const ParticleState init = st({0, 1}, "21");
    const ParticleState x = st({-1, 2}, "12");
    double prev_change = 1.0;
    double prev = transition_probability(init, x, fixed(1.0, 0.7, 16)).value;
    for (int m = 32; m <= 128; m *= 2) {
        const double v = transition_probability(init, x, fixed(1.0, 0.7, m)).value;
        const double change = std::abs(v - prev);
        CHECK(change < prev_change);
        prev_change = change;
        prev = v;
    }
    CHECK(prev_change < 1e-8);
}

TEST_CASE("factorized and oracle paths agree") {
    for (const char* nu : {"221", "122", "211", "112"}) {
        const ParticleState init{{0, 1, 3}, word(nu)};
        QuadratureSpec fq = fixed(0.5, 0.7, 32);
        QuadratureSpec oq = fq;
        fq.path = AmplitudePath::Factorized;
        oq.path = AmplitudePath::Oracle;
        const Distribution a = transition_distribution(init, fq, 2);
        const Distribution b = transition_distribution(init, oq, 2);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i) CHECK(std::abs(a.entries[i].value - b.entries[i].value) < 1e-9);
        CHECK(a.info.path == AmplitudePath::Factorized);
        CHECK(b.info.path == AmplitudePath::Oracle);
    }
    // N = 4, a handful of states at a coarse fixed grid
    const ParticleState init = st({0, 1, 2, 3}, "2221");
    for (const auto& x : {st({0, 1, 2, 3}, "2221"), st({0, 1, 2, 4}, "2212"), st({0, 1, 3, 4}, "2122"), st({-1, 1, 2, 3}, "1222")}) {
        QuadratureSpec fq = fixed(0.3, 0.6, 16);
        QuadratureSpec oq = fq;
        fq.path = AmplitudePath::Factorized;
        oq.path = AmplitudePath::Oracle;
        CHECK(std::abs(transition_probability(init, x, fq).value - transition_probability(init, x, oq).value) < 1e-9);
    }
    // orders without a factorized form go through the oracle
    QuadratureSpec q = fixed(0.3, 0.6, 16);
    CHECK_THROWS_AS(transition_probability(st({0, 1, 2}, "121"), st({0, 1, 2}, "121"),
                                           [&] { auto f = q; f.path = AmplitudePath::Factorized; return f; }()),
                    UnsupportedOrder);
    const auto r = transition_probability(st({0, 1, 2}, "121"), st({0, 1, 2}, "121"), q);
    CHECK(r.info.path == AmplitudePath::Oracle);
}

TEST_CASE("limits and failures") {
    QuadratureSpec q = fixed(1.0, 0.7, 8);
    CHECK_THROWS_AS(transition_probability(st({0, 1}, "21"), st({0, 1}, "21"), q), InvalidArgument);  // nodes < 16

    QuadratureSpec tight;
    tight.t = 2.0;
    tight.p = 0.7;
    tight.tolerance = 1e-15;
    tight.max_nodes = 64;
    CHECK_THROWS_AS(transition_probability(st({0, 1}, "21"), st({-3, 4}, "12"), tight), NonConvergence);

    QuadratureSpec big;
    big.t = 1.0;
    big.p = 0.7;
    big.nodes = 1024;
    CHECK_THROWS_AS(transition_probability(st({0, 1, 2, 3}, "2221"), st({0, 1, 2, 3}, "2221"), big), SizeLimitExceeded);

    QuadratureSpec badp;
    badp.p = 1.0;
    CHECK_THROWS_AS(transition_probability(st({0}, "1"), st({0}, "1"), badp), InvalidArgument);
    QuadratureSpec badr;
    badr.p = 0.7;
    badr.radius = 0.9;
    CHECK_THROWS_AS(transition_probability(st({0, 1}, "21"), st({0, 1}, "21"), badr), DenominatorVanishes);
}
