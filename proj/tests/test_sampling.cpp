#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "phasekit/divergences.hpp"
#include "phasekit/sampling.hpp"

using namespace phasekit;

TEST_CASE("sampling is deterministic for a fixed seed") {
    const WrappedNormal wn(0.8);
    const auto a = sample(wn, 42, 1000);
    const auto b = sample(wn, 42, 1000);
    CHECK(a == b);
    const auto c = sample(wn, 43, 1000);
    CHECK(a != c);
    for (double x : a) {
        CHECK(x >= -kPi);
        CHECK(x < kPi);
    }
}

TEST_CASE("empirical circular moments match quadrature") {
    const VonMises vm(1.0);
    const auto draws = sample(vm, 7, 1000000);
    double mean_cos = 0.0, mean_sin = 0.0;
    for (double x : draws) {
        mean_cos += std::cos(x);
        mean_sin += std::sin(x);
    }
    mean_cos /= draws.size();
    mean_sin /= draws.size();
    const double expected = oracles::trapezoid(
        [&](double x) { return std::cos(x) * vm.pdf(x); }, 1 << 16);
    CHECK(std::abs(expected - 0.446398) < 1e-4);  // I1(1)/I0(1)
    CHECK(std::abs(mean_cos - expected) < 0.003);
    CHECK(std::abs(mean_sin) < 0.003);
}

TEST_CASE("mean of sin vanishes for every family") {
    for (auto fam : {Family::wrapped_normal, Family::von_mises, Family::wrapped_cauchy}) {
        const auto d = make_density(fam, 1.0);
        const auto draws = sample(*d, 99, 1000000);
        double mean_sin = 0.0;
        for (double x : draws) mean_sin += std::sin(x);
        mean_sin /= draws.size();
        CHECK(std::abs(mean_sin) < 0.003);
    }
}

TEST_CASE("Kolmogorov-Smirnov against the tabulated CDF") {
    for (auto fam : {Family::wrapped_normal, Family::von_mises, Family::wrapped_cauchy}) {
        for (double p : {0.1, 1.0, 10.0}) {
            const auto d = make_density(fam, p);
            const auto draws = sample(*d, 1234, 100000);
            CHECK(oracles::ks_statistic(draws, *d) <= 0.01);
        }
    }
}

TEST_CASE("normal variates have the right first moments") {
    Rng rng(5);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
}
