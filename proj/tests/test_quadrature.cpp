#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "phasekit/density.hpp"
#include "phasekit/optimize.hpp"
#include "phasekit/quadrature.hpp"

using namespace phasekit;

TEST_CASE("grid invariants: weights sum to 2 pi, nodes ordered and in range") {
    for (int panels : {1, 8, 64, 129}) {
        const auto g = QuadratureGrid::periodic(panels);
        double total = 0.0;
        for (double w : g.weights()) {
            CHECK(w > 0.0);
            total += w;
        }
        CHECK(total == doctest::Approx(kTwoPi).epsilon(1e-13));
        const auto& x = g.nodes();
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(x[i] >= -kPi);
            CHECK(x[i] <= kPi);
            if (i > 0) CHECK(x[i] > x[i - 1]);
        }
    }
}

TEST_CASE("constant and odd-harmonic integrands") {
    const auto g = QuadratureGrid::periodic(8);
    CHECK(integrate_periodic([](double) { return 1.0 / kTwoPi; }, g) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(integrate_periodic([](double x) { return std::cos(x); }, g)) < 1e-10);
}

TEST_CASE("wrapped normal normalizes against the 10x finer grid") {
    const WrappedNormal wn(1.0);
    const auto g = default_grid();
    const double val = integrate_periodic([&](double x) { return wn.pdf(x); }, g);
    const double fine = integrate_periodic([&](double x) { return wn.pdf(x); },
                                           QuadratureGrid::periodic(640));
    CHECK(val == doctest::Approx(fine).epsilon(1e-12));
    CHECK(val == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("linearity on random trig polynomials") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const auto g = default_grid();
    for (int rep = 0; rep < 20; ++rep) {
        const double c1 = coef(gen), c2 = coef(gen), c3 = coef(gen);
        const double a = coef(gen), b = coef(gen);
        auto f = [&](double x) { return c1 + c2 * std::cos(3 * x); };
        auto h = [&](double x) { return c3 * std::sin(2 * x) + x * x; };
        const double lhs = integrate_periodic([&](double x) { return a * f(x) + b * h(x); }, g);
        const double rhs = a * integrate_periodic(f, g) + b * integrate_periodic(h, g);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("panel doubling stays within the reported error estimate") {
    const WrappedNormal wn(0.5);
    const VonMises vm(2.0);
    const auto g = default_grid();
    auto f = [&](double x) { return wn.pdf(x) * std::log(wn.pdf(x) / vm.pdf(x)); };
    const auto est = integrate_with_error(f, g);
    const double refined = integrate_periodic(f, g.refined());
    CHECK(std::abs(est.value - refined) <= est.error + 1e-14);
}

TEST_CASE("non-finite integrand reports the offending node") {
    const auto g = QuadratureGrid::periodic(4);
    const double bad_node = g.nodes()[5];
    auto f = [&](double x) {
        return x == bad_node ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    };
    CHECK_THROWS_WITH_AS(integrate_periodic(f, g),
                         doctest::Contains(std::to_string(bad_node).c_str()),
                         std::runtime_error);
}

TEST_CASE("aligned grids place panel edges on the breakpoints") {
    const std::vector<double> brk{-1.0, 0.25, 2.0};
    const auto g = QuadratureGrid::aligned(brk, 64);
    // a piecewise-constant function with jumps exactly at the breakpoints
    auto f = [&](double x) {
        if (x < -1.0) return 0.3;
        if (x < 0.25) return 1.7;
        if (x < 2.0) return 0.9;
        return 2.1;
    };
    double expected = 0.3 * (-1.0 + kPi) + 1.7 * 1.25 + 0.9 * 1.75 + 2.1 * (kPi - 2.0);
    CHECK(integrate_periodic(f, g) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("integrate_abs locates sign crossings") {
    // |sin(x)| integrates to 4 exactly
    CHECK(integrate_abs([](double x) { return std::sin(x); }, {}) ==
          doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("golden-section minimizer") {
    auto quad = [](double s) { return (s - 0.3) * (s - 0.3); };
    const auto m1 = minimize_unimodal(quad, 0.0, 1.0, 1e-10);
    CHECK(m1.argmin == doctest::Approx(0.3).epsilon(1e-9));

    const auto m2 = minimize_unimodal([](double s) { return s; }, 0.0, 1.0, 1e-10);
    CHECK(std::abs(m2.argmin) < 1e-9);

    const auto m3 = minimize_unimodal([](double s) { return std::cos(s); }, 0.0,
                                      kTwoPi * 0.9, 1e-8);
    CHECK(m3.argmin == doctest::Approx(kPi).epsilon(1e-7));

    CHECK_THROWS_AS(minimize_unimodal(quad, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(minimize_unimodal(quad, 1.0, 0.0, 1e-8), std::invalid_argument);
}
