#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "phasekit/divergences.hpp"
#include "phasekit/schemes.hpp"

using namespace phasekit;

TEST_CASE("Fourier outcome pmf basics") {
    CHECK_THROWS_AS(fejer_pmf(1, 0.0), std::invalid_argument);

    // phi = 0 concentrates all mass on k = 0
    const auto delta = fejer_pmf(8, 0.0);
    CHECK(delta[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 1; k < 8; ++k) CHECK(std::abs(delta[k]) < 1e-12);

    // d = 2, phi = pi against the 2x2 state-vector values
    const auto two = fejer_pmf(2, kPi);
    // state (|0> - |1>)/sqrt(2); u_0 = (1,1)/sqrt(2), u_1 = (1,-1)/sqrt(2)
    CHECK(std::abs(two[0] - 0.0) < 1e-12);
    CHECK(two[1] == doctest::Approx(1.0).epsilon(1e-12));

    for (int d : {2, 3, 17, 64}) {
        for (int i = 0; i <= 100; ++i) {
            const double phi = -kPi + kTwoPi * i / 100.0;
            const auto pmf = fejer_pmf(d, phi);
            const double mass = std::accumulate(pmf.begin(), pmf.end(), 0.0);
            CHECK(std::abs(mass - 1.0) < 1e-10);
            for (double v : pmf) CHECK(v >= -1e-15);
        }
    }
}

TEST_CASE("Taylor guard at the kernel peak is continuous") {
    // just inside/outside the |sin| < 1e-7 switch
    const int d = 16;
    for (double x : {1.9e-7, 2.1e-7}) {
        const double phi = kTwoPi * 3 / d - x;
        const double v = fejer_component(d, 3, phi);
        CHECK(v == doctest::Approx(1.0 - (d * d - 1.0) * x * x / 12.0).epsilon(1e-11));
    }
}

TEST_CASE("smoothed conditional density") {
    // unit mass over the estimate for several d and true phases
    for (int d : {4, 20}) {
        const auto grid = QuadratureGrid::aligned(fejer_breakpoints(d), 128);
        for (double phi : {0.0, 1.0, -2.0}) {
            const double mass = integrate_periodic(
                [&](double hat) { return smoothed_conditional(d, hat, phi); }, grid);
            CHECK(std::abs(mass - 1.0) < 1e-9);
        }
    }
    // single active rectangle of height d / 2 pi
    CHECK(smoothed_conditional(4, 0.1, 0.0) == doctest::Approx(2.0 / kPi).epsilon(1e-10));
    for (int d : {4, 20}) {
        for (double hat : {-3.0, -1.2, 0.0, 0.4, 3.1}) {
            for (double phi : {-2.0, 0.3}) {
                const double v = smoothed_conditional(d, hat, phi);
                CHECK(v >= 0.0);
                CHECK(v <= d / kTwoPi + 1e-12);
            }
        }
    }
    // piecewise constant in the estimate: constant within a rectangle,
    // jumps only at multiples of 2 pi / d
    const int d = 8;
    const double phi = 0.7;
    const double inside_a = smoothed_conditional(d, 0.01, phi);
    const double inside_b = smoothed_conditional(d, kTwoPi / d - 0.01, phi);
    CHECK(inside_a == doctest::Approx(inside_b).epsilon(1e-12));
    const double next_cell = smoothed_conditional(d, kTwoPi / d + 0.01, phi);
    CHECK(inside_a != next_cell);
}

TEST_CASE("grid-quantized covariance of the smoothed conditional") {
    const int d = 16;
    const double shift = kTwoPi * 3 / d;  // multiple of the rectangle width
    for (double hat : {0.2, -1.4}) {
        for (double phi : {0.5, -0.9}) {
            CHECK(smoothed_conditional(d, wrap_angle(hat + shift), wrap_angle(phi + shift)) ==
                  doctest::Approx(smoothed_conditional(d, hat, phi)).epsilon(1e-9));
        }
    }
}

TEST_CASE("photon-scheme induced density") {
    const auto uniform = std::make_shared<UniformDensity>();
    for (double hat : {-2.0, 0.0, 1.5}) {
        CHECK(induced_density_photon(12, *uniform, hat) ==
              doctest::Approx(1.0 / kTwoPi).epsilon(1e-9));
    }

    const auto base = std::make_shared<WrappedNormal>(1.0);
    const PhotonInducedDensity induced(20, base);
    const auto grid = QuadratureGrid::aligned(induced.breakpoints(), 128);
    const double mass =
        integrate_periodic([&](double hat) { return induced.pdf(hat); }, grid);
    CHECK(std::abs(mass - 1.0) < 1e-8);
    // the class caches exactly the one-shot integrals
    for (double hat : {-3.0, 0.2, 2.9}) {
        CHECK(induced.pdf(hat) ==
              doctest::Approx(induced_density_photon(20, *base, hat)).epsilon(1e-12));
    }

    // convergence toward the base density as d grows
    double prev = 1e9;
    for (int d : {8, 16, 32}) {
        const PhotonInducedDensity pd(d, base);
        const double l1 = l1_distance(*base, pd, default_grid());
        CHECK(l1 < prev);
        prev = l1;
    }
}

TEST_CASE("Rician conditional density") {
    CHECK_THROWS_AS(rician_conditional(-0.5, 0.0, 0.0), std::invalid_argument);
    // alpha = 0 carries no information
    for (double hat : {-1.0, 0.0, 2.0}) {
        CHECK(rician_conditional(0.0, hat, 0.77) ==
              doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
    }
    // normalization
    for (double alpha : {1.0, 3.0, std::sqrt(9.5), 5.0}) {
        const double mass = integrate_periodic(
            [&](double hat) { return rician_conditional(alpha, hat, 0.0); },
            default_grid());
        CHECK(std::abs(mass - 1.0) < 1e-8);
    }
    // even in the difference, and a function of the difference only
    for (double x : {0.3, 1.2, 2.8}) {
        CHECK(rician_conditional(2.0, 0.5 + x, 0.5) ==
              doctest::Approx(rician_conditional(2.0, 0.5 - x, 0.5)).epsilon(1e-12));
        CHECK(rician_conditional(2.0, 0.8 + x, 0.8) ==
              doctest::Approx(rician_conditional(2.0, 0.3 + x, 0.3)).epsilon(1e-12));
    }
    // strictly positive even at the antipode for large amplitude
    CHECK(rician_conditional(12.0, kPi, 0.0) > 0.0);
}

TEST_CASE("coherent-scheme induced density") {
    const auto uniform = std::make_shared<UniformDensity>();
    CHECK(induced_density_coherent(3.0, *uniform, 0.4) ==
          doctest::Approx(1.0 / kTwoPi).epsilon(1e-9));

    const auto base = std::make_shared<WrappedNormal>(1.0);
    CHECK(induced_density_coherent(0.0, *base, -1.0) ==
          doctest::Approx(1.0 / kTwoPi).epsilon(1e-9));

    const CoherentInducedDensity induced(3.0, base);
    const double mass =
        integrate_periodic([&](double hat) { return induced.pdf(hat); }, default_grid());
    CHECK(std::abs(mass - 1.0) < 1e-8);

    double prev = 1e9;
    for (double alpha : {1.0, 2.0, 4.0}) {
        const CoherentInducedDensity cd(alpha, base);
        const double l1 = l1_distance(*base, cd, default_grid());
        CHECK(l1 < prev);
        prev = l1;
    }
}

TEST_CASE("lossy Fourier pmf") {
    CHECK_THROWS_AS(lossy_fejer_pmf(8, 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lossy_fejer_pmf(8, -0.1, 0.0), std::invalid_argument);

    // eta = 1 reduces to the lossless pmf
    for (int d : {2, 8, 17}) {
        for (double phi : {0.0, 0.9, -2.3}) {
            const auto lossless = fejer_pmf(d, phi);
            const auto lossy = lossy_fejer_pmf(d, 1.0, phi);
            for (int k = 0; k < d; ++k) {
                CHECK(std::abs(lossless[k] - lossy[k]) < 1e-12);
            }
        }
    }
    // eta = 0: vacuum output, uniform over outcomes
    const auto vacuum = lossy_fejer_pmf(8, 0.0, 1.1);
    for (double v : vacuum) CHECK(v == doctest::Approx(1.0 / 8).epsilon(1e-13));

    // against the truncated-Fock state-vector oracle
    for (double phi : {0.5, -1.7}) {
        const auto mine = lossy_fejer_pmf(8, 0.7, phi);
        const auto fock = oracles::lossy_fourier_fock_oracle(8, 0.7, phi);
        for (int k = 0; k < 8; ++k) {
            CHECK(std::abs(mine[k] - fock[k]) < 1e-10);
        }
    }
}

TEST_CASE("lossy pmf concentrates with growing d") {
    // Mass within a fixed window around the true phase grows strictly with d
    // (the single-outcome probability cannot: refining the outcome grid
    // splits the peak). The window form is what "highly peaked around phi"
    // means once d changes the outcome resolution.
    const double eta = 0.8, phi = 0.5, window = 0.5;
    double prev = 0.0;
    for (int d : {4, 8, 16, 32}) {
        const auto pmf = lossy_fejer_pmf(d, eta, phi);
        double near = 0.0;
        for (int k = 0; k < d; ++k) {
            if (std::abs(std::remainder(kTwoPi * k / d - phi, kTwoPi)) <= window) {
                near += pmf[k];
            }
        }
        CHECK(near > prev);
        prev = near;
    }
}

TEST_CASE("lossy induced density matches the lossless one at eta = 1") {
    const auto base = std::make_shared<WrappedNormal>(1.0);
    const PhotonInducedDensity lossless(12, base);
    const LossyFejerInducedDensity lossy(12, 1.0, base);
    for (double hat : {-2.0, 0.3, 1.9}) {
        CHECK(lossy.pdf(hat) == doctest::Approx(lossless.pdf(hat)).epsilon(1e-10));
    }
}

TEST_CASE("data processing never increases divergences") {
    const auto p = std::make_shared<WrappedNormal>(1.0);
    const auto q = std::make_shared<WrappedNormal>(2.0);
    const auto d_base = relative_entropy(*p, *q, default_grid());
    const auto c_base = chernoff(*p, *q, default_grid());
    const std::vector<SchemeChannel> schemes{FejerScheme{16}, RicianScheme{3.0},
                                             LossyFejerScheme{8, 0.7}};
    for (const auto& scheme : schemes) {
        const auto ip = induced_density(scheme, p);
        const auto iq = induced_density(scheme, q);
        const auto d_ind = relative_entropy(*ip, *iq, default_grid());
        CHECK(d_ind.value <= d_base.value + 2.0 * (d_base.quad_error + d_ind.quad_error) + 1e-9);
        const auto c_ind = chernoff(*ip, *iq, default_grid());
        CHECK(c_ind.value <= c_base.value + 2.0 * (c_base.quad_error + c_ind.quad_error) + 1e-9);
    }
}

TEST_CASE("scheme sampling stays in range and is deterministic") {
    const std::vector<SchemeChannel> schemes{FejerScheme{16}, RicianScheme{2.0},
                                             LossyFejerScheme{8, 0.6}};
    for (const auto& scheme : schemes) {
        const SchemeSampler sampler(scheme);
        Rng r1(3, 0), r2(3, 0);
        for (int i = 0; i < 200; ++i) {
            const double a = sampler.draw(0.9, r1);
            const double b = sampler.draw(0.9, r2);
            CHECK(a == b);
            CHECK(a >= -kPi);
            CHECK(a < kPi);
        }
    }
}
