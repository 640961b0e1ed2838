#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "phasekit/density.hpp"
#include "phasekit/divergences.hpp"

using namespace phasekit;

TEST_CASE("pdf spot values") {
    // huge spread: von Mises tends to the uniform density
    CHECK(VonMises(1e8).pdf(0.0) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-6));
    // closed form at kappa = 1, phi = 0: sinh(1)/(2 pi (cosh(1)-1)),
    // high-precision value 0.34440388241708794
    const double wc_expected = std::sinh(1.0) / (kTwoPi * (std::cosh(1.0) - 1.0));
    CHECK(WrappedCauchy(1.0).pdf(0.0) == doctest::Approx(wc_expected).epsilon(1e-13));
    CHECK(wc_expected == doctest::Approx(0.34440388241708794).epsilon(1e-12));
    // near-unwrapped normal at small variance
    CHECK(WrappedNormal(0.01).pdf(0.0) ==
          doctest::Approx(std::exp(oracles::wrapped_normal_logpdf(0.01, 0.0, 50)))
              .epsilon(1e-12));
    CHECK(WrappedNormal(0.01).pdf(0.0) == doctest::Approx(3.989423).epsilon(1e-5 / 3.9894));
}

TEST_CASE("non-positive family parameters are rejected") {
    CHECK_THROWS_AS(WrappedNormal(0.0), std::invalid_argument);
    CHECK_THROWS_AS(VonMises(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(WrappedCauchy(0.0), std::invalid_argument);
}

TEST_CASE("log_pdf spot values and consistency") {
    CHECK(VonMises(1e8).log_pdf(kPi / 2) ==
          doctest::Approx(std::log(1.0 / kTwoPi)).epsilon(1e-6));
    const double deep_tail = WrappedNormal(0.01).log_pdf(kPi);
    CHECK(deep_tail < -100.0);
    CHECK(deep_tail == doctest::Approx(oracles::wrapped_normal_logpdf(0.01, kPi, 50))
                           .epsilon(1e-12));

    std::mt19937 gen(11);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> param(0.05, 5.0);
    for (int i = 0; i < 100; ++i) {
        const auto fam = static_cast<Family>(i % 3);
        const auto d = make_density(fam, param(gen));
        const double x = angle(gen);
        CHECK(std::exp(d->log_pdf(x)) == doctest::Approx(d->pdf(x)).epsilon(1e-12));
    }
}

TEST_CASE("normalization, evenness, periodicity for all families") {
    for (double p : {0.1, 1.0, 10.0}) {
        for (auto fam : {Family::wrapped_normal, Family::von_mises, Family::wrapped_cauchy}) {
            const auto d = make_density(fam, p);
            const double mass = integrate_periodic([&](double x) { return d->pdf(x); },
                                                   default_grid());
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
            for (double x : {0.3, 1.1, 2.9}) {
                CHECK(d->pdf(x) == doctest::Approx(d->pdf(-x)).epsilon(1e-12));
                CHECK(d->pdf(x) > 0.0);
            }
            CHECK(d->pdf(-kPi) == doctest::Approx(d->pdf(kPi)).epsilon(1e-10));
        }
    }
}

TEST_CASE("wrapped normal truncation is converged") {
    // adding 5 more images on each side moves the pdf by < 1e-14 relative
    for (double gamma : {0.1, 1.0, 10.0}) {
        const WrappedNormal wn(gamma);
        for (double phi : {0.0, 1.0, kPi}) {
            const int k_impl = std::max(
                3, static_cast<int>(std::ceil((6.0 * std::sqrt(gamma) + std::abs(phi)) / kTwoPi)));
            const double wide = std::exp(oracles::wrapped_normal_logpdf(gamma, phi, k_impl + 5));
            CHECK(wn.pdf(phi) == doctest::Approx(wide).epsilon(1e-14));
        }
    }
}

TEST_CASE("tabulated density round-trips through CSV") {
    std::vector<double> angles, values;
    const VonMises vm(0.7);
    for (int i = 0; i < 256; ++i) {
        const double x = -kPi + kTwoPi * i / 256;
        angles.push_back(x);
        values.push_back(vm.pdf(x));
    }
    const TabulatedDensity tab(angles, values);
    std::stringstream io;
    tab.save_csv(io);
    const auto back = TabulatedDensity::load_csv(io);
    CHECK(back.angles().size() == 256);
    for (double x : {-3.0, -0.4, 0.0, 1.3}) {
        CHECK(back.pdf(x) == doctest::Approx(tab.pdf(x)).epsilon(1e-14));
        CHECK(back.pdf(x) == doctest::Approx(vm.pdf(x)).epsilon(1e-3));
    }
    // interpolation is periodic across the seam
    CHECK(back.pdf(-kPi) == doctest::Approx(back.pdf(kPi)).epsilon(1e-12));

    std::stringstream bad("phi;pdf\n0,1\n");
    CHECK_THROWS_AS(TabulatedDensity::load_csv(bad), std::runtime_error);
    CHECK_THROWS_AS(TabulatedDensity({0.0, 1.0}, {1.0, -2.0}), std::invalid_argument);
}

TEST_CASE("l1 distance") {
    const WrappedNormal a(1.0);
    CHECK(l1_distance(a, a, default_grid()) < 1e-12);
    const UniformDensity u;
    CHECK(l1_distance(u, u, default_grid()) == 0.0);

    const WrappedNormal b(2.0);
    const double d1 = l1_distance(a, b, default_grid());
    CHECK(d1 > 0.0);
    CHECK(d1 < 2.0);
    const double d2 = l1_distance(a, b, QuadratureGrid::periodic(128));
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-6));
}

TEST_CASE("family name parsing") {
    CHECK(family_from_string("wn") == Family::wrapped_normal);
    CHECK(family_from_string("von-mises") == Family::von_mises);
    CHECK_THROWS_AS(family_from_string("cauchy?"), std::invalid_argument);
    CHECK(to_string(Family::wrapped_cauchy) == "wrapped-cauchy");
}
