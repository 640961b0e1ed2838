#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "phasekit/divergences.hpp"
#include "phasekit/montecarlo.hpp"
#include "phasekit/sampling.hpp"
#include "phasekit/schemes.hpp"
#include "phasekit/special_functions.hpp"

namespace py = pybind11;
using namespace phasekit;

namespace {

using DensityPtr = std::shared_ptr<CircularDensity>;

const QuadratureGrid& grid_or_default(const QuadratureGrid* grid) {
    return grid ? *grid : default_grid();
}

std::vector<const CircularDensity*> as_pointers(const std::vector<DensityPtr>& ds) {
    std::vector<const CircularDensity*> out;
    out.reserve(ds.size());
    for (const auto& d : ds) out.push_back(d.get());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "circular-density discrimination and estimation toolkit";

    py::class_<QuadratureGrid>(m, "QuadratureGrid")
        .def_static("periodic", &QuadratureGrid::periodic, py::arg("panels") = 64,
                    py::arg("points_per_panel") = 16)
        .def_static("aligned", &QuadratureGrid::aligned, py::arg("breakpoints"),
                    py::arg("min_panels") = 64, py::arg("points_per_panel") = 16)
        .def_property_readonly("nodes", &QuadratureGrid::nodes)
        .def_property_readonly("weights", &QuadratureGrid::weights)
        .def_property_readonly("panels", &QuadratureGrid::panels)
        .def("coarsened", &QuadratureGrid::coarsened)
        .def("refined", &QuadratureGrid::refined);

    py::class_<CircularDensity, DensityPtr>(m, "CircularDensity")
        .def("pdf", &CircularDensity::pdf, py::arg("phi"))
        .def("log_pdf", &CircularDensity::log_pdf, py::arg("phi"))
        .def("breakpoints", &CircularDensity::breakpoints);

    py::class_<WrappedNormal, CircularDensity, std::shared_ptr<WrappedNormal>>(
        m, "WrappedNormal")
        .def(py::init<double>(), py::arg("variance"))
        .def_property_readonly("variance", &WrappedNormal::variance);

    py::class_<VonMises, CircularDensity, std::shared_ptr<VonMises>>(m, "VonMises")
        .def(py::init<double>(), py::arg("spread"))
        .def_property_readonly("spread", &VonMises::spread);

    py::class_<WrappedCauchy, CircularDensity, std::shared_ptr<WrappedCauchy>>(
        m, "WrappedCauchy")
        .def(py::init<double>(), py::arg("kappa"))
        .def_property_readonly("kappa", &WrappedCauchy::kappa);

    py::class_<UniformDensity, CircularDensity, std::shared_ptr<UniformDensity>>(
        m, "UniformDensity")
        .def(py::init<>());

    py::class_<TabulatedDensity, CircularDensity, std::shared_ptr<TabulatedDensity>>(
        m, "TabulatedDensity")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("angles"),
             py::arg("values"))
        .def_property_readonly("angles", &TabulatedDensity::angles)
        .def_property_readonly("values", &TabulatedDensity::values)
        .def("save_csv",
             static_cast<void (TabulatedDensity::*)(const std::string&) const>(
                 &TabulatedDensity::save_csv),
             py::arg("path"))
        .def_static("load_csv",
                    static_cast<TabulatedDensity (*)(const std::string&)>(
                        &TabulatedDensity::load_csv),
                    py::arg("path"));

    py::enum_<Family>(m, "Family")
        .value("wrapped_normal", Family::wrapped_normal)
        .value("von_mises", Family::von_mises)
        .value("wrapped_cauchy", Family::wrapped_cauchy);

    m.def(
        "make_density",
        [](Family f, double p) {
            return std::const_pointer_cast<CircularDensity>(make_density(f, p));
        },
        py::arg("family"), py::arg("param"));

    m.def("wrap_angle", &wrap_angle, py::arg("x"));
    m.def("log_bessel_i0", &log_bessel_i0, py::arg("x"));
    m.def("normal_cdf", &normal_cdf, py::arg("x"));
    m.def("normal_quantile", &normal_quantile, py::arg("eps"));

    m.def(
        "sample",
        [](const CircularDensity& d, std::uint64_t seed, std::size_t n) {
            return sample(d, seed, n);
        },
        py::arg("density"), py::arg("seed"), py::arg("n"));

    m.def(
        "l1_distance",
        [](const CircularDensity& a, const CircularDensity& b,
           const QuadratureGrid* grid) {
            return l1_distance(a, b, grid_or_default(grid));
        },
        py::arg("a"), py::arg("b"), py::arg("grid") = nullptr);

    py::class_<DivergenceReport>(m, "DivergenceReport")
        .def_readonly("value", &DivergenceReport::value)
        .def_readonly("optimizer", &DivergenceReport::optimizer)
        .def_readonly("simplex_optimizer", &DivergenceReport::simplex_optimizer)
        .def_readonly("pair", &DivergenceReport::pair)
        .def_readonly("quad_error", &DivergenceReport::quad_error)
        .def("__repr__", [](const DivergenceReport& r) {
            return "DivergenceReport(value=" + std::to_string(r.value) +
                   ", quad_error=" + std::to_string(r.quad_error) + ")";
        });

    m.def(
        "relative_entropy",
        [](const CircularDensity& p, const CircularDensity& q,
           const QuadratureGrid* grid) {
            return relative_entropy(p, q, grid_or_default(grid));
        },
        py::arg("p"), py::arg("q"), py::arg("grid") = nullptr);
    m.def(
        "relative_entropy_variance",
        [](const CircularDensity& p, const CircularDensity& q,
           const QuadratureGrid* grid) {
            return relative_entropy_variance(p, q, grid_or_default(grid));
        },
        py::arg("p"), py::arg("q"), py::arg("grid") = nullptr);
    m.def(
        "renyi",
        [](const CircularDensity& p, const CircularDensity& q, double alpha,
           const QuadratureGrid* grid) {
            return renyi(p, q, alpha, grid_or_default(grid));
        },
        py::arg("p"), py::arg("q"), py::arg("alpha"), py::arg("grid") = nullptr);
    m.def(
        "chernoff",
        [](const CircularDensity& p, const CircularDensity& q,
           const QuadratureGrid* grid) {
            return chernoff(p, q, grid_or_default(grid));
        },
        py::arg("p"), py::arg("q"), py::arg("grid") = nullptr);
    m.def(
        "multivariate_chernoff",
        [](const std::vector<DensityPtr>& densities, const QuadratureGrid* grid) {
            return multivariate_chernoff(as_pointers(densities), grid_or_default(grid));
        },
        py::arg("densities"), py::arg("grid") = nullptr);
    m.def(
        "min_pairwise_chernoff",
        [](const std::vector<DensityPtr>& densities, const QuadratureGrid* grid) {
            return min_pairwise_chernoff(as_pointers(densities), grid_or_default(grid));
        },
        py::arg("densities"), py::arg("grid") = nullptr);
    m.def(
        "fisher_information",
        [](Family family, double theta, double delta, const QuadratureGrid* grid) {
            return fisher_information(family, theta, delta, grid_or_default(grid));
        },
        py::arg("family"), py::arg("theta"), py::arg("delta") = 0.0,
        py::arg("grid") = nullptr);
    m.def(
        "stein_second_order",
        [](const CircularDensity& p, const CircularDensity& q, std::size_t n,
           double eps, const QuadratureGrid* grid) {
            return stein_second_order(p, q, n, eps, grid_or_default(grid));
        },
        py::arg("p"), py::arg("q"), py::arg("n"), py::arg("eps"),
        py::arg("grid") = nullptr);
    m.def(
        "strong_converse_exponent",
        [](const CircularDensity& p, const CircularDensity& q, double r,
           const QuadratureGrid* grid) {
            return strong_converse_exponent(p, q, r, grid_or_default(grid));
        },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("grid") = nullptr);
    m.def(
        "hoeffding_exponent",
        [](const CircularDensity& p, const CircularDensity& q, double r,
           const QuadratureGrid* grid) {
            return hoeffding_exponent(p, q, r, grid_or_default(grid));
        },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("grid") = nullptr);
    m.def(
        "bayes_error_exact_n1",
        [](const CircularDensity& p, const CircularDensity& q, double lam,
           const QuadratureGrid* grid) {
            return bayes_error_exact_n1(p, q, lam, grid_or_default(grid));
        },
        py::arg("p"), py::arg("q"), py::arg("prior"), py::arg("grid") = nullptr);

    // measurement schemes
    m.def("fejer_pmf", &fejer_pmf, py::arg("d"), py::arg("phi"));
    m.def("smoothed_conditional", &smoothed_conditional, py::arg("d"),
          py::arg("phi_hat"), py::arg("phi"));
    m.def(
        "induced_density_photon",
        [](int d, const CircularDensity& base, double phi_hat) {
            return induced_density_photon(d, base, phi_hat);
        },
        py::arg("d"), py::arg("base"), py::arg("phi_hat"));
    m.def("rician_conditional", &rician_conditional, py::arg("alpha"),
          py::arg("phi_hat"), py::arg("phi"));
    m.def(
        "induced_density_coherent",
        [](double alpha, const CircularDensity& base, double phi_hat) {
            return induced_density_coherent(alpha, base, phi_hat);
        },
        py::arg("alpha"), py::arg("base"), py::arg("phi_hat"));
    m.def("lossy_fejer_pmf", &lossy_fejer_pmf, py::arg("d"), py::arg("eta"),
          py::arg("phi"));
    m.def("fejer_breakpoints", &fejer_breakpoints, py::arg("d"));

    py::class_<PhotonInducedDensity, CircularDensity,
               std::shared_ptr<PhotonInducedDensity>>(m, "PhotonInducedDensity")
        .def(py::init([](int d, DensityPtr base) {
                 return std::make_shared<PhotonInducedDensity>(d, std::move(base));
             }),
             py::arg("d"), py::arg("base"))
        .def_property_readonly("outcome_weights", &PhotonInducedDensity::outcome_weights)
        .def_property_readonly("levels", &PhotonInducedDensity::levels);

    py::class_<CoherentInducedDensity, CircularDensity,
               std::shared_ptr<CoherentInducedDensity>>(m, "CoherentInducedDensity")
        .def(py::init([](double alpha, DensityPtr base) {
                 return std::make_shared<CoherentInducedDensity>(alpha, std::move(base));
             }),
             py::arg("alpha"), py::arg("base"))
        .def_property_readonly("amplitude", &CoherentInducedDensity::amplitude);

    py::class_<LossyFejerInducedDensity, CircularDensity,
               std::shared_ptr<LossyFejerInducedDensity>>(m, "LossyFejerInducedDensity")
        .def(py::init([](int d, double eta, DensityPtr base) {
                 return std::make_shared<LossyFejerInducedDensity>(d, eta,
                                                                   std::move(base));
             }),
             py::arg("d"), py::arg("eta"), py::arg("base"))
        .def_property_readonly("outcome_weights",
                               &LossyFejerInducedDensity::outcome_weights);

    py::class_<FejerScheme>(m, "FejerScheme")
        .def(py::init<int>(), py::arg("d"))
        .def_readwrite("d", &FejerScheme::d);
    py::class_<RicianScheme>(m, "RicianScheme")
        .def(py::init<double>(), py::arg("alpha"))
        .def_readwrite("alpha", &RicianScheme::alpha);
    py::class_<LossyFejerScheme>(m, "LossyFejerScheme")
        .def(py::init<int, double>(), py::arg("d"), py::arg("eta"))
        .def_readwrite("d", &LossyFejerScheme::d)
        .def_readwrite("eta", &LossyFejerScheme::eta);

    m.def(
        "induced_density",
        [](const SchemeChannel& scheme, DensityPtr base) {
            return std::const_pointer_cast<CircularDensity>(
                induced_density(scheme, std::move(base)));
        },
        py::arg("scheme"), py::arg("base"));

    // Monte Carlo validation
    py::class_<TestSpec>(m, "TestSpec")
        .def(py::init([](double prior, int n, int trials, std::uint64_t seed) {
                 TestSpec s;
                 s.prior = prior;
                 s.n = n;
                 s.trials = trials;
                 s.seed = seed;
                 return s;
             }),
             py::arg("prior") = 0.5, py::arg("n") = 1, py::arg("trials") = 1000,
             py::arg("seed") = 0)
        .def_readwrite("prior", &TestSpec::prior)
        .def_readwrite("n", &TestSpec::n)
        .def_readwrite("trials", &TestSpec::trials)
        .def_readwrite("seed", &TestSpec::seed);

    py::class_<TestOutcome>(m, "TestOutcome")
        .def_readonly("alpha_hat", &TestOutcome::alpha_hat)
        .def_readonly("beta_hat", &TestOutcome::beta_hat)
        .def_readonly("alpha_ci", &TestOutcome::alpha_ci)
        .def_readonly("beta_ci", &TestOutcome::beta_ci)
        .def_readonly("achieved_threshold", &TestOutcome::achieved_threshold)
        .def("average_error", &TestOutcome::average_error, py::arg("prior"));

    m.def("bayes_test", &bayes_test, py::arg("p"), py::arg("q"), py::arg("spec"));
    m.def("neyman_pearson", &neyman_pearson, py::arg("p"), py::arg("q"),
          py::arg("spec"));
    m.def("scheme_end_to_end", &scheme_end_to_end, py::arg("scheme"), py::arg("p"),
          py::arg("q"), py::arg("spec"));

    m.def("mle_estimate", &mle_estimate, py::arg("family"), py::arg("samples"),
          py::arg("lo"), py::arg("hi"));

    py::enum_<CostKind>(m, "CostKind")
        .value("quadratic", CostKind::quadratic)
        .value("absolute", CostKind::absolute);

    py::class_<RiskEstimate>(m, "RiskEstimate")
        .def_readonly("risk", &RiskEstimate::risk)
        .def_readonly("cramer_rao", &RiskEstimate::cramer_rao)
        .def_readonly("std_error", &RiskEstimate::std_error);

    m.def("estimation_risk", &estimation_risk, py::arg("family"), py::arg("theta"),
          py::arg("n"), py::arg("trials"), py::arg("seed"),
          py::arg("cost") = CostKind::quadratic);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
