#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "phasekit/density.hpp"
#include "phasekit/quadrature.hpp"

namespace phasekit {

/// A divergence value in nats together with the internal optimizer (where
/// one exists) and a quadrature-error estimate from panel halving.
struct DivergenceReport {
    double value = 0.0;
    std::optional<double> optimizer;         // s* (Chernoff) or alpha* (exponents)
    std::vector<double> simplex_optimizer;   // multivariate Chernoff weights
    std::optional<std::pair<int, int>> pair; // argmin of min_pairwise_chernoff
    double quad_error = 0.0;
};

/// D(p||q) = int p ln(p/q). Throws std::runtime_error naming the node if the
/// integrand is non-finite there.
DivergenceReport relative_entropy(const CircularDensity& p, const CircularDensity& q,
                                  const QuadratureGrid& grid);

/// V(p||q) = int p [ln(p/q) - D(p||q)]^2.
DivergenceReport relative_entropy_variance(const CircularDensity& p,
                                           const CircularDensity& q,
                                           const QuadratureGrid& grid);

/// Renyi relative entropy of order alpha in (0,1) u (1,inf):
/// (alpha-1)^-1 ln int p^alpha q^(1-alpha).
DivergenceReport renyi(const CircularDensity& p, const CircularDensity& q,
                       double alpha, const QuadratureGrid& grid);

/// C(p||q) = -ln min_{s in [0,1]} int p^s q^(1-s). The objective
/// s -> ln int p^s q^(1-s) is convex in s, hence unimodal; golden-section
/// with tol 1e-10.
DivergenceReport chernoff(const CircularDensity& p, const CircularDensity& q,
                          const QuadratureGrid& grid);

/// -ln min over probability vectors s of int prod_i p_i^(s_i), by
/// exponentiated-gradient descent on the simplex (up to 500 iterations,
/// step 1/2, stop at 1e-9 movement), seeded at the uniform vector. Two
/// densities delegate to the binary routine.
DivergenceReport multivariate_chernoff(const std::vector<const CircularDensity*>& densities,
                                       const QuadratureGrid& grid);

/// Central-difference Fisher information of the family at theta:
/// int p_theta [(ln p_{theta+d} - ln p_{theta-d}) / 2d]^2. Pass delta <= 0
/// for the default 1e-3 * max(theta, 1).
double fisher_information(Family family, double theta, double delta,
                          const QuadratureGrid& grid);

/// Second-order expansion of the optimal type-II exponent at type-I level
/// eps: D + sqrt(V/n) * Phi^-1(eps) + ln(n)/(2n). The O(1/n) remainder is
/// dropped; Monte Carlo comparisons must budget for it.
double stein_second_order(const CircularDensity& p, const CircularDensity& q,
                          std::size_t n, double eps, const QuadratureGrid& grid);

/// sup_{alpha > 1} ((alpha-1)/alpha) (r - D_alpha(p||q)), evaluated through
/// u = 1 - 1/alpha in (0,1), where the objective u r - (1-u) ln I(1/(1-u))
/// is concave in u. Returns alpha* as the optimizer.
DivergenceReport strong_converse_exponent(const CircularDensity& p,
                                          const CircularDensity& q, double r,
                                          const QuadratureGrid& grid);

/// sup_{alpha in (0,1)} ((alpha-1)/alpha) (r - D_alpha(p||q)). The
/// derivative of the objective has a single sign change on (0,1), so
/// golden-section applies.
DivergenceReport hoeffding_exponent(const CircularDensity& p,
                                    const CircularDensity& q, double r,
                                    const QuadratureGrid& grid);

/// min over i != j of chernoff(p_i, p_j); `pair` reports the argmin.
DivergenceReport min_pairwise_chernoff(const std::vector<const CircularDensity*>& densities,
                                       const QuadratureGrid& grid);

/// Exact one-sample Bayes error: (1 - ||lambda p - (1-lambda) q||_1) / 2.
double bayes_error_exact_n1(const CircularDensity& p, const CircularDensity& q,
                            double lambda, const QuadratureGrid& grid);

}  // namespace phasekit
