#pragma once

#include <cstdint>
#include <vector>

#include "phasekit/density.hpp"
#include "phasekit/schemes.hpp"

namespace phasekit {

/// Configuration of a Monte Carlo hypothesis test. `prior` is the Bayes
/// prior lambda for bayes_test / scheme_end_to_end and the type-I level
/// epsilon for neyman_pearson; both live in (0, 1).
struct TestSpec {
    double prior = 0.5;
    int n = 1;
    int trials = 1000;
    std::uint64_t seed = 0;
};

struct TestOutcome {
    double alpha_hat = 0.0;  // P(decide q | truth p)
    double beta_hat = 0.0;   // P(decide p | truth q)
    double alpha_ci = 0.0;   // 95% binomial half-widths
    double beta_ci = 0.0;
    double achieved_threshold = 0.0;  // on the log-LR sum ln(p/q)

    double average_error(double lambda) const {
        return lambda * alpha_hat + (1.0 - lambda) * beta_hat;
    }
};

/// Likelihood-ratio test with prior `spec.prior`: decide p iff
/// ln(lambda) + sum ln p >= ln(1-lambda) + sum ln q (ties toward p). Error
/// rates are estimated from `spec.trials` independent trials under each
/// hypothesis; identical specs reproduce bit-identical outcomes.
TestOutcome bayes_test(const CircularDensity& p, const CircularDensity& q,
                       const TestSpec& spec);

/// Neyman-Pearson test at level `spec.prior`: the threshold on
/// T = sum ln(p/q) is calibrated as an empirical quantile from
/// `spec.trials` draws under p (stream 0); q is decided iff T falls below
/// it. The threshold is deterministic (no randomized boundary), so the
/// achieved type-I rate, reported from the calibration sample, may
/// undershoot the level slightly. beta_hat comes from fresh draws under q
/// (stream 1).
TestOutcome neyman_pearson(const CircularDensity& p, const CircularDensity& q,
                           const TestSpec& spec);

/// End-to-end run of a measurement scheme: each sample draws the true phase
/// from the base density and the estimate from the scheme conditional; the
/// Bayes likelihood-ratio test then uses the scheme-induced densities as its
/// models.
TestOutcome scheme_end_to_end(const SchemeChannel& scheme, const CircularDensity& p,
                              const CircularDensity& q, const TestSpec& spec);

/// Maximum-likelihood parameter estimate over the bracket, by golden-section
/// on the log likelihood (tol 1e-8). The likelihood of each family here is
/// unimodal in its spread parameter for fixed data. Degenerate data (for
/// example a single sample at the mode) push the estimate to the bracket
/// edge.
double mle_estimate(Family family, const std::vector<double>& samples,
                    double lo, double hi);

enum class CostKind { quadratic, absolute };

struct RiskEstimate {
    double risk = 0.0;
    double cramer_rao = 0.0;  // 1 / (n F(theta)), the quadratic-cost floor
    double std_error = 0.0;   // Monte Carlo standard error of `risk`
};

/// Monte Carlo risk of the MLE at `theta`: each trial draws n samples and
/// estimates theta over the bracket (theta/10, 10 theta).
RiskEstimate estimation_risk(Family family, double theta, int n, int trials,
                             std::uint64_t seed, CostKind cost);

}  // namespace phasekit
