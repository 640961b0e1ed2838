#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <variant>
#include <vector>

#include "phasekit/density.hpp"
#include "phasekit/quadrature.hpp"
#include "phasekit/sampling.hpp"

namespace phasekit {

/// Probability of Fourier-basis outcome k for input level count d and phase
/// shift phi: sin^2(pi k - d phi / 2) / (d^2 sin^2(pi k / d - phi / 2)),
/// with a Taylor substitute near the removable singularity.
double fejer_component(int d, int k, double phi);

/// The full outcome vector over k in {0, ..., d-1}; sums to 1 within 1e-10.
std::vector<double> fejer_pmf(int d, double phi);

/// The discrete Fourier pmf smoothed into a density over phi_hat by a width
/// 2 pi / d rectangle: sum_k p_d(k|phi) Pi_d(phi_hat - 2 pi k / d mod 2 pi)
/// with the nonnegative-residue convention. Exactly one k contributes for
/// each phi_hat; the value lies in [0, d / 2 pi].
double smoothed_conditional(int d, double phi_hat, double phi);

/// Index of the single rectangle covering phi_hat.
int active_fourier_index(int d, double phi_hat);

/// int base(phi) * smoothed_conditional(d, phi_hat, phi) dphi. The integrand
/// is smooth in phi (the rectangle selects one Fourier index independent of
/// phi); the grid must resolve the kernel oscillation, so pass at least 2d
/// panels or leave `grid` null for the built-in choice.
double induced_density_photon(int d, const CircularDensity& base, double phi_hat,
                              const QuadratureGrid* grid = nullptr);

/// Phase density of a heterodyne outcome around a coherent amplitude alpha:
/// e^{-a^2}/2pi + (a cos(delta) / 2 sqrt(pi)) e^{-a^2 sin^2(delta)}
/// (1 + erf(a cos(delta))) with delta = phi_hat - phi. Strictly positive,
/// even in delta; alpha = 0 gives the uniform density.
double rician_conditional(double alpha, double phi_hat, double phi);

/// int base(phi) * rician_conditional(alpha, phi_hat, phi) dphi.
double induced_density_coherent(double alpha, const CircularDensity& base,
                                double phi_hat, const QuadratureGrid* grid = nullptr);

/// Fourier-basis outcome pmf when transmissivity-eta loss precedes the
/// measurement; eta = 1 reduces to fejer_pmf and eta = 0 to the uniform
/// vector (vacuum output). Supported envelope d <= 64.
std::vector<double> lossy_fejer_pmf(int d, double eta, double phi);

/// Precomputed loss weights for repeated lossy pmf evaluation at one (d, eta):
/// the O(d^3) table is built once, each pmf costs O(d^2).
class LossyFejerTable {
public:
    LossyFejerTable(int d, double eta);
    std::vector<double> pmf(double phi) const;
    int levels() const { return d_; }
    double eta() const { return eta_; }

private:
    int d_;
    double eta_;
    std::vector<double> diag_;  // sums of the weight matrix along offsets
};

/// Rectangle breakpoints {2 pi k / d} wrapped to [-pi, pi), sorted.
std::vector<double> fejer_breakpoints(int d);

/// Output density of the photon-number-superposition scheme applied to a
/// dephasing density: piecewise constant at (d / 2 pi) * pbar_k on the k-th
/// rectangle, where pbar_k = int base(phi) p_d(k|phi) dphi is cached at
/// construction.
class PhotonInducedDensity final : public CircularDensity {
public:
    PhotonInducedDensity(int d, std::shared_ptr<const CircularDensity> base,
                         const QuadratureGrid* grid = nullptr);
    double pdf(double phi_hat) const override;
    std::vector<double> breakpoints() const override;
    const std::vector<double>& outcome_weights() const { return pbar_; }
    int levels() const { return d_; }

private:
    int d_;
    std::shared_ptr<const CircularDensity> base_;
    std::vector<double> pbar_;
};

/// Same smoothing for the lossy Fourier measurement.
class LossyFejerInducedDensity final : public CircularDensity {
public:
    LossyFejerInducedDensity(int d, double eta,
                             std::shared_ptr<const CircularDensity> base,
                             const QuadratureGrid* grid = nullptr);
    double pdf(double phi_hat) const override;
    std::vector<double> breakpoints() const override;
    const std::vector<double>& outcome_weights() const { return pbar_; }

private:
    int d_;
    double eta_;
    std::shared_ptr<const CircularDensity> base_;
    std::vector<double> pbar_;
};

/// Output density of the coherent-state heterodyne scheme. Evaluations
/// integrate the Rician kernel against the base density on the stored grid;
/// values are memoized (built once, read many).
class CoherentInducedDensity final : public CircularDensity {
public:
    CoherentInducedDensity(double alpha, std::shared_ptr<const CircularDensity> base,
                           const QuadratureGrid* grid = nullptr);
    double pdf(double phi_hat) const override;
    double amplitude() const { return alpha_; }

private:
    double alpha_;
    std::shared_ptr<const CircularDensity> base_;
    QuadratureGrid grid_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, double> memo_;
};

// ---------------------------------------------------------------------------
// Scheme channels: the conditional distributions as sampleable objects.

struct FejerScheme {
    int d;
};
struct RicianScheme {
    double alpha;
};
struct LossyFejerScheme {
    int d;
    double eta;
};
using SchemeChannel = std::variant<FejerScheme, RicianScheme, LossyFejerScheme>;

/// Draws phi_hat from a scheme's conditional given the true phase. Fourier
/// schemes draw the outcome k, shift 2 pi k / d into [-pi, pi), and add the
/// rectangle noise; the Rician scheme draws beta = alpha e^{-i phi} + n with
/// n complex standard normal and returns arg(beta). Holds the lossy weight
/// table so repeated draws stay O(d^2).
class SchemeSampler {
public:
    explicit SchemeSampler(const SchemeChannel& scheme);
    double draw(double phi, Rng& rng) const;

private:
    SchemeChannel scheme_;
    std::shared_ptr<const LossyFejerTable> table_;
};

/// One-shot draw; builds a SchemeSampler internally.
double sample_scheme_output(const SchemeChannel& scheme, double phi, Rng& rng);

/// The induced output density for a base dephasing density.
std::shared_ptr<const CircularDensity> induced_density(
    const SchemeChannel& scheme, std::shared_ptr<const CircularDensity> base);

}  // namespace phasekit
