#include "phasekit/schemes.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace phasekit {

double fejer_component(int d, int k, double phi) {
    if (d < 2) throw std::invalid_argument("fejer_component: need d >= 2");
    const double x = std::remainder(kTwoPi * k / d - phi, kTwoPi);
    const double sh = std::sin(0.5 * x);
    if (std::abs(sh) < 1e-7) {
        // removable singularity: F_d(x)/d with F_d(x) ~ d (1 - (d^2-1) x^2 / 12)
        return 1.0 - (static_cast<double>(d) * d - 1.0) * x * x / 12.0;
    }
    const double sn = std::sin(0.5 * d * x);
    return sn * sn / (static_cast<double>(d) * d * sh * sh);
}

std::vector<double> fejer_pmf(int d, double phi) {
    if (d < 2) throw std::invalid_argument("fejer_pmf: need d >= 2");
    std::vector<double> pmf(d);
    for (int k = 0; k < d; ++k) pmf[k] = fejer_component(d, k, phi);
    return pmf;
}

int active_fourier_index(int d, double phi_hat) {
    const double pos = positive_mod_2pi(phi_hat);
    int k = static_cast<int>(std::floor(d * pos / kTwoPi));
    if (k >= d) k = d - 1;
    if (k < 0) k = 0;
    return k;
}

double smoothed_conditional(int d, double phi_hat, double phi) {
    const int k = active_fourier_index(d, phi_hat);
    return d / kTwoPi * fejer_component(d, k, phi);
}

namespace {

QuadratureGrid photon_grid(int d) {
    return QuadratureGrid::periodic(std::max(64, 2 * d), 16);
}

}  // namespace

double induced_density_photon(int d, const CircularDensity& base, double phi_hat,
                              const QuadratureGrid* grid) {
    const QuadratureGrid g = grid ? *grid : photon_grid(d);
    const int k = active_fourier_index(d, phi_hat);
    return d / kTwoPi *
           integrate_periodic(
               [&](double phi) { return base.pdf(phi) * fejer_component(d, k, phi); },
               g);
}

double rician_conditional(double alpha, double phi_hat, double phi) {
    if (!(alpha >= 0.0)) {
        throw std::invalid_argument("rician_conditional: amplitude must be >= 0");
    }
    const double delta = phi_hat - phi;
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    const double ac = alpha * c;
    // 1 + erf(ac) evaluated as erfc(-ac) for negative ac to avoid the 1 - 1
    // cancellation deep in the tail.
    const double one_plus_erf = ac >= 0.0 ? 1.0 + std::erf(ac) : std::erfc(-ac);
    return std::exp(-alpha * alpha) / kTwoPi +
           0.5 * alpha / std::sqrt(kPi) * c * std::exp(-alpha * alpha * s * s) *
               one_plus_erf;
}

double induced_density_coherent(double alpha, const CircularDensity& base,
                                double phi_hat, const QuadratureGrid* grid) {
    const QuadratureGrid& g = grid ? *grid : default_grid();
    return integrate_periodic(
        [&](double phi) { return base.pdf(phi) * rician_conditional(alpha, phi_hat, phi); },
        g);
}

// ---------------------------------------------------------------------------
// Lossy Fourier measurement

LossyFejerTable::LossyFejerTable(int d, double eta) : d_(d), eta_(eta) {
    if (d < 2) throw std::invalid_argument("LossyFejerTable: need d >= 2");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("LossyFejerTable: eta must lie in [0, 1]");
    }
    // weight(m, n) = sum_l eta^((m+n)/2 - l) (1-eta)^l sqrt(C(m,l) C(n,l));
    // only the sums along each diagonal offset enter the pmf.
    std::vector<std::vector<double>> log_binom(d_);
    for (int m = 0; m < d_; ++m) {
        log_binom[m].resize(m + 1);
        for (int l = 0; l <= m; ++l) {
            log_binom[m][l] = std::lgamma(m + 1.0) - std::lgamma(l + 1.0) -
                              std::lgamma(m - l + 1.0);
        }
    }
    diag_.assign(d_, 0.0);
    const double log_eta = eta_ > 0.0 ? std::log(eta_) : 0.0;
    const double log_loss = eta_ < 1.0 ? std::log(1.0 - eta_) : 0.0;
    for (int m = 0; m < d_; ++m) {
        for (int n = 0; n <= m; ++n) {
            double w;
            if (eta_ == 1.0) {
                w = 1.0;  // only l = 0 survives
            } else if (eta_ == 0.0) {
                w = (m == n) ? 1.0 : 0.0;  // vacuum output
            } else {
                w = 0.0;
                for (int l = 0; l <= n; ++l) {
                    w += std::exp((0.5 * (m + n) - l) * log_eta + l * log_loss +
                                  0.5 * (log_binom[m][l] + log_binom[n][l]));
                }
            }
            // offsets m-n and n-m contribute the same cosine
            diag_[m - n] += (m == n) ? w : 2.0 * w;
        }
    }
}

std::vector<double> LossyFejerTable::pmf(double phi) const {
    std::vector<double> pmf(d_);
    double sum = 0.0;
    for (int k = 0; k < d_; ++k) {
        const double x = kTwoPi * k / d_ - phi;
        double acc = diag_[0];
        for (int offset = 1; offset < d_; ++offset) {
            acc += diag_[offset] * std::cos(offset * x);
        }
        pmf[k] = acc / (static_cast<double>(d_) * d_);
        if (pmf[k] < -1e-9) {
            throw std::runtime_error("lossy_fejer_pmf: negative component " +
                                     std::to_string(pmf[k]));
        }
        if (pmf[k] < 0.0) pmf[k] = 0.0;
        sum += pmf[k];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::runtime_error("lossy_fejer_pmf: mass " + std::to_string(sum) +
                                 " deviates from 1 beyond tolerance");
    }
    for (auto& v : pmf) v /= sum;
    return pmf;
}

std::vector<double> lossy_fejer_pmf(int d, double eta, double phi) {
    return LossyFejerTable(d, eta).pmf(phi);
}

// ---------------------------------------------------------------------------
// Induced densities

std::vector<double> fejer_breakpoints(int d) {
    std::vector<double> brk;
    brk.reserve(d);
    for (int k = 0; k < d; ++k) brk.push_back(wrap_angle(kTwoPi * k / d));
    std::sort(brk.begin(), brk.end());
    return brk;
}

PhotonInducedDensity::PhotonInducedDensity(int d,
                                           std::shared_ptr<const CircularDensity> base,
                                           const QuadratureGrid* grid)
    : d_(d), base_(std::move(base)) {
    if (d < 2) throw std::invalid_argument("PhotonInducedDensity: need d >= 2");
    const QuadratureGrid g = grid ? *grid : photon_grid(d_);
    pbar_.resize(d_);
    for (int k = 0; k < d_; ++k) {
        pbar_[k] = integrate_periodic(
            [&](double phi) { return base_->pdf(phi) * fejer_component(d_, k, phi); },
            g);
    }
}

double PhotonInducedDensity::pdf(double phi_hat) const {
    return d_ / kTwoPi * pbar_[active_fourier_index(d_, phi_hat)];
}

std::vector<double> PhotonInducedDensity::breakpoints() const {
    return fejer_breakpoints(d_);
}

LossyFejerInducedDensity::LossyFejerInducedDensity(
    int d, double eta, std::shared_ptr<const CircularDensity> base,
    const QuadratureGrid* grid)
    : d_(d), eta_(eta), base_(std::move(base)) {
    const LossyFejerTable table(d, eta);
    const QuadratureGrid g = grid ? *grid : photon_grid(d_);
    const auto& x = g.nodes();
    const auto& w = g.weights();
    pbar_.assign(d_, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double b = base_->pdf(x[i]);
        const auto pmf = table.pmf(x[i]);
        for (int k = 0; k < d_; ++k) pbar_[k] += w[i] * b * pmf[k];
    }
}

double LossyFejerInducedDensity::pdf(double phi_hat) const {
    return d_ / kTwoPi * pbar_[active_fourier_index(d_, phi_hat)];
}

std::vector<double> LossyFejerInducedDensity::breakpoints() const {
    return fejer_breakpoints(d_);
}

CoherentInducedDensity::CoherentInducedDensity(
    double alpha, std::shared_ptr<const CircularDensity> base,
    const QuadratureGrid* grid)
    : alpha_(alpha),
      base_(std::move(base)),
      grid_(grid ? *grid : default_grid()) {
    if (!(alpha >= 0.0)) {
        throw std::invalid_argument("CoherentInducedDensity: amplitude must be >= 0");
    }
}

double CoherentInducedDensity::pdf(double phi_hat) const {
    const auto key = std::bit_cast<std::uint64_t>(phi_hat);
    {
        std::lock_guard lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    const double value = integrate_periodic(
        [&](double phi) {
            return base_->pdf(phi) * rician_conditional(alpha_, phi_hat, phi);
        },
        grid_);
    std::lock_guard lock(mu_);
    memo_.emplace(key, value);
    return value;
}

// ---------------------------------------------------------------------------
// Sampling from the scheme conditionals

namespace {

double sample_fourier_output(int d, const std::vector<double>& pmf, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    int k = d - 1;
    for (int i = 0; i < d; ++i) {
        acc += pmf[i];
        if (u < acc) {
            k = i;
            break;
        }
    }
    const double noise = rng.uniform() * kTwoPi / d;
    return wrap_angle(kTwoPi * k / d + noise);
}

}  // namespace

SchemeSampler::SchemeSampler(const SchemeChannel& scheme) : scheme_(scheme) {
    if (const auto* lossy = std::get_if<LossyFejerScheme>(&scheme_)) {
        table_ = std::make_shared<LossyFejerTable>(lossy->d, lossy->eta);
    }
}

double SchemeSampler::draw(double phi, Rng& rng) const {
    if (const auto* fej = std::get_if<FejerScheme>(&scheme_)) {
        return sample_fourier_output(fej->d, fejer_pmf(fej->d, phi), rng);
    }
    if (const auto* ric = std::get_if<RicianScheme>(&scheme_)) {
        const double re = ric->alpha * std::cos(phi) + std::sqrt(0.5) * rng.normal();
        const double im = -ric->alpha * std::sin(phi) + std::sqrt(0.5) * rng.normal();
        double angle = std::atan2(im, re);
        if (angle >= kPi) angle -= kTwoPi;
        return angle;
    }
    const auto& lossy = std::get<LossyFejerScheme>(scheme_);
    return sample_fourier_output(lossy.d, table_->pmf(phi), rng);
}

double sample_scheme_output(const SchemeChannel& scheme, double phi, Rng& rng) {
    return SchemeSampler(scheme).draw(phi, rng);
}

std::shared_ptr<const CircularDensity> induced_density(
    const SchemeChannel& scheme, std::shared_ptr<const CircularDensity> base) {
    if (const auto* fej = std::get_if<FejerScheme>(&scheme)) {
        return std::make_shared<PhotonInducedDensity>(fej->d, std::move(base));
    }
    if (const auto* ric = std::get_if<RicianScheme>(&scheme)) {
        return std::make_shared<CoherentInducedDensity>(ric->alpha, std::move(base));
    }
    const auto& lossy = std::get<LossyFejerScheme>(scheme);
    return std::make_shared<LossyFejerInducedDensity>(lossy.d, lossy.eta, std::move(base));
}

}  // namespace phasekit
