#include "phasekit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phasekit {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    gen_.seed(seq);
}

double Rng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 < 1, so finite
    const double angle = kTwoPi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

InverseCdfSampler::InverseCdfSampler(const CircularDensity& density, int cells)
    : density_(density) {
    if (cells < 16) throw std::invalid_argument("InverseCdfSampler: too few cells");
    step_ = kTwoPi / cells;
    pdf_.resize(cells + 1);
    cdf_.resize(cells + 1);
    for (int j = 0; j <= cells; ++j) {
        const double x = -kPi + j * step_;
        pdf_[j] = density.pdf(x);
        if (!(pdf_[j] >= 0.0) || !std::isfinite(pdf_[j])) {
            throw std::runtime_error("InverseCdfSampler: bad pdf value at phi=" +
                                     std::to_string(x));
        }
    }
    cdf_[0] = 0.0;
    for (int j = 1; j <= cells; ++j) {
        cdf_[j] = cdf_[j - 1] + 0.5 * (pdf_[j - 1] + pdf_[j]) * step_;
    }
    total_ = cdf_.back();
    if (!(total_ > 0.0)) {
        throw std::runtime_error("InverseCdfSampler: density integrates to zero");
    }
}

double InverseCdfSampler::draw(Rng& rng) const {
    const double u = rng.uniform() * total_;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t j = (it == cdf_.begin()) ? 0 : static_cast<std::size_t>(it - cdf_.begin()) - 1;
    if (j >= cdf_.size() - 1) j = cdf_.size() - 2;
    const double lo = -kPi + j * step_;
    const double mass = cdf_[j + 1] - cdf_[j];
    double x = lo + (mass > 0.0 ? (u - cdf_[j]) / mass * step_ : 0.5 * step_);
    // One Newton correction: trapezoid estimate of the in-cell mass vs u.
    const double px = density_.pdf(x);
    if (px > 0.0) {
        const double local = cdf_[j] + 0.5 * (pdf_[j] + px) * (x - lo);
        x -= (local - u) / px;
        x = std::clamp(x, lo, lo + step_);
    }
    if (x >= kPi) x = std::nextafter(kPi, -kPi);
    if (x < -kPi) x = -kPi;
    return x;
}

std::vector<double> InverseCdfSampler::sample(std::uint64_t seed, std::size_t n) const {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = draw(rng);
    return out;
}

double InverseCdfSampler::cdf(double phi) const {
    const double x = std::clamp(phi, -kPi, kPi);
    const double pos = (x + kPi) / step_;
    auto j = static_cast<std::size_t>(pos);
    if (j >= cdf_.size() - 1) j = cdf_.size() - 2;
    const double frac = pos - static_cast<double>(j);
    return (cdf_[j] + frac * (cdf_[j + 1] - cdf_[j])) / total_;
}

std::vector<double> sample(const CircularDensity& density, std::uint64_t seed,
                           std::size_t n) {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    return InverseCdfSampler(density).sample(seed, n);
}

}  // namespace phasekit
