#include "phasekit/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "phasekit/special_functions.hpp"

namespace phasekit {

double CircularDensity::log_pdf(double phi) const { return std::log(pdf(phi)); }

// ---------------------------------------------------------------------------
// Wrapped normal

WrappedNormal::WrappedNormal(double variance) : variance_(variance) {
    if (!(variance > 0.0)) {
        throw std::invalid_argument("WrappedNormal: variance must be > 0");
    }
}

namespace {

int wrapped_normal_terms(double variance, double phi) {
    const double reach = 6.0 * std::sqrt(variance) + std::abs(phi);
    return std::max(3, static_cast<int>(std::ceil(reach / kTwoPi)));
}

}  // namespace

double WrappedNormal::log_pdf(double phi) const {
    const int terms = wrapped_normal_terms(variance_, phi);
    // log-sum-exp over the image sum keeps the tail finite where the direct
    // sum would underflow.
    double peak = -std::numeric_limits<double>::infinity();
    for (int k = -terms; k <= terms; ++k) {
        const double d = phi + kTwoPi * k;
        peak = std::max(peak, -0.5 * d * d / variance_);
    }
    double sum = 0.0;
    for (int k = -terms; k <= terms; ++k) {
        const double d = phi + kTwoPi * k;
        sum += std::exp(-0.5 * d * d / variance_ - peak);
    }
    return peak + std::log(sum) - 0.5 * std::log(kTwoPi * variance_);
}

double WrappedNormal::pdf(double phi) const { return std::exp(log_pdf(phi)); }

// ---------------------------------------------------------------------------
// von Mises

VonMises::VonMises(double spread) : spread_(spread) {
    if (!(spread > 0.0)) {
        throw std::invalid_argument("VonMises: spread must be > 0");
    }
    log_norm_ = std::log(kTwoPi) + log_bessel_i0(1.0 / spread_);
}

double VonMises::log_pdf(double phi) const {
    return std::cos(phi) / spread_ - log_norm_;
}

double VonMises::pdf(double phi) const { return std::exp(log_pdf(phi)); }

// ---------------------------------------------------------------------------
// Wrapped Cauchy

WrappedCauchy::WrappedCauchy(double kappa) : kappa_(kappa) {
    if (!(kappa > 0.0)) {
        throw std::invalid_argument("WrappedCauchy: kappa must be > 0");
    }
    s_ = std::sqrt(kappa_);
}

double WrappedCauchy::pdf(double phi) const {
    // cosh(s) - cos(phi) = 2 (sinh^2(s/2) + sin^2(phi/2)); this form stays
    // accurate as both s and phi approach zero.
    const double sh = std::sinh(0.5 * s_);
    const double sn = std::sin(0.5 * phi);
    return std::sinh(s_) / (2.0 * kTwoPi * (sh * sh + sn * sn));
}

double WrappedCauchy::log_pdf(double phi) const {
    const double sh = std::sinh(0.5 * s_);
    const double sn = std::sin(0.5 * phi);
    return std::log(std::sinh(s_)) - std::log(sh * sh + sn * sn) -
           std::log(2.0 * kTwoPi);
}

// ---------------------------------------------------------------------------

double UniformDensity::log_pdf(double) const { return -std::log(kTwoPi); }

// ---------------------------------------------------------------------------
// Tabulated

TabulatedDensity::TabulatedDensity(std::vector<double> angles,
                                   std::vector<double> values)
    : angles_(std::move(angles)), values_(std::move(values)) {
    if (angles_.size() != values_.size() || angles_.size() < 2) {
        throw std::invalid_argument("TabulatedDensity: need >= 2 matching rows");
    }
    for (std::size_t i = 0; i < angles_.size(); ++i) {
        if (angles_[i] < -kPi || angles_[i] >= kPi) {
            throw std::invalid_argument("TabulatedDensity: angles must lie in [-pi, pi)");
        }
        if (i > 0 && angles_[i] <= angles_[i - 1]) {
            throw std::invalid_argument("TabulatedDensity: angles must be increasing");
        }
        if (!(values_[i] > 0.0)) {
            throw std::invalid_argument("TabulatedDensity: values must be > 0");
        }
    }
}

double TabulatedDensity::pdf(double phi) const {
    const double x = wrap_angle(phi);
    auto it = std::upper_bound(angles_.begin(), angles_.end(), x);
    double x0, x1, v0, v1;
    if (it == angles_.begin()) {
        // before the first knot: wrap from the last one
        x0 = angles_.back() - kTwoPi;
        v0 = values_.back();
        x1 = angles_.front();
        v1 = values_.front();
    } else if (it == angles_.end()) {
        x0 = angles_.back();
        v0 = values_.back();
        x1 = angles_.front() + kTwoPi;
        v1 = values_.front();
    } else {
        const auto j = static_cast<std::size_t>(it - angles_.begin());
        x0 = angles_[j - 1];
        v0 = values_[j - 1];
        x1 = angles_[j];
        v1 = values_[j];
    }
    const double t = (x - x0) / (x1 - x0);
    return v0 + t * (v1 - v0);
}

void TabulatedDensity::save_csv(std::ostream& out) const {
    out << "phi,pdf\n";
    char buf[80];
    for (std::size_t i = 0; i < angles_.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", angles_[i], values_[i]);
        out << buf;
    }
}

void TabulatedDensity::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("TabulatedDensity: cannot open " + path);
    save_csv(out);
}

TabulatedDensity TabulatedDensity::load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("TabulatedDensity: empty input");
    }
    if (line != "phi,pdf" && line != "phi,pdf\r") {
        throw std::runtime_error("TabulatedDensity: expected header 'phi,pdf'");
    }
    std::vector<double> angles, values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, v;
        if (!std::getline(row, a, ',') || !std::getline(row, v)) {
            throw std::runtime_error("TabulatedDensity: malformed row: " + line);
        }
        angles.push_back(std::stod(a));
        values.push_back(std::stod(v));
    }
    return TabulatedDensity(std::move(angles), std::move(values));
}

TabulatedDensity TabulatedDensity::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("TabulatedDensity: cannot open " + path);
    return load_csv(in);
}

// ---------------------------------------------------------------------------

std::shared_ptr<const CircularDensity> make_density(Family family, double param) {
    switch (family) {
        case Family::wrapped_normal:
            return std::make_shared<WrappedNormal>(param);
        case Family::von_mises:
            return std::make_shared<VonMises>(param);
        case Family::wrapped_cauchy:
            return std::make_shared<WrappedCauchy>(param);
    }
    throw std::invalid_argument("make_density: unknown family");
}

Family family_from_string(const std::string& name) {
    if (name == "wn" || name == "wrapped-normal") return Family::wrapped_normal;
    if (name == "vm" || name == "von-mises") return Family::von_mises;
    if (name == "wc" || name == "wrapped-cauchy") return Family::wrapped_cauchy;
    throw std::invalid_argument("unknown density family: " + name);
}

std::string to_string(Family family) {
    switch (family) {
        case Family::wrapped_normal: return "wrapped-normal";
        case Family::von_mises: return "von-mises";
        case Family::wrapped_cauchy: return "wrapped-cauchy";
    }
    return "?";
}

double l1_distance(const CircularDensity& a, const CircularDensity& b,
                   const QuadratureGrid& grid) {
    std::vector<double> brk = a.breakpoints();
    const auto bb = b.breakpoints();
    brk.insert(brk.end(), bb.begin(), bb.end());
    const int min_panels = std::max(64, grid.panels());
    return integrate_abs([&](double x) { return a.pdf(x) - b.pdf(x); },
                         std::move(brk), 2048, min_panels);
}

}  // namespace phasekit
