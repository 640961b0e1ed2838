#include "phasekit/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace phasekit {

double wrap_angle(double x) {
    double y = std::fmod(x + kPi, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    return y - kPi;
}

double positive_mod_2pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    if (y >= kTwoPi) y = 0.0;  // guard against rounding at the seam
    return y;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration on P_n, starting from the Chebyshev-like estimate.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

namespace {

// Per-order cache of the reference rule on [-1, 1].
const std::pair<std::vector<double>, std::vector<double>>& reference_rule(int n) {
    static std::mutex mu;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<double> x, w;
        gauss_legendre(n, x, w);
        it = cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first;
    }
    return it->second;
}

}  // namespace

QuadratureGrid::QuadratureGrid(std::vector<double> edges, int subdivisions,
                               int points_per_panel)
    : edges_(std::move(edges)),
      subdivisions_(subdivisions),
      points_per_panel_(points_per_panel) {
    if (subdivisions_ < 1) subdivisions_ = 1;
    if (points_per_panel_ < 1) {
        throw std::invalid_argument("QuadratureGrid: points_per_panel must be >= 1");
    }
    const auto& [rx, rw] = reference_rule(points_per_panel_);
    panel_count_ = static_cast<int>(edges_.size() - 1) * subdivisions_;
    nodes_.reserve(static_cast<std::size_t>(panel_count_) * points_per_panel_);
    weights_.reserve(nodes_.capacity());
    for (std::size_t s = 0; s + 1 < edges_.size(); ++s) {
        const double a = edges_[s];
        const double b = edges_[s + 1];
        const double step = (b - a) / subdivisions_;
        for (int j = 0; j < subdivisions_; ++j) {
            const double lo = a + j * step;
            const double mid = lo + 0.5 * step;
            const double scale = 0.5 * step;
            for (int k = 0; k < points_per_panel_; ++k) {
                nodes_.push_back(mid + scale * rx[k]);
                weights_.push_back(scale * rw[k]);
            }
        }
    }
}

const QuadratureGrid& default_grid() {
    static const QuadratureGrid grid = QuadratureGrid::periodic(64, 16);
    return grid;
}

QuadratureGrid QuadratureGrid::periodic(int panels, int points_per_panel) {
    if (panels < 1) throw std::invalid_argument("QuadratureGrid: panels must be >= 1");
    return QuadratureGrid({-kPi, kPi}, panels, points_per_panel);
}

QuadratureGrid QuadratureGrid::aligned(const std::vector<double>& breakpoints,
                                       int min_panels, int points_per_panel) {
    std::vector<double> edges;
    edges.reserve(breakpoints.size() + 2);
    edges.push_back(-kPi);
    edges.push_back(kPi);
    for (double b : breakpoints) {
        if (b > -kPi && b < kPi) edges.push_back(b);
    }
    std::sort(edges.begin(), edges.end());
    std::vector<double> dedup;
    for (double e : edges) {
        if (dedup.empty() || e - dedup.back() > 1e-12) dedup.push_back(e);
    }
    if (dedup.back() < kPi) dedup.push_back(kPi);
    const int segments = static_cast<int>(dedup.size()) - 1;
    const int sub = std::max(1, (min_panels + segments - 1) / segments);
    return QuadratureGrid(std::move(dedup), sub, points_per_panel);
}

QuadratureGrid QuadratureGrid::coarsened() const {
    return QuadratureGrid(edges_, std::max(1, subdivisions_ / 2), points_per_panel_);
}

QuadratureGrid QuadratureGrid::refined() const {
    return QuadratureGrid(edges_, 2 * subdivisions_, points_per_panel_);
}

}  // namespace phasekit
