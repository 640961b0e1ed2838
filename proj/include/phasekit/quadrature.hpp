#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace phasekit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wrap an angle into [-pi, pi).
double wrap_angle(double x);

/// Nonnegative residue: min{x + 2*pi*k : x + 2*pi*k >= 0}, result in [0, 2*pi).
double positive_mod_2pi(double x);

/// Fixed Gauss-Legendre panel rule on [-pi, pi].
///
/// The interval is split at `breakpoints` (hard panel edges that are never
/// crossed by a panel) and each segment is further subdivided; every panel
/// carries a Gauss-Legendre rule of `points_per_panel` nodes. Integrands that
/// are smooth between breakpoints are integrated to near machine precision.
class QuadratureGrid {
public:
    /// Uniform grid: `panels` equal subintervals of [-pi, pi].
    static QuadratureGrid periodic(int panels = 64, int points_per_panel = 16);

    /// Grid whose panel edges include every breakpoint (angles in [-pi, pi)).
    /// Segments are subdivided so the total panel count is at least
    /// `min_panels`.
    static QuadratureGrid aligned(const std::vector<double>& breakpoints,
                                  int min_panels = 64,
                                  int points_per_panel = 16);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    int panels() const { return panel_count_; }
    int points_per_panel() const { return points_per_panel_; }

    /// Same panel edges, half the subdivisions per segment. Used for the
    /// quadrature-error estimate |I(grid) - I(coarsened grid)|.
    QuadratureGrid coarsened() const;

    /// Same panel edges, twice the subdivisions per segment.
    QuadratureGrid refined() const;

private:
    QuadratureGrid(std::vector<double> edges, int subdivisions,
                   int points_per_panel);

    std::vector<double> edges_;   // hard segment boundaries, first=-pi, last=pi
    int subdivisions_;            // subpanels per segment
    int points_per_panel_;
    int panel_count_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Shared default grid: 64 panels of 16-point Gauss-Legendre (1024 nodes).
/// Adequate for every smooth integrand in this library; piecewise densities
/// are handled by breakpoint-aligned grids.
const QuadratureGrid& default_grid();

struct IntegralEstimate {
    double value;
    double error;  // |value - value on coarsened grid|
};

/// Sum of w_i * f(node_i). Throws std::runtime_error naming the node if f is
/// non-finite there.
template <typename F>
double integrate_periodic(F&& f, const QuadratureGrid& grid) {
    const auto& x = grid.nodes();
    const auto& w = grid.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = f(x[i]);
        if (!std::isfinite(v)) {
            throw std::runtime_error(
                "integrate_periodic: non-finite integrand at node phi=" +
                std::to_string(x[i]));
        }
        acc += w[i] * v;
    }
    return acc;
}

template <typename F>
IntegralEstimate integrate_with_error(F&& f, const QuadratureGrid& grid) {
    const double full = integrate_periodic(f, grid);
    const double half = integrate_periodic(f, grid.coarsened());
    return {full, std::abs(full - half)};
}

/// Integral of |f| over [-pi, pi]. Sign changes of f are located by scanning
/// `probes` points between consecutive hard breakpoints and bisecting, then
/// the integration panels are aligned to both, so each panel sees a smooth
/// integrand.
template <typename F>
double integrate_abs(F&& f, std::vector<double> breakpoints, int probes = 2048,
                     int min_panels = 64) {
    breakpoints.push_back(-kPi);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                      breakpoints.end());
    std::vector<double> edges = breakpoints;
    const double h = kTwoPi / probes;
    double prev_x = -kPi;
    double prev_f = f(prev_x + 1e-13);
    for (int i = 1; i <= probes; ++i) {
        double x = -kPi + i * h;
        // keep probe points strictly inside segments
        const double fx = f(x);
        if (prev_f * fx < 0.0) {
            double a = prev_x, b = x, fa = prev_f;
            for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if (fa * fm <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            edges.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = fx;
    }
    auto grid = QuadratureGrid::aligned(edges, min_panels);
    return integrate_periodic([&](double x) { return std::abs(f(x)); }, grid);
}

}  // namespace phasekit
