#pragma once

#include <stdexcept>
#include <utility>

namespace phasekit {

struct ScalarMinimum {
    double argmin;
    double min;
};

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Unimodality is the caller's responsibility; every call site in this
/// library states why its objective qualifies. Guarantees
/// |argmin - true argmin| <= tol.
template <typename F>
ScalarMinimum minimize_unimodal(F&& g, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("minimize_unimodal: tol must be > 0");
    if (!(lo < hi)) throw std::invalid_argument("minimize_unimodal: need lo < hi");
    constexpr double invphi = 0.61803398874989484820;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = g(x1);
    double f2 = g(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = g(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, g(xm)};
}

}  // namespace phasekit
