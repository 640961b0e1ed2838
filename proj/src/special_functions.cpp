#include "phasekit/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include "phasekit/quadrature.hpp"

namespace phasekit {

double log_bessel_i0(double x) {
    if (!(x >= 0.0)) {
        throw std::invalid_argument("log_bessel_i0: argument must be >= 0");
    }
    if (x < 30.0) {
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int m = 1; m < 200; ++m) {
            term *= q / (static_cast<double>(m) * m);
            sum += term;
            if (term < sum * 1e-18) break;
        }
        return std::log(sum);
    }
    // I0(x) ~ e^x / sqrt(2 pi x) * sum_k a_k / x^k with
    // a_k = ((2k-1)!!)^2 / (k! 8^k); summed until the terms stop shrinking.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * odd * odd / (8.0 * k * x);
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return x - 0.5 * std::log(kTwoPi * x) + std::log(sum);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("normal_quantile: argument must lie in (0, 1)");
    }
    // Acklam's rational approximation (~1e-9), then one Halley step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (eps < p_low) {
        const double q = std::sqrt(-2.0 * std::log(eps));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (eps <= 1.0 - p_low) {
        const double q = eps - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - eps));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = normal_cdf(x) - eps;
    const double u = e * std::sqrt(kTwoPi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

}  // namespace phasekit
