#pragma once

namespace phasekit {

/// ln I0(x), the log of the modified Bessel function of the first kind,
/// order zero. Power series below x = 30 (all terms positive, no
/// cancellation), asymptotic expansion above. Relative error <= 1e-12 on
/// the value of I0. Requires x >= 0.
double log_bessel_i0(double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF on (0, 1). Rational initial estimate
/// followed by one Halley correction against normal_cdf; absolute error
/// well below 1e-9 across the domain. Throws std::invalid_argument
/// outside (0, 1).
double normal_quantile(double eps);

}  // namespace phasekit
