#include "phasekit/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "phasekit/optimize.hpp"
#include "phasekit/special_functions.hpp"

namespace phasekit {

namespace {

// Rebuild the grid so panel edges respect the densities' jump locations.
QuadratureGrid align_grid(std::initializer_list<const CircularDensity*> densities,
                          const QuadratureGrid& base) {
    std::vector<double> brk;
    for (const auto* d : densities) {
        const auto db = d->breakpoints();
        brk.insert(brk.end(), db.begin(), db.end());
    }
    if (brk.empty()) return base;
    return QuadratureGrid::aligned(brk, base.panels(), base.points_per_panel());
}

struct LogTable {
    std::vector<double> w;
    std::vector<double> lp;
    std::vector<double> lq;
};

LogTable tabulate(const CircularDensity& p, const CircularDensity& q,
                  const QuadratureGrid& grid, const char* op) {
    LogTable t;
    const auto& x = grid.nodes();
    t.w = grid.weights();
    t.lp.resize(x.size());
    t.lq.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        t.lp[i] = p.log_pdf(x[i]);
        t.lq[i] = q.log_pdf(x[i]);
        if (!std::isfinite(t.lp[i]) || !std::isfinite(t.lq[i])) {
            throw std::runtime_error(std::string(op) +
                                     ": non-finite log density at node phi=" +
                                     std::to_string(x[i]));
        }
    }
    return t;
}

// ln int p^a q^(1-a), evaluated with a max shift so extreme orders stay finite.
double log_mixture_integral(const LogTable& t, double a) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.w.size(); ++i) {
        peak = std::max(peak, a * t.lp[i] + (1.0 - a) * t.lq[i]);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < t.w.size(); ++i) {
        sum += t.w[i] * std::exp(a * t.lp[i] + (1.0 - a) * t.lq[i] - peak);
    }
    return peak + std::log(sum);
}

double kl_on(const LogTable& t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < t.w.size(); ++i) {
        acc += t.w[i] * std::exp(t.lp[i]) * (t.lp[i] - t.lq[i]);
    }
    return acc;
}

double kl_var_on(const LogTable& t, double mean) {
    double acc = 0.0;
    for (std::size_t i = 0; i < t.w.size(); ++i) {
        const double r = t.lp[i] - t.lq[i] - mean;
        acc += t.w[i] * std::exp(t.lp[i]) * r * r;
    }
    return acc;
}

}  // namespace

DivergenceReport relative_entropy(const CircularDensity& p, const CircularDensity& q,
                                  const QuadratureGrid& grid) {
    const auto g = align_grid({&p, &q}, grid);
    const auto full = tabulate(p, q, g, "relative_entropy");
    const auto half = tabulate(p, q, g.coarsened(), "relative_entropy");
    DivergenceReport rep;
    rep.value = kl_on(full);
    rep.quad_error = std::abs(rep.value - kl_on(half));
    return rep;
}

DivergenceReport relative_entropy_variance(const CircularDensity& p,
                                           const CircularDensity& q,
                                           const QuadratureGrid& grid) {
    const auto g = align_grid({&p, &q}, grid);
    const auto full = tabulate(p, q, g, "relative_entropy_variance");
    const auto half = tabulate(p, q, g.coarsened(), "relative_entropy_variance");
    DivergenceReport rep;
    rep.value = kl_var_on(full, kl_on(full));
    rep.quad_error = std::abs(rep.value - kl_var_on(half, kl_on(half)));
    return rep;
}

DivergenceReport renyi(const CircularDensity& p, const CircularDensity& q,
                       double alpha, const QuadratureGrid& grid) {
    if (alpha == 1.0) {
        throw std::invalid_argument("renyi: order 1 is the relative entropy");
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("renyi: order must be positive");
    }
    const auto g = align_grid({&p, &q}, grid);
    const auto full = tabulate(p, q, g, "renyi");
    const auto half = tabulate(p, q, g.coarsened(), "renyi");
    DivergenceReport rep;
    rep.value = log_mixture_integral(full, alpha) / (alpha - 1.0);
    rep.quad_error =
        std::abs(rep.value - log_mixture_integral(half, alpha) / (alpha - 1.0));
    return rep;
}

DivergenceReport chernoff(const CircularDensity& p, const CircularDensity& q,
                          const QuadratureGrid& grid) {
    const auto g = align_grid({&p, &q}, grid);
    const auto full = tabulate(p, q, g, "chernoff");
    const auto half = tabulate(p, q, g.coarsened(), "chernoff");
    // ln int p^s q^(1-s) is convex in s (Holder), so unimodal on [0, 1].
    const auto m = minimize_unimodal(
        [&](double s) { return log_mixture_integral(full, s); }, 0.0, 1.0, 1e-10);
    DivergenceReport rep;
    rep.value = -m.min;
    rep.optimizer = m.argmin;
    rep.quad_error = std::abs(m.min - log_mixture_integral(half, m.argmin));
    return rep;
}

DivergenceReport multivariate_chernoff(
    const std::vector<const CircularDensity*>& densities, const QuadratureGrid& grid) {
    const std::size_t count = densities.size();
    if (count < 2) {
        throw std::invalid_argument("multivariate_chernoff: need at least 2 densities");
    }
    if (count == 2) {
        auto rep = chernoff(*densities[0], *densities[1], grid);
        rep.simplex_optimizer = {*rep.optimizer, 1.0 - *rep.optimizer};
        return rep;
    }
    std::vector<double> brk;
    for (const auto* d : densities) {
        const auto db = d->breakpoints();
        brk.insert(brk.end(), db.begin(), db.end());
    }
    const QuadratureGrid g =
        brk.empty() ? grid : QuadratureGrid::aligned(brk, grid.panels(), grid.points_per_panel());

    const auto& x = g.nodes();
    const auto& w = g.weights();
    std::vector<std::vector<double>> logs(count, std::vector<double>(x.size()));
    for (std::size_t j = 0; j < count; ++j) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            logs[j][i] = densities[j]->log_pdf(x[i]);
            if (!std::isfinite(logs[j][i])) {
                throw std::runtime_error(
                    "multivariate_chernoff: non-finite log density at node phi=" +
                    std::to_string(x[i]));
            }
        }
    }
    // ln int prod p_i^(s_i) and its gradient at the simplex point s.
    auto objective = [&](const std::vector<double>& s, std::vector<double>* gradient) {
        std::vector<double> e(x.size(), 0.0);
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < x.size(); ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < count; ++j) acc += s[j] * logs[j][i];
            e[i] = acc;
            peak = std::max(peak, acc);
        }
        double mass = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            e[i] = w[i] * std::exp(e[i] - peak);
            mass += e[i];
        }
        if (gradient) {
            for (std::size_t j = 0; j < count; ++j) {
                double acc = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) acc += e[i] * logs[j][i];
                (*gradient)[j] = acc / mass;
            }
        }
        return peak + std::log(mass);
    };

    std::vector<double> s(count, 1.0 / static_cast<double>(count));
    std::vector<double> gradient(count);
    double value = objective(s, &gradient);
    for (int it = 0; it < 500; ++it) {
        std::vector<double> next(count);
        double norm = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            next[j] = s[j] * std::exp(-0.5 * gradient[j]);
            norm += next[j];
        }
        double move = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            next[j] /= norm;
            move = std::max(move, std::abs(next[j] - s[j]));
        }
        s = std::move(next);
        value = objective(s, &gradient);
        if (move < 1e-9) break;
    }

    DivergenceReport rep;
    rep.value = -value;
    rep.simplex_optimizer = s;
    // error estimate: same simplex point on the coarsened grid
    const QuadratureGrid gh = g.coarsened();
    const auto& xh = gh.nodes();
    const auto& wh = gh.weights();
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> eh(xh.size());
    for (std::size_t i = 0; i < xh.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < count; ++j) acc += s[j] * densities[j]->log_pdf(xh[i]);
        eh[i] = acc;
        peak = std::max(peak, acc);
    }
    double mass = 0.0;
    for (std::size_t i = 0; i < xh.size(); ++i) mass += wh[i] * std::exp(eh[i] - peak);
    rep.quad_error = std::abs(value - (peak + std::log(mass)));
    return rep;
}

double fisher_information(Family family, double theta, double delta,
                          const QuadratureGrid& grid) {
    if (delta <= 0.0) delta = 1e-3 * std::max(theta, 1.0);
    if (!(theta - delta > 0.0)) {
        throw std::invalid_argument("fisher_information: theta - delta must stay positive");
    }
    const auto center = make_density(family, theta);
    const auto plus = make_density(family, theta + delta);
    const auto minus = make_density(family, theta - delta);
    return integrate_periodic(
        [&](double x) {
            const double score =
                (plus->log_pdf(x) - minus->log_pdf(x)) / (2.0 * delta);
            return center->pdf(x) * score * score;
        },
        grid);
}

double stein_second_order(const CircularDensity& p, const CircularDensity& q,
                          std::size_t n, double eps, const QuadratureGrid& grid) {
    if (n < 1) throw std::invalid_argument("stein_second_order: n must be >= 1");
    const double d = relative_entropy(p, q, grid).value;
    const double v = relative_entropy_variance(p, q, grid).value;
    const double nn = static_cast<double>(n);
    return d + std::sqrt(std::max(v, 0.0) / nn) * normal_quantile(eps) +
           std::log(nn) / (2.0 * nn);
}

DivergenceReport strong_converse_exponent(const CircularDensity& p,
                                          const CircularDensity& q, double r,
                                          const QuadratureGrid& grid) {
    if (!(r > 0.0)) throw std::invalid_argument("strong_converse_exponent: r must be > 0");
    const auto g = align_grid({&p, &q}, grid);
    const auto full = tabulate(p, q, g, "strong_converse_exponent");
    const auto half = tabulate(p, q, g.coarsened(), "strong_converse_exponent");
    // h(u) = u r - (1-u) ln I(1/(1-u)) is concave in u (ln I is convex and
    // the second term is its perspective), so -h is unimodal.
    auto negated = [&](const LogTable& t) {
        return [&t, r](double u) {
            const double alpha = 1.0 / (1.0 - u);
            return -(u * r - (1.0 - u) * log_mixture_integral(t, alpha));
        };
    };
    const auto m = minimize_unimodal(negated(full), 1e-9, 1.0 - 1e-9, 1e-10);
    DivergenceReport rep;
    rep.value = -m.min;
    rep.optimizer = 1.0 / (1.0 - m.argmin);
    rep.quad_error = std::abs(m.min - negated(half)(m.argmin));
    return rep;
}

DivergenceReport hoeffding_exponent(const CircularDensity& p,
                                    const CircularDensity& q, double r,
                                    const QuadratureGrid& grid) {
    if (!(r > 0.0)) throw std::invalid_argument("hoeffding_exponent: r must be > 0");
    const auto g = align_grid({&p, &q}, grid);
    const auto full = tabulate(p, q, g, "hoeffding_exponent");
    const auto half = tabulate(p, q, g.coarsened(), "hoeffding_exponent");
    // G(alpha) = [(alpha-1) r - ln I(alpha)] / alpha. With k = -ln I (concave),
    // alpha^2 G'(alpha) = r + alpha k'(alpha) - k(alpha), which is strictly
    // decreasing, so G' changes sign at most once and G is unimodal.
    auto negated = [&](const LogTable& t) {
        return [&t, r](double alpha) {
            return -(((alpha - 1.0) * r - log_mixture_integral(t, alpha)) / alpha);
        };
    };
    const auto m = minimize_unimodal(negated(full), 1e-9, 1.0 - 1e-9, 1e-10);
    DivergenceReport rep;
    rep.value = -m.min;
    rep.optimizer = m.argmin;
    rep.quad_error = std::abs(m.min - negated(half)(m.argmin));
    return rep;
}

DivergenceReport min_pairwise_chernoff(
    const std::vector<const CircularDensity*>& densities, const QuadratureGrid& grid) {
    if (densities.size() < 2) {
        throw std::invalid_argument("min_pairwise_chernoff: need at least 2 densities");
    }
    DivergenceReport best;
    best.value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < densities.size(); ++i) {
        for (std::size_t j = i + 1; j < densities.size(); ++j) {
            auto rep = chernoff(*densities[i], *densities[j], grid);
            if (rep.value < best.value) {
                best = rep;
                best.pair = {static_cast<int>(i), static_cast<int>(j)};
            }
        }
    }
    return best;
}

double bayes_error_exact_n1(const CircularDensity& p, const CircularDensity& q,
                            double lambda, const QuadratureGrid& grid) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("bayes_error_exact_n1: prior must lie in (0, 1)");
    }
    std::vector<double> brk = p.breakpoints();
    const auto qb = q.breakpoints();
    brk.insert(brk.end(), qb.begin(), qb.end());
    const double norm = integrate_abs(
        [&](double x) { return lambda * p.pdf(x) - (1.0 - lambda) * q.pdf(x); },
        std::move(brk), 2048, std::max(64, grid.panels()));
    return 0.5 * (1.0 - norm);
}

}  // namespace phasekit
