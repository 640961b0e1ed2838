#include "phasekit/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "phasekit/divergences.hpp"
#include "phasekit/optimize.hpp"
#include "phasekit/parallel.hpp"
#include "phasekit/sampling.hpp"

namespace phasekit {

int worker_count() {
    if (const char* env = std::getenv("PHASEKIT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

constexpr int kBlocks = 64;

void validate(const TestSpec& spec) {
    if (!(spec.prior > 0.0 && spec.prior < 1.0)) {
        throw std::invalid_argument("TestSpec: prior/level must lie in (0, 1)");
    }
    if (spec.n < 1) throw std::invalid_argument("TestSpec: n must be >= 1");
    if (spec.trials < 100) throw std::invalid_argument("TestSpec: trials must be >= 100");
}

int block_trials(int trials, int b) {
    return trials / kBlocks + (b < trials % kBlocks ? 1 : 0);
}

std::uint64_t stream_id(int lane, int block) {
    return (static_cast<std::uint64_t>(lane) << 32) | static_cast<std::uint64_t>(block);
}

double binomial_ci(double p_hat, int trials) {
    return 1.96 * std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / trials);
}

// Error counts of the prior-weighted LR test under one hypothesis.
// decide p iff T + log_prior_ratio >= 0, T = sum ln(p/q).
template <typename DrawSample>
long count_lr_errors(const CircularDensity& p, const CircularDensity& q,
                     const TestSpec& spec, int lane, bool truth_is_p,
                     const DrawSample& draw) {
    const double shift = std::log(spec.prior) - std::log1p(-spec.prior);
    std::vector<long> errors(kBlocks, 0);
    parallel_blocks(kBlocks, [&](int b) {
        Rng rng(spec.seed, stream_id(lane, b));
        const int nt = block_trials(spec.trials, b);
        long bad = 0;
        for (int t = 0; t < nt; ++t) {
            double lr = 0.0;
            for (int i = 0; i < spec.n; ++i) {
                const double x = draw(truth_is_p, rng);
                lr += p.log_pdf(x) - q.log_pdf(x);
            }
            const bool decide_p = lr + shift >= 0.0;
            if (decide_p != truth_is_p) ++bad;
        }
        errors[b] = bad;
    });
    long total = 0;
    for (long e : errors) total += e;
    return total;
}

template <typename DrawSample>
TestOutcome run_bayes(const CircularDensity& p, const CircularDensity& q,
                      const TestSpec& spec, const DrawSample& draw) {
    validate(spec);
    TestOutcome out;
    const long ea = count_lr_errors(p, q, spec, 0, true, draw);
    const long eb = count_lr_errors(p, q, spec, 1, false, draw);
    out.alpha_hat = static_cast<double>(ea) / spec.trials;
    out.beta_hat = static_cast<double>(eb) / spec.trials;
    out.alpha_ci = binomial_ci(out.alpha_hat, spec.trials);
    out.beta_ci = binomial_ci(out.beta_hat, spec.trials);
    out.achieved_threshold = std::log1p(-spec.prior) - std::log(spec.prior);
    return out;
}

}  // namespace

TestOutcome bayes_test(const CircularDensity& p, const CircularDensity& q,
                       const TestSpec& spec) {
    const InverseCdfSampler sp(p);
    const InverseCdfSampler sq(q);
    return run_bayes(p, q, spec,
                     [&](bool truth_is_p, Rng& rng) {
                         return truth_is_p ? sp.draw(rng) : sq.draw(rng);
                     });
}

TestOutcome neyman_pearson(const CircularDensity& p, const CircularDensity& q,
                           const TestSpec& spec) {
    validate(spec);
    const double eps = spec.prior;
    const InverseCdfSampler sp(p);
    const InverseCdfSampler sq(q);

    auto lr_sum = [&](const InverseCdfSampler& sampler, Rng& rng) {
        double lr = 0.0;
        for (int i = 0; i < spec.n; ++i) {
            const double x = sampler.draw(rng);
            lr += p.log_pdf(x) - q.log_pdf(x);
        }
        return lr;
    };

    // Calibration under p (stream lane 0).
    std::vector<std::vector<double>> chunks(kBlocks);
    parallel_blocks(kBlocks, [&](int b) {
        Rng rng(spec.seed, stream_id(0, b));
        const int nt = block_trials(spec.trials, b);
        chunks[b].reserve(nt);
        for (int t = 0; t < nt; ++t) chunks[b].push_back(lr_sum(sp, rng));
    });
    std::vector<double> stats;
    stats.reserve(spec.trials);
    for (const auto& c : chunks) stats.insert(stats.end(), c.begin(), c.end());
    std::sort(stats.begin(), stats.end());
    const auto rank = static_cast<std::size_t>(
        std::max<long>(1, static_cast<long>(std::ceil(eps * spec.trials))));
    const double threshold = stats[rank - 1];
    const auto below =
        std::lower_bound(stats.begin(), stats.end(), threshold) - stats.begin();

    // Fresh draws under q (stream lane 1): decide p iff T >= threshold.
    std::vector<long> misses(kBlocks, 0);
    parallel_blocks(kBlocks, [&](int b) {
        Rng rng(spec.seed, stream_id(1, b));
        const int nt = block_trials(spec.trials, b);
        long bad = 0;
        for (int t = 0; t < nt; ++t) {
            if (lr_sum(sq, rng) >= threshold) ++bad;
        }
        misses[b] = bad;
    });
    long miss_total = 0;
    for (long m : misses) miss_total += m;

    TestOutcome out;
    out.alpha_hat = static_cast<double>(below) / spec.trials;
    out.beta_hat = static_cast<double>(miss_total) / spec.trials;
    out.alpha_ci = binomial_ci(out.alpha_hat, spec.trials);
    out.beta_ci = binomial_ci(out.beta_hat, spec.trials);
    out.achieved_threshold = threshold;
    return out;
}

TestOutcome scheme_end_to_end(const SchemeChannel& scheme, const CircularDensity& p,
                              const CircularDensity& q, const TestSpec& spec) {
    validate(spec);
    // Non-owning aliases: the induced models only live for this call.
    auto alias_p = std::shared_ptr<const CircularDensity>(&p, [](auto*) {});
    auto alias_q = std::shared_ptr<const CircularDensity>(&q, [](auto*) {});
    const auto model_p = induced_density(scheme, alias_p);
    const auto model_q = induced_density(scheme, alias_q);
    const SchemeSampler channel(scheme);
    const InverseCdfSampler sp(p);
    const InverseCdfSampler sq(q);
    return run_bayes(*model_p, *model_q, spec,
                     [&](bool truth_is_p, Rng& rng) {
                         const double phi = truth_is_p ? sp.draw(rng) : sq.draw(rng);
                         return channel.draw(phi, rng);
                     });
}

double mle_estimate(Family family, const std::vector<double>& samples,
                    double lo, double hi) {
    if (samples.empty()) throw std::invalid_argument("mle_estimate: no samples");
    if (!(lo > 0.0 && lo < hi)) {
        throw std::invalid_argument("mle_estimate: invalid bracket");
    }
    auto negative_log_likelihood = [&](double theta) {
        const auto d = make_density(family, theta);
        double acc = 0.0;
        for (double x : samples) acc -= d->log_pdf(x);
        return acc;
    };
    return minimize_unimodal(negative_log_likelihood, lo, hi, 1e-8).argmin;
}

RiskEstimate estimation_risk(Family family, double theta, int n, int trials,
                             std::uint64_t seed, CostKind cost) {
    if (n < 1 || trials < 1) {
        throw std::invalid_argument("estimation_risk: n and trials must be >= 1");
    }
    const auto truth = make_density(family, theta);
    const InverseCdfSampler sampler(*truth);
    const double lo = theta / 10.0;
    const double hi = theta * 10.0;

    std::vector<double> sums(kBlocks, 0.0);
    std::vector<double> sq_sums(kBlocks, 0.0);
    parallel_blocks(kBlocks, [&](int b) {
        Rng rng(seed, stream_id(0, b));
        const int nt = block_trials(trials, b);
        std::vector<double> samples(n);
        double s = 0.0, s2 = 0.0;
        for (int t = 0; t < nt; ++t) {
            for (auto& x : samples) x = sampler.draw(rng);
            const double est = mle_estimate(family, samples, lo, hi);
            const double dev = est - theta;
            const double c = cost == CostKind::quadratic ? dev * dev : std::abs(dev);
            s += c;
            s2 += c * c;
        }
        sums[b] = s;
        sq_sums[b] = s2;
    });
    double total = 0.0, total_sq = 0.0;
    for (int b = 0; b < kBlocks; ++b) {
        total += sums[b];
        total_sq += sq_sums[b];
    }
    RiskEstimate out;
    out.risk = total / trials;
    const double var = std::max(total_sq / trials - out.risk * out.risk, 0.0);
    out.std_error = std::sqrt(var / trials);
    const double fisher = fisher_information(family, theta, 0.0, default_grid());
    out.cramer_rao = 1.0 / (n * fisher);
    return out;
}

}  // namespace phasekit
