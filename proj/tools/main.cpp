// phasekit CLI: sweeps of circular-density divergences, Fisher information,
// measurement-scheme comparisons, and seeded Monte Carlo validation runs,
// all emitted as CSV.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "phasekit/divergences.hpp"
#include "phasekit/montecarlo.hpp"
#include "phasekit/parallel.hpp"
#include "phasekit/schemes.hpp"

namespace {

using namespace phasekit;

std::string format_cell(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CsvTable {
    std::string text;

    explicit CsvTable(const std::string& header) { text = header + "\n"; }

    void row(const std::vector<double>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += ',';
            text += format_cell(cells[i]);
        }
        text += '\n';
    }

    // Write to `path`, or stdout when empty. Files go through a temp name and
    // are renamed only on success.
    void emit(const std::string& path) const {
        if (path.empty()) {
            std::fwrite(text.data(), 1, text.size(), stdout);
            return;
        }
        const std::string tmp = path + ".tmp";
        {
            std::FILE* f = std::fopen(tmp.c_str(), "wb");
            if (!f) throw std::runtime_error("cannot open " + tmp);
            const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
            std::fclose(f);
            if (!ok) {
                std::filesystem::remove(tmp);
                throw std::runtime_error("short write to " + tmp);
            }
        }
        std::filesystem::rename(tmp, path);
    }
};

struct CommonOpts {
    std::uint64_t seed = 12345;
    int panels = 64;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "RNG seed for stochastic commands");
    cmd->add_option("--panels", opts.panels, "quadrature panels over [-pi, pi]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", opts.out, "output CSV path (default: stdout)");
}

std::vector<double> linear_sweep(double lo, double hi, int steps) {
    std::vector<double> out;
    for (int i = 0; i < steps; ++i) {
        out.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    }
    return out;
}

std::vector<double> log_sweep(double lo, double hi, int steps) {
    std::vector<double> out;
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < steps; ++i) {
        out.push_back(std::exp(steps == 1 ? llo : llo + (lhi - llo) * i / (steps - 1)));
    }
    return out;
}

constexpr Family kFamilies[] = {Family::wrapped_normal, Family::von_mises,
                                Family::wrapped_cauchy};

int cmd_divergence(const CommonOpts& opts, const std::string& quantity,
                   double param1, double lo, double hi, int steps) {
    const auto grid = QuadratureGrid::periodic(opts.panels);
    const bool wants_chernoff = quantity == "chernoff";
    CsvTable table(wants_chernoff ? "param2,chernoff_wn,chernoff_vm,chernoff_wc"
                                  : "param2,relent_wn,relent_vm,relent_wc");
    const auto sweep = linear_sweep(lo, hi, steps);
    std::vector<std::vector<double>> rows(sweep.size());
    parallel_blocks(static_cast<int>(sweep.size()), [&](int i) {
        std::vector<double> cells{sweep[i]};
        for (Family f : kFamilies) {
            const auto p = make_density(f, param1);
            const auto q = make_density(f, sweep[i]);
            cells.push_back(wants_chernoff ? chernoff(*p, *q, grid).value
                                           : relative_entropy(*p, *q, grid).value);
        }
        rows[i] = std::move(cells);
    });
    for (const auto& r : rows) table.row(r);
    table.emit(opts.out);
    return 0;
}

int cmd_fisher(const CommonOpts& opts, double lo, double hi, int steps, double delta) {
    const auto grid = QuadratureGrid::periodic(opts.panels);
    CsvTable table("param,fisher_wn,fisher_vm,fisher_wc");
    const auto sweep = log_sweep(lo, hi, steps);
    std::vector<std::vector<double>> rows(sweep.size());
    parallel_blocks(static_cast<int>(sweep.size()), [&](int i) {
        std::vector<double> cells{sweep[i]};
        for (Family f : kFamilies) {
            cells.push_back(fisher_information(f, sweep[i], delta, grid));
        }
        rows[i] = std::move(cells);
    });
    for (const auto& r : rows) table.row(r);
    table.emit(opts.out);
    return 0;
}

int cmd_scheme_comparison(const CommonOpts& opts, double gamma1, int d,
                          double energy_a, double energy_b, double lo, double hi,
                          int steps) {
    const auto grid = QuadratureGrid::periodic(opts.panels);
    CsvTable table("gamma2,D_limit,D_photon_d20,D_coh_a9p5,D_coh_a25");
    const auto base1 = make_density(Family::wrapped_normal, gamma1);
    const auto photon1 = std::make_shared<PhotonInducedDensity>(d, base1);
    const auto coh1_a =
        std::make_shared<CoherentInducedDensity>(std::sqrt(energy_a), base1);
    const auto coh1_b =
        std::make_shared<CoherentInducedDensity>(std::sqrt(energy_b), base1);
    const auto sweep = linear_sweep(lo, hi, steps);
    std::vector<std::vector<double>> rows(sweep.size());
    parallel_blocks(static_cast<int>(sweep.size()), [&](int i) {
        const auto base2 = make_density(Family::wrapped_normal, sweep[i]);
        const PhotonInducedDensity photon2(d, base2);
        const CoherentInducedDensity coh2_a(std::sqrt(energy_a), base2);
        const CoherentInducedDensity coh2_b(std::sqrt(energy_b), base2);
        rows[i] = {sweep[i],
                   relative_entropy(*base1, *base2, grid).value,
                   relative_entropy(*photon1, photon2, grid).value,
                   relative_entropy(*coh1_a, coh2_a, grid).value,
                   relative_entropy(*coh1_b, coh2_b, grid).value};
    });
    for (const auto& r : rows) table.row(r);
    table.emit(opts.out);
    return 0;
}

int cmd_hypotest(const CommonOpts& opts, const std::string& test,
                 const std::string& family, double param1, double param2,
                 double eps, double lambda, const std::vector<int>& n_list,
                 int trials) {
    const auto grid = QuadratureGrid::periodic(opts.panels);
    const Family fam = family_from_string(family);
    const auto p = make_density(fam, param1);
    const auto q = make_density(fam, param2);
    const bool bayes = test == "bayes";
    CsvTable table(bayes ? "n,avg_error,exponent,chernoff"
                         : "n,alpha_hat,beta_hat,exponent,strassen");
    const double limit = bayes ? chernoff(*p, *q, grid).value : 0.0;
    for (int n : n_list) {
        TestSpec spec;
        spec.n = n;
        spec.trials = trials;
        spec.seed = opts.seed;
        if (bayes) {
            spec.prior = lambda;
            const auto outcome = bayes_test(*p, *q, spec);
            const double err = outcome.average_error(lambda);
            table.row({static_cast<double>(n), err,
                       err > 0.0 ? -std::log(err) / n : 0.0, limit});
        } else {
            spec.prior = eps;
            const auto outcome = neyman_pearson(*p, *q, spec);
            table.row({static_cast<double>(n), outcome.alpha_hat, outcome.beta_hat,
                       outcome.beta_hat > 0.0 ? -std::log(outcome.beta_hat) / n : 0.0,
                       stein_second_order(*p, *q, n, eps, grid)});
        }
    }
    table.emit(opts.out);
    return 0;
}

int cmd_estimate(const CommonOpts& opts, const std::string& family, double theta,
                 const std::vector<int>& n_list, int trials,
                 const std::string& cost_name) {
    const Family fam = family_from_string(family);
    const CostKind cost =
        cost_name == "absolute" ? CostKind::absolute : CostKind::quadratic;
    CsvTable table("n,risk,cramer_rao");
    for (int n : n_list) {
        const auto est = estimation_risk(fam, theta, n, trials, opts.seed, cost);
        table.row({static_cast<double>(n), est.risk, est.cramer_rao});
    }
    table.emit(opts.out);
    return 0;
}

int cmd_converge(const CommonOpts& opts, const std::string& scheme,
                 const std::string& family, double param,
                 std::vector<double> levels) {
    const auto grid = QuadratureGrid::periodic(opts.panels);
    const Family fam = family_from_string(family);
    const auto base = make_density(fam, param);
    const bool photon = scheme == "photon";
    if (levels.empty()) {
        levels = photon ? std::vector<double>{8, 16, 32, 64, 128}
                        : std::vector<double>{1, 2, 4, 8, 12};
    }
    CsvTable table("level,l1");
    for (double level : levels) {
        double l1;
        if (photon) {
            const PhotonInducedDensity induced(static_cast<int>(level), base);
            l1 = l1_distance(*base, induced, grid);
        } else {
            const CoherentInducedDensity induced(level, base);
            l1 = l1_distance(*base, induced, grid);
        }
        table.row({level, l1});
    }
    table.emit(opts.out);
    return 0;
}

int cmd_lossy(const CommonOpts& opts, int d, double gamma1, double gamma2,
              const std::vector<double>& etas) {
    const auto grid = QuadratureGrid::periodic(opts.panels);
    const auto base1 = make_density(Family::wrapped_normal, gamma1);
    const auto base2 = make_density(Family::wrapped_normal, gamma2);
    CsvTable table("eta,relent_photon");
    std::vector<std::vector<double>> rows(etas.size());
    parallel_blocks(static_cast<int>(etas.size()), [&](int i) {
        const LossyFejerInducedDensity p(d, etas[i], base1);
        const LossyFejerInducedDensity q(d, etas[i], base2);
        rows[i] = {etas[i], relative_entropy(p, q, grid).value};
    });
    for (const auto& r : rows) table.row(r);
    table.emit(opts.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circular-density discrimination and estimation toolkit"};
    app.require_subcommand(1);

    CommonOpts common;

    auto* divergence = app.add_subcommand(
        "divergence", "Chernoff or relative-entropy sweep for all three families");
    std::string quantity = "chernoff";
    double div_param1 = 1.0, div_lo = 0.1, div_hi = 5.0;
    int div_steps = 25;
    divergence->add_option("--quantity", quantity)
        ->check(CLI::IsMember({"chernoff", "relent"}));
    divergence->add_option("--param1", div_param1, "fixed first parameter");
    divergence->add_option("--min", div_lo);
    divergence->add_option("--max", div_hi);
    divergence->add_option("--steps", div_steps)->check(CLI::PositiveNumber);
    add_common(divergence, common);

    auto* fisher = app.add_subcommand("fisher", "Fisher information, log-spaced sweep");
    double fi_lo = 0.1, fi_hi = 100.0, fi_delta = 0.0;
    int fi_steps = 25;
    fisher->add_option("--min", fi_lo);
    fisher->add_option("--max", fi_hi);
    fisher->add_option("--steps", fi_steps)->check(CLI::PositiveNumber);
    fisher->add_option("--delta", fi_delta, "finite-difference step (0 = auto)");
    add_common(fisher, common);

    auto* comparison = app.add_subcommand(
        "scheme-comparison",
        "relative entropy of both measurement schemes against the limit");
    double sc_gamma1 = 1.0, sc_energy_a = 9.5, sc_energy_b = 25.0;
    double sc_lo = 0.5, sc_hi = 3.0;
    int sc_d = 20, sc_steps = 11;
    comparison->add_option("--gamma1", sc_gamma1);
    comparison->add_option("--d", sc_d)->check(CLI::Range(2, 1 << 14));
    comparison->add_option("--energy-a", sc_energy_a, "|alpha|^2 of the first coherent probe");
    comparison->add_option("--energy-b", sc_energy_b, "|alpha|^2 of the second coherent probe");
    comparison->add_option("--min", sc_lo);
    comparison->add_option("--max", sc_hi);
    comparison->add_option("--steps", sc_steps)->check(CLI::PositiveNumber);
    add_common(comparison, common);

    auto* hypotest = app.add_subcommand(
        "hypotest", "Monte Carlo hypothesis tests over a list of sample counts");
    std::string ht_test = "np", ht_family = "wn";
    double ht_param1 = 1.0, ht_param2 = 3.0, ht_eps = 0.05, ht_lambda = 0.5;
    std::vector<int> ht_n{5, 10, 20, 40};
    int ht_trials = 20000;
    hypotest->add_option("--test", ht_test)->check(CLI::IsMember({"np", "bayes"}));
    hypotest->add_option("--family", ht_family);
    hypotest->add_option("--param1", ht_param1);
    hypotest->add_option("--param2", ht_param2);
    hypotest->add_option("--eps", ht_eps, "type-I level for np");
    hypotest->add_option("--lambda", ht_lambda, "prior for bayes");
    hypotest->add_option("--n", ht_n, "sample counts per trial");
    hypotest->add_option("--trials", ht_trials)->check(CLI::Range(100, 100000000));
    add_common(hypotest, common);

    auto* estimate = app.add_subcommand(
        "estimate", "MLE risk against the Cramer-Rao floor 1/(n F)");
    std::string es_family = "wn", es_cost = "quadratic";
    double es_theta = 1.0;
    std::vector<int> es_n{100, 300, 1000};
    int es_trials = 1000;
    estimate->add_option("--family", es_family);
    estimate->add_option("--theta", es_theta);
    estimate->add_option("--n", es_n);
    estimate->add_option("--trials", es_trials)->check(CLI::PositiveNumber);
    estimate->add_option("--cost", es_cost)
        ->check(CLI::IsMember({"quadratic", "absolute"}));
    add_common(estimate, common);

    auto* converge = app.add_subcommand(
        "converge", "L1 distance of the induced density to the base density");
    std::string cv_scheme = "photon", cv_family = "wn";
    double cv_param = 1.0;
    std::vector<double> cv_levels;
    converge->add_option("--scheme", cv_scheme)
        ->check(CLI::IsMember({"photon", "coherent"}));
    converge->add_option("--family", cv_family);
    converge->add_option("--param", cv_param);
    converge->add_option("--levels", cv_levels, "d values (photon) or amplitudes (coherent)");
    add_common(converge, common);

    auto* lossy = app.add_subcommand(
        "lossy", "relative entropy of the lossy Fourier scheme across transmissivities");
    int lf_d = 20;
    double lf_gamma1 = 1.0, lf_gamma2 = 2.0;
    std::vector<double> lf_etas{0.3, 0.5, 0.7, 0.9, 1.0};
    lossy->add_option("--d", lf_d)->check(CLI::Range(2, 64));
    lossy->add_option("--gamma1", lf_gamma1);
    lossy->add_option("--gamma2", lf_gamma2);
    lossy->add_option("--etas", lf_etas);
    add_common(lossy, common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (divergence->parsed()) {
            return cmd_divergence(common, quantity, div_param1, div_lo, div_hi, div_steps);
        }
        if (fisher->parsed()) {
            return cmd_fisher(common, fi_lo, fi_hi, fi_steps, fi_delta);
        }
        if (comparison->parsed()) {
            return cmd_scheme_comparison(common, sc_gamma1, sc_d, sc_energy_a,
                                         sc_energy_b, sc_lo, sc_hi, sc_steps);
        }
        if (hypotest->parsed()) {
            return cmd_hypotest(common, ht_test, ht_family, ht_param1, ht_param2,
                                ht_eps, ht_lambda, ht_n, ht_trials);
        }
        if (estimate->parsed()) {
            return cmd_estimate(common, es_family, es_theta, es_n, es_trials, es_cost);
        }
        if (converge->parsed()) {
            return cmd_converge(common, cv_scheme, cv_family, cv_param, cv_levels);
        }
        if (lossy->parsed()) {
            return cmd_lossy(common, lf_d, lf_gamma1, lf_gamma2, lf_etas);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
