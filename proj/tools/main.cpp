// Command-line front end: analytical bounds, information costs, exact and
// asymptotic error curves, Chernoff-exponent surfaces, and the stochastic
// simulator, each emitting CSV or JSON for plotting and downstream checks.

#include "qfp/qfp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>
#include <string>

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

// Full round-trip precision so downstream consumers can reproduce doubles.
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double lin_grid(double lo, double hi, int points, int i) {
    if (points == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

double log_grid(double lo, double hi, int points, int i) {
    return std::exp(lin_grid(std::log(lo), std::log(hi), points, i));
}

void run_bounds(std::ostream& out, double delta_min, double delta_max, int points) {
    out << "delta_coh,Delta_min,r_gv,R_gv,overhead\n";
    for (int i = 0; i < points; ++i) {
        const double d = lin_grid(delta_min, delta_max, points, i);
        const double dd = qfp::map_coherent_to_twophoton_distance(d);
        out << fmt(d) << ',' << fmt(dd) << ',' << fmt(qfp::gv_rate(d)) << ','
            << fmt(qfp::modified_gv_rate(dd)) << ',' << fmt(qfp::overhead_ratio(d))
            << '\n';
    }
}

void run_information(std::ostream& out, double n_min, double n_max, int points,
                     double p_err, double delta_coh) {
    out << "n,I_class,I_S,I_coh,ratio\n";
    for (int i = 0; i < points; ++i) {
        const double n = log_grid(n_min, n_max, points, i);
        const auto op = qfp::operating_point(n, p_err, delta_coh);
        const double i_class = qfp::classical_bound(n, p_err);
        const double i_s = qfp::two_photon_information(std::max<std::int64_t>(op.n2, 1), op.M);
        const double i_coh = qfp::coherent_information(op.nbar, static_cast<double>(op.m));
        out << fmt(n) << ',' << fmt(i_class) << ',' << fmt(i_s) << ','
            << fmt(i_coh) << ',' << fmt(i_s / i_coh) << '\n';
    }
    for (const auto& [proto, label] :
         {std::pair{qfp::Protocol::TwoPhoton, "crossover_two_photon"},
          std::pair{qfp::Protocol::Coherent, "crossover_coherent"}}) {
        out << "# " << label << " = ";
        try {
            out << qfp::crossover_length(p_err, delta_coh, proto) << '\n';
        } catch (const std::runtime_error&) {
            out << "none\n";
        }
    }
}

void run_error(std::ostream& out, double Delta_min, double dark_ratio, double w,
               double eta_nbar, double x_max, int points) {
    const qfp::SourceParams p[2] = {{eta_nbar, 0.0, dark_ratio, w},
                                    {eta_nbar, 1.0, dark_ratio, w}};
    const qfp::HypothesisPair hp[2] = {qfp::hypothesis_pair(p[0], Delta_min),
                                       qfp::hypothesis_pair(p[1], Delta_min)};
    const double zeta[2] = {qfp::rescaled_chernoff_zeta(p[0], Delta_min),
                            qfp::rescaled_chernoff_zeta(p[1], Delta_min)};
    out << "# zeta_g2_0 = " << fmt(zeta[0]) << '\n';
    out << "# zeta_g2_1 = " << fmt(zeta[1]) << '\n';
    out << "x,n2_g2_0,exact_g2_0,asymptotic_g2_0,inset_g2_0,"
           "n2_g2_1,exact_g2_1,asymptotic_g2_1,inset_g2_1\n";
    for (int i = 0; i < points; ++i) {
        const double x = lin_grid(0.0, x_max, points, i);
        out << fmt(x);
        for (int s = 0; s < 2; ++s) {
            const auto n2 = std::llround(p[s].click_bracket() * x);
            const double exact = qfp::exact_error_probability(n2, hp[s]);
            const double asym = std::exp(-zeta[s] * x);
            const double inset = x > 0.0 ? -std::log(exact) / x : nan_v;
            out << ',' << n2 << ',' << fmt(exact) << ',' << fmt(asym) << ','
                << fmt(inset);
        }
        out << '\n';
    }
}

void run_surface(std::ostream& out, double dark_max, double delta_lo,
                 double delta_hi, double w, int points) {
    out << "dark_ratio,Delta_min,zeta_s,zeta_p,ratio\n";
    for (int i = 0; i < points; ++i) {
        const double dark = lin_grid(0.0, dark_max, points, i);
        // zeta is independent of eta_nbar; any in-range value works here
        const qfp::SourceParams single(0.05, 0.0, dark, w);
        const qfp::SourceParams parametric(0.05, 1.0, dark, w);
        for (int j = 0; j < points; ++j) {
            const double dd = lin_grid(delta_lo, delta_hi, points, j);
            const double zs = qfp::rescaled_chernoff_zeta(single, dd);
            const double zp = qfp::rescaled_chernoff_zeta(parametric, dd);
            out << fmt(dark) << ',' << fmt(dd) << ',' << fmt(zs) << ','
                << fmt(zp) << ',' << fmt(zs / zp) << '\n';
        }
    }
}

// Returns true when any |z| exceeds the alarm threshold.
bool run_simulate(std::ostream& out, const qfp::SourceParams& p, qfp::Visibility v,
                  std::int64_t runs, std::uint64_t seed, int threads,
                  double z_alarm) {
    const qfp::EventTally t = qfp::simulate_batch(p, v, runs, seed, threads);

    const double exp_rate = qfp::two_click_probability(p);
    const double emp_rate =
        static_cast<double>(t.n_two_click()) / static_cast<double>(t.n_runs);
    const double sd_rate =
        std::sqrt(exp_rate * (1.0 - exp_rate) / static_cast<double>(t.n_runs));
    const double z_rate = sd_rate > 0.0 ? (emp_rate - exp_rate) / sd_rate : nan_v;

    const double exp_frac = qfp::coincidence_fraction(p, v);
    const double emp_frac =
        t.n_two_click() > 0 ? static_cast<double>(t.n_coincidence) /
                                  static_cast<double>(t.n_two_click())
                            : nan_v;
    const double sd_frac =
        t.n_two_click() > 0
            ? std::sqrt(exp_frac * (1.0 - exp_frac) /
                        static_cast<double>(t.n_two_click()))
            : 0.0;
    const double z_frac = sd_frac > 0.0 ? (emp_frac - exp_frac) / sd_frac : nan_v;

    const bool alarm = (std::isfinite(z_rate) && std::fabs(z_rate) > z_alarm) ||
                       (std::isfinite(z_frac) && std::fabs(z_frac) > z_alarm);

    nlohmann::json j = qfp::batch_to_json(p, v, runs, seed, t);
    j["analysis"] = {
        {"two_click_rate",
         {{"empirical", emp_rate}, {"expected", exp_rate}, {"z", z_rate}}},
        {"coincidence_fraction",
         {{"empirical", emp_frac}, {"expected", exp_frac}, {"z", z_frac}}},
        {"z_alarm", z_alarm},
        {"alarm", alarm},
        {"warnings", p.warnings()}};
    out << j.dump(2) << "\n\n";
    out << "metric,empirical,expected,z\n";
    out << "two_click_rate," << fmt(emp_rate) << ',' << fmt(exp_rate) << ','
        << fmt(z_rate) << '\n';
    out << "coincidence_fraction," << fmt(emp_frac) << ',' << fmt(exp_frac) << ','
        << fmt(z_frac) << '\n';
    return alarm;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-photon fingerprint comparison: bounds, error exponents, "
                 "information costs, and stochastic simulation"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    std::string out_path = "-";
    std::string config_path;
    std::uint64_t seed = 12345;
    int threads = 1;
    bool strict = false;
    app.add_option("-o,--out", out_path, "output file ('-' writes to stdout)");
    auto* config_opt =
        app.add_option("-c,--config", config_path,
                       "JSON file supplying defaults for unset options "
                       "(keys use underscores, e.g. \"eta_nbar\")");
    auto* seed_opt = app.add_option("--seed", seed, "base seed for the per-run streams");
    auto* threads_opt = app.add_option("--threads", threads, "simulation worker threads")
                            ->envname("QFP_THREADS")
                            ->check(CLI::Range(1, 1024));
    auto* strict_opt = app.add_flag("--strict", strict,
                                    "exit nonzero when a simulation z-score "
                                    "exceeds the alarm threshold");

    auto* bounds = app.add_subcommand(
        "bounds", "code rates and the matched-distance length overhead");
    bounds->fallthrough();
    double b_dmin = 0.0025, b_dmax = 0.25;
    int b_points = 100;
    auto* b_dmin_opt = bounds->add_option("--delta-min", b_dmin, "smallest base-code distance");
    auto* b_dmax_opt = bounds->add_option("--delta-max", b_dmax, "largest base-code distance");
    auto* b_points_opt =
        bounds->add_option("--points", b_points, "grid size")->check(CLI::Range(1, 1000000));

    auto* info = app.add_subcommand(
        "information", "transmitted-information costs versus the classical bound");
    info->fallthrough();
    double i_nmin = 1e2, i_nmax = 1e12, i_perr = 1e-6, i_dcoh = 0.2;
    int i_points = 50;
    auto* i_nmin_opt = info->add_option("--n-min", i_nmin, "smallest input length")
                           ->check(CLI::PositiveNumber);
    auto* i_nmax_opt = info->add_option("--n-max", i_nmax, "largest input length")
                           ->check(CLI::PositiveNumber);
    auto* i_points_opt =
        info->add_option("--points", i_points, "log-grid size")->check(CLI::Range(1, 1000000));
    auto* i_perr_opt = info->add_option("--p-err", i_perr, "target error probability");
    auto* i_dcoh_opt = info->add_option("--delta-coh", i_dcoh, "base-code distance");

    auto* err = app.add_subcommand(
        "error", "exact versus asymptotic error against the rescaled run count");
    err->fallthrough();
    double e_delta = 0.1, e_dark = 0.01, e_w = 0.98, e_eta = 0.05, e_xmax = 500.0;
    int e_points = 51;
    auto* e_delta_opt = err->add_option("--delta-min", e_delta, "extended-code distance");
    auto* e_dark_opt = err->add_option("--dark-ratio", e_dark, "dark counts per detected photon");
    auto* e_w_opt = err->add_option("--w", e_w, "photon indistinguishability");
    auto* e_eta_opt = err->add_option("--eta-nbar", e_eta, "detected photons per party per run");
    auto* e_xmax_opt = err->add_option("--x-max", e_xmax, "largest (eta nbar)^2 N");
    auto* e_points_opt =
        err->add_option("--points", e_points, "grid size")->check(CLI::Range(1, 1000000));

    auto* surf = app.add_subcommand(
        "chernoff-surface",
        "per-pair error exponents of both source types over dark ratio and distance");
    surf->fallthrough();
    double s_dark_max = 0.05, s_dlo = 0.1, s_dhi = 0.25, s_w = 0.98;
    int s_points = 20;
    auto* s_dark_opt = surf->add_option("--dark-max", s_dark_max, "largest dark-count ratio");
    auto* s_dlo_opt = surf->add_option("--delta-lo", s_dlo, "smallest extended-code distance");
    auto* s_dhi_opt = surf->add_option("--delta-hi", s_dhi, "largest extended-code distance");
    auto* s_w_opt = surf->add_option("--w", s_w, "photon indistinguishability");
    auto* s_points_opt = surf->add_option("--points", s_points, "grid size per axis")
                             ->check(CLI::Range(1, 10000));

    auto* sim = app.add_subcommand(
        "simulate", "stochastic event tally checked against the closed-form rates");
    sim->fallthrough();
    double m_eta = 0.05, m_g2 = 0.0, m_dark = 0.01, m_w = 0.98;
    double m_vis = 0.8, m_delta = 0.1, m_zalarm = 4.0, m_runs = 1e7;
    std::string m_cw_a, m_cw_b;
    auto* m_eta_opt = sim->add_option("--eta-nbar", m_eta, "detected photons per party per run");
    auto* m_g2_opt = sim->add_option("--g2", m_g2, "second-order correlation of the source");
    auto* m_dark_opt = sim->add_option("--dark-ratio", m_dark, "dark counts per detected photon");
    auto* m_w_opt = sim->add_option("--w", m_w, "photon indistinguishability");
    auto* m_runs_opt = sim->add_option("--runs", m_runs, "number of runs")
                           ->check(CLI::PositiveNumber);
    auto* m_vis_opt = sim->add_option("--visibility", m_vis,
                                      "interference visibility (overrides --delta-min)");
    auto* m_delta_opt = sim->add_option("--delta-min", m_delta,
                                        "codeword distance; visibility = 1 - 2 distance");
    auto* m_cwa_opt = sim->add_option("--codeword-a", m_cw_a,
                                      "first codeword bit string (overrides --visibility)");
    auto* m_cwb_opt = sim->add_option("--codeword-b", m_cw_b, "second codeword bit string");
    auto* m_zalarm_opt = sim->add_option("--z-alarm", m_zalarm, "alarm threshold on |z|");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        nlohmann::json cfg;
        if (config_opt->count() > 0) {
            std::ifstream f(config_path);
            if (!f)
                throw std::runtime_error("cannot open config file: " + config_path);
            cfg = nlohmann::json::parse(f);
        }
        // command line > environment > config file > built-in default
        auto apply = [&cfg](const CLI::Option* opt, const char* key, auto& var) {
            if (opt->count() == 0 && cfg.contains(key))
                var = cfg.at(key).get<std::decay_t<decltype(var)>>();
        };
        apply(seed_opt, "seed", seed);
        apply(threads_opt, "threads", threads);
        apply(strict_opt, "strict", strict);

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (out_path != "-") {
            file.open(out_path);
            if (!file)
                throw std::runtime_error("cannot open output file: " + out_path);
            out = &file;
        }

        bool alarm = false;
        if (bounds->parsed()) {
            apply(b_dmin_opt, "delta_min", b_dmin);
            apply(b_dmax_opt, "delta_max", b_dmax);
            apply(b_points_opt, "points", b_points);
            run_bounds(*out, b_dmin, b_dmax, b_points);
        } else if (info->parsed()) {
            apply(i_nmin_opt, "n_min", i_nmin);
            apply(i_nmax_opt, "n_max", i_nmax);
            apply(i_points_opt, "points", i_points);
            apply(i_perr_opt, "p_err", i_perr);
            apply(i_dcoh_opt, "delta_coh", i_dcoh);
            run_information(*out, i_nmin, i_nmax, i_points, i_perr, i_dcoh);
        } else if (err->parsed()) {
            apply(e_delta_opt, "delta_min", e_delta);
            apply(e_dark_opt, "dark_ratio", e_dark);
            apply(e_w_opt, "w", e_w);
            apply(e_eta_opt, "eta_nbar", e_eta);
            apply(e_xmax_opt, "x_max", e_xmax);
            apply(e_points_opt, "points", e_points);
            run_error(*out, e_delta, e_dark, e_w, e_eta, e_xmax, e_points);
        } else if (surf->parsed()) {
            apply(s_dark_opt, "dark_max", s_dark_max);
            apply(s_dlo_opt, "delta_lo", s_dlo);
            apply(s_dhi_opt, "delta_hi", s_dhi);
            apply(s_w_opt, "w", s_w);
            apply(s_points_opt, "points", s_points);
            run_surface(*out, s_dark_max, s_dlo, s_dhi, s_w, s_points);
        } else if (sim->parsed()) {
            apply(m_eta_opt, "eta_nbar", m_eta);
            apply(m_g2_opt, "g2", m_g2);
            apply(m_dark_opt, "dark_ratio", m_dark);
            apply(m_w_opt, "w", m_w);
            apply(m_runs_opt, "runs", m_runs);
            apply(m_zalarm_opt, "z_alarm", m_zalarm);
            apply(m_cwa_opt, "codeword_a", m_cw_a);
            apply(m_cwb_opt, "codeword_b", m_cw_b);
            bool vis_given = m_vis_opt->count() > 0;
            if (!vis_given && cfg.contains("visibility")) {
                m_vis = cfg.at("visibility").get<double>();
                vis_given = true;
            }
            apply(m_delta_opt, "delta_min", m_delta);

            if (m_cw_a.empty() != m_cw_b.empty())
                throw std::invalid_argument(
                    "codeword-a and codeword-b must be given together");
            double v_val;
            if (!m_cw_a.empty())
                v_val = qfp::visibility(qfp::Codeword::from_string(m_cw_a),
                                        qfp::Codeword::from_string(m_cw_b))
                            .value();
            else if (vis_given)
                v_val = m_vis;
            else
                v_val = 1.0 - 2.0 * m_delta;

            const qfp::SourceParams p(m_eta, m_g2, m_dark, m_w);
            alarm = run_simulate(*out, p, qfp::Visibility(v_val),
                                 std::llround(m_runs), seed, threads, m_zalarm);
        }
        if (alarm && strict) return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
