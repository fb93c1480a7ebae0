#pragma once

// Chernoff-information error exponents for the two-click hypothesis test:
// the general discrete formula, the two-outcome specialization, the rescaled
// per-pair exponent zeta, and the asymptotic error expression. Natural logs
// throughout, so the exponent cancels exactly against the asymptotic exp.

#include "qfp/imperfections.hpp"
#include "qfp/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qfp {

struct ChernoffResult {
    double c;              ///< Chernoff information in nats, >= 0
    double alpha_star;     ///< optimizing exponent in [0, 1]
    double objective_min;  ///< minimized alpha-sum, in (0, 1]
};

namespace detail {

// Minimize g(alpha) = sum_k exp[alpha log p_D(k) + (1-alpha) log p_E(k)]
// over alpha in [0, 1]. Only outcomes with both probabilities positive are
// listed: a term with a zero probability vanishes identically on the open
// interval, and g is continuous there, so ternary search over the closed
// interval returns the infimum over (0, 1). g is log-convex, hence unimodal,
// which licenses ternary search; 200 iterations or width < 1e-12.
inline ChernoffResult minimize_alpha_objective(
    const std::vector<std::pair<double, double>>& log_terms) {
    auto objective = [&](double alpha) {
        KahanSum s;
        for (const auto& [ld, le] : log_terms)
            s.add(std::exp(alpha * ld + (1.0 - alpha) * le));
        return s.value();
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (objective(m1) <= objective(m2)) hi = m2;
        else lo = m1;
    }
    const double alpha = 0.5 * (lo + hi);
    const double g_min = objective(alpha);
    return {std::max(0.0, -std::log(g_min)), alpha, g_min};
}

inline ChernoffResult bernoulli_alpha_min(double q_d, double q_e) {
    std::vector<std::pair<double, double>> log_terms;
    if (q_d > 0.0 && q_e > 0.0)
        log_terms.emplace_back(std::log(q_d), std::log(q_e));
    if (q_d < 1.0 && q_e < 1.0)
        log_terms.emplace_back(std::log1p(-q_d), std::log1p(-q_e));
    return minimize_alpha_objective(log_terms);
}

} // namespace detail

/// Chernoff information between two finite distributions:
/// C = -log min_alpha sum_k p_D(k)^alpha p_E(k)^(1-alpha).
inline ChernoffResult chernoff_information(const std::vector<double>& p_d_dist,
                                           const std::vector<double>& p_e_dist) {
    if (p_d_dist.size() != p_e_dist.size())
        throw std::invalid_argument("chernoff_information: distributions must have equal length");
    KahanSum sum_d, sum_e;
    for (std::size_t k = 0; k < p_d_dist.size(); ++k) {
        if (!(p_d_dist[k] >= 0.0) || !(p_e_dist[k] >= 0.0))
            throw std::invalid_argument("chernoff_information: probabilities must be nonnegative");
        sum_d.add(p_d_dist[k]);
        sum_e.add(p_e_dist[k]);
    }
    if (std::fabs(sum_d.value() - 1.0) > 1e-9 || std::fabs(sum_e.value() - 1.0) > 1e-9)
        throw std::invalid_argument("chernoff_information: distributions must be normalized");
    std::vector<std::pair<double, double>> log_terms;
    for (std::size_t k = 0; k < p_d_dist.size(); ++k)
        if (p_d_dist[k] > 0.0 && p_e_dist[k] > 0.0)
            log_terms.emplace_back(std::log(p_d_dist[k]), std::log(p_e_dist[k]));
    return detail::minimize_alpha_objective(log_terms);
}

/// Two-click specialization: per run the outcome is "no two-click event"
/// (probability 1 - p2 under both hypotheses) or a two-click event whose
/// coincidence/double split is Bernoulli(q). Then
/// C = -log(1 - p2 + p2 * min_alpha[q_d^a q_e^(1-a) + (1-q_d)^a (1-q_e)^(1-a)]).
inline ChernoffResult two_click_chernoff(const HypothesisPair& hp) {
    auto inner = detail::bernoulli_alpha_min(hp.q_d, hp.q_e);
    const double c = -std::log1p(-hp.p2 * (1.0 - inner.objective_min));
    return {std::max(0.0, c), inner.alpha_star, inner.objective_min};
}

/// Leading-order Chernoff information per (eta*nbar)^2, with the two-click
/// probability expanded to its quadratic term:
/// zeta = [1 + g2 + 4 dark_ratio + 2 dark_ratio^2] * (1 - min_alpha[...]).
/// Depends only on the bracket and on (q_d, q_e), not on eta_nbar.
inline double rescaled_chernoff_zeta(const SourceParams& p, double Delta_min) {
    if (!(Delta_min >= 0.0) || !(Delta_min <= 0.5))
        throw std::domain_error("rescaled_chernoff_zeta: Delta_min must lie in [0, 1/2]");
    const double q_d = coincidence_fraction(p, Visibility(1.0 - 2.0 * Delta_min));
    const double q_e = coincidence_fraction(p, Visibility(1.0));
    return p.click_bracket() * (1.0 - detail::bernoulli_alpha_min(q_d, q_e).objective_min);
}

/// Unexpanded counterpart of rescaled_chernoff_zeta: the full two-click
/// Chernoff information divided by (eta*nbar)^2, so the linearization error
/// of the rescaled form is directly measurable.
inline double rescaled_chernoff_zeta_exact(const SourceParams& p, double Delta_min) {
    if (!(p.eta_nbar() > 0.0))
        throw std::domain_error("rescaled_chernoff_zeta_exact: requires eta_nbar > 0");
    return two_click_chernoff(hypothesis_pair(p, Delta_min)).c /
           (p.eta_nbar() * p.eta_nbar());
}

/// Asymptotic error probability exp[-(eta*nbar)^2 * n_runs * zeta].
inline double asymptotic_error(double n_runs, double eta_nbar, double zeta) {
    if (!(n_runs >= 0.0) || !(eta_nbar >= 0.0) || !(zeta >= 0.0))
        throw std::domain_error("asymptotic_error: inputs must be nonnegative");
    return std::exp(-eta_nbar * eta_nbar * n_runs * zeta);
}

} // namespace qfp
