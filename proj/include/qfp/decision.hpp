#pragma once

// Exact minimum-error binary hypothesis testing on the coincidence count:
// binomial log-likelihoods, the maximum-likelihood decision rule, and the
// exact average error probability of the optimal rule.

#include "qfp/imperfections.hpp"
#include "qfp/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qfp {

enum class Hypothesis { Different, Equal };

struct TestOutcome {
    Hypothesis decision;
    std::int64_t n_c;  ///< observed coincidence count
    std::int64_t n2;   ///< total two-click events
};

/// log pmf of Binomial(n2, q) at n_c, via log-gamma. A point mass (q = 0 or
/// q = 1) yields 0 on its atom and -infinity elsewhere.
inline double binomial_log_pmf(std::int64_t n2, double q, std::int64_t n_c) {
    if (n2 < 0 || n_c < 0 || n_c > n2)
        throw std::domain_error("binomial_log_pmf: require 0 <= n_c <= n2");
    if (!(q >= 0.0) || !(q <= 1.0))
        throw std::domain_error("binomial_log_pmf: q must lie in [0, 1]");
    if (q == 0.0) return n_c == 0 ? 0.0 : neg_inf;
    if (q == 1.0) return n_c == n2 ? 0.0 : neg_inf;
    return log_binomial(static_cast<double>(n2), static_cast<double>(n_c))
         + static_cast<double>(n_c) * std::log(q)
         + static_cast<double>(n2 - n_c) * std::log1p(-q);
}

/// Maximum-likelihood rule: Different iff the count is strictly more likely
/// under the differing-inputs hypothesis. Ties go to Equal — they contribute
/// the same either way, and Equal is the conservative referee claim.
inline TestOutcome decide(std::int64_t n_c, std::int64_t n2, const HypothesisPair& hp) {
    const double log_p_d = binomial_log_pmf(n2, hp.q_d, n_c);
    const double log_p_e = binomial_log_pmf(n2, hp.q_e, n_c);
    return {log_p_d > log_p_e ? Hypothesis::Different : Hypothesis::Equal, n_c, n2};
}

namespace detail {

// Log pmf of Binomial(n2, q) in extended precision, for 0 < q < 1 only (the
// point-mass cases are handled by the callers).
inline long double binomial_log_pmf_ext(std::int64_t n2, long double q, std::int64_t n_c) {
    return log_binomial_ext(static_cast<long double>(n2), static_cast<long double>(n_c))
         + static_cast<long double>(n_c) * std::log(q)
         + static_cast<long double>(n2 - n_c) * std::log1p(-q);
}

// Sum of binomial pmf terms from k_from toward the distribution's tail
// (direction = -1 for k_from, k_from-1, ..., 0; +1 for k_from, ..., n2).
// Anchored on an extended-precision log-gamma evaluation and advanced by the
// one-step pmf ratio, re-anchoring every 256 steps so rounding cannot
// accumulate; valid whenever the terms decay monotonically from the anchor,
// which holds when the anchor lies tailward of the mode. Monotone decay also
// bounds the neglected remainder when the loop stops early: what is left is
// at most term * remaining < 1e-21 of the accumulated sum.
inline double binomial_tail_sum(std::int64_t n2, double q, std::int64_t k_from, int direction) {
    if (k_from < 0 || k_from > n2) return 0.0;
    const long double ql = q;
    const long double odds = ql / (1.0L - ql);
    long double term = std::exp(binomial_log_pmf_ext(n2, ql, k_from));
    long double acc = 0.0L;
    int since_anchor = 0;
    for (std::int64_t k = k_from; k >= 0 && k <= n2; k += direction) {
        acc += term;
        const std::int64_t next = k + direction;
        if (next < 0 || next > n2) break;
        const auto remaining = static_cast<long double>(direction > 0 ? n2 - k : k);
        if (term == 0.0L || term * remaining < acc * 1e-21L) break;
        if (++since_anchor == 256) {
            term = std::exp(binomial_log_pmf_ext(n2, ql, next));
            since_anchor = 0;
        } else if (direction > 0) {
            term *= odds * static_cast<long double>(n2 - k) / static_cast<long double>(k + 1);
        } else {
            term *= static_cast<long double>(k) / (odds * static_cast<long double>(n2 - k + 1));
        }
    }
    return static_cast<double>(acc);
}

} // namespace detail

/// Average error probability of the optimal rule under equiprobable
/// hypotheses: (1/2) * sum_k min{p_D(k), p_E(k)}.
///
/// The log likelihood ratio of two binomials is affine in the count, so the
/// minimum switches from p_D to p_E at a single threshold k*; the sum
/// collapses to a lower tail of the D distribution plus an upper tail of the
/// E distribution. Tails are summed termwise in extended precision up to
/// n2 = 1e4 and evaluated O(1) through the regularized incomplete beta
/// function beyond.
inline double exact_error_probability(std::int64_t n2, const HypothesisPair& hp) {
    if (n2 < 0)
        throw std::domain_error("exact_error_probability: n2 must be nonnegative");
    const double q_d = hp.q_d;
    const double q_e = hp.q_e;
    if (n2 == 0 || q_d == q_e) return 0.5;

    // smallest count k* with p_D(k*) > p_E(k*)
    std::int64_t k_star;
    if (q_e == 0.0) {
        k_star = 1;
    } else if (q_d == 1.0) {
        k_star = n2;
    } else {
        const double slope = std::log(q_d / q_e) + std::log((1.0 - q_e) / (1.0 - q_d));
        const double crossing =
            static_cast<double>(n2) * std::log((1.0 - q_e) / (1.0 - q_d)) / slope;
        k_star = static_cast<std::int64_t>(std::floor(crossing)) + 1;
        k_star = std::clamp<std::int64_t>(k_star, 0, n2 + 1);
    }

    double lower_d;  // P(X_D <= k*-1), the D mass misread as Equal
    double upper_e;  // P(X_E >= k*),   the E mass misread as Different
    constexpr std::int64_t direct_sum_cutoff = 10000;
    if (n2 <= direct_sum_cutoff) {
        lower_d = q_d >= 1.0 ? (k_star - 1 >= n2 ? 1.0 : 0.0)
                             : detail::binomial_tail_sum(n2, q_d, k_star - 1, -1);
        upper_e = q_e <= 0.0 ? (k_star <= 0 ? 1.0 : 0.0)
                             : detail::binomial_tail_sum(n2, q_e, k_star, +1);
    } else {
        lower_d = binomial_cdf(k_star - 1, n2, q_d);
        upper_e = binomial_tail_ge(k_star, n2, q_e);
    }
    return std::min(0.5 * (lower_d + upper_e), 0.5);
}

} // namespace qfp
