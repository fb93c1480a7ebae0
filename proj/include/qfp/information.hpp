#pragma once

// Transmittable-classical-information comparison: the classical
// simultaneous-message lower bound, the photon-number-constrained bound for
// the two-photon protocol, the coherent-state channel capacity, and the
// crossover length where the quantum protocols beat the classical bound.

#include "qfp/codes.hpp"
#include "qfp/interference.hpp"
#include "qfp/special.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qfp {

/// Best known lower bound, in bits, on classical fingerprint length for
/// n-bit inputs at error probability p_err:
/// (1 - 2 sqrt(p_err)) * sqrt(n / (2 ln 2)) - 1.
/// A lower bound only — it is not known to be saturable.
inline double classical_bound(double n, double p_err) {
    if (!(n >= 1.0))
        throw std::domain_error("classical_bound: n must be at least 1");
    if (!(p_err > 0.0) || !(p_err < 0.25))
        throw std::domain_error("classical_bound: p_err must lie in (0, 1/4) for a positive prefactor");
    return (1.0 - 2.0 * std::sqrt(p_err)) * std::sqrt(n / (2.0 * std::log(2.0))) - 1.0;
}

/// Bits encodable with at most n2 photons distributed over m_seq * n2 time
/// bins: log2 C(n2 + m_seq*n2, n2 + 1).
inline double two_photon_information(std::int64_t n2, std::int64_t m_seq) {
    if (n2 < 1 || m_seq < 1)
        throw std::domain_error("two_photon_information: n2 and m_seq must be positive");
    const double total = static_cast<double>(n2) +
                         static_cast<double>(m_seq) * static_cast<double>(n2);
    return log_binomial(total, static_cast<double>(n2) + 1.0) / std::log(2.0);
}

/// Capacity, in bits, of m_seq bosonic modes carrying nbar photons in total:
/// (nbar+m)log2(nbar+m) - nbar log2 nbar - m log2 m, rearranged so the
/// large-m cancellation is done analytically instead of in floating point.
inline double coherent_information(double nbar, double m_seq) {
    if (!(nbar >= 0.0))
        throw std::domain_error("coherent_information: nbar must be nonnegative");
    if (!(m_seq >= 1.0))
        throw std::domain_error("coherent_information: m_seq must be at least 1");
    if (nbar == 0.0) return 0.0;  // x log x -> 0 convention
    return nbar * std::log2((nbar + m_seq) / nbar)
         + m_seq * std::log1p(nbar / m_seq) / std::log(2.0);
}

/// Matched working point of the two protocols for n-bit inputs: photon
/// budgets chosen so each protocol's misidentification probability equals
/// p_err, sequence lengths from the achievable code rates.
struct ProtocolOperatingPoint {
    double n;             ///< input string length (bits)
    double p_err_target;  ///< misidentification probability both budgets meet
    double delta_coh;     ///< base code minimum relative distance
    double Delta_min;     ///< extended-code distance matched to delta_coh
    double nbar;          ///< coherent photon budget: ln(1/p_err)/(2 delta_coh)
    std::int64_t n2;      ///< photon-pair budget (rounded up)
    std::int64_t m;       ///< coherent sequence length round(n / gv_rate)
    std::int64_t M;       ///< two-photon sequence length round(n / modified_gv_rate)
};

inline ProtocolOperatingPoint operating_point(double n, double p_err, double delta_coh) {
    if (!(n >= 1.0))
        throw std::domain_error("operating_point: n must be at least 1");
    if (!(p_err > 0.0) || !(p_err < 1.0))
        throw std::domain_error("operating_point: p_err must lie in (0, 1)");
    if (!(delta_coh > 0.0))
        throw std::domain_error("operating_point: delta_coh must be positive");
    const double Delta = map_coherent_to_twophoton_distance(delta_coh);
    const double log_rel = std::log(1.0 / p_err);
    const double nbar = log_rel / (2.0 * delta_coh);
    // per-pair no-coincidence probability (1 + (1-2D)^2)/2 = 1 - 2D(1-D)
    const double per_pair_log = -std::log1p(-2.0 * Delta * (1.0 - Delta));
    const auto n2 = static_cast<std::int64_t>(std::ceil(log_rel / per_pair_log));
    const auto m = std::llround(n / gv_rate(delta_coh));
    const auto M = std::llround(n / modified_gv_rate(Delta));
    return {n, p_err, delta_coh, Delta, nbar, n2, m, M};
}

enum class Protocol { TwoPhoton, Coherent };

namespace detail {

inline double information_cost(const ProtocolOperatingPoint& op, Protocol which) {
    if (which == Protocol::TwoPhoton)
        return two_photon_information(op.n2, op.M);
    return coherent_information(op.nbar, static_cast<double>(op.m));
}

} // namespace detail

/// Smallest input length n at which the protocol's information cost drops
/// below the classical lower bound: a 20-point log grid over [1e2, 1e12]
/// locates the sign change, log-space bisection narrows it to three
/// significant figures.
inline std::int64_t crossover_length(double p_err, double delta_coh,
                                     Protocol which = Protocol::TwoPhoton) {
    auto quantum_wins = [&](double n) {
        const auto op = operating_point(n, p_err, delta_coh);
        return detail::information_cost(op, which) < classical_bound(n, p_err);
    };
    constexpr double n_low = 1e2, n_high = 1e12;
    if (quantum_wins(n_low)) return std::llround(n_low);
    double lo = n_low, hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i < 20; ++i) {
        const double n = std::pow(10.0, 2.0 + 10.0 * i / 19.0);
        if (quantum_wins(n)) {
            hi = n;
            bracketed = true;
            break;
        }
        lo = n;
    }
    if (!bracketed)
        throw std::runtime_error("crossover_length: no crossover found");
    while (hi / lo > 1.0 + 1e-3) {
        const double mid = std::sqrt(lo * hi);
        if (quantum_wins(mid)) hi = mid;
        else lo = mid;
    }
    return std::llround(std::sqrt(lo * hi));
}

} // namespace qfp
