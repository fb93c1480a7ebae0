#pragma once

// Realistic-device probability model: two-click probability, effective
// visibility, and coincidence fraction under loss, dark counts, multiphoton
// emission, and residual distinguishability.

#include "qfp/interference.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qfp {

/// Device parameters in the combinations the statistics depend on: the
/// detected-photon probability per party per run (eta*nbar), the normalized
/// second-order correlation g2, the dark-count ratio p_d/(eta*nbar), and the
/// photon indistinguishability fraction W.
class SourceParams {
public:
    SourceParams(double eta_nbar, double g2, double dark_ratio, double w)
        : eta_nbar_(eta_nbar), g2_(g2), dark_ratio_(dark_ratio), w_(w) {
        if (!(eta_nbar_ >= 0.0))
            throw std::domain_error("source params: eta_nbar must be nonnegative");
        if (!(g2_ >= 0.0))
            throw std::domain_error("source params: g2 must be nonnegative");
        if (!(dark_ratio_ >= 0.0))
            throw std::domain_error("source params: dark_ratio must be nonnegative");
        if (!(w_ >= 0.0) || !(w_ <= 1.0))
            throw std::domain_error("source params: w must lie in [0, 1]");
        if (!(eta_nbar_ + eta_nbar_ * eta_nbar_ * g2_ / 2.0 <= 1.0))
            throw std::domain_error("source params: one- and two-photon probabilities exceed 1");
        // The closed-form expressions keep only the leading order in these
        // products; exploring beyond that regime is allowed but flagged.
        if (eta_nbar_ * g2_ > 0.1)
            warnings_.push_back("eta_nbar*g2 > 0.1: beyond the leading-order validity regime");
        if (dark_ratio_ > 0.1)
            warnings_.push_back("dark_ratio > 0.1: beyond the leading-order validity regime");
    }

    double eta_nbar() const { return eta_nbar_; }
    double g2() const { return g2_; }
    double dark_ratio() const { return dark_ratio_; }
    double w() const { return w_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// Relative weight of all two-click channels against the interfering
    /// pair: 1 (interfering pair) + g2 (same-source pair) + 4*dark_ratio
    /// (photon plus dark) + 2*dark_ratio^2 (two darks).
    double click_bracket() const {
        return 1.0 + g2_ + 4.0 * dark_ratio_ + 2.0 * dark_ratio_ * dark_ratio_;
    }

private:
    double eta_nbar_;
    double g2_;
    double dark_ratio_;
    double w_;
    std::vector<std::string> warnings_;
};

/// Coincidence fractions under the two hypotheses plus the per-run two-click
/// probability; everything the decision rule and the Chernoff analysis need.
struct HypothesisPair {
    double q_d;  ///< coincidence fraction when the inputs differ (worst case)
    double q_e;  ///< coincidence fraction when the inputs are equal
    double p2;   ///< two-click probability per run

    HypothesisPair(double q_d_, double q_e_, double p2_)
        : q_d(q_d_), q_e(q_e_), p2(p2_) {
        if (!(q_e >= 0.0) || !(q_d >= q_e) || !(q_d <= 1.0))
            throw std::domain_error("hypothesis pair: require 0 <= q_e <= q_d <= 1");
        if (!(p2 >= 0.0) || !(p2 <= 1.0))
            throw std::domain_error("hypothesis pair: p2 must lie in [0, 1]");
    }
};

/// Per-run probability of any two-click event, to leading order in eta*nbar:
/// (eta*nbar)^2 * [1 + g2 + 4*dark_ratio + 2*dark_ratio^2].
inline double two_click_probability(const SourceParams& p) {
    const double e = p.eta_nbar();
    return e * e * p.click_bracket();
}

/// Interference visibility diluted by the non-interfering two-click
/// channels: W * v^2 / [1 + g2 + 4*dark_ratio + 2*dark_ratio^2].
inline double effective_visibility(const SourceParams& p, Visibility v) {
    const double x = v.value();
    return p.w() * x * x / p.click_bracket();
}

/// Fraction of two-click events that are coincidences: (1 - V_eff)/2. The
/// complement is the double-count fraction.
inline double coincidence_fraction(const SourceParams& p, Visibility v) {
    return (1.0 - effective_visibility(p, v)) / 2.0;
}

/// Worst-case testing pair: q_d at visibility 1 - 2*Delta_min (different
/// inputs at the design distance), q_e at visibility 1 (equal inputs).
inline HypothesisPair hypothesis_pair(const SourceParams& p, double Delta_min) {
    if (!(Delta_min >= 0.0) || !(Delta_min <= 0.5))
        throw std::domain_error("hypothesis_pair: Delta_min must lie in [0, 1/2]");
    const double q_d = coincidence_fraction(p, Visibility(1.0 - 2.0 * Delta_min));
    const double q_e = coincidence_fraction(p, Visibility(1.0));
    return HypothesisPair(q_d, q_e, two_click_probability(p));
}

} // namespace qfp
