#pragma once

// Ideal-protocol interference statistics: visibility from codeword pairs,
// coherent-state click probability, two-photon coincidence probability, the
// misidentification probabilities of both protocols, and the output-port
// distribution of a same-source photon pair on a balanced beam splitter.

#include "qfp/codes.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qfp {

/// Real interference visibility; 1 - 2*delta for binary phase codewords at
/// relative distance delta.
class Visibility {
public:
    explicit Visibility(double value) : value_(value) {
        if (!(std::fabs(value) <= 1.0))
            throw std::domain_error("visibility must lie in [-1, 1]");
    }
    double value() const { return value_; }

private:
    double value_;
};

/// Mean total photon number per pulse sequence per party.
class MeanPhotonNumber {
public:
    explicit MeanPhotonNumber(double nbar) : nbar_(nbar) {
        if (!(nbar >= 0.0))
            throw std::domain_error("mean photon number must be nonnegative");
    }
    double value() const { return nbar_; }

private:
    double nbar_;
};

/// Output-port statistics for one beam-splitter event.
struct SplitDistribution {
    double p_both_a;
    double p_both_b;
    double p_coincidence;
};

/// (1/m) sum_i (-1)^(ex_i + ey_i) = 1 - 2 * relative_distance(ex, ey).
inline Visibility visibility(const Codeword& ex, const Codeword& ey) {
    const int d = hamming_distance(ex, ey);  // rejects length mismatch
    const auto m = static_cast<double>(ex.size());
    return Visibility((m - 2.0 * d) / m);
}

/// Coincidence probability (1 - v^2)/2 of an interfering photon pair; even
/// in v, so a global phase flip of one codeword changes nothing.
inline double coincidence_probability(Visibility v) {
    const double x = v.value();
    return (1.0 - x * x) / 2.0;
}

/// Probability that the difference port fires at least once when coherent
/// pulse trains of mean photon number nbar interfere at visibility v:
/// 1 - exp[-nbar (1 - v)].
inline double coherent_click_probability(MeanPhotonNumber nbar, Visibility v) {
    return -std::expm1(-nbar.value() * (1.0 - v.value()));
}

/// Probability that two different strings at relative distance >= delta_min
/// produce no difference-port click in the coherent protocol:
/// exp(-2 nbar delta_min).
inline double misid_probability_coherent(MeanPhotonNumber nbar, double delta_min) {
    if (!(delta_min >= 0.0) || !(delta_min < 0.5))
        throw std::domain_error("misid_probability_coherent: delta_min must lie in [0, 1/2)");
    return std::exp(-2.0 * nbar.value() * delta_min);
}

/// Probability that n2 photon pairs from strings at extended relative
/// distance >= Delta_min produce no coincidence:
/// [(1 + (1 - 2 Delta_min)^2)/2]^n2.
inline double misid_probability_twophoton(std::int64_t n2, double Delta_min) {
    if (n2 < 0)
        throw std::domain_error("misid_probability_twophoton: n2 must be nonnegative");
    if (!(Delta_min >= 0.0) || !(Delta_min <= 0.5))
        throw std::domain_error("misid_probability_twophoton: Delta_min must lie in [0, 1/2]");
    // (1 + (1-2D)^2)/2 = 1 - 2D(1-D); the log1p form keeps large-n2 powers
    // accurate far below double underflow of the per-pair complement.
    const double p_c = 2.0 * Delta_min * (1.0 - Delta_min);
    return std::exp(static_cast<double>(n2) * std::log1p(-p_c));
}

/// Port statistics when both photons of a pair enter the balanced beam
/// splitter from the same side in one mode: bunching to either output with
/// probability 1/4 each, a coincidence with probability 1/2.
inline SplitDistribution single_source_pair_split() {
    return {0.25, 0.25, 0.5};
}

} // namespace qfp
