#pragma once

// Stochastic per-run simulation of the realistic protocol: photon emission,
// beam-splitter routing with partial distinguishability, dark counts, event
// classification, and the end-to-end composition with the decision rule.
//
// Reproducibility contract: every run draws from its own stream derived from
// (seed, run_index), so a batch is bit-exact for a fixed seed no matter how
// the run index space is partitioned across workers. Each run consumes
// uniforms in a fixed order: A emission, B emission, routing draws, then one
// Poisson draw per detector (skipped entirely when dark_ratio == 0).

#include "qfp/decision.hpp"
#include "qfp/imperfections.hpp"
#include "qfp/interference.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace qfp {

/// Per-run pseudorandom stream: SplitMix64 (Steele, Lea & Flood's 64-bit
/// finalizer advanced by the golden-ratio increment), seeded through two
/// mixing rounds of (seed, run_index) so distinct runs get decorrelated
/// starting states regardless of how indices are assigned to workers.
class RunRng {
public:
    RunRng(std::uint64_t seed, std::uint64_t run_index) {
        state_ = mix(seed + 0x9E3779B97F4A7C15ull);
        state_ = mix(state_ ^ mix(run_index + 0xD1B54A32D192ED03ull));
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

enum class RunClass { NoTwoClick, Coincidence, DoubleA, DoubleB };

struct RunOutcome {
    int clicks_a;
    int clicks_b;
    RunClass classification;
};

struct EventTally {
    std::int64_t n_runs = 0;
    std::int64_t n_coincidence = 0;
    std::int64_t n_double = 0;

    std::int64_t n_two_click() const { return n_coincidence + n_double; }

    EventTally& operator+=(const EventTally& other) {
        n_runs += other.n_runs;
        n_coincidence += other.n_coincidence;
        n_double += other.n_double;
        return *this;
    }
};

namespace detail {

// Per-run constants derived once per batch.
struct RunModel {
    double p_two;       // per-party two-photon emission probability
    double p_one;       // per-party one-photon emission probability
    double w;           // indistinguishability fraction
    double p_coin;      // (1 - v^2)/2 for an interfering pair
    double exp_neg_pd;  // exp(-p_d) for the dark-count Poisson draws
    bool darks;         // p_d > 0
};

inline RunModel make_run_model(const SourceParams& p, Visibility v) {
    const double e = p.eta_nbar();
    const double p_d = p.dark_ratio() * e;
    return {e * e * p.g2() / 2.0, e,          p.w(),
            coincidence_probability(v),        std::exp(-p_d), p_d > 0.0};
}

// Poisson sample by inversion from uniform products (Knuth); one uniform
// per call in the dark-count regime mean << 1.
inline int poisson_knuth(RunRng& rng, double exp_neg_mean) {
    int k = 0;
    double prod = rng.uniform();
    while (prod > exp_neg_mean) {
        ++k;
        prod *= rng.uniform();
    }
    return k;
}

inline RunClass classify(int a, int b) {
    if (a >= 1 && b >= 1) return RunClass::Coincidence;
    if (a >= 2) return RunClass::DoubleA;
    if (b >= 2) return RunClass::DoubleB;
    return RunClass::NoTwoClick;
}

// One protocol run. Emission per party: 2 photons with probability
// (eta_nbar)^2 g2/2, else 1 with probability eta_nbar, else vacuum. Routing:
//  - one photon from each party (the interfering pair): with probability w
//    the photons are indistinguishable and give a coincidence with
//    probability (1 - v^2)/2, otherwise bunch to one random port; with
//    probability 1 - w each exits an independent uniform port;
//  - a lone photon exits a uniform port (balanced splitter);
//  - a same-source pair follows the 1/4, 1/4, 1/2 split distribution, the
//    two parties handled in order A then B (covers the sub-leading mixed
//    emission patterns compositionally);
//  - dark counts add Poisson(p_d) clicks per detector.
inline RunOutcome simulate_run_with(const RunModel& mdl, RunRng& rng) {
    auto emit = [&] {
        const double u = rng.uniform();
        return u < mdl.p_two ? 2 : (u < mdl.p_two + mdl.p_one ? 1 : 0);
    };
    const int k_a = emit();
    const int k_b = emit();
    int a = 0, b = 0;
    if (k_a == 1 && k_b == 1) {
        if (rng.uniform() < mdl.w) {
            if (rng.uniform() < mdl.p_coin) {
                a = 1;
                b = 1;
            } else if (rng.uniform() < 0.5) {
                a = 2;
            } else {
                b = 2;
            }
        } else {
            (rng.uniform() < 0.5 ? a : b) += 1;
            (rng.uniform() < 0.5 ? a : b) += 1;
        }
    } else {
        for (const int k : {k_a, k_b}) {
            if (k == 1) {
                (rng.uniform() < 0.5 ? a : b) += 1;
            } else if (k == 2) {
                const double u = rng.uniform();
                if (u < 0.25) a += 2;
                else if (u < 0.5) b += 2;
                else { a += 1; b += 1; }
            }
        }
    }
    if (mdl.darks) {
        a += poisson_knuth(rng, mdl.exp_neg_pd);
        b += poisson_knuth(rng, mdl.exp_neg_pd);
    }
    return {a, b, classify(a, b)};
}

} // namespace detail

/// One protocol run on an explicit per-run stream.
inline RunOutcome simulate_run(const SourceParams& p, Visibility v, RunRng& rng) {
    return detail::simulate_run_with(detail::make_run_model(p, v), rng);
}

/// Tally of n_runs independent runs. Deterministic in (params, v, n_runs,
/// seed) and independent of n_workers: run i always uses RunRng(seed, i).
inline EventTally simulate_batch(const SourceParams& p, Visibility v,
                                 std::int64_t n_runs, std::uint64_t seed,
                                 int n_workers = 1) {
    if (n_runs < 1)
        throw std::domain_error("simulate_batch: n_runs must be positive");
    const auto mdl = detail::make_run_model(p, v);
    auto run_range = [&mdl](std::int64_t first, std::int64_t last,
                            std::uint64_t seed_, EventTally& out) {
        EventTally t;
        t.n_runs = last - first;
        for (std::int64_t i = first; i < last; ++i) {
            RunRng rng(seed_, static_cast<std::uint64_t>(i));
            switch (detail::simulate_run_with(mdl, rng).classification) {
                case RunClass::Coincidence: ++t.n_coincidence; break;
                case RunClass::DoubleA:
                case RunClass::DoubleB: ++t.n_double; break;
                case RunClass::NoTwoClick: break;
            }
        }
        out = t;
    };
    if (n_workers <= 1) {
        EventTally t;
        run_range(0, n_runs, seed, t);
        return t;
    }
    const auto workers = static_cast<std::int64_t>(n_workers);
    std::vector<EventTally> parts(static_cast<std::size_t>(workers));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (std::int64_t w = 0; w < workers; ++w) {
        const std::int64_t first = n_runs * w / workers;
        const std::int64_t last = n_runs * (w + 1) / workers;
        threads.emplace_back(run_range, first, last, seed,
                             std::ref(parts[static_cast<std::size_t>(w)]));
    }
    for (auto& th : threads) th.join();
    EventTally total;
    for (const auto& part : parts) total += part;
    return total;
}

/// End-to-end protocol: interfere the two codewords, tally events, then run
/// the decision rule against the hypothesis pair for the design distance
/// Delta_min.
inline TestOutcome simulate_protocol(const Codeword& code_a, const Codeword& code_b,
                                     const SourceParams& p, double Delta_min,
                                     std::int64_t n_runs, std::uint64_t seed,
                                     int n_workers = 1) {
    const Visibility v = visibility(code_a, code_b);
    const EventTally tally = simulate_batch(p, v, n_runs, seed, n_workers);
    return decide(tally.n_coincidence, tally.n_two_click(),
                  hypothesis_pair(p, Delta_min));
}

} // namespace qfp
