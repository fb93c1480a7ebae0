#pragma once

// JSON adapters for the types that cross the tool boundary: linear codes,
// source parameters, and event tallies. Readers validate through the same
// constructors as the in-memory API, so malformed or inconsistent input is
// rejected with the usual exceptions.

#include "qfp/codes.hpp"
#include "qfp/imperfections.hpp"
#include "qfp/interference.hpp"
#include "qfp/montecarlo.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qfp {

inline nlohmann::json code_to_json(const LinearCode& code) {
    nlohmann::json j{{"n", code.input_bits()},
                     {"m", code.output_bits()},
                     {"generator", code.rows()}};
    if (code.certified_min_distance())
        j["certified_min_distance"] = *code.certified_min_distance();
    else
        j["certified_min_distance"] = nullptr;
    return j;
}

inline LinearCode code_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    auto rows = j.at("generator").get<std::vector<std::uint64_t>>();
    std::optional<int> d;
    if (j.contains("certified_min_distance") &&
        !j.at("certified_min_distance").is_null())
        d = j.at("certified_min_distance").get<int>();
    return LinearCode(n, m, std::move(rows), d);
}

inline nlohmann::json params_to_json(const SourceParams& p) {
    return {{"eta_nbar", p.eta_nbar()},
            {"g2", p.g2()},
            {"dark_ratio", p.dark_ratio()},
            {"w", p.w()}};
}

inline SourceParams params_from_json(const nlohmann::json& j) {
    return SourceParams(j.at("eta_nbar").get<double>(), j.at("g2").get<double>(),
                        j.at("dark_ratio").get<double>(), j.at("w").get<double>());
}

inline nlohmann::json tally_to_json(const EventTally& t) {
    return {{"n_runs", t.n_runs},
            {"n_coincidence", t.n_coincidence},
            {"n_double", t.n_double},
            {"n_two_click", t.n_two_click()}};
}

inline EventTally tally_from_json(const nlohmann::json& j) {
    EventTally t;
    t.n_runs = j.at("n_runs").get<std::int64_t>();
    t.n_coincidence = j.at("n_coincidence").get<std::int64_t>();
    t.n_double = j.at("n_double").get<std::int64_t>();
    if (t.n_runs < 0 || t.n_coincidence < 0 || t.n_double < 0)
        throw std::invalid_argument("tally counts must be nonnegative");
    if (t.n_coincidence + t.n_double > t.n_runs)
        throw std::invalid_argument("tally counts exceed the number of runs");
    if (j.contains("n_two_click") &&
        j.at("n_two_click").get<std::int64_t>() != t.n_two_click())
        throw std::invalid_argument("tally n_two_click is inconsistent");
    return t;
}

/// Self-describing record of one simulated batch.
inline nlohmann::json batch_to_json(const SourceParams& p, Visibility v,
                                    std::int64_t n_runs, std::uint64_t seed,
                                    const EventTally& tally) {
    return {{"params", params_to_json(p)},
            {"v", v.value()},
            {"n_runs", n_runs},
            {"seed", seed},
            {"tally", tally_to_json(tally)}};
}

} // namespace qfp
