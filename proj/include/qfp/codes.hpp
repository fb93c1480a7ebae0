#pragma once

// Binary codewords, random linear codes with exhaustively certified minimum
// distance, the zero-padding codeword extension, and Gilbert-Varshamov style
// rate bounds for comparing the coherent-state and two-photon protocols.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qfp {

/// A fixed-length binary word. Bit strings are written most significant bit
/// first, i.e. "101" has bit 1 at positions 0 and 2.
class Codeword {
public:
    explicit Codeword(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        if (bits_.empty())
            throw std::invalid_argument("codeword must contain at least one bit");
        for (auto b : bits_)
            if (b > 1)
                throw std::invalid_argument("codeword symbols must be 0 or 1");
    }

    static Codeword from_string(std::string_view s) {
        std::vector<std::uint8_t> bits;
        bits.reserve(s.size());
        for (char ch : s) {
            if (ch != '0' && ch != '1')
                throw std::invalid_argument(
                    "codeword strings may contain only '0' and '1'");
            bits.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        return Codeword(std::move(bits));
    }

    std::string to_string() const {
        std::string s;
        s.reserve(bits_.size());
        for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    std::size_t size() const { return bits_.size(); }
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    bool operator==(const Codeword&) const = default;

    /// Bitwise complement; useful for constructing maximal-distance pairs.
    Codeword negated() const {
        std::vector<std::uint8_t> out(bits_.size());
        for (std::size_t i = 0; i < bits_.size(); ++i)
            out[i] = static_cast<std::uint8_t>(1 - bits_[i]);
        return Codeword(std::move(out));
    }

private:
    std::vector<std::uint8_t> bits_;
};

inline int hamming_distance(const Codeword& a, const Codeword& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("incompatible codeword lengths");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

inline double relative_distance(const Codeword& a, const Codeword& b) {
    return static_cast<double>(hamming_distance(a, b)) /
           static_cast<double>(a.size());
}

/// Append round(m * delta_min) zero bits (ties round up). The pad is the
/// same for every codeword of length m, so extended words stay comparable,
/// and the relative distance of a worst-case pair drops from delta_min to
/// delta_min / (1 + delta_min).
inline Codeword extend_codeword(const Codeword& c, double delta_min) {
    if (!(delta_min > 0.0) || !(delta_min < 0.5))
        throw std::domain_error("extend_codeword: delta_min must lie in (0, 1/2)");
    const auto pad = static_cast<std::size_t>(
        std::floor(static_cast<double>(c.size()) * delta_min + 0.5));
    auto bits = c.bits();
    bits.insert(bits.end(), pad, std::uint8_t{0});
    return Codeword(std::move(bits));
}

/// Minimum relative distance before/after the zero-padding extension.
struct DistanceProfile {
    double delta_min;  ///< base code, in (0, 1/2)
    double Delta_min;  ///< extended code: delta_min / (1 + delta_min), in (0, 1/3)
};

inline DistanceProfile distance_profile(double delta_min) {
    if (!(delta_min > 0.0) || !(delta_min < 0.5))
        throw std::domain_error("distance_profile: delta_min must lie in (0, 1/2)");
    return {delta_min, delta_min / (1.0 + delta_min)};
}

/// Binary entropy in bits, with the 0 log 0 = 0 convention.
inline double binary_entropy(double x) {
    if (!(x >= 0.0) || !(x <= 1.0))
        throw std::domain_error("binary_entropy: argument must lie in [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Achievable rate n/m = 1 - H2(delta_min) of binary codes with minimum
/// relative distance delta_min (Gilbert-Varshamov).
inline double gv_rate(double delta_min) {
    if (!(delta_min >= 0.0) || !(delta_min < 0.5))
        throw std::domain_error("gv_rate: bound is valid for delta_min < 1/2");
    return 1.0 - binary_entropy(delta_min);
}

/// Achievable rate n/M of zero-padded codes whose extended minimum relative
/// distance is Delta_min: the base code carries a fraction 1 - Delta_min of
/// the extended length and needs distance Delta_min / (1 - Delta_min).
inline double modified_gv_rate(double Delta_min) {
    if (!(Delta_min >= 0.0) || !(Delta_min < 1.0 / 3.0))
        throw std::domain_error("modified_gv_rate: bound is valid for Delta_min < 1/3");
    return (1.0 - Delta_min) * gv_rate(Delta_min / (1.0 - Delta_min));
}

/// Extended-code distance Delta_min that gives the two-photon protocol the
/// same one-sided misidentification decay per detected pair as a
/// coherent-state protocol run at distance delta_coh:
/// Delta = (1 - sqrt(2 exp(-2 delta_coh) - 1)) / 2, defined for
/// delta_coh <= ln(2)/2.
inline double map_coherent_to_twophoton_distance(double delta_coh) {
    if (!(delta_coh >= 0.0) || !(delta_coh <= std::log(2.0) / 2.0))
        throw std::domain_error("map_coherent_to_twophoton_distance: square-root argument negative");
    double radicand = 2.0 * std::exp(-2.0 * delta_coh) - 1.0;
    if (radicand < 0.0) radicand = 0.0;  // guard rounding right at the edge
    return (1.0 - std::sqrt(radicand)) / 2.0;
}

/// Extra codeword length the two-photon protocol needs relative to the
/// coherent-state protocol at equal input size and matched error decay:
/// gv_rate(delta_coh) / modified_gv_rate(matched distance).
inline double overhead_ratio(double delta_coh) {
    if (!(delta_coh > 0.0) || !(delta_coh <= 0.25))
        throw std::domain_error("overhead_ratio: delta_coh must lie in (0, 1/4]");
    const double denom = modified_gv_rate(map_coherent_to_twophoton_distance(delta_coh));
    if (denom <= 0.0)
        throw std::domain_error("overhead_ratio: rate bound vanishes");
    return gv_rate(delta_coh) / denom;
}

/// Binary linear code given by m generator rows over n input bits. Row i is
/// a bitmask whose bit (n-1-j) multiplies input bit j (so a row equals the
/// integer value of its binary string, most significant bit first); output
/// bit i of encode(x) is the GF(2) inner product of row i with x.
class LinearCode {
public:
    LinearCode(int n, int m, std::vector<std::uint64_t> rows,
               std::optional<int> certified_min_distance = std::nullopt)
        : n_(n), m_(m), rows_(std::move(rows)), d_min_(certified_min_distance) {
        if (n_ < 1 || m_ < n_ || m_ > 63)
            throw std::invalid_argument("linear code: require 1 <= n <= m <= 63");
        if (rows_.size() != static_cast<std::size_t>(m_))
            throw std::invalid_argument("linear code: generator must have m rows");
        const std::uint64_t mask = (n_ == 64) ? ~0ull : ((1ull << n_) - 1);
        for (auto r : rows_)
            if (r & ~mask)
                throw std::invalid_argument("linear code: generator row exceeds n bits");
        if (!full_column_rank())
            throw std::invalid_argument("linear code: generator must have full column rank");
        if (d_min_ && (*d_min_ < 1 || *d_min_ > m_))
            throw std::invalid_argument("linear code: certified distance out of range");
    }

    int input_bits() const { return n_; }
    int output_bits() const { return m_; }
    const std::vector<std::uint64_t>& rows() const { return rows_; }
    std::optional<int> certified_min_distance() const { return d_min_; }

    /// Generator columns as bitmasks over the m outputs; column j collects
    /// the coefficients of input bit j.
    std::vector<std::uint64_t> columns() const {
        std::vector<std::uint64_t> cols(static_cast<std::size_t>(n_), 0);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < n_; ++j)
                if ((rows_[static_cast<std::size_t>(i)] >> (n_ - 1 - j)) & 1u)
                    cols[static_cast<std::size_t>(j)] |= 1ull << i;
        return cols;
    }

private:
    bool full_column_rank() const {
        auto cols = columns();
        // Gaussian elimination over GF(2): distinct codewords for distinct
        // inputs iff the n columns are linearly independent.
        std::vector<std::uint64_t> basis;
        for (auto c : cols) {
            for (auto b : basis)
                c = std::min(c, c ^ b);
            if (c == 0) return false;
            basis.push_back(c);
        }
        return true;
    }

    int n_;
    int m_;
    std::vector<std::uint64_t> rows_;
    std::optional<int> d_min_;
};

inline Codeword encode(const LinearCode& code, const Codeword& input) {
    if (static_cast<int>(input.size()) != code.input_bits())
        throw std::invalid_argument("encode: input length must equal the code's input size");
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < input.size(); ++i)
        x = (x << 1) | input[i];
    std::vector<std::uint8_t> out(static_cast<std::size_t>(code.output_bits()));
    for (int i = 0; i < code.output_bits(); ++i)
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
            std::popcount(code.rows()[static_cast<std::size_t>(i)] & x) & 1);
    return Codeword(std::move(out));
}

/// Exact minimum distance by enumerating all 2^n - 1 nonzero codewords with
/// a Gray-code walk: consecutive input masks differ in one bit, so each step
/// XORs in a single generator column.
inline int exhaustive_min_distance(const LinearCode& code) {
    const int n = code.input_bits();
    if (n > 24)
        throw std::domain_error("exhaustive_min_distance: certification limited to n <= 24");
    const auto cols = code.columns();
    std::uint64_t cw = 0;
    int best = code.output_bits() + 1;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        cw ^= cols[static_cast<std::size_t>(std::countr_zero(k))];
        best = std::min(best, std::popcount(cw));
    }
    return best;
}

/// Draw generator rows uniformly until the column rank is full, then attach
/// the exhaustively certified minimum distance. Deterministic for a fixed
/// seed (std::mt19937_64 has a fully specified sequence).
inline LinearCode generate_random_linear_code(int n, int m, std::uint64_t seed) {
    if (n < 1 || m < n || m > 24)
        throw std::domain_error("generate_random_linear_code: require 1 <= n <= m <= 24");
    std::mt19937_64 rng(seed);
    const std::uint64_t mask = (1ull << n) - 1;
    constexpr int max_attempts = 256;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(m));
        for (auto& r : rows) r = rng() & mask;
        try {
            LinearCode code(n, m, rows);
            return LinearCode(n, m, std::move(rows), exhaustive_min_distance(code));
        } catch (const std::invalid_argument&) {
            continue;  // rank deficient; redraw
        }
    }
    throw std::runtime_error(
        "generate_random_linear_code: no full-rank generator after bounded retries");
}

/// Distance profile of a certified code: delta_min = d/m for the code
/// itself, Delta_min for its zero-padded extension.
inline DistanceProfile distance_profile(const LinearCode& code) {
    if (!code.certified_min_distance())
        throw std::invalid_argument("distance_profile: code carries no certified distance");
    const double delta = static_cast<double>(*code.certified_min_distance()) /
                         static_cast<double>(code.output_bits());
    return distance_profile(delta);
}

} // namespace qfp
