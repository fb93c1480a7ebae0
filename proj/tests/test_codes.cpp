#include "qfp/codes.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

using namespace qfp;
using Catch::Approx;

TEST_CASE("codeword construction and string round-trip") {
    const auto c = Codeword::from_string("0101");
    CHECK(c.size() == 4);
    CHECK(c.to_string() == "0101");
    CHECK(c[0] == 0);
    CHECK(c[1] == 1);
    CHECK_THROWS_AS(Codeword::from_string("01x1"), std::invalid_argument);
    CHECK_THROWS_AS(Codeword(std::vector<std::uint8_t>{}), std::invalid_argument);
    CHECK_THROWS_AS(Codeword(std::vector<std::uint8_t>{0, 2}), std::invalid_argument);
}

TEST_CASE("hamming distance counts differing positions") {
    const auto a = Codeword::from_string("0101");
    const auto b = Codeword::from_string("0110");
    CHECK(hamming_distance(a, b) == 2);
    CHECK(hamming_distance(a, a) == 0);
    CHECK(hamming_distance(a, a.negated()) == static_cast<int>(a.size()));
    CHECK_THROWS_AS(hamming_distance(a, Codeword::from_string("010")),
                    std::invalid_argument);
}

TEST_CASE("relative distance normalizes by length") {
    const auto a = Codeword::from_string("0101");
    const auto b = Codeword::from_string("0110");
    CHECK(relative_distance(a, b) == Approx(0.5));
    CHECK(relative_distance(a, a) == 0.0);
}

TEST_CASE("codeword extension pads with zeros, ties rounding up") {
    const auto c = Codeword::from_string("1011011001");  // length 10
    const auto ext = extend_codeword(c, 0.2);            // pad = round(2.0) = 2
    REQUIRE(ext.size() == 12);
    CHECK(ext.to_string() == "101101100100");

    // ties round up: 10 * 0.25 = 2.5 -> pad 3
    CHECK(extend_codeword(c, 0.25).size() == 13);

    // pad that rounds to zero leaves the word unchanged
    const auto same = extend_codeword(c, 0.04);  // 10 * 0.04 = 0.4 -> pad 0
    CHECK(same == c);

    CHECK_THROWS_AS(extend_codeword(c, 0.0), std::domain_error);
    CHECK_THROWS_AS(extend_codeword(c, 0.5), std::domain_error);
    CHECK_THROWS_AS(extend_codeword(c, -0.1), std::domain_error);
}

TEST_CASE("distance profile ties the two distances together") {
    for (const double d : {0.05, 0.1, 0.2, 0.3, 0.49}) {
        const auto prof = distance_profile(d);
        CHECK(prof.delta_min == Approx(d));
        CHECK(prof.Delta_min == Approx(d / (1.0 + d)).epsilon(1e-15));
        CHECK(prof.Delta_min < 1.0 / 3.0);
    }
    CHECK_THROWS_AS(distance_profile(0.0), std::domain_error);
    CHECK_THROWS_AS(distance_profile(0.5), std::domain_error);
}

TEST_CASE("binary entropy endpoints, symmetry, and reference value") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.2) == Approx(0.7219280948873623).epsilon(1e-14));
    for (const double x : {0.01, 0.1, 0.3, 0.45})
        CHECK(binary_entropy(x) == Approx(binary_entropy(1.0 - x)).epsilon(1e-13));
    CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("achievable rate of distance-delta codes") {
    CHECK(gv_rate(0.0) == 1.0);
    CHECK(gv_rate(0.2) == Approx(0.2780719051126377).epsilon(1e-14));
    CHECK(gv_rate(0.5 - 1e-9) < 1e-12);  // vanishes at distance 1/2
    CHECK_THROWS_AS(gv_rate(0.5), std::domain_error);
    CHECK_THROWS_AS(gv_rate(-0.1), std::domain_error);
}

TEST_CASE("achievable rate of extended codes") {
    CHECK(modified_gv_rate(0.0) == 1.0);
    CHECK(modified_gv_rate(0.208178) == Approx(0.13373392442519175).epsilon(1e-13));
    CHECK(modified_gv_rate(0.25) == Approx(0.06127812445913283).epsilon(1e-13));
    CHECK_THROWS_AS(modified_gv_rate(1.0 / 3.0), std::domain_error);
    CHECK_THROWS_AS(modified_gv_rate(0.4), std::domain_error);
}

TEST_CASE("distance map between the two protocols") {
    CHECK(map_coherent_to_twophoton_distance(0.0) == 0.0);
    CHECK(map_coherent_to_twophoton_distance(0.2) ==
          Approx(0.20817809709033208).epsilon(1e-14));
    // edge of the domain: radicand hits zero exactly
    CHECK(map_coherent_to_twophoton_distance(std::log(2.0) / 2.0) == Approx(0.5));
    CHECK_THROWS_AS(map_coherent_to_twophoton_distance(std::log(2.0) / 2.0 + 1e-9),
                    std::domain_error);
    CHECK_THROWS_AS(map_coherent_to_twophoton_distance(-0.01), std::domain_error);
}

TEST_CASE("distance map is increasing, close to identity, and invertible") {
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double delta = 0.25 * i / 100.0;
        const double Delta = map_coherent_to_twophoton_distance(delta);
        CHECK(Delta > prev);
        prev = Delta;
        CHECK(Delta <= delta * 1.1 + 1e-15);
        // closed-form inverse: delta = -log[(1 + (1-2 Delta)^2)/2] / 2
        const double one_minus = 1.0 - 2.0 * Delta;
        const double back = -0.5 * std::log((1.0 + one_minus * one_minus) / 2.0);
        CHECK(back == Approx(delta).margin(1e-12));
    }
}

TEST_CASE("codeword-length overhead between the protocols") {
    CHECK(overhead_ratio(0.25) == Approx(5.105390339219333).epsilon(1e-12));
    CHECK(overhead_ratio(0.25) > 5.0);
    CHECK(overhead_ratio(0.25) < 5.2);
    CHECK(overhead_ratio(1e-6) == Approx(1.0).margin(1e-3));
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double delta = 0.25 * i / 100.0;
        const double r = overhead_ratio(delta);
        CHECK(r >= 1.0);
        CHECK(r >= prev);
        prev = r;
    }
    CHECK_THROWS_AS(overhead_ratio(0.0), std::domain_error);
    CHECK_THROWS_AS(overhead_ratio(0.26), std::domain_error);
}

TEST_CASE("linear code validation") {
    // rank-deficient generator: both outputs read the same input bit
    CHECK_THROWS_AS(LinearCode(2, 2, {0b01, 0b01}), std::invalid_argument);
    CHECK_THROWS_AS(LinearCode(2, 1, {0b11}), std::invalid_argument);  // m < n
    CHECK_THROWS_AS(LinearCode(2, 2, {0b101, 0b01}), std::invalid_argument);
    CHECK_THROWS_AS(LinearCode(2, 3, {0b01, 0b10}), std::invalid_argument);
    const LinearCode ok(2, 3, {0b01, 0b10, 0b11});
    CHECK(ok.input_bits() == 2);
    CHECK(ok.output_bits() == 3);
}

TEST_CASE("repetition and identity codes have the expected distance") {
    const LinearCode repetition(1, 3, {1, 1, 1});
    CHECK(exhaustive_min_distance(repetition) == 3);

    const LinearCode identity(5, 5, {0b10000, 0b01000, 0b00100, 0b00010, 0b00001});
    CHECK(exhaustive_min_distance(identity) == 1);
}

TEST_CASE("random code generation certifies the true minimum distance") {
    const auto code = generate_random_linear_code(4, 8, 7);
    REQUIRE(code.certified_min_distance().has_value());
    CHECK(*code.certified_min_distance() == oracles::min_distance_reference(code));

    for (const std::uint64_t seed : {1ull, 2ull, 3ull, 99ull}) {
        for (const auto [n, m] : {std::pair{3, 6}, {5, 9}, {6, 12}, {8, 16}}) {
            const auto c = generate_random_linear_code(n, m, seed);
            REQUIRE(c.certified_min_distance().has_value());
            CHECK(*c.certified_min_distance() == oracles::min_distance_reference(c));
            CHECK(*c.certified_min_distance() >= 1);
        }
    }
    CHECK_THROWS_AS(generate_random_linear_code(4, 3, 1), std::domain_error);
    CHECK_THROWS_AS(generate_random_linear_code(0, 3, 1), std::domain_error);
    CHECK_THROWS_AS(generate_random_linear_code(4, 25, 1), std::domain_error);
}

TEST_CASE("random code generation is deterministic in the seed") {
    const auto a = generate_random_linear_code(6, 12, 42);
    const auto b = generate_random_linear_code(6, 12, 42);
    CHECK(a.rows() == b.rows());
    CHECK(a.certified_min_distance() == b.certified_min_distance());
    const auto c = generate_random_linear_code(6, 12, 43);
    CHECK(a.rows() != c.rows());  // astronomically unlikely to collide
}

TEST_CASE("encode matches an independent per-bit reference") {
    const auto code = generate_random_linear_code(4, 8, 7);
    for (std::uint64_t x = 0; x < 16; ++x) {
        std::vector<std::uint8_t> bits(4);
        for (int j = 0; j < 4; ++j)
            bits[static_cast<std::size_t>(j)] =
                static_cast<std::uint8_t>(x >> (3 - j) & 1);
        const auto cw = encode(code, Codeword(bits));
        int weight = 0;
        for (std::size_t i = 0; i < cw.size(); ++i) weight += cw[i];
        CHECK(weight == oracles::encode_weight_reference(code, x));
    }
    CHECK_THROWS_AS(encode(code, Codeword::from_string("011")),
                    std::invalid_argument);
}

TEST_CASE("encode is linear over GF(2)") {
    const auto code = generate_random_linear_code(6, 11, 5);
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t x = rng() & 0x3F, y = rng() & 0x3F;
        auto to_word = [](std::uint64_t v) {
            std::vector<std::uint8_t> bits(6);
            for (int j = 0; j < 6; ++j)
                bits[static_cast<std::size_t>(j)] =
                    static_cast<std::uint8_t>(v >> (5 - j) & 1);
            return Codeword(bits);
        };
        const auto ex = encode(code, to_word(x));
        const auto ey = encode(code, to_word(y));
        const auto exy = encode(code, to_word(x ^ y));
        for (std::size_t i = 0; i < ex.size(); ++i)
            CHECK(exy[i] == (ex[i] ^ ey[i]));
    }
}

TEST_CASE("certified distance lower-bounds every codeword pair") {
    const auto code = generate_random_linear_code(6, 12, 11);
    const int d = *code.certified_min_distance();
    auto to_word = [](std::uint64_t v) {
        std::vector<std::uint8_t> bits(6);
        for (int j = 0; j < 6; ++j)
            bits[static_cast<std::size_t>(j)] =
                static_cast<std::uint8_t>(v >> (5 - j) & 1);
        return Codeword(bits);
    };
    bool attained = false;
    for (std::uint64_t x = 0; x < 64; ++x)
        for (std::uint64_t y = x + 1; y < 64; ++y) {
            const int dist = hamming_distance(encode(code, to_word(x)),
                                              encode(code, to_word(y)));
            CHECK(dist >= d);
            if (dist == d) attained = true;
        }
    CHECK(attained);  // the certificate is tight, not just a bound
}

TEST_CASE("extended codeword pair distances stay inside the sandwich") {
    // A code whose pad is exactly m * delta_min, so the sandwich bounds are
    // the exact extension identities.
    const auto code = generate_random_linear_code(4, 10, 21);
    const int d = *code.certified_min_distance();
    const int m = code.output_bits();
    const double delta_min = static_cast<double>(d) / m;
    const auto pad = static_cast<std::size_t>(std::floor(m * delta_min + 0.5));
    const double M = static_cast<double>(m) + static_cast<double>(pad);
    const double Delta_lo = static_cast<double>(d) / M;
    const double Delta_hi = static_cast<double>(m) / M;

    auto to_word = [](std::uint64_t v) {
        std::vector<std::uint8_t> bits(4);
        for (int j = 0; j < 4; ++j)
            bits[static_cast<std::size_t>(j)] =
                static_cast<std::uint8_t>(v >> (3 - j) & 1);
        return Codeword(bits);
    };
    for (std::uint64_t x = 0; x < 16; ++x)
        for (std::uint64_t y = x + 1; y < 16; ++y) {
            const auto ea = extend_codeword(encode(code, to_word(x)), delta_min);
            const auto eb = extend_codeword(encode(code, to_word(y)), delta_min);
            const double Delta = relative_distance(ea, eb);
            CHECK(Delta >= Delta_lo - 1e-12);
            CHECK(Delta <= Delta_hi + 1e-12);
        }
    // with pad == m * delta_min exactly these are the profile identities
    const auto prof = distance_profile(code);
    CHECK(Delta_lo == Approx(prof.Delta_min).epsilon(1e-12));
    CHECK(Delta_hi == Approx(1.0 - prof.Delta_min).epsilon(1e-12));
}
