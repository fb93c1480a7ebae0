#include "qfp/interference.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace qfp;
using Catch::Approx;

TEST_CASE("visibility bounds are enforced") {
    CHECK_THROWS_AS(Visibility(1.0001), std::domain_error);
    CHECK_THROWS_AS(Visibility(-1.0001), std::domain_error);
    CHECK(Visibility(1.0).value() == 1.0);
    CHECK(Visibility(-1.0).value() == -1.0);
    CHECK_THROWS_AS(MeanPhotonNumber(-0.1), std::domain_error);
}

TEST_CASE("visibility from codeword pairs") {
    const auto a = Codeword::from_string("0101");
    CHECK(visibility(a, a).value() == Approx(1.0));
    CHECK(visibility(a, a.negated()).value() == Approx(-1.0));
    const auto one_diff = Codeword::from_string("0100");
    CHECK(visibility(a, one_diff).value() == Approx(0.5));
    // agrees with the distance identity 1 - 2*delta
    CHECK(visibility(a, one_diff).value() ==
          Approx(1.0 - 2.0 * relative_distance(a, one_diff)));
    // symmetric in its arguments
    CHECK(visibility(one_diff, a).value() == visibility(a, one_diff).value());
    CHECK_THROWS_AS(visibility(a, Codeword::from_string("01011")),
                    std::invalid_argument);
}

TEST_CASE("two-photon coincidence probability") {
    CHECK(coincidence_probability(Visibility(1.0)) == 0.0);
    CHECK(coincidence_probability(Visibility(-1.0)) == 0.0);  // phase blind
    CHECK(coincidence_probability(Visibility(0.8)) == Approx(0.18).epsilon(1e-15));
    for (const double v : {0.0, 0.3, 0.77, 0.95}) {
        const double p = coincidence_probability(Visibility(v));
        CHECK(p >= 0.0);
        CHECK(p <= 0.5);
        CHECK(p == coincidence_probability(Visibility(-v)));  // even in v
    }
    CHECK(coincidence_probability(Visibility(0.0)) == Approx(0.5));
}

TEST_CASE("coherent difference-port click probability") {
    CHECK(coherent_click_probability(MeanPhotonNumber(3.7), Visibility(1.0)) == 0.0);
    CHECK(coherent_click_probability(MeanPhotonNumber(0.0), Visibility(-0.3)) == 0.0);
    CHECK(coherent_click_probability(MeanPhotonNumber(1.0), Visibility(-1.0)) ==
          Approx(0.8646647167633873).epsilon(1e-14));
    // tiny rates survive the cancellation near zero
    const double p = coherent_click_probability(MeanPhotonNumber(1e-12), Visibility(0.0));
    CHECK(p == Approx(1e-12).epsilon(1e-9));
}

TEST_CASE("coherent misidentification probability") {
    CHECK(misid_probability_coherent(MeanPhotonNumber(0.0), 0.3) == 1.0);
    CHECK(misid_probability_coherent(MeanPhotonNumber(10.0), 0.2) ==
          Approx(0.01831563888873418).epsilon(1e-14));
    // complement identity against the click probability at v = 1 - 2 delta
    for (const double delta : {0.0, 0.1, 0.25, 0.4}) {
        const MeanPhotonNumber nbar(2.3);
        CHECK(misid_probability_coherent(nbar, delta) ==
              Approx(1.0 - coherent_click_probability(nbar, Visibility(1.0 - 2.0 * delta)))
                  .epsilon(1e-12));
    }
    CHECK_THROWS_AS(misid_probability_coherent(MeanPhotonNumber(1.0), 0.5),
                    std::domain_error);
    CHECK_THROWS_AS(misid_probability_coherent(MeanPhotonNumber(1.0), -0.1),
                    std::domain_error);
}

TEST_CASE("two-photon misidentification probability") {
    CHECK(misid_probability_twophoton(0, 0.3) == 1.0);
    CHECK(misid_probability_twophoton(10, 0.1) ==
          Approx(0.1374480313359605).epsilon(1e-13));
    // exponential scaling in the number of pairs
    const double per_pair = misid_probability_twophoton(1, 0.17);
    for (const std::int64_t n2 : {2ll, 7ll, 40ll})
        CHECK(misid_probability_twophoton(n2, 0.17) ==
              Approx(std::pow(per_pair, static_cast<double>(n2))).epsilon(1e-12));
    // crude upper bound (1-x <= e^-x per pair)
    for (const double D : {0.05, 0.2, 0.5})
        for (const std::int64_t n2 : {1ll, 5ll, 100ll})
            CHECK(misid_probability_twophoton(n2, D) <=
                  std::exp(-static_cast<double>(n2) * 2.0 * D * (1.0 - D)) + 1e-15);
    CHECK_THROWS_AS(misid_probability_twophoton(-1, 0.1), std::domain_error);
    CHECK_THROWS_AS(misid_probability_twophoton(10, 0.51), std::domain_error);
}

TEST_CASE("matched distances equalize the misidentification decay") {
    // with equal photon budgets and Delta the mapped distance, the two
    // protocols' misidentification probabilities coincide
    const double nbar = 50.0;
    const std::int64_t n2 = 50;
    for (int i = 0; i <= 100; ++i) {
        const double delta = 0.34 * i / 100.0;
        const double Delta = map_coherent_to_twophoton_distance(delta);
        const double coh = misid_probability_coherent(MeanPhotonNumber(nbar), delta);
        const double two = misid_probability_twophoton(n2, Delta);
        CHECK(std::fabs(coh - two) / coh < 1e-10);
    }
}

TEST_CASE("same-source pair split distribution") {
    const auto split = single_source_pair_split();
    CHECK(split.p_coincidence == Approx(0.5));
    CHECK(split.p_both_a == Approx(0.25));
    CHECK(split.p_both_b == Approx(0.25));
    CHECK(split.p_both_a + split.p_both_b + split.p_coincidence ==
          Approx(1.0).margin(1e-12));
}
