#include <doctest.h>

#include <cmath>
#include <random>

#include "fockrad/extremal.hpp"
#include "fockrad/gamma_kernel.hpp"
#include "oracles.hpp"
#include "random_symbols.hpp"

using namespace fockrad;

TEST_CASE("galbis_bound values") {
    CHECK(galbis_bound(0.0) == 0.0);
    CHECK(galbis_bound(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    // cross-check against an exp implementation independent of std::exp
    CHECK(galbis_bound(1.5) == doctest::Approx(1.0 - oracle::taylor_exp(-1.5)).epsilon(1e-14));
    CHECK(galbis_bound(1.5) == doctest::Approx(0.7768698).epsilon(1e-7));
    CHECK_THROWS_AS(galbis_bound(-0.1), std::domain_error);
}

TEST_CASE("best_interval: order zero takes the leftmost window") {
    for (double length : {0.1, 1.0, 7.5}) {
        const ExtremalInterval window = best_interval(0, length);
        CHECK(window.a == 0.0);
        CHECK(window.b == length);
        CHECK(window.mass == doctest::Approx(galbis_bound(length)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(best_interval(0, 0.0), std::domain_error);
    CHECK_THROWS_AS(best_interval(0, -1.0), std::domain_error);
    CHECK_THROWS_AS(best_interval(-1, 1.0), std::domain_error);
}

TEST_CASE("best_interval matches the bisection oracle at (n=5, L=2)") {
    // stationarity residual r(a) = n ln(1 + L/a) - L is strictly decreasing
    const double via_bisection = oracle::bisect(
        [](double a) { return 5.0 * std::log(1.0 + 2.0 / a) - 2.0; }, 1e-9, 5.0);
    const ExtremalInterval window = best_interval(5, 2.0);
    CHECK(window.a == doctest::Approx(via_bisection).epsilon(1e-12));
    CHECK(window.a == doctest::Approx(4.0665).epsilon(1e-4));
    CHECK(window.b == doctest::Approx(6.0665).epsilon(1e-4));

    SUBCASE("grid scan confirms global maximality") {
        for (double a = 0.0; a <= 20.0; a += 1e-3) {
            CHECK(interval_mass(5, a, a + 2.0).mass <= window.mass + 1e-12);
        }
    }

    SUBCASE("window is not naively centered at n") {
        const double centered = interval_mass(5, 4.0, 6.0).mass;
        CHECK(window.mass > centered);
    }
}

TEST_CASE("stationarity, containment, and monotonicity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lengths(0.05, 15.0);
    for (std::int64_t n = 1; n <= 100; n += 7) {
        const double peak = kernel(n, static_cast<double>(n));
        for (int trial = 0; trial < 10; ++trial) {
            const double length = lengths(rng);
            const ExtremalInterval window = best_interval(n, length);
            if (window.a > 0.0) {
                CHECK(std::abs(kernel(n, window.a) - kernel(n, window.b)) <= 1e-10 * peak);
                CHECK(window.a <= static_cast<double>(n));
                CHECK(window.b >= static_cast<double>(n));
            } else {
                CHECK(window.b >= static_cast<double>(n));
            }
        }

        double previous = 0.0;
        for (double length = 0.25; length <= 20.0; length += 0.25) {
            const double mass = best_interval(n, length).mass;
            CHECK(mass >= previous - 1e-13);
            previous = mass;
        }
    }

    SUBCASE("extreme budget collapses to the boundary window") {
        const ExtremalInterval window = best_interval(1, 2000.0);
        CHECK(window.a == 0.0);
        CHECK(window.mass == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bound chain: window mass never beats the budget bound") {
    for (std::int64_t n : {0, 1, 5, 23, 100, 400, 1000}) {
        for (double length = 0.5; length <= 20.0; length += 0.5) {
            CHECK(best_interval(n, length).mass <= galbis_bound(length) + 1e-12);
        }
    }
}

TEST_CASE("tightness at n = 0") {
    for (int i = 1; i <= 60; ++i) {
        const double length = 0.5 * i;
        CHECK(best_interval(0, length).mass ==
              doctest::Approx(galbis_bound(length)).epsilon(1e-13));
    }
}

TEST_CASE("verify_rearrangement") {
    SUBCASE("the extremal window achieves its own bound") {
        for (std::int64_t n : {0, 3, 12}) {
            const ExtremalInterval window = best_interval(n, 2.5);
            const StepSymbol indicator(
                std::vector<StepPiece>{StepPiece{window.a, window.b, 1.0}});
            const LemmaReport report = verify_rearrangement(indicator, n);
            CHECK(std::abs(report.slack) <= 1e-12);
            CHECK(report.lemma_id == LemmaId::Rearrangement);
        }
    }

    SUBCASE("a split symbol is strictly dominated") {
        const StepSymbol split(
            std::vector<StepPiece>{StepPiece{0.0, 1.0, 0.5}, StepPiece{3.0, 4.0, 0.5}});
        const LemmaReport report = verify_rearrangement(split, 2);
        CHECK(report.slack > 0.0);
        CHECK(report.lhs == doctest::Approx(0.5 * interval_mass(2, 0.0, 1.0).mass +
                                            0.5 * interval_mass(2, 3.0, 4.0).mass)
                                .epsilon(1e-14));
    }

    SUBCASE("zero mass symbol") {
        const StepSymbol zero(std::vector<StepPiece>{StepPiece{1.0, 2.0, 0.0}});
        const LemmaReport report = verify_rearrangement(zero, 4);
        CHECK(report.lhs == 0.0);
        CHECK(report.rhs == 0.0);
        CHECK(report.slack == 0.0);
    }

    SUBCASE("randomized dominance") {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 100; ++trial) {
            const StepSymbol symbol = testgen::random_step_symbol(rng, 8, 50.0);
            for (std::int64_t n : {0, 1, 2, 5, 11, 29, 53, 100}) {
                const LemmaReport report = verify_rearrangement(symbol, n);
                CHECK(report.slack >= -1e-10);
            }
        }
    }
}
