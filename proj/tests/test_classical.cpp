#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hedgelab/classical.hpp"

using namespace hedgelab;

namespace {

double max_row(const std::vector<StrategyRow>& rows) {
    double best = rows.front().value;
    for (const StrategyRow& r : rows) best = std::max(best, r.value);
    return best;
}

}  // namespace

TEST_CASE("fraction arithmetic") {
    CHECK(Frac(2, 4) == Frac(1, 2));
    CHECK(Frac(-2, -4) == Frac(1, 2));
    CHECK(Frac(2, -4) == Frac(-1, 2));
    CHECK(Frac(1, 2) + Frac(1, 3) == Frac(5, 6));
    CHECK(Frac(1, 2) - Frac(1, 3) == Frac(1, 6));
    CHECK(Frac(1, 2) * Frac(2, 3) == Frac(1, 3));
    CHECK(Frac(1, 3) < Frac(1, 2));
    CHECK(Frac(3, 4).to_double() == 0.75);
    CHECK_THROWS_AS(Frac(1, 0), std::invalid_argument);
}

TEST_CASE("bit game: sequential play wins 3/4, parallel only 1/2") {
    const Game1Values gv = game1_values();
    CHECK(gv.sval == Frac(3, 4));
    CHECK(gv.pval == Frac(1, 2));
    CHECK(game1_single_win_value() == Frac(1, 2));

    // The adaptive edge: commit to the coin, then steer the second round
    // off the result.  No fixed pair of bits can do that.
    CHECK(gv.sval.to_double() > gv.pval.to_double());
}

TEST_CASE("bit game strategy tables") {
    const auto par = enumerate_strategy_values(1, PlaySetting::parallel);
    CHECK(par.size() == 4);
    CHECK(max_row(par) == 0.5);
    // Only the double-zero play is hopeless.
    int zeros = 0;
    for (const StrategyRow& r : par)
        if (r.value == 0.0) ++zeros;
    CHECK(zeros == 1);

    const auto seq = enumerate_strategy_values(1, PlaySetting::sequential);
    CHECK(seq.size() == 8);
    CHECK(max_row(seq) == 0.75);
    // The winning line: open with the coin, then mirror the result.
    bool found = false;
    for (const StrategyRow& r : seq)
        found = found || (r.name == "b1=1 b2(win)=0 b2(loss)=1" &&
                          r.value == 0.75);
    CHECK(found);
}

TEST_CASE("asymmetric game: enumerated values against closed forms") {
    for (double p = 0.0; p < 0.96; p += 0.05) {
        const Game2Values gv = game2_values(p);
        const double pval_expected =
            0.5 + 0.5 * std::max(p, 2.0 * p * (1.0 - p));
        const double sval_expected = 0.5 + 0.5 * p;
        CHECK(std::abs(gv.pval - pval_expected) <= 1e-12);
        CHECK(std::abs(gv.sval - sval_expected) <= 1e-12);

        // Parallel play never trails, and for p < 1/2 it leads by exactly
        // p(1 - 2p)/2.
        CHECK(gv.pval >= gv.sval - 1e-12);
        if (p > 0.0 && p < 0.5)
            CHECK(std::abs((gv.pval - gv.sval) -
                           0.5 * p * (1.0 - 2.0 * p)) <= 1e-12);
    }
}

TEST_CASE("asymmetric game: frozen spot values") {
    SUBCASE("p = 0 degenerates to the fair game") {
        const Game2Values gv = game2_values(0.0);
        CHECK(gv.pval == 0.5);
        CHECK(gv.sval == 0.5);
    }
    SUBCASE("p = 0.25") {
        const Game2Values gv = game2_values(0.25);
        CHECK(std::abs(gv.pval - 0.6875) <= 1e-15);
        CHECK(std::abs(gv.sval - 0.625) <= 1e-15);
    }
    SUBCASE("p = 0.6: the two settings tie") {
        const Game2Values gv = game2_values(0.6);
        CHECK(std::abs(gv.pval - 0.8) <= 1e-12);
        CHECK(std::abs(gv.sval - 0.8) <= 1e-12);
    }
}

TEST_CASE("asymmetric game parameter range") {
    CHECK_THROWS_AS(game2_values(1.0), std::invalid_argument);
    CHECK_THROWS_AS(game2_values(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_strategy_values(2, PlaySetting::parallel, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_strategy_values(3, PlaySetting::parallel),
                    std::invalid_argument);
}

TEST_CASE("asymmetric game strategy tables") {
    const double p = 0.3;
    const auto par = enumerate_strategy_values(2, PlaySetting::parallel, p);
    const auto seq =
        enumerate_strategy_values(2, PlaySetting::sequential, p);
    CHECK(par.size() == 256);
    CHECK(seq.size() == 1024);

    const Game2Values gv = game2_values(p);
    CHECK(max_row(par) == gv.pval);
    CHECK(max_row(seq) == gv.sval);

    // Mixing strategies is linear in the mixture, so no lottery over rows
    // can beat the deterministic maximum.
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double lambda = u(rng);
        const double vi = par[rng() % par.size()].value;
        const double vj = par[rng() % par.size()].value;
        CHECK(lambda * vi + (1.0 - lambda) * vj <= gv.pval + 1e-12);
    }
}
