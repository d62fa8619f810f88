#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "doctest.h"
#include "hedgelab/coinflip.hpp"
#include "hedgelab/games.hpp"
#include "support.hpp"

using namespace hedgelab;
using namespace hedgelab::testsupport;

namespace {

std::uint64_t env_seed() {
    const char* s = std::getenv("HEDGELAB_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 0;
}

}  // namespace

TEST_CASE("honest play is a fair coin that never disagrees") {
    const HonestOutcome h = honest_distribution();
    CHECK(std::abs(h.alice_win - 0.5) <= 1e-15);
    CHECK(std::abs(h.bob_win - 0.5) <= 1e-15);
    CHECK(std::abs(h.agreement - 1.0) <= 1e-15);
}

TEST_CASE("Alice-side operators and her cheat value") {
    const Mat win = alice_win_operator();
    const Mat lose = alice_lose_operator();

    // Two-element POVM on one qubit.
    CHECK((win + lose).max_abs_diff(Mat::identity(2)) <= 1e-12);
    CHECK(min_eig(win) >= -1e-12);
    CHECK(min_eig(lose) >= -1e-12);

    CHECK(std::abs(alice_cheat_value() - kCos2Pi8) <= 1e-12);
    // Complementary: her best chance of losing on purpose.
    CHECK(std::abs(min_eig(lose) - kSin2Pi8) <= 1e-12);
    CHECK(std::abs(max_eig(win) + min_eig(lose) - 1.0) <= 1e-12);
}

TEST_CASE("Bob's winning operator is a projector") {
    const Mat w = bob_win_operator();
    CHECK(w.is_hermitian());
    CHECK((w * w).max_abs_diff(w) <= 1e-12);
    CHECK(std::abs(w.trace().real() - 2.0) <= 1e-12);
}

TEST_CASE("Bob's cheating SDP hits cos^2(pi/8) with an exact certificate") {
    const SDPSolution sol = bob_cheat_value();
    CHECK(sol.converged);
    CHECK(std::abs(sol.primal_value - kCos2Pi8) <= 1e-6);
    CHECK(std::abs(sol.dual_value - kCos2Pi8) <= 1e-12);
    CHECK(sol.gap <= 2e-4);
    CHECK(sol.gap >= -1e-12);

    const OneRoundGame game = coin_flip_game();
    CHECK(dual_feasible(sol.Y, bob_win_operator(), game.layout, 1e-12));
}

TEST_CASE("rotation strategies") {
    SUBCASE("the optimal angle meets the SDP value exactly") {
        const RotationStrategy s = bob_rotation_strategy(kBobOptimalAngle);
        CHECK(std::abs(s.value - kCos2Pi8) <= 1e-12);
        CHECK(std::abs(s.zeta.norm() - 1.0) <= 1e-12);

        // Rotating only the message register cannot move the board
        // reduction, so the strategy is a feasible cheat.
        const SubsystemLayout layout{2, 2};
        const Mat red = partial_trace(outer(s.zeta, s.zeta), layout, {0});
        CHECK(red.max_abs_diff(cx(0.5, 0) * Mat::identity(2)) <= 1e-12);
    }
    SUBCASE("a quarter turn wins three times out of four") {
        CHECK(std::abs(bob_rotation_strategy(-kPi / 2).value - 0.75) <=
              1e-12);
    }
    SUBCASE("returning the message untouched loses three times of four") {
        // The echoed qubit stays correlated with the board: on b = 0
        // Alice holds |0> and wins outright, and the b = 1 branch only
        // returns a quarter.  Doing nothing is far below the honest half.
        CHECK(std::abs(bob_rotation_strategy(0.0).value - 0.25) <= 1e-12);
    }
    SUBCASE("explicit strategy value") {
        CHECK(std::abs(bob_explicit_strategy_value() - kCos2Pi8) <= 1e-12);
    }
    SUBCASE("explicit strategy agrees with the solver") {
        const SDPSolution sol = bob_cheat_value();
        CHECK(std::abs(bob_explicit_strategy_value() - sol.primal_value) <=
              2e-4);
    }
}

TEST_CASE("hedge attack construction") {
    const HedgeAttack atk = build_hedge_attack();

    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(atk.alpha[i].norm() - 1.0) <= 1e-12);
        for (int j = i + 1; j < 4; ++j)
            CHECK(std::abs(atk.alpha[i].inner(atk.alpha[j])) <= 1e-12);
    }

    CHECK((atk.U * atk.U.adjoint()).max_abs_diff(Mat::identity(4)) <= 1e-12);
    for (int i = 0; i < 4; ++i)
        CHECK(mat_vec(atk.U, atk.alpha[i]).distance(atk.gamma[i]) <= 1e-12);

    // The board collapses Bob's side exactly onto this basis.
    Vec comp(16), alph(16);
    for (int i = 0; i < 4; ++i) {
        const Vec e = ket(i, 4);
        comp = comp + cx(0.5, 0) * kron(e, e);
        alph = alph + cx(0.5, 0) * kron(atk.alpha[i], atk.alpha[i]);
    }
    CHECK(comp.distance(alph) <= 1e-12);

    // Swapping the two qubits exchanges the last two basis elements.
    const SubsystemLayout two{2, 2};
    CHECK(permute_subsystems(atk.alpha[2], two, {1, 0})
              .distance(atk.alpha[3]) <= 1e-12);
    CHECK(permute_subsystems(atk.alpha[3], two, {1, 0})
              .distance(atk.alpha[2]) <= 1e-12);
}

TEST_CASE("two parallel flips: the hedge wins exactly one, always") {
    const HedgeOutcome h = simulate_parallel_hedge();

    CHECK(std::abs(h.win_dist[0b01] - 0.5) <= 1e-12);
    CHECK(std::abs(h.win_dist[0b10] - 0.5) <= 1e-12);
    CHECK(std::abs(h.win_dist[0b00]) <= 1e-12);
    CHECK(std::abs(h.win_dist[0b11]) <= 1e-12);
    CHECK(std::abs(h.p_exactly_one - 1.0) <= 1e-12);
    CHECK(std::abs(h.expected_wins - 1.0) <= 1e-12);

    REQUIRE(h.branches.size() == 4);
    double total = 0.0;
    for (const HedgeBranch& br : h.branches) {
        CHECK(std::abs(br.prob - 0.25) <= 1e-12);
        total += br.prob;
        double mass = 0.0;
        for (double q : br.outcome_dist) mass += q;
        CHECK(std::abs(mass - 1.0) <= 1e-12);
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);

    // On the double-tails branch the board is left holding the singlet-like
    // alpha_0, up to phase.
    const HedgeAttack atk = build_hedge_attack();
    for (const HedgeBranch& br : h.branches)
        if (br.m1 == 1 && br.m2 == 1)
            CHECK(std::abs(std::abs(br.board_state.inner(atk.alpha[0])) -
                           1.0) <= 1e-9);
}

TEST_CASE("independent cheating is a binomial tail") {
    const double p = kCos2Pi8;
    CHECK(std::abs(independent_cheat_value(1, 1) - p) <= 1e-15);
    CHECK(std::abs(independent_cheat_value(2, 1) - (1.0 - kSin2Pi8 * kSin2Pi8)) <= 1e-12);
    CHECK(std::abs(independent_cheat_value(2, 1) - 0.9785533905932737) <= 1e-12);
    CHECK(std::abs(independent_cheat_value(2, 2) - p * p) <= 1e-12);
    CHECK(std::abs(independent_cheat_value(3, 2) -
                   (3.0 * p * p - 2.0 * p * p * p)) <= 1e-12);
    CHECK(std::abs(independent_cheat_value(3, 2) - 0.9419417382415924) <= 1e-12);
    CHECK(independent_cheat_value(3, 0) == 1.0);
}

TEST_CASE("correlated parallel cheating values") {
    SUBCASE("one of two is a sure thing") {
        const SDPSolution sol = parallel_cheat_value(2, 1);
        CHECK(sol.converged);
        CHECK(std::abs(sol.primal_value - 1.0) <= 1e-6);
        CHECK(sol.gap <= 1e-6);
    }
    SUBCASE("two of three") {
        const SDPSolution sol = parallel_cheat_value(3, 2);
        CHECK(sol.converged);
        CHECK(std::abs(sol.primal_value - 0.986135912063) <= 1e-6);
        CHECK(sol.gap <= 5e-3);
        // Correlation beats independent play by a solid margin.
        CHECK(sol.primal_value > independent_cheat_value(3, 2) + 0.03);
    }
    SUBCASE("capacity") {
        CHECK_THROWS_AS(parallel_cheat_value(4, 1), std::length_error);
    }
}

TEST_CASE("the measuring side cannot hedge at all") {
    const MeasureOnlyGame g = alice_view_game();
    CHECK_NOTHROW(validate(g));
    CHECK(std::abs(m_par_measure_only({g}, {1}) - kSin2Pi8) <= 1e-12);

    CHECK(alice_hedging_bound(0) == 1.0);
    for (int n = 1; n <= 3; ++n)
        CHECK(std::abs(alice_hedging_bound(n) - std::pow(kSin2Pi8, n)) <=
              1e-12);
    CHECK_THROWS_AS(alice_hedging_bound(9), std::length_error);
}

TEST_CASE("sampling cross-checks") {
    const std::uint64_t seed = env_seed();
    const int shots = 100000;
    // 3 sigma for a half-probability Bernoulli at this sample size.
    const double band = 3.0 * std::sqrt(0.25 / shots);

    SUBCASE("honest protocol") {
        const HonestOutcome mc = mc_honest(seed, shots);
        CHECK(std::abs(mc.alice_win - 0.5) <= band);
        CHECK(std::abs(mc.bob_win - 0.5) <= band);
        // Agreement never breaks, not even statistically.
        CHECK(mc.agreement == 1.0);
    }
    SUBCASE("hedge attack") {
        const std::array<double, 4> mc = mc_hedge(seed, shots);
        CHECK(std::abs(mc[0b01] - 0.5) <= band);
        CHECK(std::abs(mc[0b10] - 0.5) <= band);
        // The impossible outcomes must never be sampled.
        CHECK(mc[0b00] == 0.0);
        CHECK(mc[0b11] == 0.0);
    }
}
