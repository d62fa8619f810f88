// The weak coin-flip protocol and everything computed about it: honest
// play, both parties' optimal cheats, the explicit rotation strategy that
// meets the SDP optimum, the perfect 1-of-2 hedging attack, parallel
// cheating values for up to three flips, and the measure-only analysis
// showing the board side cannot hedge at all.
//
// Protocol, in library terms: the board register A and message register M
// start in (|00> + |11>)/sqrt(2); M travels to the other party and comes
// back as a measured bit b; both sides apply H when b = 1 and measure.
// Outcome 0 means Alice wins.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hedgelab/games.hpp"
#include "hedgelab/linalg.hpp"
#include "hedgelab/sdp.hpp"

namespace hedgelab {

struct HonestOutcome {
    double alice_win = 0.0;
    double bob_win = 0.0;
    double agreement = 0.0;  // probability both parties see the same bit
};

// Exact analytic evaluation of both b-branches.
HonestOutcome honest_distribution();

// Measurement operators on a single qubit, averaged over Bob's coin:
// win = (|0><0| + |+><+|)/2, lose = (|1><1| + |-><-|)/2.
Mat alice_win_operator();
Mat alice_lose_operator();

// Largest eigenvalue of the win operator: the best any state Alice sends
// can do, cos^2(pi/8).
double alice_cheat_value();

// Bob's winning projector on A (x) M: |1><1| (x) |0><0| + |-><-| (x) |1><1|.
Mat bob_win_operator();

// The protocol as a OneRoundGame with Bob as the player.
OneRoundGame coin_flip_game();

// Solves Bob's cheating SDP and certifies it with the exact closed-form
// dual certificate below.
SDPSolution bob_cheat_value(const SolveConfig& cfg = {});

// (1/4) [[1+sqrt2, -1], [-1, 3+sqrt2]]: dual-feasible with both message
// blocks exactly rank-deficient, value (2+sqrt2)/4.
Mat bob_dual_certificate();

// Rotation angle realizing the SDP optimum with a pure-state strategy.
inline constexpr double kBobOptimalAngle = -3.0 * 3.14159265358979323846 / 8.0;

struct RotationStrategy {
    double angle = 0.0;
    Vec zeta;            // joint state after rotating the message qubit
    double value = 0.0;  // Bob's win probability under honest Alice
};

// Bob rotates the message qubit of the shared state by `angle`, returns it,
// and plays on.  The resulting state is asserted against its closed form.
RotationStrategy bob_rotation_strategy(double angle);

// Value at the optimal angle; additionally asserts the |+>/|-> split form
// of the rotated state.  Equals cos^2(pi/8) analytically.
double bob_explicit_strategy_value();

// The two-flip attack: a basis {alpha_i} of Bob's two message qubits whose
// elements the board's registers collapse onto, and the unitary mapping
// each alpha_i to a distinct computational pair gamma_i.
struct HedgeAttack {
    std::array<Vec, 4> alpha;
    std::array<Vec, 4> gamma;  // |11>, |00>, |01>, |10>
    Mat U;                     // sum_i |gamma_i><alpha_i|
};

// Constructs and self-checks the attack (orthonormality, unitarity, the
// shared-state basis identity, and the SWAP behavior of alpha_2/alpha_3).
HedgeAttack build_hedge_attack();

struct HedgeBranch {
    int m1 = 0, m2 = 0;  // message bits Alice reads
    double prob = 0.0;
    Vec board_state;     // Alice's two qubits right after reading them
    std::array<double, 4> outcome_dist{};  // index 2*o1 + o2
};

struct HedgeOutcome {
    std::array<double, 4> win_dist{};  // index 2*win1 + win2
    double p_exactly_one = 0.0;
    double expected_wins = 0.0;
    std::vector<HedgeBranch> branches;
};

// Exact four-qubit evolution of the attack against two honest flips.
HedgeOutcome simulate_parallel_hedge();

// P(at least k wins of n) when Bob cheats each flip independently at the
// single-flip optimum; binomial tail with p = cos^2(pi/8).
double independent_cheat_value(int n, int k);

// SDP value of the correlated attack on n parallel flips, target "at least
// k Bob wins".  n <= 3 (dimension 4^n).
SDPSolution parallel_cheat_value(int n, int k, const SolveConfig& cfg = {});

// Alice cannot hedge: minimal probability of losing all n flips, equal to
// sin^(2n)(pi/8) by eigenvalue multiplicativity.
double alice_hedging_bound(int n);

// Alice's side of one flip as a measure-only game (outcome 0 = she wins).
MeasureOnlyGame alice_view_game();

// Sampling cross-checks for the analytic paths.  Both drive the same state
// machinery shot by shot instead of summing distributions.
HonestOutcome mc_honest(std::uint64_t seed, int shots);
std::array<double, 4> mc_hedge(std::uint64_t seed, int shots);

}  // namespace hedgelab
