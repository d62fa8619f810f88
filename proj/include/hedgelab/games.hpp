// One-round board games: a fixed bipartite initial state, one message from
// the board to the player, and a two-outcome measurement on the joint
// system.  The player is free to apply any channel to the message register;
// the board's reduced state is what it is.  Optimal outcome probabilities
// are therefore instances of the partial-trace SDP.

#pragma once

#include <array>
#include <vector>

#include "hedgelab/linalg.hpp"
#include "hedgelab/sdp.hpp"

namespace hedgelab {

// Outcome labels: 0 means the board's favored result, 1 the player's.
struct OneRoundGame {
    Vec initial;                // pure state on [board factor, message factor]
    std::array<Mat, 2> outcome; // projectors on the joint space, summing to I
    SubsystemLayout layout;
};

// Throws std::invalid_argument when the state is not normalized, the
// projectors are not idempotent Hermitian, or they do not sum to identity.
void validate(const OneRoundGame& game);

// Reduced state the player cannot touch: tr_M |initial><initial|.
Mat board_reduction(const OneRoundGame& game);

// Maximal probabilities q_i of forcing outcome i, plus the complementary
// minima m_a = 1 - q_{1-a} (the best the player can do at avoiding a).
struct OutcomeExtremes {
    double q0 = 0.0;
    double q1 = 0.0;
    double m0 = 0.0;  // = 1 - q1
    double m1 = 0.0;  // = 1 - q0
};

OutcomeExtremes outcome_extremes(const OneRoundGame& game,
                                 const SolveConfig& cfg = {});

// n games played at once: one message round carrying all n message
// registers.  Factors interleave game-major as [A1 M1 A2 M2 ...], matching
// the global layout convention, so outcome projectors are plain tensor
// products.
struct ParallelGame {
    std::vector<OneRoundGame> games;
    SubsystemLayout layout;
    Vec initial;       // tensor of the per-game initial states
    Mat board_sigma;   // tensor of the per-game reductions

    int count() const { return static_cast<int>(games.size()); }

    // Projector onto the joint outcome vector a (a[i] in {0,1}).
    Mat outcome_projector(const std::vector<int>& a) const;

    // W(t) = sum_a t_a Pi_a, with a indexed first-game-most-significant.
    Mat weighted_objective(const std::vector<double>& t) const;

    PTraceSDP sdp_for(const std::vector<double>& t) const;
};

ParallelGame parallel_compose(std::vector<OneRoundGame> gs);

// Minimal achievable probability of the joint outcome vector a under fully
// correlated play; below the product of the per-game minima exactly when
// hedging helps.
double m_par(const ParallelGame& pg, const std::vector<int>& a,
             const SolveConfig& cfg = {});

// Degenerate game where the player just measures a state handed over: the
// outcome operators form a two-element POVM on the player's space and the
// minimal outcome probability is a smallest eigenvalue.
struct MeasureOnlyGame {
    std::array<Mat, 2> outcome_ops;
};

void validate(const MeasureOnlyGame& game);

// min-eig of the tensor product of the chosen outcome operators.  Verified
// internally against the product of the single-game minima, which holds
// with equality for PSD factors.
double m_par_measure_only(const std::vector<MeasureOnlyGame>& ms,
                          const std::vector<int>& a);

}  // namespace hedgelab
