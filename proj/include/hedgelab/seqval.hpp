// Sequentially composed two-outcome games.  Once each game is summarized by
// the pair (q0, q1) of maximal forcing probabilities, the best adaptive
// value of any payoff over outcome strings is a backward induction over a
// depth-n binary tree, and a brute-force sweep over all label assignments
// serves as an independent oracle for it.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hedgelab {

// Maximal probabilities of forcing outcome 0 / outcome 1 in one game.  Any
// fixed strategy realizes both outcomes with complementary probabilities,
// so q0 + q1 >= 1 for every actual game; inputs violating that are
// rejected rather than fed to the recursion, whose argmax reasoning uses
// the inequality.
struct GameParams {
    double q0 = 0.0;
    double q1 = 0.0;
};

void validate(const GameParams& p);

// Payoff vector over outcome strings a in {0,1}^n, indexed with the first
// game as the most significant bit.
struct TargetFn {
    int n = 0;
    std::vector<double> t;
};

void validate(const TargetFn& tf);

// JSON form: {"n": int, "t": [2^n floats], "order": "first-game-msb"}.
TargetFn target_from_json(const nlohmann::json& j);
nlohmann::ordered_json target_to_json(const TargetFn& tf);
// Throws IoError when the file cannot be opened, std::invalid_argument on
// malformed content.
TargetFn load_target_file(const std::string& path);

inline constexpr int kLabelS0 = 0;  // play to force outcome 0
inline constexpr int kLabelS1 = 1;  // play to force outcome 1

// Complete binary tree in heap order: node (level, prefix) sits at index
// 2^level - 1 + prefix, where prefix is the outcome string so far read as
// a binary number.  Internal nodes carry labels; all nodes carry values.
struct StrategyTree {
    int n = 0;
    std::vector<int> labels;      // 2^n - 1 entries
    std::vector<double> values;   // 2^(n+1) - 1 entries, leaves = payoffs

    static int node_index(int level, int prefix) {
        return (1 << level) - 1 + prefix;
    }
    int label_at(int level, int prefix) const;
    double value_at(int level, int prefix) const;
    // Node addressed by its outcome-prefix string, "" for the root.
    double value_at_prefix(const std::string& bits) const;
};

struct TreeValue {
    double value = 0.0;
    StrategyTree tree;
};

// Backward induction: at each node take the better of forcing toward the
// left (S0) or right (S1) subtree, ties resolved to S0.
TreeValue tval(const TargetFn& tf, const GameParams& p);
// Heterogeneous games: one parameter pair per level, root first.
TreeValue tval(const TargetFn& tf, const std::vector<GameParams>& per_level);

// Enumerates every {S0,S1} labeling of the internal nodes (2^(2^n - 1)
// strategies) and evaluates each exactly.  n <= 4.
TreeValue sval_bruteforce(const TargetFn& tf, const GameParams& p);
TreeValue sval_bruteforce(const TargetFn& tf,
                          const std::vector<GameParams>& per_level);

// Minimal achievable probability of the outcome string a under sequential
// play: the product of per-game minima m(0) = 1-q1, m(1) = 1-q0.  Verified
// internally against 1 - tval(1 - indicator(a)).  n <= 16.
double m_seq(const GameParams& p, const std::vector<int>& a);
double m_seq(const std::vector<GameParams>& per_level,
             const std::vector<int>& a);

// The argmax tree of the backward induction.
StrategyTree optimal_blackbox_strategy(const TargetFn& tf,
                                       const GameParams& p);

// Expected payoff of playing the tree's labels; for the argmax tree this
// reproduces tval.
double replay_strategy(const StrategyTree& tree, const TargetFn& tf,
                       const GameParams& p);
double replay_strategy(const StrategyTree& tree, const TargetFn& tf,
                       const std::vector<GameParams>& per_level);

// Indented text rendering, one node per line.
std::string render_tree(const StrategyTree& tree);

}  // namespace hedgelab
