// Two tiny classical games whose exhaustive strategy tables show that
// parallel and sequential composition are incomparable: the first game
// favors sequential play, the second favors parallel play.  Everything is
// enumerated over deterministic strategies; mixing never helps because the
// value is linear in the mixture.

#pragma once

#include <string>
#include <vector>

namespace hedgelab {

// Exact rational arithmetic for the first game, whose probabilities are all
// halves and quarters.  Kept deliberately minimal.
struct Frac {
    long long num = 0;
    long long den = 1;

    Frac() = default;
    Frac(long long n, long long d);
    static Frac of(long long n) { return Frac(n, 1); }

    Frac operator+(const Frac& o) const;
    Frac operator-(const Frac& o) const;
    Frac operator*(const Frac& o) const;
    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
    bool operator<(const Frac& o) const;
    double to_double() const { return double(num) / double(den); }
};

// Game 1: the player sends a bit; 0 loses surely, 1 wins a fair coin.
// Target throughout: win exactly one of two plays.
struct Game1Values {
    Frac sval;  // adaptive two-round play
    Frac pval;  // both bits committed up front
};

Game1Values game1_values();

// Single play of game 1 with target "win": always send 1.
Frac game1_single_win_value();

// Game 2: the board sends a uniform bit a and the player answers b.
// Answering 0 loses surely when a=0 and wins surely when a=1; answering 1
// wins with probability p when a=0 and 1-p when a=1.  Target again: win
// exactly one of two plays.
struct Game2Values {
    double sval = 0.0;
    double pval = 0.0;
};

// Both values by exhaustive enumeration (256 parallel response maps, 1024
// adaptive sequential strategies), evaluated exactly in p.
Game2Values game2_values(double p);

enum class PlaySetting { parallel, sequential };

struct StrategyRow {
    std::string name;
    double value = 0.0;
};

// The full audit table behind the optima above; its maximum equals the
// corresponding value.  `p` is used only by game 2.
std::vector<StrategyRow> enumerate_strategy_values(int game,
                                                   PlaySetting setting,
                                                   double p = 0.0);

}  // namespace hedgelab
