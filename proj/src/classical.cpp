#include "hedgelab/classical.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace hedgelab {

Frac::Frac(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    num = (g == 0) ? 0 : n / g;
    den = (g == 0) ? 1 : d / g;
}

Frac Frac::operator+(const Frac& o) const {
    return Frac(num * o.den + o.num * den, den * o.den);
}

Frac Frac::operator-(const Frac& o) const {
    return Frac(num * o.den - o.num * den, den * o.den);
}

Frac Frac::operator*(const Frac& o) const {
    return Frac(num * o.num, den * o.den);
}

bool Frac::operator<(const Frac& o) const {
    return num * o.den < o.num * den;
}

namespace {

const Frac kZero(0, 1);
const Frac kHalf(1, 2);
const Frac kOne(1, 1);

// Game 1 win probability for a single play given the sent bit.
Frac game1_win(int b) { return b ? kHalf : kZero; }

// P(exactly one win) from two independent win probabilities.
Frac exactly_one(const Frac& w1, const Frac& w2) {
    return w1 * (kOne - w2) + w2 * (kOne - w1);
}

struct Game1Row {
    std::string name;
    Frac value;
};

std::vector<Game1Row> game1_parallel_rows() {
    std::vector<Game1Row> rows;
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
            char name[32];
            std::snprintf(name, sizeof name, "b1=%d b2=%d", b1, b2);
            rows.push_back({name, exactly_one(game1_win(b1), game1_win(b2))});
        }
    return rows;
}

std::vector<Game1Row> game1_sequential_rows() {
    // Strategy: first bit, then the second bit as a function of whether
    // the first play was won.
    std::vector<Game1Row> rows;
    for (int b1 = 0; b1 < 2; ++b1)
        for (int bw = 0; bw < 2; ++bw)
            for (int bl = 0; bl < 2; ++bl) {
                const Frac w1 = game1_win(b1);
                // Won the first: succeed by losing the second, and vice
                // versa.
                const Frac after_win = kOne - game1_win(bw);
                const Frac after_loss = game1_win(bl);
                const Frac value =
                    w1 * after_win + (kOne - w1) * after_loss;
                char name[48];
                std::snprintf(name, sizeof name,
                              "b1=%d b2(win)=%d b2(loss)=%d", b1, bw, bl);
                rows.push_back({name, value});
            }
    return rows;
}

// Game 2 win probability given the board's bit and the answer.
double game2_win(int a, int b, double p) {
    if (a == 0) return b == 0 ? 0.0 : p;
    return b == 0 ? 1.0 : 1.0 - p;
}

double exactly_one_d(double w1, double w2) {
    return w1 * (1.0 - w2) + w2 * (1.0 - w1);
}

std::vector<StrategyRow> game2_parallel_rows(double p) {
    // A response map picks (b1, b2) for each of the four (a1, a2) pairs.
    std::vector<StrategyRow> rows;
    rows.reserve(256);
    for (int code = 0; code < 256; ++code) {
        double value = 0.0;
        std::string name;
        for (int aa = 0; aa < 4; ++aa) {
            const int a1 = (aa >> 1) & 1, a2 = aa & 1;
            const int bb = (code >> (2 * aa)) & 3;
            const int b1 = (bb >> 1) & 1, b2 = bb & 1;
            value += 0.25 * exactly_one_d(game2_win(a1, b1, p),
                                          game2_win(a2, b2, p));
            char piece[16];
            std::snprintf(piece, sizeof piece, "%s%d%d->%d%d",
                          aa ? " " : "", a1, a2, b1, b2);
            name += piece;
        }
        rows.push_back({std::move(name), value});
    }
    return rows;
}

std::vector<StrategyRow> game2_sequential_rows(double p) {
    // First answer from a1 alone; second answer from everything seen:
    // (a1, won-or-lost, a2), an 8-entry truth table.
    std::vector<StrategyRow> rows;
    rows.reserve(1024);
    for (int f1 = 0; f1 < 4; ++f1) {
        for (int f2 = 0; f2 < 256; ++f2) {
            double value = 0.0;
            for (int a1 = 0; a1 < 2; ++a1) {
                const int b1 = (f1 >> a1) & 1;
                const double w1 = game2_win(a1, b1, p);
                for (int won = 0; won < 2; ++won) {
                    const double pw = won ? w1 : 1.0 - w1;
                    if (pw == 0.0) continue;
                    for (int a2 = 0; a2 < 2; ++a2) {
                        const int slot = (a1 << 2) | (won << 1) | a2;
                        const int b2 = (f2 >> slot) & 1;
                        const double w2 = game2_win(a2, b2, p);
                        const double success = won ? 1.0 - w2 : w2;
                        value += 0.25 * pw * success;
                    }
                }
            }
            char name[32];
            std::snprintf(name, sizeof name, "b1=%d%d b2=0x%02x",
                          (f1 >> 0) & 1, (f1 >> 1) & 1, unsigned(f2));
            rows.push_back({name, value});
        }
    }
    return rows;
}

}  // namespace

Game1Values game1_values() {
    Game1Values v;
    v.pval = kZero;
    for (const Game1Row& r : game1_parallel_rows())
        v.pval = std::max(v.pval, r.value);
    v.sval = kZero;
    for (const Game1Row& r : game1_sequential_rows())
        v.sval = std::max(v.sval, r.value);
    return v;
}

Frac game1_single_win_value() {
    return std::max(game1_win(0), game1_win(1));
}

Game2Values game2_values(double p) {
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("game 2 needs p in [0,1)");
    Game2Values v;
    for (const StrategyRow& r : game2_parallel_rows(p))
        v.pval = std::max(v.pval, r.value);
    for (const StrategyRow& r : game2_sequential_rows(p))
        v.sval = std::max(v.sval, r.value);
    return v;
}

std::vector<StrategyRow> enumerate_strategy_values(int game,
                                                   PlaySetting setting,
                                                   double p) {
    if (game == 1) {
        std::vector<StrategyRow> rows;
        const auto table = setting == PlaySetting::parallel
                               ? game1_parallel_rows()
                               : game1_sequential_rows();
        for (const Game1Row& r : table)
            rows.push_back({r.name, r.value.to_double()});
        return rows;
    }
    if (game == 2) {
        if (!(p >= 0.0 && p < 1.0))
            throw std::invalid_argument("game 2 needs p in [0,1)");
        return setting == PlaySetting::parallel ? game2_parallel_rows(p)
                                                : game2_sequential_rows(p);
    }
    throw std::invalid_argument("game must be 1 or 2");
}

}  // namespace hedgelab
