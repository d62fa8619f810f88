#include "hedgelab/seqval.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "hedgelab/errors.hpp"

namespace hedgelab {

namespace {

void check_levels(const TargetFn& tf, const std::vector<GameParams>& ps) {
    validate(tf);
    if (int(ps.size()) != tf.n)
        throw std::invalid_argument("need one parameter pair per level");
    for (const GameParams& p : ps) validate(p);
}

double replay_node(const StrategyTree& tree, const TargetFn& tf,
                   const std::vector<GameParams>& ps, int level, int prefix) {
    if (level == tf.n) return tf.t[prefix];
    const GameParams& gp = ps[level];
    const int label = tree.labels[StrategyTree::node_index(level, prefix)];
    const double p1 = (label == kLabelS1) ? gp.q1 : 1.0 - gp.q0;
    return (1.0 - p1) * replay_node(tree, tf, ps, level + 1, 2 * prefix) +
           p1 * replay_node(tree, tf, ps, level + 1, 2 * prefix + 1);
}

// Fills every node value with the conditional expectation under the fixed
// labels, bottom-up.
void fill_values(StrategyTree& tree, const TargetFn& tf,
                 const std::vector<GameParams>& ps) {
    tree.values.assign((size_t(2) << tf.n) - 1, 0.0);
    for (int leaf = 0; leaf < (1 << tf.n); ++leaf)
        tree.values[StrategyTree::node_index(tf.n, leaf)] = tf.t[leaf];
    for (int level = tf.n - 1; level >= 0; --level) {
        const GameParams& gp = ps[level];
        for (int pre = 0; pre < (1 << level); ++pre) {
            const int node = StrategyTree::node_index(level, pre);
            const double v0 = tree.values[StrategyTree::node_index(level + 1, 2 * pre)];
            const double v1 = tree.values[StrategyTree::node_index(level + 1, 2 * pre + 1)];
            const double p1 = (tree.labels[node] == kLabelS1) ? gp.q1 : 1.0 - gp.q0;
            tree.values[node] = (1.0 - p1) * v0 + p1 * v1;
        }
    }
}

}  // namespace

void validate(const GameParams& p) {
    if (!(p.q0 >= 0.0 && p.q0 <= 1.0 && p.q1 >= 0.0 && p.q1 <= 1.0))
        throw std::invalid_argument("forcing probabilities must lie in [0,1]");
    if (p.q0 + p.q1 < 1.0 - 1e-9)
        throw std::invalid_argument(
            "q0 + q1 < 1: not realizable by any two-outcome game");
}

void validate(const TargetFn& tf) {
    if (tf.n < 1) throw std::invalid_argument("target needs n >= 1");
    if (tf.n > 24) throw std::length_error("target depth above 24 unsupported");
    if (tf.t.size() != (size_t(1) << tf.n))
        throw std::invalid_argument("target vector length must be 2^n");
    for (double v : tf.t)
        if (!std::isfinite(v))
            throw std::invalid_argument("target entries must be finite");
}

TargetFn target_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("t") ||
        !j.contains("order"))
        throw std::invalid_argument("target JSON needs fields n, t, order");
    if (!j["order"].is_string() || j["order"] != "first-game-msb")
        throw std::invalid_argument("target order must be \"first-game-msb\"");
    TargetFn tf;
    try {
        tf.n = j["n"].get<int>();
        tf.t = j["t"].get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed target JSON: ") +
                                    e.what());
    }
    validate(tf);
    return tf;
}

nlohmann::ordered_json target_to_json(const TargetFn& tf) {
    nlohmann::ordered_json j;
    j["n"] = tf.n;
    j["t"] = tf.t;
    j["order"] = "first-game-msb";
    return j;
}

TargetFn load_target_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open target file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("target file is not JSON: ") +
                                    e.what());
    }
    return target_from_json(j);
}

int StrategyTree::label_at(int level, int prefix) const {
    return labels.at(node_index(level, prefix));
}

double StrategyTree::value_at(int level, int prefix) const {
    return values.at(node_index(level, prefix));
}

double StrategyTree::value_at_prefix(const std::string& bits) const {
    int prefix = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("prefix must be a bit string");
        prefix = 2 * prefix + (c - '0');
    }
    return value_at(int(bits.size()), prefix);
}

TreeValue tval(const TargetFn& tf, const GameParams& p) {
    return tval(tf, std::vector<GameParams>(tf.n, p));
}

TreeValue tval(const TargetFn& tf, const std::vector<GameParams>& ps) {
    check_levels(tf, ps);
    StrategyTree tree;
    tree.n = tf.n;
    tree.labels.assign((size_t(1) << tf.n) - 1, kLabelS0);
    tree.values.assign((size_t(2) << tf.n) - 1, 0.0);
    for (int leaf = 0; leaf < (1 << tf.n); ++leaf)
        tree.values[StrategyTree::node_index(tf.n, leaf)] = tf.t[leaf];

    for (int level = tf.n - 1; level >= 0; --level) {
        const GameParams& gp = ps[level];
        for (int pre = 0; pre < (1 << level); ++pre) {
            const int node = StrategyTree::node_index(level, pre);
            const double v0 = tree.values[StrategyTree::node_index(level + 1, 2 * pre)];
            const double v1 = tree.values[StrategyTree::node_index(level + 1, 2 * pre + 1)];
            const double s0 = gp.q0 * v0 + (1.0 - gp.q0) * v1;
            const double s1 = gp.q1 * v1 + (1.0 - gp.q1) * v0;
            // Ties go to S0 so the extracted strategy is deterministic.
            if (s0 >= s1) {
                tree.values[node] = s0;
                tree.labels[node] = kLabelS0;
            } else {
                tree.values[node] = s1;
                tree.labels[node] = kLabelS1;
            }
        }
    }
    return TreeValue{tree.values[0], std::move(tree)};
}

TreeValue sval_bruteforce(const TargetFn& tf, const GameParams& p) {
    return sval_bruteforce(tf, std::vector<GameParams>(tf.n, p));
}

TreeValue sval_bruteforce(const TargetFn& tf,
                          const std::vector<GameParams>& ps) {
    check_levels(tf, ps);
    if (tf.n > 4)
        throw std::length_error("brute force limited to n <= 4");
    const int internal = (1 << tf.n) - 1;
    TreeValue best;
    best.value = -std::numeric_limits<double>::infinity();
    StrategyTree tree;
    tree.n = tf.n;
    tree.labels.assign(internal, kLabelS0);
    long best_mask = 0;
    for (long mask = 0; mask < (1L << internal); ++mask) {
        for (int node = 0; node < internal; ++node)
            tree.labels[node] = (mask >> node) & 1 ? kLabelS1 : kLabelS0;
        const double v = replay_node(tree, tf, ps, 0, 0);
        if (v > best.value) {
            best.value = v;
            best_mask = mask;
        }
    }
    for (int node = 0; node < internal; ++node)
        tree.labels[node] = (best_mask >> node) & 1 ? kLabelS1 : kLabelS0;
    fill_values(tree, tf, ps);
    best.tree = std::move(tree);
    return best;
}

double m_seq(const GameParams& p, const std::vector<int>& a) {
    return m_seq(std::vector<GameParams>(a.size(), p), a);
}

double m_seq(const std::vector<GameParams>& ps, const std::vector<int>& a) {
    if (a.empty()) return 1.0;
    if (ps.size() != a.size())
        throw std::invalid_argument("need one parameter pair per game");
    const int n = int(a.size());
    if (n > 16) throw std::length_error("sequential product limited to n <= 16");
    double product = 1.0;
    size_t index = 0;
    for (int i = 0; i < n; ++i) {
        validate(ps[i]);
        if (a[i] != 0 && a[i] != 1)
            throw std::invalid_argument("outcome entries must be 0 or 1");
        product *= (a[i] == 0) ? 1.0 - ps[i].q1 : 1.0 - ps[i].q0;
        index = 2 * index + size_t(a[i]);
    }
    // The minimum over strategies equals the complement of the best value
    // of the target paying 1 everywhere except on a.
    TargetFn tf;
    tf.n = n;
    tf.t.assign(size_t(1) << n, 1.0);
    tf.t[index] = 0.0;
    const double via_tree = 1.0 - tval(tf, ps).value;
    if (std::abs(via_tree - product) > 1e-9)
        throw std::logic_error("sequential product deviates from tree value");
    return product;
}

StrategyTree optimal_blackbox_strategy(const TargetFn& tf,
                                       const GameParams& p) {
    return tval(tf, p).tree;
}

double replay_strategy(const StrategyTree& tree, const TargetFn& tf,
                       const GameParams& p) {
    return replay_strategy(tree, tf, std::vector<GameParams>(tf.n, p));
}

double replay_strategy(const StrategyTree& tree, const TargetFn& tf,
                       const std::vector<GameParams>& ps) {
    check_levels(tf, ps);
    if (int(tree.n) != tf.n || int(tree.labels.size()) != (1 << tf.n) - 1)
        throw std::invalid_argument("tree shape does not match target");
    return replay_node(tree, tf, ps, 0, 0);
}

std::string render_tree(const StrategyTree& tree) {
    std::string out;
    char buf[96];
    // Pre-order walk so each subtree reads as an indented block.
    const auto walk = [&](const auto& self, int level, int prefix,
                          const std::string& bits) -> void {
        const int node = StrategyTree::node_index(level, prefix);
        const bool leaf = (level == tree.n);
        std::snprintf(buf, sizeof buf, "%*s%s %s value=%.12g\n", 2 * level, "",
                      bits.empty() ? "root" : bits.c_str(),
                      leaf ? "leaf"
                           : (tree.labels[node] == kLabelS0 ? "S0" : "S1"),
                      tree.values[node]);
        out += buf;
        if (!leaf) {
            self(self, level + 1, 2 * prefix, bits + "0");
            self(self, level + 1, 2 * prefix + 1, bits + "1");
        }
    };
    walk(walk, 0, 0, "");
    return out;
}

}  // namespace hedgelab
