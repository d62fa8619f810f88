#include "hedgelab/coinflip.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hedgelab {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Vec ket0() { return Vec{cx(1, 0), cx(0, 0)}; }
Vec ket1() { return Vec{cx(0, 0), cx(1, 0)}; }
Vec ket_plus() { return Vec{cx(kInvSqrt2, 0), cx(kInvSqrt2, 0)}; }
Vec ket_minus() { return Vec{cx(kInvSqrt2, 0), cx(-kInvSqrt2, 0)}; }

Vec bell_phi_plus() {
    return Vec{cx(kInvSqrt2, 0), cx(0, 0), cx(0, 0), cx(kInvSqrt2, 0)};
}

Mat proj(const Vec& v) { return outer(v, v); }

Mat hadamard() {
    Mat h(2, 2);
    h(0, 0) = h(0, 1) = h(1, 0) = cx(kInvSqrt2, 0);
    h(1, 1) = cx(-kInvSqrt2, 0);
    return h;
}

// Rotation by theta in the real plane of one qubit.
Mat rotation(double theta) {
    Mat u(2, 2);
    u(0, 0) = cx(std::cos(theta), 0);
    u(0, 1) = cx(-std::sin(theta), 0);
    u(1, 0) = cx(std::sin(theta), 0);
    u(1, 1) = cx(std::cos(theta), 0);
    return u;
}

// Joint outcome distribution (index 2*alice_bit + bob_bit) of one honest
// branch: both parties rotate to the H basis iff b = 1, then measure.
std::array<double, 4> honest_branch_distribution(int b) {
    Vec state = bell_phi_plus();
    SubsystemLayout layout{2, 2};
    if (b == 1) {
        state = apply_on(hadamard(), state, layout, {0});
        state = apply_on(hadamard(), state, layout, {1});
    }
    std::array<double, 4> dist{};
    for (int i = 0; i < 4; ++i) dist[i] = std::norm(state[i]);
    return dist;
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c *= double(n - k + j) / double(j);
    return c;
}

template <typename Rng>
int sample_index(const std::array<double, 4>& dist, Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    for (int i = 0; i < 4; ++i) {
        u -= dist[i];
        if (u <= 0.0) return i;
    }
    return 3;
}

}  // namespace

HonestOutcome honest_distribution() {
    HonestOutcome out;
    for (int b = 0; b < 2; ++b) {
        const auto dist = honest_branch_distribution(b);
        // Both read the same basis, so the shared bit is Alice's.
        out.alice_win += 0.5 * dist[0b00];
        out.bob_win += 0.5 * dist[0b11];
        out.agreement += 0.5 * (dist[0b00] + dist[0b11]);
    }
    return out;
}

Mat alice_win_operator() {
    return (cx(0.5, 0) * (proj(ket0()) + proj(ket_plus()))).hermitized();
}

Mat alice_lose_operator() {
    return (cx(0.5, 0) * (proj(ket1()) + proj(ket_minus()))).hermitized();
}

double alice_cheat_value() { return max_eig(alice_win_operator()); }

Mat bob_win_operator() {
    return (kron(proj(ket1()), proj(ket0())) +
            kron(proj(ket_minus()), proj(ket1())))
        .hermitized();
}

OneRoundGame coin_flip_game() {
    OneRoundGame g;
    g.layout = SubsystemLayout{2, 2};
    g.initial = bell_phi_plus();
    g.outcome[1] = bob_win_operator();
    g.outcome[0] = Mat::identity(4) - g.outcome[1];
    return g;
}

SDPSolution bob_cheat_value(const SolveConfig& cfg) {
    OneRoundGame g = coin_flip_game();
    PTraceSDP sdp{g.outcome[1], board_reduction(g), g.layout};
    SDPSolution sol = solve_primal(sdp, cfg);
    if (sol.converged) certify_with(sol, sdp, bob_dual_certificate());
    return sol;
}

Mat bob_dual_certificate() {
    const double r = std::sqrt(2.0);
    Mat y(2, 2);
    y(0, 0) = cx((1.0 + r) / 4.0, 0);
    y(0, 1) = cx(-0.25, 0);
    y(1, 0) = cx(-0.25, 0);
    y(1, 1) = cx((3.0 + r) / 4.0, 0);
    return y;
}

RotationStrategy bob_rotation_strategy(double angle) {
    RotationStrategy rs;
    rs.angle = angle;
    SubsystemLayout layout{2, 2};
    rs.zeta = apply_on(rotation(angle), bell_phi_plus(), layout, {1});

    // Closed form of the rotated state, amplitudes indexed 2a + m.
    const double c = std::cos(angle), s = std::sin(angle);
    Vec expected{cx(c * kInvSqrt2, 0), cx(s * kInvSqrt2, 0),
                 cx(-s * kInvSqrt2, 0), cx(c * kInvSqrt2, 0)};
    if (rs.zeta.distance(expected) > 1e-10)
        throw std::logic_error("rotated state deviates from closed form");

    // Alice reads m, keeps the collapsed qubit, rotates iff m = 1, and
    // measures; Bob wins on outcome 1.
    const cx a10 = rs.zeta[0b10];
    const cx a01 = rs.zeta[0b01], a11 = rs.zeta[0b11];
    const double win_m0 = std::norm(a10);
    const double win_m1 = 0.5 * std::norm(a01 - a11);
    rs.value = win_m0 + win_m1;
    return rs;
}

double bob_explicit_strategy_value() {
    RotationStrategy rs = bob_rotation_strategy(kBobOptimalAngle);

    // At the optimal angle the state splits by message value into
    // (sin(pi/8)|0> + cos(pi/8)|1>) on m=0 and minus the same weights in
    // the |+>/|-> basis on m=1.
    const double sn = std::sin(3.14159265358979323846 / 8.0);
    const double cn = std::cos(3.14159265358979323846 / 8.0);
    Vec v0 = cx(sn, 0) * ket0() + cx(cn, 0) * ket1();
    Vec v1 = cx(sn, 0) * ket_plus() + cx(cn, 0) * ket_minus();
    Vec split = cx(kInvSqrt2, 0) * kron(v0, ket0()) -
                cx(kInvSqrt2, 0) * kron(v1, ket1());
    if (rs.zeta.distance(split) > 1e-10)
        throw std::logic_error("rotated state deviates from split form");
    return rs.value;
}

HedgeAttack build_hedge_attack() {
    HedgeAttack atk;
    const double h = 0.5;
    atk.alpha[0] = Vec{cx(kInvSqrt2, 0), cx(0, 0), cx(0, 0), cx(-kInvSqrt2, 0)};
    atk.alpha[1] = Vec{cx(0, 0), cx(kInvSqrt2, 0), cx(kInvSqrt2, 0), cx(0, 0)};
    atk.alpha[2] = Vec{cx(h, 0), cx(-h, 0), cx(h, 0), cx(h, 0)};
    atk.alpha[3] = Vec{cx(h, 0), cx(h, 0), cx(-h, 0), cx(h, 0)};

    auto basis4 = [](int i) {
        Vec v(4);
        v[i] = cx(1, 0);
        return v;
    };
    atk.gamma[0] = basis4(0b11);
    atk.gamma[1] = basis4(0b00);
    atk.gamma[2] = basis4(0b01);
    atk.gamma[3] = basis4(0b10);

    atk.U = Mat::zero(4);
    for (int i = 0; i < 4; ++i) atk.U += outer(atk.gamma[i], atk.alpha[i]);

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(atk.alpha[i].inner(atk.alpha[j]) - cx(want, 0)) > 1e-12)
                throw std::logic_error("alpha states are not orthonormal");
        }
    if ((atk.U * atk.U.adjoint()).max_abs_diff(Mat::identity(4)) > 1e-12)
        throw std::logic_error("attack unitary fails unitarity");

    // The maximally entangled pair of pairs is basis-independent: writing
    // it over {alpha_i} instead of the computational pairs changes nothing.
    Vec comp_form(16), alpha_form(16);
    for (int i = 0; i < 4; ++i) {
        comp_form = comp_form + cx(0.5, 0) * kron(basis4(i), basis4(i));
        alpha_form = alpha_form + cx(0.5, 0) * kron(atk.alpha[i], atk.alpha[i]);
    }
    if (comp_form.distance(alpha_form) > 1e-12)
        throw std::logic_error("shared-state basis identity fails");

    // alpha_2 and alpha_3 swap into each other, so neither is symmetric or
    // antisymmetric; that is what rules out a Bell-basis relabeling.
    auto swapped = [](const Vec& v) {
        Vec w(4);
        w[0b00] = v[0b00];
        w[0b01] = v[0b10];
        w[0b10] = v[0b01];
        w[0b11] = v[0b11];
        return w;
    };
    if (swapped(atk.alpha[2]).distance(atk.alpha[3]) > 1e-12)
        throw std::logic_error("SWAP alpha_2 != alpha_3");
    if (swapped(atk.alpha[2]).distance(atk.alpha[2]) < 0.5 ||
        swapped(atk.alpha[2]).distance(cx(-1, 0) * atk.alpha[2]) < 0.5)
        throw std::logic_error("alpha_2 unexpectedly SWAP-invariant");
    return atk;
}

HedgeOutcome simulate_parallel_hedge() {
    HedgeAttack atk = build_hedge_attack();

    // Two shared pairs come out factor-ordered A1 M1 A2 M2; regroup so
    // Alice's qubits lead and Bob's register is the trailing block.
    SubsystemLayout interleaved{2, 2, 2, 2};
    Vec joint = kron(bell_phi_plus(), bell_phi_plus());
    Vec state = permute_subsystems(joint, interleaved, {0, 2, 1, 3});
    SubsystemLayout block{2, 2, 2, 2};
    state = apply_on(atk.U, state, block, {2, 3});

    SubsystemLayout pair{2, 2};
    Mat h = hadamard();
    HedgeOutcome out;
    for (int m = 0; m < 4; ++m) {
        HedgeBranch br;
        br.m1 = (m >> 1) & 1;
        br.m2 = m & 1;
        Vec collapsed(4);
        double p = 0.0;
        for (int a = 0; a < 4; ++a) {
            collapsed[a] = state[(a << 2) | m];
            p += std::norm(collapsed[a]);
        }
        br.prob = p;
        if (p > 1e-15) collapsed = collapsed.normalized();
        br.board_state = collapsed;

        Vec rotated = collapsed;
        if (br.m1) rotated = apply_on(h, rotated, pair, {0});
        if (br.m2) rotated = apply_on(h, rotated, pair, {1});
        for (int o = 0; o < 4; ++o) {
            br.outcome_dist[o] = std::norm(rotated[o]);
            out.win_dist[o] += br.prob * br.outcome_dist[o];
        }
        out.branches.push_back(std::move(br));
    }
    out.p_exactly_one = out.win_dist[0b01] + out.win_dist[0b10];
    out.expected_wins = out.win_dist[0b01] + out.win_dist[0b10] +
                        2.0 * out.win_dist[0b11];
    return out;
}

double independent_cheat_value(int n, int k) {
    if (n < 1 || k > n)
        throw std::invalid_argument("need k <= n and n >= 1");
    if (k <= 0) return 1.0;  // zero required wins is a free pass
    const double p = alice_cheat_value();  // cos^2(pi/8), same for Bob
    double tail = 0.0;
    for (int j = k; j <= n; ++j)
        tail += binomial(n, j) * std::pow(p, j) * std::pow(1.0 - p, n - j);
    return tail;
}

SDPSolution parallel_cheat_value(int n, int k, const SolveConfig& cfg) {
    if (k < 1 || k > n)
        throw std::invalid_argument("need 1 <= k <= n");
    if (n > 3)
        throw std::length_error("parallel SDP supports at most 3 flips");
    ParallelGame pg =
        parallel_compose(std::vector<OneRoundGame>(n, coin_flip_game()));
    std::vector<double> t(size_t(1) << n, 0.0);
    for (size_t idx = 0; idx < t.size(); ++idx)
        if (__builtin_popcount(unsigned(idx)) >= k) t[idx] = 1.0;
    return solve_primal(pg.sdp_for(t), cfg);
}

double alice_hedging_bound(int n) {
    if (n < 0) throw std::invalid_argument("need n >= 0");
    if (n == 0) return 1.0;
    if (n > 8) throw std::length_error("tensor dimension above 256 unsupported");
    std::vector<MeasureOnlyGame> copies(n, alice_view_game());
    return m_par_measure_only(copies, std::vector<int>(n, 1));
}

MeasureOnlyGame alice_view_game() {
    return MeasureOnlyGame{{alice_win_operator(), alice_lose_operator()}};
}

HonestOutcome mc_honest(std::uint64_t seed, int shots) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coin(0, 1);
    long alice = 0, bob = 0, agree = 0;
    for (int s = 0; s < shots; ++s) {
        const int b = coin(rng);
        const auto dist = honest_branch_distribution(b);
        const int outcome = sample_index(dist, rng);
        const int alice_bit = (outcome >> 1) & 1;
        const int bob_bit = outcome & 1;
        if (alice_bit == 0) ++alice; else ++bob;
        if (alice_bit == bob_bit) ++agree;
    }
    HonestOutcome out;
    out.alice_win = double(alice) / shots;
    out.bob_win = double(bob) / shots;
    out.agreement = double(agree) / shots;
    return out;
}

std::array<double, 4> mc_hedge(std::uint64_t seed, int shots) {
    const HedgeOutcome exact = simulate_parallel_hedge();
    std::array<double, 4> branch_probs{};
    for (int m = 0; m < 4; ++m) branch_probs[m] = exact.branches[m].prob;

    std::mt19937_64 rng(seed);
    std::array<long, 4> counts{};
    for (int s = 0; s < shots; ++s) {
        const int m = sample_index(branch_probs, rng);
        const int o = sample_index(exact.branches[m].outcome_dist, rng);
        ++counts[o];
    }
    std::array<double, 4> freq{};
    for (int o = 0; o < 4; ++o) freq[o] = double(counts[o]) / shots;
    return freq;
}

}  // namespace hedgelab
