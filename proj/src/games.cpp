#include "hedgelab/games.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hedgelab {

void validate(const OneRoundGame& game) {
    const int d = game.layout.total_dim();
    if (game.layout.factor_count() != 2)
        throw std::invalid_argument("one-round game needs exactly two factors");
    if (game.initial.dim() != d)
        throw std::invalid_argument("initial state dimension mismatch");
    if (std::abs(game.initial.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("initial state must be normalized");
    Mat sum = Mat::zero(d);
    for (const Mat& p : game.outcome) {
        if (p.rows() != d || p.cols() != d)
            throw std::invalid_argument("projector dimension mismatch");
        if (!p.is_hermitian(1e-12))
            throw std::invalid_argument("outcome projector must be Hermitian");
        if ((p * p).max_abs_diff(p) > 1e-10)
            throw std::invalid_argument("outcome projector must be idempotent");
        sum += p;
    }
    if (sum.max_abs_diff(Mat::identity(d)) > 1e-12)
        throw std::invalid_argument("outcome projectors must sum to identity");
}

Mat board_reduction(const OneRoundGame& game) {
    Mat full = outer(game.initial, game.initial);
    return partial_trace(full, game.layout, game.layout.board_indices())
        .hermitized();
}

OutcomeExtremes outcome_extremes(const OneRoundGame& game,
                                 const SolveConfig& cfg) {
    validate(game);
    const Mat sigma = board_reduction(game);
    OutcomeExtremes ex;
    double q[2];
    for (int i = 0; i < 2; ++i) {
        PTraceSDP sdp{game.outcome[i], sigma, game.layout};
        SDPSolution sol = solve_primal(sdp, cfg);
        if (!sol.converged)
            throw std::runtime_error("outcome SDP did not converge");
        q[i] = std::clamp(sol.primal_value, 0.0, 1.0);
    }
    ex.q0 = q[0];
    ex.q1 = q[1];
    // Playing any fixed strategy realizes both outcomes with complementary
    // probabilities, so the maxima always cover 1.  A miss means the solver
    // stopped short, not that the game is exotic.
    if (ex.q0 + ex.q1 < 1.0 - 1e-6)
        throw std::runtime_error("outcome maxima sum to " +
                                 std::to_string(ex.q0 + ex.q1) +
                                 ", below 1; solver underconverged");
    ex.m0 = 1.0 - ex.q1;
    ex.m1 = 1.0 - ex.q0;
    return ex;
}

ParallelGame parallel_compose(std::vector<OneRoundGame> gs) {
    if (gs.empty())
        throw std::invalid_argument("need at least one game to compose");
    ParallelGame pg;
    for (const OneRoundGame& g : gs) validate(g);

    std::vector<int> dims;
    pg.initial = gs[0].initial;
    Mat sigma = board_reduction(gs[0]);
    dims.insert(dims.end(), gs[0].layout.dims.begin(), gs[0].layout.dims.end());
    for (size_t i = 1; i < gs.size(); ++i) {
        pg.initial = kron(pg.initial, gs[i].initial);
        sigma = kron(sigma, board_reduction(gs[i]));
        dims.insert(dims.end(), gs[i].layout.dims.begin(),
                    gs[i].layout.dims.end());
    }
    pg.board_sigma = sigma;
    pg.layout = SubsystemLayout{dims};
    pg.games = std::move(gs);
    return pg;
}

Mat ParallelGame::outcome_projector(const std::vector<int>& a) const {
    if (static_cast<int>(a.size()) != count())
        throw std::invalid_argument("outcome vector length mismatch");
    for (int bit : a)
        if (bit != 0 && bit != 1)
            throw std::invalid_argument("outcome entries must be 0 or 1");
    Mat proj = games[0].outcome[a[0]];
    for (size_t i = 1; i < games.size(); ++i)
        proj = kron(proj, games[i].outcome[a[i]]);
    return proj;
}

Mat ParallelGame::weighted_objective(const std::vector<double>& t) const {
    const int n = count();
    if (t.size() != (size_t(1) << n))
        throw std::invalid_argument("target vector length must be 2^n");
    const int d = layout.total_dim();
    Mat w = Mat::zero(d);
    std::vector<int> a(n);
    for (size_t idx = 0; idx < t.size(); ++idx) {
        if (t[idx] == 0.0) continue;
        for (int i = 0; i < n; ++i)
            a[i] = (idx >> (n - 1 - i)) & 1;  // first game = most significant
        w += cx(t[idx], 0.0) * outcome_projector(a);
    }
    return w.hermitized();
}

PTraceSDP ParallelGame::sdp_for(const std::vector<double>& t) const {
    return PTraceSDP{weighted_objective(t), board_sigma, layout};
}

double m_par(const ParallelGame& pg, const std::vector<int>& a,
             const SolveConfig& cfg) {
    // Minimizing Pr(a) is maximizing Pr(not a); complement the projector.
    const int d = pg.layout.total_dim();
    Mat w = Mat::identity(d) - pg.outcome_projector(a);
    SDPSolution sol = solve_primal(PTraceSDP{w, pg.board_sigma, pg.layout}, cfg);
    if (!sol.converged)
        throw std::runtime_error("parallel outcome SDP did not converge");
    return std::clamp(1.0 - sol.primal_value, 0.0, 1.0);
}

void validate(const MeasureOnlyGame& game) {
    const int d = game.outcome_ops[0].rows();
    Mat sum = Mat::zero(d);
    for (const Mat& m : game.outcome_ops) {
        if (m.rows() != d || m.cols() != d)
            throw std::invalid_argument("outcome operator dimension mismatch");
        if (!m.is_hermitian(1e-10))
            throw std::invalid_argument("outcome operator must be Hermitian");
        if (!psd_check(m.hermitized(), 1e-10))
            throw std::invalid_argument("outcome operator must be PSD");
        sum += m;
    }
    if (sum.max_abs_diff(Mat::identity(d)) > 1e-10)
        throw std::invalid_argument("outcome operators must sum to identity");
}

double m_par_measure_only(const std::vector<MeasureOnlyGame>& ms,
                          const std::vector<int>& a) {
    if (ms.empty()) return 1.0;  // empty product
    if (a.size() != ms.size())
        throw std::invalid_argument("outcome vector length mismatch");
    long long dim = 1;
    double product = 1.0;
    Mat tensor;
    for (size_t i = 0; i < ms.size(); ++i) {
        validate(ms[i]);
        if (a[i] != 0 && a[i] != 1)
            throw std::invalid_argument("outcome entries must be 0 or 1");
        const Mat& op = ms[i].outcome_ops[a[i]];
        dim *= op.rows();
        if (dim > 256)
            throw std::length_error("tensor dimension above 256 unsupported");
        product *= std::max(0.0, min_eig(op.hermitized()));
        tensor = (i == 0) ? op : kron(tensor, op);
    }
    const double direct = min_eig(tensor.hermitized());
    // Smallest eigenvalue of a PSD tensor product factorizes; a gap here
    // means the eigensolver misbehaved.
    if (std::abs(direct - product) > 1e-9)
        throw std::logic_error("tensor minimum deviates from product law");
    return direct;
}

}  // namespace hedgelab
