// Solver and certifier for the partial-trace-constrained program
//
//     maximize   tr(W rho)
//     subject to rho >= 0,  tr_M rho = sigma,
//
// where M collects the message factors of the layout and sigma is the fixed
// reduced state on the board factors.  Every cheating value in the library
// is an instance of this program.

#pragma once

#include <vector>

#include "hedgelab/linalg.hpp"

namespace hedgelab {

struct PTraceSDP {
    Mat W;                   // Hermitian objective on the full space
    Mat sigma;               // PSD, unit trace, lives on the board factors
    SubsystemLayout layout;  // board factors at even positions
};

// Throws std::invalid_argument when W is not Hermitian, sigma is not a
// unit-trace PSD matrix, or the dimensions disagree with the layout.
void validate(const PTraceSDP& sdp);

struct SolveConfig {
    double step = 2.0;      // initial step size, divided by the norm of W
    int max_iters = 20000;
    double tol = 1e-10;     // stall threshold on the objective
};

struct SDPSolution {
    double primal_value = 0.0;
    Mat rho;
    double dual_value = 0.0;
    Mat Y;                  // dual certificate on the board factors
    double gap = 0.0;       // dual_value - primal_value, +inf when unsolved
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_history;  // objective after each iteration
};

// Conjugates rho back onto the constraint set tr_M rho = sigma.  The map is
// rho -> (X (x) I) rho (X (x) I)^dagger with X = sigma^{1/2} tau^{-1/2} and
// tau = tr_M rho.  When tau is singular the clamped inverse square root
// alone cannot restore the constraint, so the leftover deficit is
// reinstated as a maximally mixed message block, keeping the result PSD
// and the reduction exact.
Mat renormalize_ptrace(const Mat& rho, const Mat& sigma,
                       const SubsystemLayout& layout);

// Matrix-exponentiated ascent on the objective with renormalization after
// every step.  Halves the step size whenever the objective stalls and
// declares convergence once the step has shrunk by a factor 1e6.
SDPSolution solve_primal(const PTraceSDP& sdp, const SolveConfig& cfg = {});

// True iff Y (x) I - W is PSD up to tol, i.e. tr(Y sigma) upper-bounds the
// primal optimum.
bool dual_feasible(const Mat& Y, const Mat& W, const SubsystemLayout& layout,
                   double tol = 1e-9);

double dual_value(const Mat& Y, const Mat& sigma);

// Builds a feasible dual certificate from a near-optimal primal point.  The
// candidate solves the complementarity least-squares problem
// min_Y ||(Y (x) I) rho - W rho||_F, whose normal equations have the closed
// form Y = tr_M(W rho^2) * pinv(tr_M(rho^2)); it is then shifted into the
// feasible cone and, if the gap is still loose, its diagonal is tightened
// by coordinate descent.  Falls back to lambda_max(W) * I.
Mat extract_dual(const PTraceSDP& sdp, const Mat& rho);

// Recomputes the dual side of `sol` against a caller-supplied certificate.
void certify_with(SDPSolution& sol, const PTraceSDP& sdp, const Mat& Y);

}  // namespace hedgelab
