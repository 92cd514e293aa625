#pragma once

#include "l0dag/graph.hpp"
#include "l0dag/numerics.hpp"

#include <functional>
#include <string>
#include <vector>

namespace l0dag {

struct SolverConfig {
    double lambda_sq = 0.0;
    /// Spacer step fires when the same support has been seen this many full loops.
    int spacer_threshold_c = 5;
    int max_full_loops = 10000;
    /// A full loop converges when the support is unchanged, the objective
    /// dropped by less than objective_tol, and no coordinate moved by more
    /// than coordinate_tol.
    double objective_tol = 1e-9;
    double coordinate_tol = 1e-10;

    void validate() const;
};

struct SolveResult {
    GammaMatrix gamma_hat;
    EdgeList support;
    /// Objective after each full loop (after the spacer step, if one fired).
    std::vector<double> objective_trace;
    int full_loops = 0;
    int spacer_steps_taken = 0;
    bool converged = false;

    double objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

/// Called after every full loop with (loop index, objective).
using LoopCallback = std::function<void(int, double)>;

/// Minimizer over Gamma_uv (u != v) of the single-coordinate problem:
/// -A_uv / (2 Sigma_uu) when lambda_sq <= A_uv^2 / (4 Sigma_uu), exactly 0 otherwise.
/// Does not write into gamma.
double update_offdiag(const GammaMatrix &gamma, const CovMatrix &sigma, Index u, Index v, double lambda_sq);

/// Positive root (-A_uu + sqrt(A_uu^2 + 16 Sigma_uu)) / (4 Sigma_uu).
double update_diag(const GammaMatrix &gamma, const CovMatrix &sigma, Index u);

/// One unpenalized row-major sweep over the diagonal and every off-diagonal
/// nonzero of gamma. Support never grows.
void spacer_step(GammaMatrix &gamma, const CovMatrix &sigma);

/// Canonical byte encoding of the off-diagonal support (sorted edge list).
std::string support_fingerprint(const GammaMatrix &gamma);

/// One cyclic pass over rows u: diagonal update, then every superstructure
/// neighbor v in ascending order under the acyclicity gate. `graph` must mirror
/// gamma's off-diagonal support on entry and does so again on exit.
/// Returns the largest absolute change of any coordinate.
double full_loop(GammaMatrix &gamma, DirectedGraph &graph, const CovMatrix &sigma, const SuperStructure &e_super,
               double lambda_sq);

/// Cyclic coordinate descent with spacer steps starting from the identity.
SolveResult cd_solve(const CovMatrix &sigma, const SuperStructure &e_super, const SolverConfig &config,
                     const LoopCallback &on_loop = {});

} // namespace l0dag
