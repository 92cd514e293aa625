#pragma once

#include "l0dag/solver.hpp"

#include <vector>

namespace l0dag {

/// lambda_sq = c * log(m) / n for each c.
struct LambdaGrid {
    std::vector<double> c_values;
    Index m = 0;
    Index n = 0;

    /// c = 1, 2, ..., max_c.
    static LambdaGrid integer_grid(Index m, Index n, int max_c = 15);

    std::vector<double> lambda_sq_values() const;
};

/// -2n sum log Gamma_ii + n tr(Gamma Gamma^T Sigma) + k log n, where k counts
/// every nonzero entry of Gamma including the diagonal.
double bic_score(const GammaMatrix &gamma, const CovMatrix &sigma, Index n);

struct Selection {
    double lambda_sq = 0.0;
    double bic = 0.0;
    SolveResult result;
    /// BIC of every grid point, in grid order.
    std::vector<double> grid_bic;
};

/// Cold-started solve per grid point; the lowest BIC wins, ties going to the
/// smaller lambda_sq. config.lambda_sq is ignored.
Selection select_lambda(const CovMatrix &sigma, const SuperStructure &e_super, Index n, const LambdaGrid &grid,
                        const SolverConfig &config, std::size_t workers = 0);

} // namespace l0dag
