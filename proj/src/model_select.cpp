#include "l0dag/model_select.hpp"

#include "l0dag/parallel.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace l0dag {

LambdaGrid LambdaGrid::integer_grid(Index m, Index n, int max_c) {
    if (max_c < 1) throw std::invalid_argument("LambdaGrid: max_c must be at least 1");
    LambdaGrid grid;
    grid.m = m;
    grid.n = n;
    for (int c = 1; c <= max_c; ++c) grid.c_values.push_back(static_cast<double>(c));
    return grid;
}

std::vector<double> LambdaGrid::lambda_sq_values() const {
    if (m < 1 || n < 1) throw std::invalid_argument("LambdaGrid: m and n must be positive");
    const double base = std::log(static_cast<double>(m)) / static_cast<double>(n);
    std::vector<double> values;
    values.reserve(c_values.size());
    for (double c : c_values) {
        if (!(c > 0.0)) throw std::invalid_argument("LambdaGrid: c values must be positive");
        values.push_back(c * base);
    }
    return values;
}

double bic_score(const GammaMatrix &gamma, const CovMatrix &sigma, Index n) {
    if (n < 2) throw std::invalid_argument("bic_score: n must be at least 2");
    const double nn = static_cast<double>(n);
    const double k = static_cast<double>(gamma.offdiag_nnz()) + static_cast<double>(gamma.dim());
    return nn * neg_log_likelihood(gamma, sigma) + k * std::log(nn);
}

Selection select_lambda(const CovMatrix &sigma, const SuperStructure &e_super, Index n, const LambdaGrid &grid,
                        const SolverConfig &config, std::size_t workers) {
    const std::vector<double> lambdas = grid.lambda_sq_values();
    if (lambdas.empty()) throw std::invalid_argument("select_lambda: empty lambda grid");

    std::vector<std::optional<SolveResult>> solves(lambdas.size());
    parallel_for(
        lambdas.size(),
        [&](std::size_t i) {
            SolverConfig local = config;
            local.lambda_sq = lambdas[i];
            solves[i] = cd_solve(sigma, e_super, local);
        },
        workers);

    Selection selection{0.0, 0.0, std::move(*solves[0]), {}};
    std::size_t best = 0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const SolveResult &r = i == 0 ? selection.result : *solves[i];
        selection.grid_bic.push_back(bic_score(r.gamma_hat, sigma, n));
    }
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
        const bool tie_to_smaller = lambdas[i] < lambdas[best];
        if (selection.grid_bic[i] < selection.grid_bic[best] ||
            (selection.grid_bic[i] == selection.grid_bic[best] && tie_to_smaller)) {
            best = i;
        }
    }
    if (best != 0) selection.result = std::move(*solves[best]);
    selection.lambda_sq = lambdas[best];
    selection.bic = selection.grid_bic[best];
    return selection;
}

} // namespace l0dag
