#pragma once

#include "l0dag/graph.hpp"
#include "l0dag/numerics.hpp"

#include <stdexcept>

namespace l0dag {

enum class CombineRule { union_rule, intersection_rule };

struct NsConfig {
    double rho = 0.0;
    CombineRule rule = CombineRule::union_rule;
    int max_iters = 10000;
    double tol = 1e-10;
};

/// Default lasso penalty: scale * sqrt(log(m) / n).
double default_ns_rho(Index m, Index n, double scale = 1.0);

/// Lasso coefficients of node j on all other nodes, from the covariance alone.
/// Entry j of the result is zero. Returns false in `converged` if max_iters was hit.
Eigen::VectorXd node_lasso(const CovMatrix &sigma, Index j, double rho, int max_iters, double tol,
                           bool *converged = nullptr);

class NsNotConverged : public std::runtime_error {
public:
    NsNotConverged(const std::string &what, SuperStructure partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const SuperStructure &partial() const { return partial_; }

private:
    SuperStructure partial_;
};

/// Meinshausen-Buhlmann neighborhood selection: per-node lasso, neighborhoods
/// combined by union or intersection. Throws NsNotConverged carrying the
/// partial estimate if any regression hits max_iters.
SuperStructure neighborhood_selection(const CovMatrix &sigma, const NsConfig &config);

} // namespace l0dag
