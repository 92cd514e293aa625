#include "l0dag/superstructure.hpp"

#include <cmath>
#include <string>

namespace l0dag {

namespace {

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

} // namespace

double default_ns_rho(Index m, Index n, double scale) {
    if (m < 1 || n < 1) throw std::invalid_argument("default_ns_rho: m and n must be positive");
    return scale * std::sqrt(std::log(static_cast<double>(m)) / static_cast<double>(n));
}

Eigen::VectorXd node_lasso(const CovMatrix &sigma, Index j, double rho, int max_iters, double tol, bool *converged) {
    if (!(rho >= 0.0)) throw std::invalid_argument("lasso penalty must be nonnegative");
    const Index m = sigma.dim();
    if (j < 0 || j >= m) throw std::out_of_range("node_lasso: node index out of range");

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
    bool done = false;
    for (int iter = 0; iter < max_iters && !done; ++iter) {
        double max_delta = 0.0;
        for (Index k = 0; k < m; ++k) {
            if (k == j) continue;
            double partial = sigma(j, k);
            for (Index l = 0; l < m; ++l) {
                if (l != k && l != j) partial -= beta(l) * sigma(k, l);
            }
            const double updated = soft_threshold(partial, rho) / sigma(k, k);
            max_delta = std::max(max_delta, std::abs(updated - beta(k)));
            beta(k) = updated;
        }
        done = max_delta <= tol;
    }
    if (converged) *converged = done;
    return beta;
}

SuperStructure neighborhood_selection(const CovMatrix &sigma, const NsConfig &config) {
    if (!(config.rho >= 0.0)) throw std::invalid_argument("neighborhood_selection: rho must be nonnegative");
    if (config.max_iters < 1) throw std::invalid_argument("neighborhood_selection: max_iters must be positive");
    const Index m = sigma.dim();

    std::vector<Eigen::VectorXd> coefs;
    coefs.reserve(m);
    Index failed = -1;
    for (Index j = 0; j < m; ++j) {
        bool ok = false;
        coefs.push_back(node_lasso(sigma, j, config.rho, config.max_iters, config.tol, &ok));
        if (!ok && failed < 0) failed = j;
    }

    SuperStructure result(static_cast<int>(m));
    for (Index i = 0; i < m; ++i) {
        for (Index k = i + 1; k < m; ++k) {
            const bool ik = coefs[i](k) != 0.0;
            const bool ki = coefs[k](i) != 0.0;
            const bool keep = config.rule == CombineRule::union_rule ? (ik || ki) : (ik && ki);
            if (keep) result.add(static_cast<int>(i), static_cast<int>(k));
        }
    }
    if (failed >= 0) {
        throw NsNotConverged("neighborhood_selection: lasso for node " + std::to_string(failed) +
                                 " did not converge in " + std::to_string(config.max_iters) + " iterations",
                             std::move(result));
    }
    return result;
}

} // namespace l0dag
