#include "l0dag/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace l0dag {

GammaMatrix mle_given_support(const CovMatrix &sigma, const EdgeList &support) {
    const Index m = sigma.dim();
    const auto graph = DirectedGraph::from_edges(static_cast<int>(m), support);
    if (!graph.is_dag()) throw std::invalid_argument("mle_given_support: support is not a DAG");

    std::vector<std::vector<int>> parents(m);
    for (const auto &e : graph.edges()) parents[e.to].push_back(e.from);

    const Eigen::MatrixXd &s = sigma.matrix();
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(m, m);
    for (Index j = 0; j < m; ++j) {
        const auto &pa = parents[j];
        const Index k = static_cast<Index>(pa.size());
        double omega = s(j, j);
        Eigen::VectorXd beta;
        if (k > 0) {
            Eigen::MatrixXd gram(k, k);
            Eigen::VectorXd rhs(k);
            for (Index a = 0; a < k; ++a) {
                rhs(a) = s(pa[a], j);
                for (Index b = 0; b < k; ++b) gram(a, b) = s(pa[a], pa[b]);
            }
            Eigen::LLT<Eigen::MatrixXd> llt(gram);
            if (llt.info() != Eigen::Success) {
                throw std::domain_error("mle_given_support: singular parent Gram matrix for node " + std::to_string(j));
            }
            beta = llt.solve(rhs);
            omega -= rhs.dot(beta);
        }
        if (!(omega > 0.0)) {
            throw std::domain_error("mle_given_support: nonpositive residual variance for node " + std::to_string(j));
        }
        const double scale = 1.0 / std::sqrt(omega);
        gamma(j, j) = scale;
        for (Index a = 0; a < k; ++a) {
            gamma(pa[a], j) = -beta(a) * scale;
        }
    }
    return GammaMatrix(std::move(gamma));
}

namespace {

struct Search {
    const CovMatrix &sigma;
    double lambda_sq;
    std::vector<std::pair<int, int>> pairs;
    DirectedGraph graph;
    OracleResult best;
    bool have_best = false;

    void visit(std::size_t idx) {
        if (idx == pairs.size()) {
            score();
            return;
        }
        const auto [u, v] = pairs[idx];
        visit(idx + 1);
        for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
            if (graph.would_create_cycle(a, b)) continue;
            graph.add_edge(a, b);
            visit(idx + 1);
            graph.remove_edge(a, b);
        }
    }

    void score() {
        ++best.num_dags_enumerated;
        EdgeList support = graph.edges();
        const double value = objective_f(mle_given_support(sigma, support), sigma, 0.0) +
                             lambda_sq * static_cast<double>(support.size());
        const bool better = !have_best || value < best.optimal_objective ||
                            (value == best.optimal_objective &&
                             (support.size() < best.optimal_support.size() ||
                              (support.size() == best.optimal_support.size() && support < best.optimal_support)));
        if (better) {
            best.optimal_objective = value;
            best.optimal_support = std::move(support);
            have_best = true;
        }
    }
};

} // namespace

OracleResult brute_force_solve(const CovMatrix &sigma, const SuperStructure &e_super, double lambda_sq) {
    const Index m = sigma.dim();
    if (m > kOracleMaxNodes) {
        throw std::invalid_argument("brute_force_solve: " + std::to_string(m) + " nodes exceeds the limit of " +
                                    std::to_string(kOracleMaxNodes));
    }
    if (e_super.num_nodes() != m) throw std::invalid_argument("brute_force_solve: superstructure size mismatch");
    if (!(lambda_sq >= 0.0)) throw std::invalid_argument("brute_force_solve: lambda_sq must be nonnegative");

    Search search{sigma, lambda_sq, e_super.pairs(), DirectedGraph(static_cast<int>(m)), {}, false};
    search.visit(0);
    return search.best;
}

} // namespace l0dag
