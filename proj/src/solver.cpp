#include "l0dag/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

namespace l0dag {

namespace {

void check_pair(const GammaMatrix &gamma, const CovMatrix &sigma, Index u, Index v) {
    if (gamma.dim() != sigma.dim()) throw std::invalid_argument("gamma and sigma dimensions differ");
    if (u < 0 || u >= gamma.dim() || v < 0 || v >= gamma.dim()) throw std::out_of_range("coordinate out of range");
}

double unpenalized_offdiag(const GammaMatrix &gamma, const CovMatrix &sigma, Index u, Index v) {
    const double value = -compute_a(gamma, sigma, u, v) / (2.0 * sigma(u, u));
    return value == 0.0 ? 0.0 : value; // no negative zeros in gamma
}

void sync_graph(const GammaMatrix &gamma, DirectedGraph &graph) {
    graph.clear();
    for (const auto &e : gamma.support()) graph.add_edge(e.from, e.to);
}

} // namespace

void SolverConfig::validate() const {
    if (!(lambda_sq >= 0.0)) throw std::invalid_argument("lambda_sq must be nonnegative");
    if (spacer_threshold_c < 1) throw std::invalid_argument("spacer threshold C must be at least 1");
    if (max_full_loops < 1) throw std::invalid_argument("max_full_loops must be positive");
    if (!(objective_tol >= 0.0)) throw std::invalid_argument("objective_tol must be nonnegative");
    if (!(coordinate_tol >= 0.0)) throw std::invalid_argument("coordinate_tol must be nonnegative");
}

double update_offdiag(const GammaMatrix &gamma, const CovMatrix &sigma, Index u, Index v, double lambda_sq) {
    check_pair(gamma, sigma, u, v);
    if (u == v) throw std::invalid_argument("update_offdiag called on a diagonal coordinate");
    const double s_uu = sigma(u, u);
    const double a = compute_a(gamma, sigma, u, v);
    // ties at the threshold keep the nonzero value
    if (lambda_sq <= a * a / (4.0 * s_uu)) {
        const double value = -a / (2.0 * s_uu);
        return value == 0.0 ? 0.0 : value;
    }
    return 0.0;
}

double update_diag(const GammaMatrix &gamma, const CovMatrix &sigma, Index u) {
    check_pair(gamma, sigma, u, u);
    const double s_uu = sigma(u, u);
    if (!(s_uu > 0.0)) throw std::domain_error("update_diag: Sigma_uu must be positive");
    const double a = compute_a(gamma, sigma, u, u);
    return (-a + std::sqrt(a * a + 16.0 * s_uu)) / (4.0 * s_uu);
}

void spacer_step(GammaMatrix &gamma, const CovMatrix &sigma) {
    const Index m = gamma.dim();
    std::vector<std::pair<Index, Index>> coords;
    for (Index u = 0; u < m; ++u)
        for (Index v = 0; v < m; ++v)
            if (u == v || gamma(u, v) != 0.0) coords.emplace_back(u, v);
    for (const auto &[u, v] : coords) {
        gamma(u, v) = (u == v) ? update_diag(gamma, sigma, u) : unpenalized_offdiag(gamma, sigma, u, v);
    }
}

std::string support_fingerprint(const GammaMatrix &gamma) {
    const EdgeList edges = gamma.support();
    std::string key;
    key.reserve(edges.size() * 2 * sizeof(std::int32_t));
    for (const auto &e : edges) {
        const std::int32_t pair[2] = {e.from, e.to};
        key.append(reinterpret_cast<const char *>(pair), sizeof(pair));
    }
    return key;
}

double full_loop(GammaMatrix &gamma, DirectedGraph &graph, const CovMatrix &sigma, const SuperStructure &e_super,
                 double lambda_sq) {
    const Index m = gamma.dim();
    double max_change = 0.0;
    for (Index u = 0; u < m; ++u) {
        const double diag = update_diag(gamma, sigma, u);
        max_change = std::max(max_change, std::abs(diag - gamma(u, u)));
        gamma(u, u) = diag;
        const int ui = static_cast<int>(u);
        for (int v : e_super.neighbors(ui)) {
            // gate against the support with (u, v) itself removed
            if (gamma(u, v) != 0.0) graph.remove_edge(ui, v);
            if (graph.would_create_cycle(ui, v)) {
                max_change = std::max(max_change, std::abs(gamma(u, v)));
                gamma(u, v) = 0.0;
                continue;
            }
            const double value = update_offdiag(gamma, sigma, u, v, lambda_sq);
            max_change = std::max(max_change, std::abs(value - gamma(u, v)));
            gamma(u, v) = value;
            if (value != 0.0) graph.add_edge(ui, v);
            assert(graph.is_dag());
        }
    }
    return max_change;
}

SolveResult cd_solve(const CovMatrix &sigma, const SuperStructure &e_super, const SolverConfig &config,
                     const LoopCallback &on_loop) {
    config.validate();
    const Index m = sigma.dim();
    if (e_super.num_nodes() != m) {
        throw std::invalid_argument("superstructure has " + std::to_string(e_super.num_nodes()) +
                                    " nodes but sigma is " + std::to_string(m) + "x" + std::to_string(m));
    }

    SolveResult result{GammaMatrix::identity(m), {}, {}, 0, 0, false};
    GammaMatrix &gamma = result.gamma_hat;
    DirectedGraph graph(static_cast<int>(m));
    std::map<std::string, int> support_counts;

    double previous = objective_f(gamma, sigma, config.lambda_sq);
    std::string previous_key = support_fingerprint(gamma);

    for (int loop = 1; loop <= config.max_full_loops; ++loop) {
        double max_change = full_loop(gamma, graph, sigma, e_super, config.lambda_sq);
        result.full_loops = loop;

        const std::string key = support_fingerprint(gamma);
        int &count = support_counts[key];
        if (++count >= config.spacer_threshold_c) {
            const Eigen::MatrixXd before = gamma.matrix();
            spacer_step(gamma, sigma);
            max_change = std::max(max_change, (gamma.matrix() - before).cwiseAbs().maxCoeff());
            sync_graph(gamma, graph);
            ++result.spacer_steps_taken;
            count = 0;
        }

        const double current = objective_f(gamma, sigma, config.lambda_sq);
        result.objective_trace.push_back(current);
        if (on_loop) on_loop(loop, current);

        const std::string current_key = support_fingerprint(gamma);
        const bool support_stable = current_key == previous_key;
        if (support_stable && previous - current < config.objective_tol && max_change <= config.coordinate_tol) {
            result.converged = true;
            break;
        }
        previous = current;
        previous_key = current_key;
    }

    result.support = gamma.support();
    return result;
}

} // namespace l0dag
