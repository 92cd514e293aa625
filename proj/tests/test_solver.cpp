#include "l0dag/oracle.hpp"
#include "l0dag/sem_sim.hpp"
#include "l0dag/solver.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace l0dag;
using l0dag::testing::Rng;

namespace {

CovMatrix cov2(double off) {
    Eigen::Matrix2d s;
    s << 1.0, off, off, 1.0;
    return CovMatrix(s);
}

SolveResult random_solve(Rng &rng, int m, Index n, double c, std::uint64_t seed) {
    const int max_edges = m * (m - 1) / 2;
    const auto dag = random_dag(m, testing::uniform_int(rng, 0, std::min(max_edges, 2 * m)), seed);
    const auto data = simulate(random_sem(dag, seed), n, seed);
    SolverConfig config;
    config.lambda_sq = c * std::log(static_cast<double>(m)) / static_cast<double>(n);
    return cd_solve(sample_covariance(data), complete_superstructure(m), config);
}

} // namespace

TEST_CASE("update_offdiag closed forms") {
    const CovMatrix eye(Eigen::MatrixXd::Identity(3, 3));
    for (Index u = 0; u < 3; ++u)
        for (Index v = 0; v < 3; ++v)
            if (u != v) CHECK(update_offdiag(GammaMatrix::identity(3), eye, u, v, 0.1) == 0.0);

    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = testing::random_cov(rng, 4);
        const auto g = testing::random_gamma(rng, 4);
        const double a = compute_a(g, s, 1, 3);
        CHECK(update_offdiag(g, s, 1, 3, 0.0) == doctest::Approx(-a / (2.0 * s(1, 1))).epsilon(1e-15));
    }

    CHECK_THROWS_AS(update_offdiag(GammaMatrix::identity(3), eye, 1, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(update_offdiag(GammaMatrix::identity(3), eye, 0, 3, 0.0), std::out_of_range);
}

TEST_CASE("update_offdiag matches a grid search on the two-node instance") {
    const auto s = cov2(0.5);
    const auto g = GammaMatrix::identity(2);
    const double grid = testing::grid_argmin_offdiag(g, s, 1, 0, 0.01);
    CHECK(grid == doctest::Approx(-0.5).epsilon(1e-4)); // A_10 = 1, so -A / (2 Sigma_11)
    CHECK(std::abs(update_offdiag(g, s, 1, 0, 0.01) - grid) <= 1e-4);
}

TEST_CASE("update_offdiag keeps the nonzero value at the exact threshold") {
    // A_10 = 1 and Sigma_11 = 1, so the threshold A^2 / (4 Sigma_11) is exactly 0.25
    const auto s = cov2(0.5);
    CHECK(update_offdiag(GammaMatrix::identity(2), s, 1, 0, 0.25) == -0.5);
    CHECK(update_offdiag(GammaMatrix::identity(2), s, 1, 0, std::nextafter(0.25, 1.0)) == 0.0);
}

TEST_CASE("update_diag closed forms and grid search") {
    CHECK(update_diag(GammaMatrix::identity(3), CovMatrix(Eigen::MatrixXd::Identity(3, 3)), 1) == doctest::Approx(1.0));
    CHECK(update_diag(GammaMatrix::identity(3), CovMatrix(4.0 * Eigen::MatrixXd::Identity(3, 3)), 2) ==
          doctest::Approx(0.5));

    Rng rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = testing::random_cov(rng, 3);
        const auto g = testing::random_gamma(rng, 3);
        for (Index u = 0; u < 3; ++u) {
            const double value = update_diag(g, s, u);
            CHECK(value > 0.0);
            CHECK(std::abs(value - testing::grid_argmin_diag(g, s, u)) <= 1e-4);
        }
    }
}

TEST_CASE("spacer_step on the identity only refits the diagonal") {
    Eigen::Matrix3d sm;
    sm << 1.0, 0.3, -0.2, 0.3, 1.0, 0.1, -0.2, 0.1, 1.0;
    const CovMatrix s(sm);
    GammaMatrix g = GammaMatrix::identity(3);
    spacer_step(g, s);
    CHECK(g.offdiag_nnz() == 0);
    // with an empty support A_uu = 0, so every root is 1 / sqrt(Sigma_uu) = 1
    for (Index u = 0; u < 3; ++u) CHECK(g(u, u) == doctest::Approx(1.0));
}

TEST_CASE("spacer_step never grows the support and never raises the likelihood") {
    Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const Index m = testing::uniform_int(rng, 2, 7);
        const auto s = testing::random_cov(rng, m);
        GammaMatrix g = testing::random_dag_gamma(rng, m);
        const auto support_before = g.support();
        const double before = neg_log_likelihood(g, s);
        spacer_step(g, s);
        const auto support_after = g.support();
        CHECK(std::includes(support_before.begin(), support_before.end(), support_after.begin(), support_after.end()));
        CHECK(neg_log_likelihood(g, s) <= before + 1e-12);
    }
}

TEST_CASE("spacer_step is a fixed point at a coordinate-wise minimum") {
    Rng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        const Index m = testing::uniform_int(rng, 2, 6);
        const auto s = testing::random_cov(rng, m);
        GammaMatrix g = testing::random_dag_gamma(rng, m);
        for (int it = 0; it < 5000; ++it) spacer_step(g, s);
        const Eigen::MatrixXd fixed = g.matrix();
        spacer_step(g, s);
        CHECK((g.matrix() - fixed).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("support_fingerprint is canonical") {
    GammaMatrix a = GammaMatrix::identity(3), b = GammaMatrix::identity(3);
    a(0, 1) = 0.3;
    a(2, 1) = -0.1;
    b(2, 1) = 5.0;
    b(0, 1) = -2.0;
    CHECK(support_fingerprint(a) == support_fingerprint(b));
    b(0, 2) = 1.0;
    CHECK(support_fingerprint(a) != support_fingerprint(b));
    CHECK(support_fingerprint(GammaMatrix::identity(3)).empty());
}

TEST_CASE("cd_solve on independent variables returns the identity") {
    SolverConfig config;
    config.lambda_sq = 0.05;
    const auto r = cd_solve(CovMatrix(Eigen::MatrixXd::Identity(5, 5)), complete_superstructure(5), config);
    CHECK(r.converged);
    CHECK(r.support.empty());
    CHECK((r.gamma_hat.matrix() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(r.objective() == doctest::Approx(5.0));
}

TEST_CASE("cd_solve recovers a strong two-node edge") {
    // X1 = 0.8 X0 + eps with unit noise: population Gamma* = [[1, -0.8], [0, 1]]
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2, 2);
    b(0, 1) = 0.8;
    const SemParams sem(b, Eigen::Vector2d(1.0, 1.0));
    const Index n = 100000;
    const auto sigma = sample_covariance(simulate(sem, n, 5));
    SolverConfig config;
    config.lambda_sq = std::log(2.0) / static_cast<double>(n);
    const auto r = cd_solve(sigma, complete_superstructure(2), config);
    REQUIRE(r.support == EdgeList{{0, 1}});
    Eigen::Matrix2d expected;
    expected << 1.0, -0.8, 0.0, 1.0;
    CHECK((r.gamma_hat.matrix() - expected).cwiseAbs().maxCoeff() <= 0.05);
    // B_01 = -Gamma_01 / Gamma_11 has the sign of the true weight
    CHECK(-r.gamma_hat(0, 1) / r.gamma_hat(1, 1) > 0.0);
}

TEST_CASE("cd_solve is close to the exhaustive optimum on a four-node DAG") {
    const Index n = 5000;
    const auto dag = random_dag(4, 3, 41);
    const auto sigma = sample_covariance(simulate(random_sem(dag, 41), n, 41));
    SolverConfig config;
    config.lambda_sq = 2.0 * std::log(4.0) / static_cast<double>(n);
    const auto r = cd_solve(sigma, complete_superstructure(4), config);
    const auto opt = brute_force_solve(sigma, complete_superstructure(4), config.lambda_sq);
    CHECK(r.objective() >= opt.optimal_objective);
    CHECK((r.objective() - opt.optimal_objective) / std::abs(opt.optimal_objective) <= 0.02);
}

TEST_CASE("cd_solve honours the superstructure") {
    Rng rng(35);
    const auto dag = random_dag(6, 8, 7);
    const auto sigma = sample_covariance(simulate(random_sem(dag, 7), 2000, 7));
    SuperStructure sparse(6);
    sparse.add(0, 1);
    sparse.add(2, 3);
    SolverConfig config;
    config.lambda_sq = 0.001;
    const auto r = cd_solve(sigma, sparse, config);
    for (const auto &e : r.support) CHECK(sparse.contains(e.from, e.to));
    CHECK_THROWS_AS(cd_solve(sigma, complete_superstructure(5), config), std::invalid_argument);
}

TEST_CASE("cd_solve flags non-convergence at the loop cap") {
    const auto dag = random_dag(8, 12, 3);
    const auto sigma = sample_covariance(simulate(random_sem(dag, 3), 500, 3));
    SolverConfig config;
    config.lambda_sq = 0.01;
    config.max_full_loops = 1;
    const auto r = cd_solve(sigma, complete_superstructure(8), config);
    CHECK_FALSE(r.converged);
    CHECK(r.full_loops == 1);
    CHECK(r.objective_trace.size() == 1);
}

TEST_CASE("SolverConfig validation") {
    SolverConfig c;
    c.lambda_sq = -1.0;
    CHECK_THROWS(c.validate());
    c = {};
    c.spacer_threshold_c = 0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("solver invariants on random instances") {
    Rng rng(36);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = testing::uniform_int(rng, 2, 10);
        const Index n = 1000;
        const auto dag = random_dag(m, testing::uniform_int(rng, 0, m * (m - 1) / 2), 100 + trial);
        const auto sigma = sample_covariance(simulate(random_sem(dag, 100 + trial), n, 100 + trial));
        const auto e_super = complete_superstructure(m);
        SolverConfig config;
        config.lambda_sq = testing::uniform(rng, 0.5, 4.0) * std::log(static_cast<double>(m)) / n;
        auto r = cd_solve(sigma, e_super, config);
        REQUIRE(r.converged);

        // SolveResult consistency
        CHECK(r.support == r.gamma_hat.support());
        const auto graph = DirectedGraph::from_edges(m, r.support);
        CHECK(graph.is_dag());
        CHECK(r.objective() == objective_f(r.gamma_hat, sigma, config.lambda_sq));

        // monotone trace
        for (std::size_t k = 1; k < r.objective_trace.size(); ++k)
            CHECK(r.objective_trace[k] <= r.objective_trace[k - 1] + 1e-12);

        // stationarity on the support and along the diagonal
        const Eigen::MatrixXd &g = r.gamma_hat.matrix();
        const Eigen::MatrixXd sg = sigma.matrix() * g;
        for (const auto &e : r.support) {
            const double a = compute_a(r.gamma_hat, sigma, e.from, e.to);
            CHECK(std::abs(a + 2.0 * g(e.from, e.to) * sigma(e.from, e.from)) <= 1e-8 * std::max(1.0, std::abs(a)));
        }
        const Eigen::MatrixXd ggs = g * g.transpose() * sigma.matrix();
        for (int u = 0; u < m; ++u) {
            CHECK(std::abs(g(u, u) * sg(u, u) - 1.0) <= 1e-8);
            CHECK(std::abs(ggs(u, u) - 1.0) <= 1e-8);
        }

        // excluded, unblocked candidates fail the entry test
        for (int u = 0; u < m; ++u) {
            for (int v : e_super.neighbors(u)) {
                if (g(u, v) != 0.0 || graph.would_create_cycle(u, v)) continue;
                const double a = compute_a(r.gamma_hat, sigma, u, v);
                CHECK(config.lambda_sq > a * a / (4.0 * sigma(u, u)) - 1e-10);
            }
        }

        // support stabilization: one more loop changes no support entry
        GammaMatrix extra = r.gamma_hat;
        DirectedGraph extra_graph = graph;
        full_loop(extra, extra_graph, sigma, e_super, config.lambda_sq);
        CHECK(extra.support() == r.support);
    }
}
