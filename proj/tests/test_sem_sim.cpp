#include "l0dag/sem_sim.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace l0dag;

TEST_CASE("random_dag sizes and acyclicity") {
    CHECK(random_dag(3, 0, 1).num_edges() == 0);
    const auto full = random_dag(3, 3, 1);
    CHECK(full.num_edges() == 3);
    CHECK(full.is_dag());
    const auto g = random_dag(10, 21, 7);
    CHECK(g.is_dag());
    CHECK(g.num_edges() == 21);
    CHECK_THROWS_AS(random_dag(10, 46, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_dag(4, -1, 1), std::invalid_argument);
}

TEST_CASE("random_dag is deterministic per seed and varies across seeds") {
    CHECK(random_dag(8, 10, 3) == random_dag(8, 10, 3));
    std::set<EdgeList> distinct;
    for (std::uint64_t seed = 0; seed < 20; ++seed) distinct.insert(random_dag(8, 10, seed).edges());
    CHECK(distinct.size() > 15);
}

TEST_CASE("random_sem draws weights and variances from the fixed sets") {
    const auto empty = random_sem(DirectedGraph(4), 2);
    CHECK(empty.b.isZero(0.0));
    for (Index i = 0; i < 4; ++i) {
        const double w = empty.omega(i);
        CHECK((w == 0.5 || w == 1.0 || w == 1.5));
    }

    const auto single = random_sem(DirectedGraph::from_edges(2, {{0, 1}}), 3);
    CHECK(single.edges() == EdgeList{{0, 1}});
    const double w = single.b(0, 1);
    CHECK((w == -0.8 || w == -0.6 || w == 0.6 || w == 0.8));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_dag(9, 14, seed);
        CHECK(random_sem(g, seed).edges() == g.edges());
    }
    CHECK_THROWS_AS(random_sem(DirectedGraph::from_edges(2, {{0, 1}, {1, 0}}), 1), std::invalid_argument);
}

TEST_CASE("simulate: independent standard normals") {
    const Index n = 20000;
    const SemParams p(Eigen::MatrixXd::Zero(3, 3), Eigen::Vector3d::Ones());
    const auto s = sample_covariance(simulate(p, n, 9));
    const double tol = 5.0 * std::sqrt(2.0 / static_cast<double>(n));
    CHECK((s.matrix() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= tol);
}

TEST_CASE("simulate: two-node population moments") {
    // Sigma* = (I-B)^{-T} Omega (I-B)^{-1}: Var(X1) = 1 + 0.64, Cov(X0, X1) = 0.8
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2, 2);
    b(0, 1) = 0.8;
    const auto s = sample_covariance(simulate(SemParams(b, Eigen::Vector2d(1.0, 1.0)), 1000000, 4));
    CHECK(std::abs(s(1, 1) - 1.64) <= 0.02);
    CHECK(std::abs(s(0, 1) - 0.8) <= 0.02);
}

TEST_CASE("simulate is bit-identical for equal seeds") {
    const auto g = random_dag(6, 7, 5);
    const auto p = random_sem(g, 5);
    const auto a = simulate(p, 300, 11);
    const auto b = simulate(p, 300, 11);
    CHECK(a.values == b.values);
    CHECK_FALSE(a.values == simulate(p, 300, 12).values);
    CHECK_THROWS_AS(simulate(p, 0, 1), std::invalid_argument);
}

TEST_CASE("sample_covariance edge cases") {
    Eigen::MatrixXd x(2, 2);
    x << 1, 0, -1, 0;
    const Dataset d(x);
    const Eigen::MatrixXd raw = sample_covariance_matrix(d);
    CHECK(raw(0, 0) == 1.0);
    CHECK(raw(1, 1) == 0.0);
    CHECK_THROWS_AS(sample_covariance(d), std::domain_error);

    Eigen::MatrixXd y(2, 2);
    y << 1, 1, -1, -1;
    const auto s = sample_covariance(Dataset(y));
    CHECK(s.matrix() == Eigen::Matrix2d::Ones());

    Eigen::MatrixXd constant(3, 2);
    constant << 0.1, 1, 0.1, 2, 0.1, 4;
    CHECK_THROWS_AS(sample_covariance(Dataset(constant)), std::domain_error);

    CHECK_THROWS_AS(sample_covariance(Dataset(Eigen::MatrixXd::Ones(1, 3))), std::invalid_argument);
}

TEST_CASE("sample_covariance matches a naive double loop") {
    testing::Rng rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = testing::uniform_int(rng, 2, 60);
        const Index m = testing::uniform_int(rng, 1, 6);
        Eigen::MatrixXd x(n, m);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < m; ++j) x(i, j) = testing::uniform(rng, -3.0, 3.0);
        std::vector<double> mean(m, 0.0);
        for (Index j = 0; j < m; ++j) {
            for (Index i = 0; i < n; ++i) mean[j] += x(i, j);
            mean[j] /= static_cast<double>(n);
        }
        const auto s = sample_covariance(Dataset(x));
        for (Index a = 0; a < m; ++a) {
            for (Index b = 0; b < m; ++b) {
                double acc = 0.0;
                for (Index i = 0; i < n; ++i) acc += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
                CHECK(s(a, b) == doctest::Approx(acc / static_cast<double>(n)).epsilon(1e-12));
            }
        }
        CHECK(s.matrix() == s.matrix().transpose());
    }
}

TEST_CASE("simulated covariance converges to the population covariance") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto p = random_sem(random_dag(6, 8, seed), seed);
        const auto s = sample_covariance(simulate(p, 100000, seed));
        CHECK((s.matrix() - sem_covariance(p)).cwiseAbs().maxCoeff() <= 0.05);
    }
}
