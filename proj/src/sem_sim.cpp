#include "l0dag/sem_sim.hpp"

#include "l0dag/rng.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace l0dag {

namespace {

constexpr std::array<double, 4> kWeights = {-0.8, -0.6, 0.6, 0.8};
constexpr std::array<double, 3> kNoiseVariances = {0.5, 1.0, 1.5};

template <typename T>
void fisher_yates(std::vector<T> &items, Engine &engine, std::size_t count) {
    for (std::size_t i = 0; i < count && i + 1 < items.size(); ++i) {
        boost::random::uniform_int_distribution<std::size_t> pick(i, items.size() - 1);
        std::swap(items[i], items[pick(engine)]);
    }
}

} // namespace

Dataset::Dataset(Eigen::MatrixXd values_) : values(std::move(values_)) {
    if (values.rows() == 0 || values.cols() == 0) throw std::invalid_argument("Dataset: empty matrix");
    if (!values.allFinite()) throw std::invalid_argument("Dataset: non-finite entries");
}

DirectedGraph random_dag(int m, int num_edges, std::uint64_t seed) {
    if (m <= 0) throw std::invalid_argument("random_dag: m must be positive");
    const long max_edges = static_cast<long>(m) * (m - 1) / 2;
    if (num_edges < 0 || num_edges > max_edges) {
        throw std::invalid_argument("random_dag: " + std::to_string(num_edges) + " edges requested but at most " +
                                    std::to_string(max_edges) + " fit in a DAG on " + std::to_string(m) + " nodes");
    }
    Engine engine = make_engine(seed, Stream::dag);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    fisher_yates(order, engine, order.size());

    // positions (i, j) with i < j in the permuted order
    std::vector<std::pair<int, int>> slots;
    slots.reserve(max_edges);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) slots.emplace_back(i, j);
    fisher_yates(slots, engine, static_cast<std::size_t>(num_edges));

    DirectedGraph g(m);
    for (int k = 0; k < num_edges; ++k) g.add_edge(order[slots[k].first], order[slots[k].second]);
    return g;
}

SemParams random_sem(const DirectedGraph &g, std::uint64_t seed) {
    if (!g.is_dag()) throw std::invalid_argument("random_sem: graph has a directed cycle");
    Engine engine = make_engine(seed, Stream::weights);
    boost::random::uniform_int_distribution<int> weight_pick(0, kWeights.size() - 1);
    boost::random::uniform_int_distribution<int> noise_pick(0, kNoiseVariances.size() - 1);

    const int m = g.num_nodes();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
    for (const auto &e : g.edges()) b(e.from, e.to) = kWeights[weight_pick(engine)];
    Eigen::VectorXd omega(m);
    for (int i = 0; i < m; ++i) omega(i) = kNoiseVariances[noise_pick(engine)];
    return SemParams(std::move(b), std::move(omega));
}

Dataset simulate(const SemParams &params, Index n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("simulate: n must be at least 1");
    const int m = static_cast<int>(params.dim());
    const auto order = DirectedGraph::from_edges(m, params.edges()).topological_order();
    if (static_cast<int>(order.size()) != m) throw std::invalid_argument("simulate: support of B is not a DAG");

    std::vector<std::vector<int>> parents(m);
    for (const auto &e : params.edges()) parents[e.to].push_back(e.from);

    Engine engine = make_engine(seed, Stream::noise);
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd noise_sd = params.omega.array().sqrt();

    Eigen::MatrixXd x(n, m);
    for (Index r = 0; r < n; ++r) {
        // noise drawn in column order so row draws do not depend on the topology
        for (int j = 0; j < m; ++j) x(r, j) = noise_sd(j) * normal(engine);
        for (int j : order) {
            double value = x(r, j);
            for (int p : parents[j]) value += params.b(p, j) * x(r, p);
            x(r, j) = value;
        }
    }
    return Dataset(std::move(x));
}

Eigen::MatrixXd sample_covariance_matrix(const Dataset &data) {
    if (data.n() < 2) throw std::invalid_argument("sample_covariance: need at least two samples");
    const Eigen::RowVectorXd mean = data.values.colwise().mean();
    const Eigen::MatrixXd centered = data.values.rowwise() - mean;
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(data.n());
    // mirror the upper triangle so the result is exactly symmetric
    for (Index i = 0; i < cov.rows(); ++i)
        for (Index j = i + 1; j < cov.cols(); ++j) cov(j, i) = cov(i, j);
    return cov;
}

CovMatrix sample_covariance(const Dataset &data) {
    Eigen::MatrixXd cov = sample_covariance_matrix(data);
    for (Index j = 0; j < data.m(); ++j) {
        // centering need not cancel exactly in floating point, so test constancy directly
        if (data.values.col(j).maxCoeff() == data.values.col(j).minCoeff()) cov(j, j) = 0.0;
    }
    return CovMatrix(std::move(cov));
}

} // namespace l0dag
