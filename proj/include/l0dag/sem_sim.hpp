#pragma once

#include "l0dag/graph.hpp"
#include "l0dag/numerics.hpp"

#include <cstdint>

namespace l0dag {

/// n x m matrix of observations, one sample per row.
struct Dataset {
    Eigen::MatrixXd values;

    explicit Dataset(Eigen::MatrixXd values);

    Index n() const { return values.rows(); }
    Index m() const { return values.cols(); }
};

/// `num_edges` pairs drawn uniformly without replacement, oriented along a
/// random node permutation.
DirectedGraph random_dag(int m, int num_edges, std::uint64_t seed);

/// Weights uniform on {-0.8, -0.6, 0.6, 0.8}, noise variances uniform on {0.5, 1, 1.5}.
SemParams random_sem(const DirectedGraph &g, std::uint64_t seed);

/// n i.i.d. draws of X = B^T X + eps, eps ~ N(0, diag(omega)).
Dataset simulate(const SemParams &params, Index n, std::uint64_t seed);

/// Column-centered Gram matrix scaled by 1/n, without validation.
Eigen::MatrixXd sample_covariance_matrix(const Dataset &data);

/// sample_covariance_matrix wrapped as a validated CovMatrix; a constant
/// column raises std::domain_error.
CovMatrix sample_covariance(const Dataset &data);

} // namespace l0dag
