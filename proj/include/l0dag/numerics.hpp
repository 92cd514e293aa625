#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <vector>

namespace l0dag {

using Index = Eigen::Index;

/// Directed edge from -> to. For a Gamma matrix the edge (i, j) corresponds to
/// a nonzero entry Gamma(i, j), i.e. i is a parent of j.
struct Edge {
    int from = 0;
    int to = 0;

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

using EdgeList = std::vector<Edge>;

/// Symmetric sample covariance with strictly positive diagonal.
/// Validated once at construction and immutable afterwards.
class CovMatrix {
public:
    static constexpr double symmetry_tol = 1e-12;

    explicit CovMatrix(Eigen::MatrixXd values);

    Index dim() const { return values_.rows(); }
    double operator()(Index i, Index j) const { return values_(i, j); }
    const Eigen::MatrixXd &matrix() const { return values_; }

private:
    Eigen::MatrixXd values_;
};

/// The solver's decision variable. Diagonal entries must be positive whenever
/// the matrix is evaluated; writes are unchecked so the owning solver can
/// update entries in place.
class GammaMatrix {
public:
    explicit GammaMatrix(Eigen::MatrixXd values);

    static GammaMatrix identity(Index m);

    Index dim() const { return values_.rows(); }
    double operator()(Index i, Index j) const { return values_(i, j); }
    double &operator()(Index i, Index j) { return values_(i, j); }
    const Eigen::MatrixXd &matrix() const { return values_; }

    /// Number of off-diagonal entries that are not exactly zero.
    std::size_t offdiag_nnz() const;
    /// Off-diagonal nonzero pattern in row-major order.
    EdgeList support() const;

private:
    Eigen::MatrixXd values_;
};

/// Linear SEM parameters: X = B^T X + eps with eps ~ N(0, diag(omega)).
struct SemParams {
    Eigen::MatrixXd b;
    Eigen::VectorXd omega;

    SemParams(Eigen::MatrixXd b, Eigen::VectorXd omega);

    Index dim() const { return b.rows(); }
    EdgeList edges() const;
};

/// sum_i -2 log(Gamma_ii) + tr(Gamma Gamma^T Sigma) + lambda_sq * ||offdiag(Gamma)||_0
double objective_f(const GammaMatrix &gamma, const CovMatrix &sigma, double lambda_sq);

/// objective_f with lambda_sq = 0.
double neg_log_likelihood(const GammaMatrix &gamma, const CovMatrix &sigma);

/// A_uv = sum_{j != u} Gamma_jv Sigma_ju + sum_{k != u} Gamma_kv Sigma_uk.
/// The u == v case gives A_uu.
double compute_a(const GammaMatrix &gamma, const CovMatrix &sigma, Index u, Index v);

/// Population covariance (I - B)^{-T} Omega (I - B)^{-1} of a linear SEM.
Eigen::MatrixXd sem_covariance(const SemParams &params);

} // namespace l0dag
