#include "l0dag/numerics.hpp"

#include "l0dag/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace l0dag {

namespace {

void require_square(const Eigen::MatrixXd &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
    }
}

void check_compatible(const GammaMatrix &gamma, const CovMatrix &sigma) {
    if (gamma.dim() != sigma.dim()) {
        throw std::invalid_argument("gamma and sigma dimensions differ: " + std::to_string(gamma.dim()) +
                                    " vs " + std::to_string(sigma.dim()));
    }
}

} // namespace

CovMatrix::CovMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
    require_square(values_, "CovMatrix");
    const Index m = values_.rows();
    for (Index i = 0; i < m; ++i) {
        if (!(values_(i, i) > 0.0)) {
            throw std::domain_error("CovMatrix: diagonal entry " + std::to_string(i) +
                                    " is not positive (zero-variance column?)");
        }
        for (Index j = i + 1; j < m; ++j) {
            if (!(std::abs(values_(i, j) - values_(j, i)) <= symmetry_tol)) {
                throw std::invalid_argument("CovMatrix: not symmetric at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            }
        }
    }
}

GammaMatrix::GammaMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
    require_square(values_, "GammaMatrix");
}

GammaMatrix GammaMatrix::identity(Index m) {
    if (m <= 0) throw std::invalid_argument("GammaMatrix::identity: dimension must be positive");
    return GammaMatrix(Eigen::MatrixXd::Identity(m, m));
}

std::size_t GammaMatrix::offdiag_nnz() const {
    std::size_t count = 0;
    for (Index i = 0; i < dim(); ++i)
        for (Index j = 0; j < dim(); ++j)
            if (i != j && values_(i, j) != 0.0) ++count;
    return count;
}

EdgeList GammaMatrix::support() const {
    EdgeList edges;
    for (Index i = 0; i < dim(); ++i)
        for (Index j = 0; j < dim(); ++j)
            if (i != j && values_(i, j) != 0.0) edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    return edges;
}

SemParams::SemParams(Eigen::MatrixXd b_, Eigen::VectorXd omega_) : b(std::move(b_)), omega(std::move(omega_)) {
    require_square(b, "SemParams");
    if (omega.size() != b.rows()) throw std::invalid_argument("SemParams: omega length does not match B");
    for (Index i = 0; i < b.rows(); ++i) {
        if (b(i, i) != 0.0) throw std::invalid_argument("SemParams: B must have a zero diagonal");
        if (!(omega(i) > 0.0)) throw std::invalid_argument("SemParams: noise variances must be positive");
    }
    if (!DirectedGraph::from_edges(static_cast<int>(b.rows()), edges()).is_dag()) {
        throw std::invalid_argument("SemParams: support of B is not a DAG");
    }
}

EdgeList SemParams::edges() const {
    EdgeList out;
    for (Index i = 0; i < b.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j)
            if (i != j && b(i, j) != 0.0) out.push_back({static_cast<int>(i), static_cast<int>(j)});
    return out;
}

double neg_log_likelihood(const GammaMatrix &gamma, const CovMatrix &sigma) {
    check_compatible(gamma, sigma);
    const Index m = gamma.dim();
    double log_term = 0.0;
    for (Index i = 0; i < m; ++i) {
        const double d = gamma(i, i);
        if (!(d > 0.0)) {
            throw std::domain_error("gamma diagonal entry " + std::to_string(i) + " is not positive");
        }
        log_term += -2.0 * std::log(d);
    }
    // tr(G G^T S) = sum_v G(:,v)^T S G(:,v)
    const Eigen::MatrixXd &g = gamma.matrix();
    const double trace = (g.transpose() * sigma.matrix() * g).trace();
    return log_term + trace;
}

double objective_f(const GammaMatrix &gamma, const CovMatrix &sigma, double lambda_sq) {
    if (!(lambda_sq >= 0.0)) throw std::invalid_argument("lambda_sq must be nonnegative");
    return neg_log_likelihood(gamma, sigma) + lambda_sq * static_cast<double>(gamma.offdiag_nnz());
}

double compute_a(const GammaMatrix &gamma, const CovMatrix &sigma, Index u, Index v) {
    check_compatible(gamma, sigma);
    const Index m = gamma.dim();
    if (u < 0 || u >= m || v < 0 || v >= m) {
        throw std::out_of_range("compute_a: index out of range");
    }
    double a = 0.0;
    for (Index j = 0; j < m; ++j) {
        if (j == u) continue;
        a += gamma(j, v) * sigma(j, u);
    }
    for (Index k = 0; k < m; ++k) {
        if (k == u) continue;
        a += gamma(k, v) * sigma(u, k);
    }
    return a;
}

Eigen::MatrixXd sem_covariance(const SemParams &params) {
    const Index m = params.dim();
    const Eigen::MatrixXd i_minus_b = Eigen::MatrixXd::Identity(m, m) - params.b;
    const Eigen::MatrixXd inv = i_minus_b.inverse();
    return inv.transpose() * params.omega.asDiagonal() * inv;
}

} // namespace l0dag
