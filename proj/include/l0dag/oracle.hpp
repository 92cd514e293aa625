#pragma once

#include "l0dag/graph.hpp"
#include "l0dag/numerics.hpp"

#include <cstdint>

namespace l0dag {

inline constexpr int kOracleMaxNodes = 5;

struct OracleResult {
    double optimal_objective = 0.0;
    EdgeList optimal_support;
    std::int64_t num_dags_enumerated = 0;
};

/// Exact minimizer of the unpenalized likelihood with off-diagonal support
/// restricted to `support`: per node, least squares on its parents.
GammaMatrix mle_given_support(const CovMatrix &sigma, const EdgeList &support);

/// Exhaustive minimum of the penalized objective over every acyclic
/// orientation of superstructure pairs (each pair absent, u -> v or v -> u).
/// Ties prefer fewer edges, then the lexicographically smaller edge list.
OracleResult brute_force_solve(const CovMatrix &sigma, const SuperStructure &e_super, double lambda_sq);

} // namespace l0dag
