#pragma once

#include "l0dag/graph.hpp"

#include <array>
#include <utility>
#include <vector>

namespace l0dag {

/// Mixed graph as a 0/1 adjacency matrix: i -> j has adj(i,j) = 1, adj(j,i) = 0;
/// an undirected edge i - j sets both entries.
class Cpdag {
public:
    using Matrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

    explicit Cpdag(Matrix adjacency);

    int num_nodes() const { return static_cast<int>(adj_.rows()); }
    const Matrix &adjacency() const { return adj_; }
    bool is_directed(int i, int j) const { return adj_(i, j) == 1 && adj_(j, i) == 0; }
    bool is_undirected(int i, int j) const { return adj_(i, j) == 1 && adj_(j, i) == 1; }
    bool adjacent(int i, int j) const { return adj_(i, j) == 1 || adj_(j, i) == 1; }

    friend bool operator==(const Cpdag &a, const Cpdag &b) { return a.adj_ == b.adj_; }

private:
    Matrix adj_;
};

using VStructure = std::array<int, 3>; // (i, j, k): i -> k <- j, i < j, i and j non-adjacent

struct SkeletonAndVStructures {
    std::vector<std::pair<int, int>> skeleton; // (u, v), u < v, sorted
    std::vector<VStructure> v_structures;      // sorted

    friend bool operator==(const SkeletonAndVStructures &, const SkeletonAndVStructures &) = default;
};

SkeletonAndVStructures skeleton_and_vstructures(const DirectedGraph &g);

/// CPDAG of the Markov equivalence class of g: v-structures oriented, then
/// Meek rules R1-R4 applied to closure.
Cpdag dag_to_cpdag(const DirectedGraph &g);

/// Number of off-diagonal adjacency entries that differ.
int d_cpdag(const Cpdag &a, const Cpdag &b);

} // namespace l0dag
