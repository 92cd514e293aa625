#pragma once

#include "l0dag/numerics.hpp"

#include <utility>
#include <vector>

namespace l0dag {

/// Directed graph with sorted out-adjacency lists. Self-loops and duplicate
/// edges are rejected / collapsed on insertion.
class DirectedGraph {
public:
    explicit DirectedGraph(int num_nodes);

    static DirectedGraph from_edges(int num_nodes, const EdgeList &edges);

    int num_nodes() const { return static_cast<int>(out_.size()); }
    const std::vector<int> &successors(int u) const { return out_.at(u); }
    bool has_edge(int u, int v) const;
    std::size_t num_edges() const;
    /// All edges, sorted lexicographically.
    EdgeList edges() const;

    /// Idempotent.
    void add_edge(int u, int v);
    /// No-op if absent.
    void remove_edge(int u, int v);
    void clear();

    /// True iff adding u -> v would close a directed cycle, i.e. u is reachable
    /// from v. Breadth-first search from v.
    bool would_create_cycle(int u, int v) const;

    bool is_dag() const;
    /// Kahn order; empty if the graph has a cycle.
    std::vector<int> topological_order() const;

    friend bool operator==(const DirectedGraph &a, const DirectedGraph &b) { return a.out_ == b.out_; }

private:
    void check_node(int u) const;

    std::vector<std::vector<int>> out_;
    // scratch for BFS; mutable so queries stay const
    mutable std::vector<int> queue_;
    mutable std::vector<char> seen_;
};

/// Undirected candidate edge set. A pair {u, v} admits both Gamma(u, v) and
/// Gamma(v, u) to the solver.
class SuperStructure {
public:
    explicit SuperStructure(int num_nodes);

    static SuperStructure complete(int num_nodes);
    static SuperStructure from_pairs(int num_nodes, const std::vector<std::pair<int, int>> &pairs);

    int num_nodes() const { return static_cast<int>(neighbors_.size()); }
    /// Ascending neighbor list.
    const std::vector<int> &neighbors(int u) const { return neighbors_.at(u); }
    bool contains(int u, int v) const;
    std::size_t num_pairs() const;
    /// Pairs (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> pairs() const;

    void add(int u, int v);

    friend bool operator==(const SuperStructure &a, const SuperStructure &b) {
        return a.neighbors_ == b.neighbors_;
    }

private:
    std::vector<std::vector<int>> neighbors_;
};

/// Complete graph on m nodes: all m(m-1)/2 pairs.
SuperStructure complete_superstructure(int m);

} // namespace l0dag
