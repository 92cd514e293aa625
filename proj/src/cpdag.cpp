#include "l0dag/cpdag.hpp"

#include <algorithm>
#include <stdexcept>

namespace l0dag {

Cpdag::Cpdag(Matrix adjacency) : adj_(std::move(adjacency)) {
    if (adj_.rows() != adj_.cols() || adj_.rows() == 0) throw std::invalid_argument("Cpdag: adjacency must be square");
    const int m = num_nodes();
    DirectedGraph directed(m);
    for (int i = 0; i < m; ++i) {
        if (adj_(i, i) != 0) throw std::invalid_argument("Cpdag: self-loop at node " + std::to_string(i));
        for (int j = 0; j < m; ++j) {
            if (adj_(i, j) != 0 && adj_(i, j) != 1) throw std::invalid_argument("Cpdag: entries must be 0 or 1");
            if (i != j && is_directed(i, j)) directed.add_edge(i, j);
        }
    }
    if (!directed.is_dag()) throw std::invalid_argument("Cpdag: directed part has a cycle");
}

SkeletonAndVStructures skeleton_and_vstructures(const DirectedGraph &g) {
    if (!g.is_dag()) throw std::invalid_argument("skeleton_and_vstructures: graph has a directed cycle");
    const int m = g.num_nodes();
    SkeletonAndVStructures out;
    std::vector<std::vector<int>> parents(m);
    for (const auto &e : g.edges()) {
        out.skeleton.emplace_back(std::min(e.from, e.to), std::max(e.from, e.to));
        parents[e.to].push_back(e.from);
    }
    std::sort(out.skeleton.begin(), out.skeleton.end());
    for (int k = 0; k < m; ++k) {
        auto &pa = parents[k];
        std::sort(pa.begin(), pa.end());
        for (std::size_t a = 0; a < pa.size(); ++a) {
            for (std::size_t b = a + 1; b < pa.size(); ++b) {
                const int i = pa[a], j = pa[b];
                if (!g.has_edge(i, j) && !g.has_edge(j, i)) out.v_structures.push_back({i, j, k});
            }
        }
    }
    std::sort(out.v_structures.begin(), out.v_structures.end());
    return out;
}

namespace {

// Working mixed graph for the Meek closure.
struct MixedGraph {
    explicit MixedGraph(int m) : adj(Cpdag::Matrix::Zero(m, m)) {}

    int size() const { return static_cast<int>(adj.rows()); }
    bool directed(int i, int j) const { return adj(i, j) == 1 && adj(j, i) == 0; }
    bool undirected(int i, int j) const { return adj(i, j) == 1 && adj(j, i) == 1; }
    bool adjacent(int i, int j) const { return adj(i, j) == 1 || adj(j, i) == 1; }
    void orient(int i, int j) {
        adj(i, j) = 1;
        adj(j, i) = 0;
    }

    Cpdag::Matrix adj;
};

// R1: a -> b - c, a and c non-adjacent  =>  b -> c
bool meek_r1(const MixedGraph &g, int b, int c) {
    for (int a = 0; a < g.size(); ++a) {
        if (a != c && g.directed(a, b) && !g.adjacent(a, c)) return true;
    }
    return false;
}

// R2: a -> k -> b with a - b  =>  a -> b
bool meek_r2(const MixedGraph &g, int a, int b) {
    for (int k = 0; k < g.size(); ++k) {
        if (g.directed(a, k) && g.directed(k, b)) return true;
    }
    return false;
}

// R3: a - c -> b, a - d -> b, c and d non-adjacent, a - b  =>  a -> b
bool meek_r3(const MixedGraph &g, int a, int b) {
    const int m = g.size();
    for (int c = 0; c < m; ++c) {
        if (!(g.undirected(a, c) && g.directed(c, b))) continue;
        for (int d = c + 1; d < m; ++d) {
            if (g.undirected(a, d) && g.directed(d, b) && !g.adjacent(c, d)) return true;
        }
    }
    return false;
}

// R4: a - c -> d -> b, a adjacent to d, c and b non-adjacent, a - b  =>  a -> b
bool meek_r4(const MixedGraph &g, int a, int b) {
    const int m = g.size();
    for (int d = 0; d < m; ++d) {
        if (d == a || !g.directed(d, b) || !g.adjacent(a, d)) continue;
        for (int c = 0; c < m; ++c) {
            if (c == a || c == b || c == d) continue;
            if (g.undirected(a, c) && g.directed(c, d) && !g.adjacent(c, b)) return true;
        }
    }
    return false;
}

} // namespace

Cpdag dag_to_cpdag(const DirectedGraph &g) {
    const auto pattern = skeleton_and_vstructures(g);
    const int m = g.num_nodes();
    MixedGraph work(m);
    for (const auto &[u, v] : pattern.skeleton) {
        work.adj(u, v) = 1;
        work.adj(v, u) = 1;
    }
    for (const auto &[i, j, k] : pattern.v_structures) {
        work.orient(i, k);
        work.orient(j, k);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                if (a == b || !work.undirected(a, b)) continue;
                if (meek_r1(work, a, b) || meek_r2(work, a, b) || meek_r3(work, a, b) || meek_r4(work, a, b)) {
                    work.orient(a, b);
                    changed = true;
                }
            }
        }
    }
    return Cpdag(std::move(work.adj));
}

int d_cpdag(const Cpdag &a, const Cpdag &b) {
    if (a.num_nodes() != b.num_nodes()) throw std::invalid_argument("d_cpdag: CPDAG dimensions differ");
    int count = 0;
    for (int i = 0; i < a.num_nodes(); ++i)
        for (int j = 0; j < a.num_nodes(); ++j)
            if (i != j && a.adjacency()(i, j) != b.adjacency()(i, j)) ++count;
    return count;
}

} // namespace l0dag
