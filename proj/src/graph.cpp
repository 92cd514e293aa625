#include "l0dag/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace l0dag {

DirectedGraph::DirectedGraph(int num_nodes) {
    if (num_nodes <= 0) throw std::invalid_argument("DirectedGraph: num_nodes must be positive");
    out_.resize(num_nodes);
    seen_.resize(num_nodes);
}

DirectedGraph DirectedGraph::from_edges(int num_nodes, const EdgeList &edges) {
    DirectedGraph g(num_nodes);
    for (const auto &e : edges) g.add_edge(e.from, e.to);
    return g;
}

void DirectedGraph::check_node(int u) const {
    if (u < 0 || u >= num_nodes()) {
        throw std::out_of_range("node index " + std::to_string(u) + " out of range [0, " +
                                std::to_string(num_nodes()) + ")");
    }
}

bool DirectedGraph::has_edge(int u, int v) const {
    check_node(u);
    check_node(v);
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::size_t DirectedGraph::num_edges() const {
    std::size_t total = 0;
    for (const auto &adj : out_) total += adj.size();
    return total;
}

EdgeList DirectedGraph::edges() const {
    EdgeList result;
    for (int u = 0; u < num_nodes(); ++u)
        for (int v : out_[u]) result.push_back({u, v});
    return result;
}

void DirectedGraph::add_edge(int u, int v) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("self-loop " + std::to_string(u) + " -> " + std::to_string(u));
    auto &adj = out_[u];
    auto it = std::lower_bound(adj.begin(), adj.end(), v);
    if (it == adj.end() || *it != v) adj.insert(it, v);
}

void DirectedGraph::remove_edge(int u, int v) {
    if (u < 0 || u >= num_nodes()) return;
    auto &adj = out_[u];
    auto it = std::lower_bound(adj.begin(), adj.end(), v);
    if (it != adj.end() && *it == v) adj.erase(it);
}

void DirectedGraph::clear() {
    for (auto &adj : out_) adj.clear();
}

bool DirectedGraph::would_create_cycle(int u, int v) const {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("would_create_cycle: u == v");

    std::fill(seen_.begin(), seen_.end(), 0);
    queue_.clear();
    queue_.push_back(v);
    seen_[v] = 1;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
        const int x = queue_[head];
        for (int y : out_[x]) {
            if (y == u) return true;
            if (!seen_[y]) {
                seen_[y] = 1;
                queue_.push_back(y);
            }
        }
    }
    return false;
}

std::vector<int> DirectedGraph::topological_order() const {
    const int m = num_nodes();
    std::vector<int> indegree(m, 0);
    for (const auto &adj : out_)
        for (int v : adj) ++indegree[v];
    std::vector<int> order;
    order.reserve(m);
    for (int i = 0; i < m; ++i)
        if (indegree[i] == 0) order.push_back(i);
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (int v : out_[order[head]]) {
            if (--indegree[v] == 0) order.push_back(v);
        }
    }
    if (static_cast<int>(order.size()) != m) order.clear();
    return order;
}

bool DirectedGraph::is_dag() const { return static_cast<int>(topological_order().size()) == num_nodes(); }

SuperStructure::SuperStructure(int num_nodes) {
    if (num_nodes <= 0) throw std::invalid_argument("SuperStructure: num_nodes must be positive");
    neighbors_.resize(num_nodes);
}

SuperStructure SuperStructure::complete(int num_nodes) {
    SuperStructure s(num_nodes);
    for (int u = 0; u < num_nodes; ++u)
        for (int v = 0; v < num_nodes; ++v)
            if (u != v) s.neighbors_[u].push_back(v);
    return s;
}

SuperStructure SuperStructure::from_pairs(int num_nodes, const std::vector<std::pair<int, int>> &pairs) {
    SuperStructure s(num_nodes);
    for (const auto &[u, v] : pairs) s.add(u, v);
    return s;
}

bool SuperStructure::contains(int u, int v) const {
    const auto &adj = neighbors_.at(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::size_t SuperStructure::num_pairs() const {
    std::size_t total = 0;
    for (const auto &adj : neighbors_) total += adj.size();
    return total / 2;
}

std::vector<std::pair<int, int>> SuperStructure::pairs() const {
    std::vector<std::pair<int, int>> result;
    for (int u = 0; u < num_nodes(); ++u)
        for (int v : neighbors_[u])
            if (u < v) result.emplace_back(u, v);
    return result;
}

void SuperStructure::add(int u, int v) {
    const int m = num_nodes();
    if (u < 0 || u >= m || v < 0 || v >= m) throw std::out_of_range("SuperStructure: node index out of range");
    if (u == v) throw std::invalid_argument("SuperStructure: self-pair " + std::to_string(u));
    for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
        auto &adj = neighbors_[a];
        auto it = std::lower_bound(adj.begin(), adj.end(), b);
        if (it == adj.end() || *it != b) adj.insert(it, b);
    }
}

SuperStructure complete_superstructure(int m) { return SuperStructure::complete(m); }

} // namespace l0dag
