#pragma once

#include "l0dag/cpdag.hpp"
#include "l0dag/graph.hpp"
#include "l0dag/numerics.hpp"
#include "l0dag/sem_sim.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace l0dag::io {

/// Malformed or unreadable input file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Header `x0,...,x{m-1}`, one sample per row.
void write_dataset_csv(const std::filesystem::path &path, const Dataset &data);
Dataset read_dataset_csv(const std::filesystem::path &path);

/// Headerless numeric matrix, full round-trip precision.
void write_matrix_csv(const std::filesystem::path &path, const Eigen::MatrixXd &matrix);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path &path);

/// 0/1 adjacency matrix.
void write_cpdag_csv(const std::filesystem::path &path, const Cpdag &cpdag);
Cpdag read_cpdag_csv(const std::filesystem::path &path);

/// One `u v` pair per line, 0-indexed; `#` starts a comment.
void write_edge_list(const std::filesystem::path &path, const EdgeList &edges, int num_nodes);
EdgeList read_edge_list(const std::filesystem::path &path, int num_nodes);
DirectedGraph read_dag(const std::filesystem::path &path, int num_nodes);
/// Same format with unordered semantics.
SuperStructure read_superstructure(const std::filesystem::path &path, int num_nodes);
void write_superstructure(const std::filesystem::path &path, const SuperStructure &s);

nlohmann::json sem_to_json(const SemParams &params);
SemParams sem_from_json(const nlohmann::json &doc);

void write_json(const std::filesystem::path &path, const nlohmann::json &doc);
nlohmann::json read_json(const std::filesystem::path &path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

} // namespace l0dag::io
