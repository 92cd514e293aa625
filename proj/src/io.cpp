#include "l0dag/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace l0dag::io {

namespace {

std::ifstream open_in(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string() + " for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    return out;
}

std::string strip(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string &line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(strip(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string &text, const std::filesystem::path &path, std::size_t line_no) {
    double value = 0.0;
    const char *begin = text.data();
    const char *end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) + ": not a number: '" + text + "'");
    }
    return value;
}

std::vector<std::vector<double>> read_numeric_rows(std::istream &in, const std::filesystem::path &path,
                                                   std::size_t first_line_no) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = first_line_no;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto &field : split_commas(line)) row.push_back(parse_double(field, path, line_no));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(rows.front().size()) + " columns, found " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>> &rows) {
    if (rows.empty()) return {};
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void write_dataset_csv(const std::filesystem::path &path, const Dataset &data) {
    auto out = open_out(path);
    for (Index j = 0; j < data.m(); ++j) out << (j ? "," : "") << 'x' << j;
    out << '\n';
    for (Index i = 0; i < data.n(); ++i) {
        for (Index j = 0; j < data.m(); ++j) out << (j ? "," : "") << format_double(data.values(i, j));
        out << '\n';
    }
    if (!out) throw FormatError("failed writing " + path.string());
}

Dataset read_dataset_csv(const std::filesystem::path &path) {
    auto in = open_in(path);
    std::string header;
    if (!std::getline(in, header)) throw FormatError(path.string() + ": empty file");
    const auto names = split_commas(strip(header));
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] != "x" + std::to_string(j)) {
            throw FormatError(path.string() + ":1: expected header column 'x" + std::to_string(j) + "', found '" +
                              names[j] + "'");
        }
    }
    const auto rows = read_numeric_rows(in, path, 1);
    if (rows.empty()) throw FormatError(path.string() + ": no data rows");
    if (rows.front().size() != names.size()) throw FormatError(path.string() + ": row width does not match header");
    return Dataset(to_matrix(rows));
}

void write_matrix_csv(const std::filesystem::path &path, const Eigen::MatrixXd &matrix) {
    auto out = open_out(path);
    for (Index i = 0; i < matrix.rows(); ++i) {
        for (Index j = 0; j < matrix.cols(); ++j) out << (j ? "," : "") << format_double(matrix(i, j));
        out << '\n';
    }
    if (!out) throw FormatError("failed writing " + path.string());
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path &path) {
    auto in = open_in(path);
    auto rows = read_numeric_rows(in, path, 0);
    if (rows.empty()) throw FormatError(path.string() + ": empty matrix");
    return to_matrix(rows);
}

void write_cpdag_csv(const std::filesystem::path &path, const Cpdag &cpdag) {
    auto out = open_out(path);
    const auto &adj = cpdag.adjacency();
    for (Index i = 0; i < adj.rows(); ++i) {
        for (Index j = 0; j < adj.cols(); ++j) out << (j ? "," : "") << adj(i, j);
        out << '\n';
    }
}

Cpdag read_cpdag_csv(const std::filesystem::path &path) {
    const Eigen::MatrixXd values = read_matrix_csv(path);
    if (values.rows() != values.cols()) throw FormatError(path.string() + ": CPDAG matrix is not square");
    Cpdag::Matrix adj(values.rows(), values.cols());
    for (Index i = 0; i < values.rows(); ++i) {
        for (Index j = 0; j < values.cols(); ++j) {
            if (values(i, j) != 0.0 && values(i, j) != 1.0) throw FormatError(path.string() + ": entries must be 0/1");
            adj(i, j) = static_cast<int>(values(i, j));
        }
    }
    try {
        return Cpdag(std::move(adj));
    } catch (const std::invalid_argument &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_edge_list(const std::filesystem::path &path, const EdgeList &edges, int num_nodes) {
    auto out = open_out(path);
    out << "# nodes " << num_nodes << '\n';
    for (const auto &e : edges) out << e.from << ' ' << e.to << '\n';
}

EdgeList read_edge_list(const std::filesystem::path &path, int num_nodes) {
    auto in = open_in(path);
    EdgeList edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = strip(line);
        if (line.empty()) continue;
        std::istringstream fields(line);
        long u = 0, v = 0;
        std::string extra;
        if (!(fields >> u >> v) || (fields >> extra)) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected 'u v', found '" + line + "'");
        }
        if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": node index out of range [0, " +
                              std::to_string(num_nodes) + ")");
        }
        if (u == v) throw FormatError(path.string() + ":" + std::to_string(line_no) + ": self-loop");
        edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    }
    return edges;
}

DirectedGraph read_dag(const std::filesystem::path &path, int num_nodes) {
    auto g = DirectedGraph::from_edges(num_nodes, read_edge_list(path, num_nodes));
    if (!g.is_dag()) throw FormatError(path.string() + ": graph has a directed cycle");
    return g;
}

SuperStructure read_superstructure(const std::filesystem::path &path, int num_nodes) {
    SuperStructure s(num_nodes);
    for (const auto &e : read_edge_list(path, num_nodes)) s.add(e.from, e.to);
    return s;
}

void write_superstructure(const std::filesystem::path &path, const SuperStructure &s) {
    EdgeList edges;
    for (const auto &[u, v] : s.pairs()) edges.push_back({u, v});
    write_edge_list(path, edges, s.num_nodes());
}

nlohmann::json sem_to_json(const SemParams &params) {
    const Index m = params.dim();
    nlohmann::json doc;
    doc["m"] = m;
    std::vector<double> b;
    b.reserve(m * m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) b.push_back(params.b(i, j));
    doc["b"] = b;
    doc["omega"] = std::vector<double>(params.omega.data(), params.omega.data() + m);
    auto edges = nlohmann::json::array();
    for (const auto &e : params.edges()) edges.push_back({e.from, e.to});
    doc["edges"] = edges;
    return doc;
}

SemParams sem_from_json(const nlohmann::json &doc) {
    try {
        const auto omega = doc.at("omega").get<std::vector<double>>();
        const auto b = doc.at("b").get<std::vector<double>>();
        const Index m = static_cast<Index>(omega.size());
        if (static_cast<Index>(b.size()) != m * m) throw FormatError("SemParams JSON: b must have m*m entries");
        Eigen::MatrixXd bm(m, m);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < m; ++j) bm(i, j) = b[i * m + j];
        Eigen::VectorXd om = Eigen::Map<const Eigen::VectorXd>(omega.data(), m);
        return SemParams(std::move(bm), std::move(om));
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("SemParams JSON: ") + e.what());
    }
}

void write_json(const std::filesystem::path &path, const nlohmann::json &doc) {
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path &path) {
    auto in = open_in(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

} // namespace l0dag::io
