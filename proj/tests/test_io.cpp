#include "l0dag/io.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cstring>
#include <fstream>
#include <limits>

using namespace l0dag;
using l0dag::testing::TempDir;
namespace fs = std::filesystem;

namespace {

void write_text(const fs::path &p, const std::string &text) { std::ofstream(p) << text; }

} // namespace

TEST_CASE("format_double round-trips bit-exactly") {
    testing::Rng rng(1);
    std::uniform_int_distribution<std::uint64_t> bits;
    int checked = 0;
    while (checked < 20000) {
        const std::uint64_t raw = bits(rng);
        double x;
        std::memcpy(&x, &raw, sizeof x);
        if (!std::isfinite(x)) continue;
        const std::string text = io::format_double(x);
        CHECK(std::strtod(text.c_str(), nullptr) == x);
        ++checked;
    }
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(-2.0) == "-2");
    CHECK(io::format_double(std::numeric_limits<double>::denorm_min()) == "5e-324");
}

TEST_CASE("dataset csv round trip") {
    TempDir dir;
    testing::Rng rng(2);
    Eigen::MatrixXd v(7, 3);
    for (Index i = 0; i < 7; ++i)
        for (Index j = 0; j < 3; ++j) v(i, j) = testing::uniform(rng, -1e3, 1e3);
    io::write_dataset_csv(dir / "d.csv", Dataset(v));
    const auto back = io::read_dataset_csv(dir / "d.csv");
    CHECK(back.values == v);

    std::ifstream in(dir / "d.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "x0,x1,x2");
}

TEST_CASE("dataset csv errors") {
    TempDir dir;
    CHECK_THROWS_AS(io::read_dataset_csv(dir / "missing.csv"), io::FormatError);
    write_text(dir / "a.csv", "x0,x1\n1,2\n3\n");
    CHECK_THROWS_AS(io::read_dataset_csv(dir / "a.csv"), io::FormatError);
    write_text(dir / "b.csv", "x0,y\n1,2\n");
    CHECK_THROWS_AS(io::read_dataset_csv(dir / "b.csv"), io::FormatError);
    write_text(dir / "c.csv", "x0,x1\n1,abc\n");
    CHECK_THROWS_AS(io::read_dataset_csv(dir / "c.csv"), io::FormatError);
    write_text(dir / "d.csv", "x0,x1\n");
    CHECK_THROWS_AS(io::read_dataset_csv(dir / "d.csv"), io::FormatError);
    write_text(dir / "e.csv", "x0,x1\n1,2,3\n");
    CHECK_THROWS_AS(io::read_dataset_csv(dir / "e.csv"), io::FormatError);
}

TEST_CASE("matrix and cpdag csv round trip") {
    TempDir dir;
    testing::Rng rng(3);
    const auto g = testing::random_gamma(rng, 5);
    io::write_matrix_csv(dir / "g.csv", g.matrix());
    CHECK(io::read_matrix_csv(dir / "g.csv") == g.matrix());

    const auto c = dag_to_cpdag(DirectedGraph::from_edges(4, {{0, 2}, {1, 2}, {2, 3}}));
    io::write_cpdag_csv(dir / "c.csv", c);
    CHECK(io::read_cpdag_csv(dir / "c.csv").adjacency() == c.adjacency());

    write_text(dir / "bad.csv", "0,2\n0,0\n");
    CHECK_THROWS_AS(io::read_cpdag_csv(dir / "bad.csv"), io::FormatError);
    write_text(dir / "cyc.csv", "0,1,0\n0,0,1\n1,0,0\n");
    CHECK_THROWS_AS(io::read_cpdag_csv(dir / "cyc.csv"), io::FormatError);
}

TEST_CASE("edge lists") {
    TempDir dir;
    const EdgeList edges{{0, 3}, {2, 1}, {1, 3}};
    io::write_edge_list(dir / "e.txt", edges, 4);
    CHECK(io::read_edge_list(dir / "e.txt", 4) == edges);

    write_text(dir / "c.txt", "# a comment\n\n0 1   # trailing\n  2 0\n");
    CHECK(io::read_edge_list(dir / "c.txt", 3) == EdgeList{{0, 1}, {2, 0}});

    write_text(dir / "range.txt", "0 5\n");
    CHECK_THROWS_AS(io::read_edge_list(dir / "range.txt", 5), io::FormatError);
    write_text(dir / "neg.txt", "-1 0\n");
    CHECK_THROWS_AS(io::read_edge_list(dir / "neg.txt", 5), io::FormatError);
    write_text(dir / "self.txt", "2 2\n");
    CHECK_THROWS_AS(io::read_edge_list(dir / "self.txt", 5), io::FormatError);
    write_text(dir / "junk.txt", "0 1 2\n");
    CHECK_THROWS_AS(io::read_edge_list(dir / "junk.txt", 5), io::FormatError);
    write_text(dir / "word.txt", "a b\n");
    CHECK_THROWS_AS(io::read_edge_list(dir / "word.txt", 5), io::FormatError);

    write_text(dir / "cycle.txt", "0 1\n1 2\n2 0\n");
    CHECK_NOTHROW(io::read_edge_list(dir / "cycle.txt", 3));
    CHECK_THROWS_AS(io::read_dag(dir / "cycle.txt", 3), io::FormatError);

    const auto s = io::read_superstructure(dir / "cycle.txt", 3);
    CHECK(s.num_pairs() == 3);
    io::write_superstructure(dir / "s.txt", s);
    CHECK(io::read_superstructure(dir / "s.txt", 3).pairs() == s.pairs());
}

TEST_CASE("sem json round trip") {
    Eigen::Matrix3d b = Eigen::Matrix3d::Zero();
    b(0, 1) = 0.8;
    b(1, 2) = -0.6;
    const SemParams p(b, Eigen::Vector3d(0.5, 1.0, 1.5));
    const auto doc = io::sem_to_json(p);
    CHECK(doc.at("m") == 3);
    CHECK(doc.at("edges").size() == 2);
    const auto back = io::sem_from_json(doc);
    CHECK(back.b == p.b);
    CHECK(back.omega == p.omega);

    TempDir dir;
    io::write_json(dir / "s.json", doc);
    CHECK(io::read_json(dir / "s.json") == doc);
    write_text(dir / "bad.json", "{ not json");
    CHECK_THROWS_AS(io::read_json(dir / "bad.json"), io::FormatError);
    CHECK_THROWS_AS(io::sem_from_json(nlohmann::json{{"omega", {1.0, 1.0}}}), io::FormatError);
    CHECK_THROWS_AS(io::sem_from_json(nlohmann::json{{"omega", {1.0, 1.0}}, {"b", {0.0, 1.0}}}), io::FormatError);
}
