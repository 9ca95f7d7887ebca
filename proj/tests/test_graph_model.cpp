#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "crn/graph_model.hpp"
#include "crn/mwis.hpp"
#include "oracles.hpp"

using namespace crn;

namespace {

// Three nodes on a line, 2 apart: 0-1 and 1-2 conflict, 0-2 do not.
ConflictGraph fig1() { return ConflictGraph::from_positions({{0, 0}, {2, 0}, {4, 0}}, 3); }

}  // namespace

TEST_CASE("unit-disk edges use distance <= 2") {
    auto g = fig1();
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
    CHECK_FALSE(g.adjacent(0, 2));
    CHECK_FALSE(g.adjacent(1, 1));
    CHECK(g.num_edges() == 2);
    auto far = ConflictGraph::from_positions({{0, 0}, {2.0000001, 0}}, 1);
    CHECK(far.num_edges() == 0);
}

TEST_CASE("extended graph of the three-node example") {
    auto h = build_extended_graph(fig1());
    REQUIRE(h.num_vertices() == 9);
    // 3 cliques of 3 edges plus 2 G edges copied into 3 channels.
    CHECK(h.num_edges() == 15);
    for (VertexId k = 0; k < 9; ++k) {
        CHECK(h.vertex(h.arm(k).node, h.arm(k).channel) == k);
        CHECK(h.master(k) == k / 3);
    }
    CHECK(independence_check(h, std::vector<VertexId>{h.vertex(0, 0), h.vertex(1, 1), h.vertex(2, 0)}));
    CHECK_FALSE(independence_check(h, std::vector<VertexId>{h.vertex(0, 0), h.vertex(0, 1)}));
    CHECK_FALSE(independence_check(h, std::vector<VertexId>{h.vertex(0, 2), h.vertex(1, 2)}));
    CHECK(independence_check(h, std::vector<VertexId>{}));
}

TEST_CASE("r-hop balls on the three-node example") {
    auto h = build_extended_graph(fig1());
    CHECK(r_hop_neighborhood(h, 0, 0).members == std::vector<VertexId>{0});
    CHECK(r_hop_neighborhood(h, 0, 1).members == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(r_hop_neighborhood(h, 0, 2).members == std::vector<VertexId>{0, 1, 2, 3, 4, 5, 6});
    CHECK(r_hop_neighborhood(h, 0, 3).members.size() == 9);
    CHECK(r_hop_neighborhood(h, 4, 1).members == std::vector<VertexId>{1, 3, 4, 5, 7});
}

TEST_CASE("extended graph mirrors G on random instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto g = generate_random_network({12, 4, 5.0, false}, seed);
        auto h = build_extended_graph(g);
        REQUIRE(h.num_vertices() == 48);
        for (VertexId a = 0; a < h.num_vertices(); ++a) {
            for (VertexId b = 0; b < h.num_vertices(); ++b) {
                const auto [i, j] = h.arm(a);
                const auto [p, q] = h.arm(b);
                bool expect = a != b && ((i == p) || (j == q && g.adjacent(i, p)));
                CHECK(h.adjacent(a, b) == expect);
            }
        }
    }
}

TEST_CASE("balls and residual balls match all-pairs distances") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto h = build_extended_graph(generate_random_network({10, 3, 4.0, false}, seed));
        const auto d = oracle::hop_distances(h);
        for (std::size_t radius : {0u, 1u, 2u, 5u}) {
            BallIndex index(h, radius);
            for (VertexId v = 0; v < h.num_vertices(); ++v) {
                std::vector<VertexId> expect;
                for (VertexId u = 0; u < h.num_vertices(); ++u)
                    if (d[v][u] <= radius) expect.push_back(u);
                CHECK(r_hop_neighborhood(h, v, radius).members == expect);
                std::vector<VertexId> got;
                std::uint32_t last = 0;
                for (auto e : index.ball(v)) {
                    CHECK(e.distance == d[v][e.vertex]);
                    CHECK(e.distance >= last);
                    last = e.distance;
                    got.push_back(e.vertex);
                }
                std::sort(got.begin(), got.end());
                CHECK(got == expect);
                if (radius < 5) {
                    auto wider = r_hop_neighborhood(h, v, radius + 1).members;
                    CHECK(std::includes(wider.begin(), wider.end(), expect.begin(), expect.end()));
                }
            }
        }
        // Residual ball: distances inside the alive subgraph.
        std::vector<std::uint8_t> alive(h.num_vertices(), 1);
        for (VertexId v = 0; v < h.num_vertices(); v += 3) alive[v] = 0;
        auto ball = residual_ball(h, 1, 2, alive);
        for (VertexId u : ball) CHECK(alive[u]);
        CHECK(std::find(ball.begin(), ball.end(), VertexId{1}) != ball.end());
    }
}

TEST_CASE("random networks are deterministic and honor connectivity") {
    NetworkSpec spec{15, 3, 6.0, true};
    auto a = generate_random_network(spec, 42);
    auto b = generate_random_network(spec, 42);
    CHECK(a.edges() == b.edges());
    CHECK(a.connected());
    auto single = generate_random_network({1, 1, 6.0, true}, 3);
    CHECK(single.num_nodes() == 1);
    CHECK(single.num_edges() == 0);
    CHECK(single.connected());
    CHECK_THROWS(generate_random_network({0, 1, 6.0, false}, 1));
    CHECK_THROWS(generate_random_network({5, 1, 0.0, false}, 1));
}

TEST_CASE("mean degree tracks the target (n = 100, d = 8, 100 seeds)") {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        sum += generate_random_network({100, 1, 8.0, false}, seed).average_degree();
    }
    const double mean = sum / 100.0;
    CHECK(mean >= 8.0 * 0.85);
    CHECK(mean <= 8.0 * 1.15);
    CHECK(square_side(100, 8.0) == doctest::Approx(std::sqrt(4.0 * M_PI * 100.0 / 8.0)));
}

TEST_CASE("growth bound: independent vertices in an r-ball <= M (2r+1)^2") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto h = build_extended_graph(generate_random_network({15, 3, 6.0, false}, seed));
        std::vector<double> unit(h.num_vertices(), 1.0);
        for (std::size_t r : {1u, 2u}) {
            for (VertexId v = 0; v < h.num_vertices(); v += 4) {
                auto ball = r_hop_neighborhood(h, v, r).members;
                auto mis = exact_mwis(h, ball, unit);
                CHECK(mis.members.size() <= 3 * (2 * r + 1) * (2 * r + 1));
            }
        }
    }
}

TEST_CASE("graph text format") {
    std::ostringstream out;
    write_graph(out, fig1());
    CHECK(out.str() == "3 3\npos 0 0 0\npos 1 2 0\npos 2 4 0\nedge 0 1\nedge 1 2\n");
    std::istringstream in(out.str());
    auto back = read_graph(in);
    CHECK(back.edges() == fig1().edges());
    CHECK(back.num_channels() == 3);

    auto g = generate_random_network({15, 3, 6.0, true}, 7);
    std::ostringstream o2;
    write_graph(o2, g);
    std::istringstream i2(o2.str());
    auto g2 = read_graph(i2);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        CHECK(g2.positions()[i].x == g.positions()[i].x);
        CHECK(g2.positions()[i].y == g.positions()[i].y);
    }

    std::istringstream bad("3 1\npos 0 0 0\npos 1 2 0\npos 2 4 0\nedge 0 2\n");
    CHECK_THROWS(read_graph(bad));
}
