#include "crn/graph_model.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace crn {

namespace {

bool within_conflict_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy <= kConflictDistance * kConflictDistance;
}

bool sorted_contains(std::span<const std::uint32_t> xs, std::uint32_t x) {
    return std::binary_search(xs.begin(), xs.end(), x);
}

}  // namespace

ConflictGraph ConflictGraph::from_positions(std::vector<Point> positions, std::size_t num_channels) {
    if (positions.empty()) throw std::invalid_argument("conflict graph needs at least one node");
    if (num_channels == 0) throw std::invalid_argument("conflict graph needs at least one channel");

    ConflictGraph g;
    g.positions_ = std::move(positions);
    g.num_channels_ = num_channels;
    const std::size_t n = g.positions_.size();
    g.adjacency_.assign(n, {});
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (within_conflict_distance(g.positions_[u], g.positions_[v])) {
                g.adjacency_[u].push_back(v);
                g.adjacency_[v].push_back(u);
            }
        }
    }
    // Both pushes happen in ascending order of the partner, so lists are sorted.
    return g;
}

std::size_t ConflictGraph::num_edges() const {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency_) twice += nbrs.size();
    return twice / 2;
}

bool ConflictGraph::adjacent(NodeId a, NodeId b) const {
    return sorted_contains(adjacency_[a], b);
}

double ConflictGraph::average_degree() const {
    if (positions_.empty()) return 0.0;
    return 2.0 * static_cast<double>(num_edges()) / static_cast<double>(positions_.size());
}

bool ConflictGraph::connected() const {
    const std::size_t n = positions_.size();
    if (n <= 1) return true;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : adjacency_[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

std::vector<std::pair<NodeId, NodeId>> ConflictGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < adjacency_.size(); ++u) {
        for (NodeId v : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

bool ExtendedGraph::adjacent(VertexId a, VertexId b) const {
    if (a == b) return false;
    const Arm x = arm(a);
    const Arm y = arm(b);
    if (x.node == y.node) return true;
    return x.channel == y.channel && base_.adjacent(x.node, y.node);
}

std::size_t ExtendedGraph::num_edges() const {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency_) twice += nbrs.size();
    return twice / 2;
}

ExtendedGraph build_extended_graph(const ConflictGraph& g) {
    const std::size_t n = g.num_nodes();
    const std::size_t m = g.num_channels();
    if (n == 0) throw std::invalid_argument("extended graph needs at least one node");
    if (m == 0) throw std::invalid_argument("extended graph needs at least one channel");

    ExtendedGraph h;
    h.base_ = g;
    h.num_nodes_ = n;
    h.num_channels_ = m;
    h.adjacency_.assign(n * m, {});
    for (NodeId i = 0; i < n; ++i) {
        for (ChannelId j = 0; j < m; ++j) {
            auto& nbrs = h.adjacency_[i * m + j];
            // Merge of same-channel copies of G-neighbors and the node's own clique,
            // emitted in ascending vertex id.
            auto gi = g.neighbors(i);
            auto it = gi.begin();
            for (; it != gi.end() && *it < i; ++it) nbrs.push_back(static_cast<VertexId>(*it * m + j));
            for (ChannelId q = 0; q < m; ++q) {
                if (q != j) nbrs.push_back(static_cast<VertexId>(i * m + q));
            }
            for (; it != gi.end(); ++it) nbrs.push_back(static_cast<VertexId>(*it * m + j));
        }
    }
    return h;
}

Neighborhood r_hop_neighborhood(const ExtendedGraph& h, VertexId center, std::size_t radius) {
    if (center >= h.num_vertices()) throw std::out_of_range("vertex id out of range");
    Neighborhood out{center, radius, {}};
    BfsWorkspace bfs(h.num_vertices());
    bfs.for_each_within(h, center, radius, [&](VertexId u, std::uint32_t) { out.members.push_back(u); });
    std::sort(out.members.begin(), out.members.end());
    return out;
}

std::vector<VertexId> residual_ball(const ExtendedGraph& h, VertexId center, std::size_t radius,
                                    std::span<const std::uint8_t> alive) {
    std::vector<VertexId> members{center};
    std::vector<std::uint32_t> dist(h.num_vertices(), std::numeric_limits<std::uint32_t>::max());
    dist[center] = 0;
    for (std::size_t head = 0; head < members.size(); ++head) {
        const VertexId u = members[head];
        if (dist[u] == radius) continue;
        for (VertexId w : h.neighbors(u)) {
            if (!alive[w] || dist[w] != std::numeric_limits<std::uint32_t>::max()) continue;
            dist[w] = dist[u] + 1;
            members.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

BallIndex::BallIndex(const ExtendedGraph& h, std::size_t radius) : radius_(radius) {
    const std::size_t n = h.num_vertices();
    offsets_.reserve(n + 1);
    offsets_.push_back(0);
    BfsWorkspace bfs(n);
    for (VertexId v = 0; v < n; ++v) {
        const std::size_t begin = entries_.size();
        bfs.for_each_within(h, v, radius,
                            [&](VertexId u, std::uint32_t d) { entries_.push_back({u, d}); });
        std::sort(entries_.begin() + static_cast<std::ptrdiff_t>(begin), entries_.end(),
                  [](const Entry& a, const Entry& b) {
                      return a.distance != b.distance ? a.distance < b.distance : a.vertex < b.vertex;
                  });
        offsets_.push_back(entries_.size());
    }
}

BfsWorkspace::BfsWorkspace(std::size_t num_vertices)
    : stamp_(num_vertices, 0), dist_(num_vertices, 0) {
    queue_.reserve(num_vertices);
}

bool independence_check(const ExtendedGraph& h, std::span<const VertexId> members) {
    for (std::size_t a = 0; a < members.size(); ++a) {
        if (members[a] >= h.num_vertices()) throw std::out_of_range("vertex id out of range");
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            if (members[a] == members[b] || h.adjacent(members[a], members[b])) return false;
        }
    }
    return true;
}

double square_side(std::size_t n, double avg_degree) {
    return std::sqrt(4.0 * std::numbers::pi * static_cast<double>(n) / avg_degree);
}

ConflictGraph generate_random_network(const NetworkSpec& spec, std::uint64_t seed) {
    if (spec.num_nodes == 0) throw std::invalid_argument("network needs at least one node");
    if (spec.num_channels == 0) throw std::invalid_argument("network needs at least one channel");
    if (!(spec.target_avg_degree > 0.0)) throw std::invalid_argument("target average degree must be positive");

    const double side = square_side(spec.num_nodes, spec.target_avg_degree);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, side);
    for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
        std::vector<Point> positions(spec.num_nodes);
        for (auto& p : positions) {
            p.x = coord(rng);
            p.y = coord(rng);
        }
        auto g = ConflictGraph::from_positions(std::move(positions), spec.num_channels);
        if (!spec.require_connected || g.connected()) return g;
    }
    throw std::runtime_error("no connected network after " + std::to_string(kConnectivityRetries) +
                             " attempts; increase the target average degree");
}

void write_graph(std::ostream& out, const ConflictGraph& g) {
    out << g.num_nodes() << ' ' << g.num_channels() << '\n';
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        out << "pos " << i << ' ' << g.positions()[i].x << ' ' << g.positions()[i].y << '\n';
    }
    out.precision(old_precision);
    for (auto [u, v] : g.edges()) out << "edge " << u << ' ' << v << '\n';
}

ConflictGraph read_graph(std::istream& in) {
    std::size_t n = 0;
    std::size_t m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("graph file: missing 'N M' header");
    std::vector<Point> positions(n);
    std::vector<std::uint8_t> have(n, 0);
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::string tag;
    while (in >> tag) {
        if (tag == "pos") {
            std::size_t i = 0;
            Point p;
            if (!(in >> i >> p.x >> p.y) || i >= n) throw std::runtime_error("graph file: bad pos line");
            positions[i] = p;
            have[i] = 1;
        } else if (tag == "edge") {
            NodeId u = 0;
            NodeId v = 0;
            if (!(in >> u >> v) || u >= n || v >= n || u == v)
                throw std::runtime_error("graph file: bad edge line");
            edges.emplace_back(std::min(u, v), std::max(u, v));
        } else {
            throw std::runtime_error("graph file: unknown record '" + tag + "'");
        }
    }
    if (std::find(have.begin(), have.end(), 0) != have.end())
        throw std::runtime_error("graph file: missing node positions");
    auto g = ConflictGraph::from_positions(std::move(positions), m);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges != g.edges())
        throw std::runtime_error("graph file: edge list disagrees with the unit-disk rule");
    return g;
}

}  // namespace crn
