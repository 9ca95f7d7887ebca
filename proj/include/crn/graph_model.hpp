#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crn {

using NodeId = std::uint32_t;
using ChannelId = std::uint32_t;
using VertexId = std::uint32_t;

// Radius of the unit-disk conflict rule: two nodes conflict iff their
// distance is at most this value.
inline constexpr double kConflictDistance = 2.0;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// One (node, channel) pair. Arms are numbered node-major: k = node * M + channel.
struct Arm {
    NodeId node = 0;
    ChannelId channel = 0;

    friend bool operator==(const Arm&, const Arm&) = default;
};

/// The network G = (V, E, C): node positions, unit-disk conflicts and the
/// number of channels every node may choose from.
class ConflictGraph {
public:
    ConflictGraph() = default;

    /// Builds the unit-disk graph over `positions`. Throws on num_channels == 0
    /// or an empty position list.
    static ConflictGraph from_positions(std::vector<Point> positions, std::size_t num_channels);

    std::size_t num_nodes() const { return positions_.size(); }
    std::size_t num_channels() const { return num_channels_; }
    std::size_t num_edges() const;

    const std::vector<Point>& positions() const { return positions_; }
    std::span<const NodeId> neighbors(NodeId i) const { return adjacency_[i]; }
    bool adjacent(NodeId a, NodeId b) const;

    double average_degree() const;
    bool connected() const;

    /// Edges (u < v) in ascending order.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

private:
    std::vector<Point> positions_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t num_channels_ = 0;
};

/// The extended conflict graph H: one vertex per (node, channel), a clique per
/// node, and a copy of G's edges inside every channel layer.
class ExtendedGraph {
public:
    ExtendedGraph() = default;

    std::size_t num_nodes() const { return num_nodes_; }
    std::size_t num_channels() const { return num_channels_; }
    std::size_t num_vertices() const { return adjacency_.size(); }

    VertexId vertex(NodeId node, ChannelId channel) const {
        return static_cast<VertexId>(node * num_channels_ + channel);
    }
    Arm arm(VertexId v) const {
        return {static_cast<NodeId>(v / num_channels_), static_cast<ChannelId>(v % num_channels_)};
    }
    NodeId master(VertexId v) const { return static_cast<NodeId>(v / num_channels_); }

    std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
    bool adjacent(VertexId a, VertexId b) const;
    std::size_t num_edges() const;

    const ConflictGraph& base() const { return base_; }

private:
    friend ExtendedGraph build_extended_graph(const ConflictGraph& g);

    ConflictGraph base_;
    std::size_t num_nodes_ = 0;
    std::size_t num_channels_ = 0;
    std::vector<std::vector<VertexId>> adjacency_;
};

ExtendedGraph build_extended_graph(const ConflictGraph& g);

/// Exact BFS ball J_{H,r}(center).
struct Neighborhood {
    VertexId center = 0;
    std::size_t radius = 0;
    std::vector<VertexId> members;  // ascending
};

Neighborhood r_hop_neighborhood(const ExtendedGraph& h, VertexId center, std::size_t radius);

/// BFS ball restricted to vertices with alive[v] != 0. The center must be alive.
std::vector<VertexId> residual_ball(const ExtendedGraph& h, VertexId center, std::size_t radius,
                                    std::span<const std::uint8_t> alive);

/// Precomputed balls of a fixed radius around every vertex, with hop distances.
/// Members of each ball are ordered by (distance, id).
class BallIndex {
public:
    struct Entry {
        VertexId vertex;
        std::uint32_t distance;
    };

    BallIndex(const ExtendedGraph& h, std::size_t radius);

    std::size_t radius() const { return radius_; }
    std::span<const Entry> ball(VertexId v) const {
        return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
    }

private:
    std::size_t radius_;
    std::vector<std::size_t> offsets_;
    std::vector<Entry> entries_;
};

/// Reusable BFS scratch space (epoch-stamped, so repeated searches do not clear arrays).
class BfsWorkspace {
public:
    explicit BfsWorkspace(std::size_t num_vertices);

    /// Calls visit(vertex, distance) for every vertex within `radius` hops of `center`.
    template <class Visit>
    void for_each_within(const ExtendedGraph& h, VertexId center, std::size_t radius, Visit&& visit);

private:
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> dist_;
    std::vector<VertexId> queue_;
    std::uint32_t epoch_ = 0;
};

template <class Visit>
void BfsWorkspace::for_each_within(const ExtendedGraph& h, VertexId center, std::size_t radius,
                                   Visit&& visit) {
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    queue_.clear();
    queue_.push_back(center);
    stamp_[center] = epoch_;
    dist_[center] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
        const VertexId u = queue_[head];
        visit(u, dist_[u]);
        if (dist_[u] == radius) continue;
        for (VertexId w : h.neighbors(u)) {
            if (stamp_[w] == epoch_) continue;
            stamp_[w] = epoch_;
            dist_[w] = dist_[u] + 1;
            queue_.push_back(w);
        }
    }
}

bool independence_check(const ExtendedGraph& h, std::span<const VertexId> members);

struct NetworkSpec {
    std::size_t num_nodes = 15;
    std::size_t num_channels = 3;
    double target_avg_degree = 6.0;
    bool require_connected = true;
};

inline constexpr int kConnectivityRetries = 1000;

/// Side of the square that gives an expected unit-disk degree of `avg_degree`
/// for n uniformly placed nodes (boundary effects ignored).
double square_side(std::size_t n, double avg_degree);

/// Uniform placement in the square; resamples up to kConnectivityRetries times
/// when connectivity is required. Deterministic for a fixed seed.
ConflictGraph generate_random_network(const NetworkSpec& spec, std::uint64_t seed);

/// Line-oriented text format: "N M", then "pos i x y" lines, then "edge u v" lines.
void write_graph(std::ostream& out, const ConflictGraph& g);
ConflictGraph read_graph(std::istream& in);

}  // namespace crn
