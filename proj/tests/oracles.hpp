#pragma once
// Independent reference implementations used only by the tests. They share no
// code with the library beyond the graph containers.

#include <cstdint>
#include <limits>
#include <vector>

#include "crn/graph_model.hpp"

namespace oracle {

// All-pairs hop distances by Floyd-Warshall over the adjacency test.
inline std::vector<std::vector<std::uint32_t>> hop_distances(const crn::ExtendedGraph& h) {
    const std::size_t n = h.num_vertices();
    const std::uint32_t inf = std::numeric_limits<std::uint32_t>::max() / 4;
    std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, inf));
    for (std::size_t a = 0; a < n; ++a) {
        d[a][a] = 0;
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b && h.adjacent(static_cast<crn::VertexId>(a), static_cast<crn::VertexId>(b))) d[a][b] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (d[a][k] + d[k][b] < d[a][b]) d[a][b] = d[a][k] + d[k][b];
    return d;
}

struct Best {
    double weight = 0.0;
    std::vector<crn::VertexId> members;
};

// Exhaustive maximum weighted independent set over `subset` (at most ~22 vertices).
// Ties resolve to the lexicographically smallest ascending member list among the
// sets without zero-weight members.
inline Best brute_force_mwis(const crn::ExtendedGraph& h, const std::vector<crn::VertexId>& subset,
                             const std::vector<double>& w) {
    const std::size_t n = subset.size();
    Best best;
    bool have = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<crn::VertexId> pick;
        bool ok = true;
        double total = 0.0;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            if (w[subset[i]] <= 0.0) ok = false;
            for (crn::VertexId u : pick) ok = ok && !h.adjacent(u, subset[i]);
            pick.push_back(subset[i]);
            total += w[subset[i]];
        }
        if (!ok) continue;
        std::sort(pick.begin(), pick.end());
        if (!have || total > best.weight + 1e-12 ||
            (total > best.weight - 1e-12 && pick < best.members)) {
            best = {total, pick};
            have = true;
        }
    }
    return best;
}

}  // namespace oracle
