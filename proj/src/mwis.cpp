#include "crn/mwis.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace crn {

namespace {

// Branch and bound over a compacted vertex set. Vertices are grouped by master
// node (each group is a clique in H); the search picks at most one vertex per
// group, trying vertices in ascending id before the "none" branch, so the first
// optimum found is the lexicographically smallest one. The bound is the sum of
// per-group maxima over still-available vertices.
class BranchAndBound {
public:
    BranchAndBound(const ExtendedGraph& h, std::vector<VertexId> ids, std::span<const double> weights)
        : ids_(std::move(ids)), n_(ids_.size()), words_((n_ + 63) / 64) {
        w_.reserve(n_);
        double total = 0.0;
        for (VertexId v : ids_) {
            w_.push_back(weights[v]);
            total += weights[v];
        }
        tol_ = 1e-12 * std::max(1.0, total);

        adj_.assign(n_ * words_, 0);
        for (std::size_t a = 0; a < n_; ++a) {
            for (VertexId u : h.neighbors(ids_[a])) {
                auto it = std::lower_bound(ids_.begin(), ids_.end(), u);
                if (it != ids_.end() && *it == u) {
                    const auto b = static_cast<std::size_t>(it - ids_.begin());
                    adj_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
                }
            }
        }
        for (std::size_t a = 0; a < n_; ++a) {
            if (a == 0 || h.master(ids_[a]) != h.master(ids_[a - 1])) group_begin_.push_back(a);
        }
        group_begin_.push_back(n_);
        const std::size_t groups = group_begin_.size() - 1;
        group_of_.resize(n_);
        channel_.resize(n_);
        for (std::size_t g = 0; g < groups; ++g) {
            for (std::size_t a = group_begin_[g]; a < group_begin_[g + 1]; ++a) group_of_[a] = g;
        }
        for (std::size_t a = 0; a < n_; ++a) channel_[a] = ids_[a] % h.num_channels();
        group_words_ = (groups + 63) / 64;
        group_adj_.assign(groups * group_words_, 0);
        for (std::size_t a = 0; a < n_; ++a) {
            for (std::size_t b = 0; b < n_; ++b) {
                if (group_of_[a] != group_of_[b] && test(adj_.data() + a * words_, b)) {
                    const std::size_t g = group_of_[a], k = group_of_[b];
                    group_adj_[g * group_words_ + k / 64] |= std::uint64_t{1} << (k % 64);
                }
            }
        }
        top_.assign(groups, 0.0);
        second_.assign(groups, 0.0);
        stack_.assign((group_begin_.size()) * words_, 0);
    }

    MwisResult run() {
        if (n_ == 0) return {};
        auto* root = stack_.data();
        for (std::size_t b = 0; b < n_; ++b) root[b / 64] |= std::uint64_t{1} << (b % 64);
        best_weight_ = 0.0;
        search(0, 0, 0.0);
        MwisResult out;
        out.members.reserve(best_.size());
        for (std::size_t a : best_) out.members.push_back(ids_[a]);
        out.total_weight = 0.0;
        for (std::size_t a : best_) out.total_weight += w_[a];
        return out;
    }

private:
    bool test(const std::uint64_t* set, std::size_t b) const { return (set[b / 64] >> (b % 64)) & 1u; }

    // Sum of per-group maxima. When that does not reach `target` it is returned
    // as is; otherwise it is tightened by channel collisions: groups whose best
    // vertex sits on the same channel and whose nodes form a clique in G can use
    // that channel at most once, the rest fall back to their second best.
    double bound_from(const std::uint64_t* avail, std::size_t first_group, double target) {
        const std::size_t groups = group_begin_.size() - 1;
        bucket_.clear();
        double sum = 0.0;
        for (std::size_t g = first_group; g < groups; ++g) {
            double best = 0.0, second = 0.0;
            std::size_t best_channel = 0;
            for (std::size_t a = group_begin_[g]; a < group_begin_[g + 1]; ++a) {
                if (!test(avail, a)) continue;
                if (w_[a] > best) {
                    second = best;
                    best = w_[a];
                    best_channel = channel_[a];
                } else if (w_[a] > second) {
                    second = w_[a];
                }
            }
            if (best <= 0.0) continue;
            sum += best;
            top_[g] = best;
            second_[g] = second;
            bucket_.push_back({best_channel, g});
        }
        if (sum <= target) return sum;
        sum = 0.0;
        std::sort(bucket_.begin(), bucket_.end());
        for (std::size_t lo = 0; lo < bucket_.size();) {
            std::size_t hi = lo;
            while (hi < bucket_.size() && bucket_[hi].first == bucket_[lo].first) ++hi;
            // Greedy clique partition of this channel's groups.
            cliques_.clear();
            for (std::size_t i = lo; i < hi; ++i) {
                const std::size_t g = bucket_[i].second;
                bool placed = false;
                for (auto& c : cliques_) {
                    bool all = true;
                    for (std::size_t k = c.first; k < c.second && all; ++k) all = group_adj(g, members_[k]);
                    if (all) {
                        members_.insert(members_.begin() + static_cast<std::ptrdiff_t>(c.second), g);
                        for (auto& d : cliques_) {
                            if (d.first >= c.second) ++d.first, ++d.second;
                        }
                        ++c.second;
                        placed = true;
                        break;
                    }
                }
                if (!placed) {
                    cliques_.push_back({members_.size(), members_.size() + 1});
                    members_.push_back(g);
                }
            }
            for (const auto& c : cliques_) {
                double gain = 0.0;
                for (std::size_t k = c.first; k < c.second; ++k) {
                    const std::size_t g = members_[k];
                    sum += second_[g];
                    gain = std::max(gain, top_[g] - second_[g]);
                }
                sum += gain;
            }
            members_.clear();
            lo = hi;
        }
        return sum;
    }

    bool group_adj(std::size_t g, std::size_t h) const {
        return (group_adj_[g * group_words_ + h / 64] >> (h % 64)) & 1u;
    }

    void search(std::size_t group, std::size_t depth, double current) {
        const std::uint64_t* avail = stack_.data() + depth * words_;
        if (current > best_weight_ + tol_) {
            best_weight_ = current;
            best_ = chosen_;
        }
        const std::size_t groups = group_begin_.size() - 1;
        // Skip to the next group that still has an available vertex.
        while (group < groups) {
            bool any = false;
            for (std::size_t a = group_begin_[group]; a < group_begin_[group + 1] && !any; ++a) {
                any = test(avail, a);
            }
            if (any) break;
            ++group;
        }
        if (group == groups) return;
        if (current + bound_from(avail, group, best_weight_ + tol_ - current) <= best_weight_ + tol_) return;

        std::uint64_t* next = stack_.data() + (depth + 1) * words_;
        for (std::size_t a = group_begin_[group]; a < group_begin_[group + 1]; ++a) {
            avail = stack_.data() + depth * words_;
            if (!test(avail, a)) continue;
            const std::uint64_t* row = adj_.data() + a * words_;
            for (std::size_t k = 0; k < words_; ++k) next[k] = avail[k] & ~row[k];
            next[a / 64] &= ~(std::uint64_t{1} << (a % 64));
            chosen_.push_back(a);
            search(group + 1, depth + 1, current + w_[a]);
            chosen_.pop_back();
        }
        avail = stack_.data() + depth * words_;
        std::copy(avail, avail + words_, next);
        search(group + 1, depth + 1, current);
    }

    std::vector<VertexId> ids_;
    std::size_t n_;
    std::size_t words_;
    std::vector<double> w_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::size_t> group_begin_;
    std::vector<std::size_t> group_of_;
    std::vector<std::size_t> channel_;
    std::vector<std::uint64_t> group_adj_;
    std::size_t group_words_ = 0;
    std::vector<double> top_, second_;
    std::vector<std::pair<std::size_t, std::size_t>> bucket_;   // (channel, group)
    std::vector<std::pair<std::size_t, std::size_t>> cliques_;  // ranges into members_
    std::vector<std::size_t> members_;
    std::vector<std::uint64_t> stack_;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> best_;
    double best_weight_ = 0.0;
    double tol_ = 0.0;
};

void check_weights(const ExtendedGraph& h, std::span<const double> weights) {
    if (weights.size() != h.num_vertices())
        throw std::invalid_argument("weight map size differs from the vertex count");
}

MwisResult solve_subset(const ExtendedGraph& h, std::span<const VertexId> subset,
                        std::span<const double> weights, std::size_t size_guard) {
    check_weights(h, weights);
    if (subset.size() > size_guard) {
        throw std::length_error("exact MWIS instance of " + std::to_string(subset.size()) +
                                " vertices exceeds the guard of " + std::to_string(size_guard));
    }
    std::vector<VertexId> ids;
    ids.reserve(subset.size());
    for (VertexId v : subset) {
        if (v >= h.num_vertices()) throw std::out_of_range("vertex id out of range");
        if (weights[v] < 0.0) throw std::invalid_argument("negative vertex weight");
        if (weights[v] > 0.0) ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return BranchAndBound(h, std::move(ids), weights).run();
}

}  // namespace

double total_weight(std::span<const VertexId> members, std::span<const double> weights) {
    double sum = 0.0;
    for (VertexId v : members) sum += weights[v];
    return sum;
}

MwisResult exact_mwis(const ExtendedGraph& h, std::span<const VertexId> subset,
                      std::span<const double> weights, std::size_t size_guard) {
    return solve_subset(h, subset, weights, size_guard);
}

MwisResult local_mwis(const ExtendedGraph& h, std::span<const VertexId> candidates,
                      std::span<const double> weights, std::size_t size_guard) {
    return solve_subset(h, candidates, weights, size_guard);
}

MwisResult robust_ptas(const ExtendedGraph& h, std::span<const double> weights, double epsilon,
                       PtasStats* stats) {
    check_weights(h, weights);
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("negative vertex weight");
    }
    const double rho = 1.0 + epsilon;
    const std::size_t n = h.num_vertices();
    std::vector<std::uint8_t> alive(n, 1);
    MwisResult out;

    for (;;) {
        VertexId heaviest = 0;
        double heaviest_weight = 0.0;
        for (VertexId v = 0; v < n; ++v) {
            if (alive[v] && weights[v] > heaviest_weight) {
                heaviest = v;
                heaviest_weight = weights[v];
            }
        }
        if (heaviest_weight <= 0.0) break;

        std::size_t radius = 0;
        std::vector<VertexId> ball{heaviest};
        MwisResult inner = local_mwis(h, ball, weights);
        for (;;) {
            auto wider_ball = residual_ball(h, heaviest, radius + 1, alive);
            MwisResult wider = local_mwis(h, wider_ball, weights);
            const double tol = 1e-12 * std::max(1.0, wider.total_weight);
            if (wider.total_weight <= rho * inner.total_weight + tol) break;
            ++radius;
            ball = std::move(wider_ball);
            inner = std::move(wider);
        }
        if (stats) stats->stopping_radii.push_back(radius);

        for (VertexId v : inner.members) {
            alive[v] = 0;
            for (VertexId u : h.neighbors(v)) alive[u] = 0;
        }
        out.members.insert(out.members.end(), inner.members.begin(), inner.members.end());
    }
    std::sort(out.members.begin(), out.members.end());
    out.total_weight = total_weight(out.members, weights);
    return out;
}

MwisResult ExactSolver::solve(const ExtendedGraph& h, std::span<const double> weights) {
    std::vector<VertexId> all(h.num_vertices());
    for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
    return exact_mwis(h, all, weights, size_guard_);
}

MwisResult CentralizedPtasSolver::solve(const ExtendedGraph& h, std::span<const double> weights) {
    return robust_ptas(h, weights, epsilon_);
}

}  // namespace crn
