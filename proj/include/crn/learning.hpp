#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "crn/graph_model.hpp"
#include "crn/mwis.hpp"

namespace crn {

/// Index assigned to arms that were never played. It dominates every finite
/// index a played arm can reach, so the MWIS step keeps exploring untried arms.
inline constexpr double kUnplayedIndex = 1.0e4;

/// A feasible channel assignment: an independent set of H, ascending ids.
using Strategy = std::vector<VertexId>;

/// Per-arm empirical means and play counts (two 1 x K vectors) plus the round counter.
class PolicyState {
public:
    explicit PolicyState(std::size_t num_arms);

    std::size_t num_arms() const { return mean_.size(); }
    std::uint64_t round() const { return round_; }
    double empirical_mean(VertexId k) const { return mean_.at(k); }
    std::uint64_t play_count(VertexId k) const { return count_.at(k); }
    const std::vector<double>& empirical_means() const { return mean_; }
    const std::vector<std::uint64_t>& play_counts() const { return count_; }

    /// Folds one observation per played arm into the running means. `played` and
    /// `observations` are parallel; every observation must lie in [0, 1] and no
    /// arm may appear twice. The round counter advances even for an empty strategy.
    void update(std::span<const VertexId> played, std::span<const double> observations);

private:
    std::vector<double> mean_;
    std::vector<std::uint64_t> count_;
    std::uint64_t round_ = 0;
};

/// w_k = mean_k + sqrt(max(ln(t^{2/3} / (K m_k)), 0) / m_k); unplayed arms get kUnplayedIndex.
std::vector<double> compute_index(const PolicyState& state, double t);

/// LLR baseline: w_k = mean_k + sqrt((L + 1) ln t / m_k). Throws when L == 0.
std::vector<double> llr_index(const PolicyState& state, double t, std::size_t max_strategy_size);

/// Estimated strategy weight with unplayed arms counted at their initial weight 0.
double estimated_weight(const PolicyState& state, std::span<const double> index, std::span<const VertexId> strategy);

/// Picks the solver's (approximate) MWIS of H under the index weights.
Strategy select_strategy(const ExtendedGraph& h, std::span<const double> index, MwisSolver& solver);

}  // namespace crn
