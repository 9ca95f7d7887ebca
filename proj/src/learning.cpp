#include "crn/learning.hpp"

#include <cmath>
#include <stdexcept>

namespace crn {

PolicyState::PolicyState(std::size_t num_arms) : mean_(num_arms, 0.0), count_(num_arms, 0) {
    if (num_arms == 0) throw std::invalid_argument("policy needs at least one arm");
}

void PolicyState::update(std::span<const VertexId> played, std::span<const double> observations) {
    if (played.size() != observations.size())
        throw std::invalid_argument("one observation per played arm is required");
    std::vector<std::uint8_t> seen(mean_.size(), 0);
    for (std::size_t i = 0; i < played.size(); ++i) {
        const VertexId k = played[i];
        if (k >= mean_.size()) throw std::out_of_range("arm id out of range");
        if (seen[k]) throw std::invalid_argument("arm observed twice in one round");
        seen[k] = 1;
        if (!(observations[i] >= 0.0 && observations[i] <= 1.0))
            throw std::invalid_argument("observation outside [0, 1]");
    }
    for (std::size_t i = 0; i < played.size(); ++i) {
        const VertexId k = played[i];
        const auto previous = static_cast<double>(count_[k]);
        count_[k] += 1;
        mean_[k] = (mean_[k] * previous + observations[i]) / static_cast<double>(count_[k]);
    }
    ++round_;
}

std::vector<double> compute_index(const PolicyState& state, double t) {
    if (!(t >= 1.0)) throw std::invalid_argument("round index starts at 1");
    const auto k_arms = static_cast<double>(state.num_arms());
    const double t_pow = std::pow(t, 2.0 / 3.0);
    std::vector<double> w(state.num_arms());
    for (VertexId k = 0; k < w.size(); ++k) {
        const std::uint64_t m = state.play_count(k);
        if (m == 0) {
            w[k] = kUnplayedIndex;
            continue;
        }
        const auto md = static_cast<double>(m);
        const double log_term = std::max(std::log(t_pow / (k_arms * md)), 0.0);
        w[k] = state.empirical_mean(k) + std::sqrt(log_term / md);
    }
    return w;
}

std::vector<double> llr_index(const PolicyState& state, double t, std::size_t max_strategy_size) {
    if (!(t >= 1.0)) throw std::invalid_argument("round index starts at 1");
    if (max_strategy_size == 0) throw std::invalid_argument("LLR needs a strategy size of at least 1");
    const double scale = static_cast<double>(max_strategy_size + 1) * std::log(t);
    std::vector<double> w(state.num_arms());
    for (VertexId k = 0; k < w.size(); ++k) {
        const std::uint64_t m = state.play_count(k);
        w[k] = m == 0 ? kUnplayedIndex
                      : state.empirical_mean(k) + std::sqrt(std::max(scale, 0.0) / static_cast<double>(m));
    }
    return w;
}

double estimated_weight(const PolicyState& state, std::span<const double> index,
                        std::span<const VertexId> strategy) {
    double sum = 0.0;
    for (VertexId k : strategy) {
        if (state.play_count(k) > 0) sum += index[k];
    }
    return sum;
}

Strategy select_strategy(const ExtendedGraph& h, std::span<const double> index, MwisSolver& solver) {
    MwisResult r = solver.solve(h, index);
    if (!independence_check(h, r.members)) throw std::logic_error("solver returned a dependent set");
    return std::move(r.members);
}

}  // namespace crn
