#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "crn/graph_model.hpp"

namespace crn {

/// Data rates (kbps) of the eight channel types used in the reference setup.
inline const std::vector<double> kDefaultRateTable{150, 225, 300, 450, 600, 900, 1200, 1350};
inline constexpr double kDefaultSigma = 0.1;

/// Per-(node, channel) i.i.d. Gaussian rate processes. Means are normalized by
/// max_rate so every mean lies in [0, 1]; samples are clipped to [0, 1].
class ChannelModel {
public:
    ChannelModel(std::vector<double> rate_table_kbps, double max_rate_kbps, double sigma,
                 std::size_t num_nodes, std::size_t num_channels, std::vector<std::size_t> assignment);

    /// Draws every pair's channel type uniformly from the rate table.
    static ChannelModel random(std::vector<double> rate_table_kbps, double max_rate_kbps, double sigma,
                               std::size_t num_nodes, std::size_t num_channels, std::uint64_t seed);

    std::size_t num_nodes() const { return num_nodes_; }
    std::size_t num_channels() const { return num_channels_; }
    std::size_t num_arms() const { return num_nodes_ * num_channels_; }
    double sigma() const { return sigma_; }
    double max_rate() const { return max_rate_; }
    const std::vector<double>& rate_table() const { return rate_table_; }

    std::size_t channel_type(NodeId node, ChannelId channel) const;
    double true_mean(NodeId node, ChannelId channel) const;
    double true_mean(VertexId arm) const { return means_.at(arm); }
    const std::vector<double>& true_means() const { return means_; }

    double to_kbps(double normalized) const { return normalized * max_rate_; }

private:
    std::vector<double> rate_table_;
    double max_rate_;
    double sigma_;
    std::size_t num_nodes_;
    std::size_t num_channels_;
    std::vector<std::size_t> assignment_;
    std::vector<double> means_;
};

/// Owns one random stream per (node, channel) pair. A pair's sequence depends
/// only on the seed and the pair, never on how other pairs are sampled.
class ChannelSampler {
public:
    ChannelSampler(const ChannelModel& model, std::uint64_t seed);

    double sample(NodeId node, ChannelId channel);
    double sample(VertexId arm);

    /// Advances every pair's stream by one draw; out[k] is arm k's rate this slot.
    void sample_all(std::vector<double>& out);

private:
    const ChannelModel* model_;
    std::vector<std::mt19937_64> streams_;
    std::vector<std::normal_distribution<double>> noise_;
};

}  // namespace crn
