#include "crn/channels.hpp"

#include <algorithm>
#include <stdexcept>

namespace crn {

ChannelModel::ChannelModel(std::vector<double> rate_table_kbps, double max_rate_kbps, double sigma,
                           std::size_t num_nodes, std::size_t num_channels,
                           std::vector<std::size_t> assignment)
    : rate_table_(std::move(rate_table_kbps)),
      max_rate_(max_rate_kbps),
      sigma_(sigma),
      num_nodes_(num_nodes),
      num_channels_(num_channels),
      assignment_(std::move(assignment)) {
    if (rate_table_.empty()) throw std::invalid_argument("rate table is empty");
    if (!(max_rate_ > 0.0)) throw std::invalid_argument("max rate must be positive");
    if (!(sigma_ >= 0.0)) throw std::invalid_argument("sigma must be non-negative");
    if (assignment_.size() != num_nodes_ * num_channels_)
        throw std::invalid_argument("assignment must cover every (node, channel) pair");
    means_.reserve(assignment_.size());
    for (std::size_t type : assignment_) {
        if (type >= rate_table_.size()) throw std::out_of_range("channel type out of range");
        const double mean = rate_table_[type] / max_rate_;
        if (mean < 0.0 || mean > 1.0) throw std::invalid_argument("rate exceeds max rate");
        means_.push_back(mean);
    }
}

ChannelModel ChannelModel::random(std::vector<double> rate_table_kbps, double max_rate_kbps, double sigma,
                                  std::size_t num_nodes, std::size_t num_channels, std::uint64_t seed) {
    if (rate_table_kbps.empty()) throw std::invalid_argument("rate table is empty");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, rate_table_kbps.size() - 1);
    std::vector<std::size_t> assignment(num_nodes * num_channels);
    for (auto& t : assignment) t = pick(rng);
    return ChannelModel(std::move(rate_table_kbps), max_rate_kbps, sigma, num_nodes, num_channels,
                        std::move(assignment));
}

std::size_t ChannelModel::channel_type(NodeId node, ChannelId channel) const {
    if (node >= num_nodes_ || channel >= num_channels_) throw std::out_of_range("invalid (node, channel)");
    return assignment_[node * num_channels_ + channel];
}

double ChannelModel::true_mean(NodeId node, ChannelId channel) const {
    if (node >= num_nodes_ || channel >= num_channels_) throw std::out_of_range("invalid (node, channel)");
    return means_[node * num_channels_ + channel];
}

ChannelSampler::ChannelSampler(const ChannelModel& model, std::uint64_t seed) : model_(&model) {
    const std::size_t k = model.num_arms();
    streams_.reserve(k);
    noise_.reserve(k);
    for (std::size_t arm = 0; arm < k; ++arm) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(arm), 0x6368616eu};
        streams_.emplace_back(seq);
        noise_.emplace_back(model.true_mean(static_cast<VertexId>(arm)), model.sigma());
    }
}

double ChannelSampler::sample(NodeId node, ChannelId channel) {
    if (node >= model_->num_nodes() || channel >= model_->num_channels())
        throw std::out_of_range("invalid (node, channel)");
    return sample(static_cast<VertexId>(node * model_->num_channels() + channel));
}

double ChannelSampler::sample(VertexId arm) {
    if (model_->sigma() == 0.0) return model_->true_mean(arm);
    return std::clamp(noise_[arm](streams_[arm]), 0.0, 1.0);
}

void ChannelSampler::sample_all(std::vector<double>& out) {
    out.resize(streams_.size());
    for (VertexId arm = 0; arm < out.size(); ++arm) out[arm] = sample(arm);
}

}  // namespace crn
