#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crn/graph_model.hpp"
#include "crn/protocol.hpp"
#include "crn/timing.hpp"

namespace crn {

enum class PolicyKind { Proposed, Llr };
enum class PolicyChoice { Proposed, Llr, Both };
enum class SolverKind { Distributed, CentralizedPtas, Exact };

const char* to_string(PolicyKind p);
const char* to_string(PolicyChoice p);
const char* to_string(SolverKind s);

struct ChannelSettings {
    std::vector<double> rate_table_kbps{150, 225, 300, 450, 600, 900, 1200, 1350};
    double sigma = 0.1;
    double max_rate_kbps = 1350.0;
};

struct RunSettings {
    std::uint64_t horizon = 20000;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
    PolicyChoice policy = PolicyChoice::Both;
    SolverKind solver = SolverKind::Distributed;
    std::size_t threads = 0;  // 0: one per hardware thread
};

struct OutputSettings {
    std::string directory = "results";
    std::vector<std::string> formats{"csv"};
    std::uint64_t record_every = 1;  // regret rows are written every k-th round and at the horizon
};

struct ConvergenceSettings {
    std::vector<std::pair<std::size_t, std::size_t>> cases{{50, 5}, {100, 5}, {200, 5}, {50, 10}, {100, 10}, {200, 10}};
    std::vector<std::uint64_t> seeds{1, 2, 3};
};

struct PeriodicSettings {
    std::vector<std::size_t> periods{1, 5, 10, 20};
    std::size_t updates = 1000;
    std::size_t num_nodes = 100;
    std::size_t num_channels = 10;
    std::vector<std::uint64_t> seeds{1};
};

struct BenchSettings {
    std::size_t instances = 200;
    std::size_t max_nodes = 12;
    std::size_t max_channels = 3;
    std::vector<double> epsilons{0.5, 1.0};
    std::uint64_t base_seed = 1;
};

/// Everything an experiment run needs. Defaults reproduce the reference setup.
struct ExperimentConfig {
    NetworkSpec network{};
    ProtocolConfig protocol{};
    ChannelSettings channels{};
    TimingModel timing{};
    RunSettings run{};
    OutputSettings output{};
    ConvergenceSettings convergence{};
    PeriodicSettings periodic{};
    BenchSettings bench{};

    /// Adds `offset` to every seed list.
    void apply_seed_offset(std::uint64_t offset);
};

/// Validation failure tied to a dotted field path such as "network.num_nodes".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)), message_(message) {}
    const std::string& field() const { return field_; }
    const std::string& detail() const { return message_; }

private:
    std::string field_;
    std::string message_;
};

/// Parses a JSON document; absent keys keep their defaults, unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);
void validate(const ExperimentConfig& config);

}  // namespace crn
