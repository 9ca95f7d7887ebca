#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crn/config.hpp"

namespace crn {

/// Independent sub-seed for one purpose (network, channel assignment, channel noise, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

namespace streams {
inline constexpr std::uint64_t kNetwork = 1;
inline constexpr std::uint64_t kAssignment = 2;
inline constexpr std::uint64_t kNoise = 3;
inline constexpr std::uint64_t kWeights = 4;
}  // namespace streams

// ---------------------------------------------------------------- convergence

struct ConvergenceCase {
    std::uint64_t seed = 0;
    std::size_t num_nodes = 0;
    std::size_t num_channels = 0;
    std::vector<double> weight_after_mini_round;  // length N (flat once no Candidate is left)
    std::size_t mini_rounds_used = 0;
    std::uint64_t max_messages = 0;
    bool independent = false;
};

struct ConvergenceResult {
    std::vector<ConvergenceCase> cases;  // sorted by (N, M, seed) in config order
};

/// Runs decide_strategy with D = N on each configured N x M random network using
/// the true normalized channel means as weights.
ConvergenceResult run_convergence_suite(const ExperimentConfig& config);
void write_convergence_csv(std::ostream& out, const ConvergenceResult& result);

// ---------------------------------------------------------------- regret

struct RegretTrace {
    std::uint64_t seed = 0;
    PolicyKind policy = PolicyKind::Proposed;
    double optimum = 0.0;  // R_1, normalized
    double beta = 1.0;
    std::vector<std::uint32_t> strategy_size;
    std::vector<double> observed;        // R_x(t), normalized
    std::vector<double> expected;        // lambda_x of the chosen strategy
    std::vector<double> effective;       // theta R_x(t)
    std::vector<double> cum_regret;
    std::vector<double> cum_beta_regret;
    std::vector<double> cum_practical_regret;
    std::vector<double> cum_practical_beta_regret;
    std::vector<std::uint64_t> messages;  // max per-vertex control messages
    std::vector<std::uint32_t> mini_rounds_used;
    std::uint64_t independence_violations = 0;
    double cumulative_effective = 0.0;
};

struct RegretResult {
    double max_rate_kbps = 1.0;
    std::vector<RegretTrace> traces;  // sorted by (seed, policy)
};

/// Both policies on identical instances and identical channel sample streams.
RegretResult run_regret_suite(const ExperimentConfig& config);
void write_regret_csv(std::ostream& out, const RegretResult& result, std::uint64_t record_every);

// ---------------------------------------------------------------- periodic

struct PeriodicTrace {
    std::uint64_t seed = 0;
    std::size_t period_slots = 1;
    PolicyKind policy = PolicyKind::Proposed;
    std::vector<double> actual;
    std::vector<double> estimated;
    std::vector<double> actual_running;
    std::vector<double> estimated_running;
    std::uint64_t independence_violations = 0;
};

struct PeriodicResult {
    double max_rate_kbps = 1.0;
    std::vector<PeriodicTrace> traces;
};

PeriodicResult run_periodic_suite(const ExperimentConfig& config);
void write_periodic_csv(std::ostream& out, const PeriodicResult& result);

// ---------------------------------------------------------------- mwis bench

struct BenchRow {
    std::uint64_t seed = 0;
    std::size_t num_nodes = 0;
    std::size_t num_channels = 0;
    double epsilon = 0.0;
    double exact = 0.0;
    double ptas = 0.0;
    double distributed_one = 0.0;   // D = 1
    double distributed_full = 0.0;  // D = N
    bool all_independent = false;
};

struct BenchResult {
    std::vector<BenchRow> rows;
};

/// Exact vs centralized PTAS vs distributed (D = 1 and D = N) on random
/// oracle-sized instances with uniform random weights. Throws std::runtime_error
/// when a ratio bound is violated.
BenchResult run_mwis_bench(const ExperimentConfig& config, bool enforce_bounds = true);
void write_bench_csv(std::ostream& out, const BenchResult& result);

}  // namespace crn
