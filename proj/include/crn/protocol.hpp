#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "crn/graph_model.hpp"
#include "crn/learning.hpp"
#include "crn/mwis.hpp"
#include "crn/timing.hpp"

namespace crn {

enum class VertexStatus : std::uint8_t { Candidate, LocalLeader, Winner, Loser };

struct ProtocolConfig {
    std::size_t radius = 2;           // r
    std::size_t max_mini_rounds = 5;  // D
    double epsilon = 0.5;             // reported as rho = 1 + epsilon
};

enum class Phase : std::size_t { WeightBroadcast = 0, LeaderSelection, LocalMwis, LocalBroadcast };

/// Control-plane cost of one round (or of one phase of it).
///   WB: (2r+1)^2 mini-timeslots when anything is broadcast; each vertex relays
///       every broadcast that originates within 2r+1 hops.
///   LS: 2r+1 mini-timeslots per mini-round; each vertex relays every leader
///       declaration from within 2r+1 hops.
///   LMWIS: local computation only, no mini-timeslots.
///   LB: 3r+1 mini-timeslots per mini-round; each vertex relays every leader's
///       result from within 3r+1 hops.
struct ProtocolCosts {
    std::vector<std::uint64_t> messages;  // per vertex
    std::array<std::uint64_t, 4> mini_timeslots{};
    std::size_t mini_rounds_used = 0;
    std::size_t local_mwis_calls = 0;

    explicit ProtocolCosts(std::size_t num_vertices = 0) : messages(num_vertices, 0) {}

    std::uint64_t max_messages() const;
    std::uint64_t total_messages() const;
    std::uint64_t total_mini_timeslots() const;
    std::uint64_t timeslots(Phase p) const { return mini_timeslots[static_cast<std::size_t>(p)]; }
    ProtocolCosts& operator+=(const ProtocolCosts& other);
};

/// What every vertex knows about the weights in its (2r+1)-hop neighborhood.
/// Control messages are delivered losslessly and synchronously, so all vertices
/// hold the same value for a given neighbor and one shared copy represents them.
struct WeightViews {
    std::vector<double> known;
};

class DistributedAccess {
public:
    DistributedAccess(const ExtendedGraph& h, ProtocolConfig config);

    const ExtendedGraph& graph() const { return *h_; }
    const ProtocolConfig& config() const { return config_; }
    double rho() const { return 1.0 + config_.epsilon; }

    WeightViews initial_views(std::span<const double> weights) const;

    /// Vertices of the previous strategy push their new weight through their
    /// (2r+1)-hop neighborhood. Everyone else's statistics are unchanged, so
    /// their index is re-derived locally from the shared round counter.
    ProtocolCosts weight_broadcast(std::span<const VertexId> previous_strategy, std::span<const double> weights,
                                   WeightViews& views) const;

    struct MiniRoundResult {
        std::vector<VertexId> leaders;
        std::vector<VertexId> winners;  // new this mini-round
        ProtocolCosts costs;
    };

    /// One LS / LMWIS / LB cycle over the Candidates in `status`. A leader keeps
    /// MWIS(A_rb) for the smallest rb < r with MWIS(A_{rb+1}) <= rho MWIS(A_rb)
    /// and retires A_{rb+1}; if none qualifies it keeps MWIS(A_r). Leaders are
    /// processed in `leader_order` when given (a permutation of the leaders);
    /// the outcome must not depend on it.
    MiniRoundResult run_mini_round(const WeightViews& views, std::vector<VertexStatus>& status,
                                   std::span<const VertexId> leader_order = {}) const;

    struct Decision {
        Strategy winners;
        ProtocolCosts costs;
        std::vector<double> weight_after_mini_round;  // cumulative Winner weight
        std::size_t truncated_candidates = 0;         // Candidates demoted at the cutoff
    };

    /// Runs up to `max_mini_rounds` mini-rounds (or until no Candidate is left);
    /// leftover Candidates become Losers.
    Decision decide_strategy(const WeightViews& views, std::size_t max_mini_rounds) const;
    Decision decide_strategy(const WeightViews& views) const {
        return decide_strategy(views, config_.max_mini_rounds);
    }

    /// Weight broadcast followed by the strategy decision.
    Decision run_round(std::span<const VertexId> previous_strategy, std::span<const double> weights,
                       WeightViews& views) const;

private:
    bool outranks(const WeightViews& views, VertexId a, VertexId b) const;
    void count_within(VertexId center, std::size_t radius, ProtocolCosts& costs) const;

    const ExtendedGraph* h_;
    ProtocolConfig config_;
    BallIndex election_balls_;  // radius 2r+1
    mutable BfsWorkspace bfs_;
};

/// MwisSolver adapter that runs a full distributed round per call and keeps the
/// previous strategy and weight views between calls.
class DistributedSolver final : public MwisSolver {
public:
    DistributedSolver(const ExtendedGraph& h, ProtocolConfig config);

    MwisResult solve(const ExtendedGraph& h, std::span<const double> weights) override;

    const DistributedAccess::Decision& last_decision() const { return last_; }
    const DistributedAccess& protocol() const { return protocol_; }

private:
    DistributedAccess protocol_;
    WeightViews views_;
    Strategy previous_;
    DistributedAccess::Decision last_;
    bool started_ = false;
};

struct RoundTiming {
    double decision_ms = 0.0;      // t_s
    double transmission_ms = 0.0;  // t_d
    double round_ms = 0.0;         // t_a
    double theta = 0.0;
};

/// Elapsed time of one round under the timing model's decision-phase rule.
RoundTiming account_round(const ProtocolCosts& costs, const TimingModel& timing);

}  // namespace crn
