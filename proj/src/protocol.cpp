#include "crn/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace crn {

std::uint64_t ProtocolCosts::max_messages() const {
    return messages.empty() ? 0 : *std::max_element(messages.begin(), messages.end());
}

std::uint64_t ProtocolCosts::total_messages() const {
    return std::accumulate(messages.begin(), messages.end(), std::uint64_t{0});
}

std::uint64_t ProtocolCosts::total_mini_timeslots() const {
    return std::accumulate(mini_timeslots.begin(), mini_timeslots.end(), std::uint64_t{0});
}

ProtocolCosts& ProtocolCosts::operator+=(const ProtocolCosts& other) {
    if (messages.size() < other.messages.size()) messages.resize(other.messages.size(), 0);
    for (std::size_t v = 0; v < other.messages.size(); ++v) messages[v] += other.messages[v];
    for (std::size_t p = 0; p < mini_timeslots.size(); ++p) mini_timeslots[p] += other.mini_timeslots[p];
    mini_rounds_used += other.mini_rounds_used;
    local_mwis_calls += other.local_mwis_calls;
    return *this;
}

DistributedAccess::DistributedAccess(const ExtendedGraph& h, ProtocolConfig config)
    : h_(&h),
      config_(config),
      election_balls_(h, 2 * config.radius + 1),
      bfs_(h.num_vertices()) {
    if (config_.radius < 1) throw std::invalid_argument("protocol radius r must be at least 1");
    if (config_.max_mini_rounds < 1) throw std::invalid_argument("mini-round budget D must be at least 1");
    if (!(config_.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

WeightViews DistributedAccess::initial_views(std::span<const double> weights) const {
    if (weights.size() != h_->num_vertices()) throw std::invalid_argument("weight map size mismatch");
    return WeightViews{{weights.begin(), weights.end()}};
}

bool DistributedAccess::outranks(const WeightViews& views, VertexId a, VertexId b) const {
    const double wa = views.known[a];
    const double wb = views.known[b];
    return wa != wb ? wa > wb : a < b;
}

void DistributedAccess::count_within(VertexId center, std::size_t radius, ProtocolCosts& costs) const {
    bfs_.for_each_within(*h_, center, radius, [&](VertexId u, std::uint32_t) { ++costs.messages[u]; });
}

ProtocolCosts DistributedAccess::weight_broadcast(std::span<const VertexId> previous_strategy,
                                                  std::span<const double> weights, WeightViews& views) const {
    const std::size_t n = h_->num_vertices();
    if (weights.size() != n) throw std::invalid_argument("weight map size mismatch");
    ProtocolCosts costs(n);
    views.known.resize(n);
    const std::size_t reach = 2 * config_.radius + 1;
    for (VertexId v : previous_strategy) {
        for (const auto& e : election_balls_.ball(v)) ++costs.messages[e.vertex];
        views.known[v] = weights[v];
    }
    if (!previous_strategy.empty()) {
        costs.mini_timeslots[static_cast<std::size_t>(Phase::WeightBroadcast)] += reach * reach;
    }
    for (VertexId v = 0; v < n; ++v) views.known[v] = weights[v];
    return costs;
}

DistributedAccess::MiniRoundResult DistributedAccess::run_mini_round(const WeightViews& views,
                                                                     std::vector<VertexStatus>& status,
                                                                     std::span<const VertexId> leader_order) const {
    const std::size_t n = h_->num_vertices();
    if (status.size() != n || views.known.size() != n) throw std::invalid_argument("state size mismatch");
    const std::size_t r = config_.radius;
    MiniRoundResult out{{}, {}, ProtocolCosts(n)};
    auto& costs = out.costs;

    // LS: a Candidate leads when it outranks every other Candidate within 2r+1 hops.
    for (VertexId v = 0; v < n; ++v) {
        if (status[v] != VertexStatus::Candidate) continue;
        bool leads = true;
        for (const auto& e : election_balls_.ball(v)) {
            if (e.vertex != v && status[e.vertex] == VertexStatus::Candidate && outranks(views, e.vertex, v)) {
                leads = false;
                break;
            }
        }
        if (leads) out.leaders.push_back(v);
    }
    if (out.leaders.empty()) return out;
    costs.mini_rounds_used = 1;
    costs.mini_timeslots[static_cast<std::size_t>(Phase::LeaderSelection)] += 2 * r + 1;
    costs.mini_timeslots[static_cast<std::size_t>(Phase::LocalBroadcast)] += 3 * r + 1;
    for (VertexId v : out.leaders) {
        status[v] = VertexStatus::LocalLeader;
        for (const auto& e : election_balls_.ball(v)) ++costs.messages[e.vertex];
    }
    for (std::size_t a = 0; a + 1 < out.leaders.size(); ++a) {
        for (std::size_t b = a + 1; b < out.leaders.size(); ++b) {
            // Ball entries are sorted by distance, so a short scan settles separation.
            for (const auto& e : election_balls_.ball(out.leaders[a])) {
                if (e.vertex == out.leaders[b]) throw std::logic_error("two LocalLeaders within 2r+1 hops");
            }
        }
    }

    std::vector<VertexId> order(out.leaders);
    if (!leader_order.empty()) {
        std::vector<VertexId> sorted_in(leader_order.begin(), leader_order.end());
        std::sort(sorted_in.begin(), sorted_in.end());
        if (sorted_in != out.leaders) throw std::invalid_argument("leader_order is not a permutation of the leaders");
        order.assign(leader_order.begin(), leader_order.end());
    }

    // LMWIS: each leader grows rb <= r until MWIS(A_{rb+1}) <= rho * MWIS(A_rb),
    // keeps MWIS(A_rb) and retires the rest of A_{rb+1}. Without such rb it
    // falls back to the whole r-ball.
    const double rho = 1.0 + config_.epsilon;
    std::vector<VertexId> candidates;
    std::vector<std::size_t> shell_end;  // candidates[0, shell_end[d]) lie within d hops
    for (VertexId leader : order) {
        candidates.clear();
        shell_end.assign(r + 1, 0);
        for (const auto& e : election_balls_.ball(leader)) {
            if (e.distance > r) break;
            const auto s = status[e.vertex];
            if (s == VertexStatus::Candidate || e.vertex == leader) candidates.push_back(e.vertex);
            for (std::size_t d = e.distance; d <= r; ++d) shell_end[d] = candidates.size();
        }
        auto solve_within = [&](std::size_t d) {
            ++costs.local_mwis_calls;
            return local_mwis(*h_, std::span<const VertexId>(candidates.data(), shell_end[d]), views.known);
        };
        MwisResult local = solve_within(0);
        std::size_t retired = shell_end[r];
        for (std::size_t d = 0; d < r; ++d) {
            MwisResult wider = solve_within(d + 1);
            const double tol = 1e-12 * std::max(1.0, wider.total_weight);
            if (wider.total_weight <= rho * local.total_weight + tol) {
                retired = shell_end[d + 1];
                break;
            }
            local = std::move(wider);
        }
        for (std::size_t i = 0; i < retired; ++i) status[candidates[i]] = VertexStatus::Loser;
        for (VertexId w : local.members) {
            for (VertexId u : h_->neighbors(w)) {
                if (status[u] == VertexStatus::Winner) throw std::logic_error("adjacent Winners");
            }
            status[w] = VertexStatus::Winner;
            out.winners.push_back(w);
        }
    }
    std::sort(out.winners.begin(), out.winners.end());

    // LB: results reach 3r+1 hops; Candidates next to a new Winner drop out.
    for (VertexId leader : out.leaders) count_within(leader, 3 * r + 1, costs);
    for (VertexId w : out.winners) {
        for (VertexId u : h_->neighbors(w)) {
            if (status[u] == VertexStatus::Candidate) status[u] = VertexStatus::Loser;
        }
    }
    return out;
}

DistributedAccess::Decision DistributedAccess::decide_strategy(const WeightViews& views,
                                                               std::size_t max_mini_rounds) const {
    const std::size_t n = h_->num_vertices();
    Decision d{{}, ProtocolCosts(n), {}, 0};
    std::vector<VertexStatus> status(n, VertexStatus::Candidate);
    double accumulated = 0.0;
    for (std::size_t tau = 0; tau < max_mini_rounds; ++tau) {
        if (std::none_of(status.begin(), status.end(),
                         [](VertexStatus s) { return s == VertexStatus::Candidate; }))
            break;
        auto step = run_mini_round(views, status, {});
        d.costs += step.costs;
        for (VertexId w : step.winners) accumulated += views.known[w];
        d.weight_after_mini_round.push_back(accumulated);
        d.winners.insert(d.winners.end(), step.winners.begin(), step.winners.end());
    }
    for (auto& s : status) {
        if (s == VertexStatus::Candidate) {
            s = VertexStatus::Loser;
            ++d.truncated_candidates;
        }
    }
    std::sort(d.winners.begin(), d.winners.end());
    if (!independence_check(*h_, d.winners)) throw std::logic_error("Winner set is not independent");
    return d;
}

DistributedAccess::Decision DistributedAccess::run_round(std::span<const VertexId> previous_strategy,
                                                         std::span<const double> weights,
                                                         WeightViews& views) const {
    ProtocolCosts wb = weight_broadcast(previous_strategy, weights, views);
    Decision d = decide_strategy(views);
    wb += d.costs;
    d.costs = std::move(wb);
    return d;
}

DistributedSolver::DistributedSolver(const ExtendedGraph& h, ProtocolConfig config) : protocol_(h, config) {}

MwisResult DistributedSolver::solve(const ExtendedGraph& h, std::span<const double> weights) {
    if (&h != &protocol_.graph()) throw std::invalid_argument("distributed solver bound to another graph");
    if (!started_) {
        views_ = protocol_.initial_views(weights);
        started_ = true;
    }
    last_ = protocol_.run_round(previous_, weights, views_);
    previous_ = last_.winners;
    return {last_.winners, total_weight(last_.winners, weights)};
}

RoundTiming account_round(const ProtocolCosts& costs, const TimingModel& timing) {
    timing.validate();
    RoundTiming t;
    t.decision_ms = timing.rule == DecisionSlotRule::Fixed
                        ? timing.decision_ms()
                        : static_cast<double>(costs.mini_rounds_used + 1) * timing.mini_round_ms();
    t.transmission_ms = timing.transmission_ms;
    t.round_ms = t.decision_ms + t.transmission_ms;
    t.theta = t.transmission_ms / t.round_ms;
    return t;
}

}  // namespace crn
