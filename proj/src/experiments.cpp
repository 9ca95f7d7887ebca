#include "crn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "crn/channels.hpp"
#include "crn/learning.hpp"
#include "crn/metrics.hpp"
#include "crn/mwis.hpp"
#include "crn/protocol.hpp"

namespace crn {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

// Runs fn(i) for i in [0, count) on a small worker pool. Each task owns its
// state; results land in caller-provided slots, so ordering never leaks out.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<PolicyKind> policies_of(PolicyChoice choice) {
    switch (choice) {
        case PolicyChoice::Proposed: return {PolicyKind::Proposed};
        case PolicyChoice::Llr: return {PolicyKind::Llr};
        case PolicyChoice::Both: return {PolicyKind::Proposed, PolicyKind::Llr};
    }
    return {};
}

std::unique_ptr<MwisSolver> make_solver(SolverKind kind, const ExtendedGraph& h, const ProtocolConfig& protocol) {
    switch (kind) {
        case SolverKind::Distributed: return std::make_unique<DistributedSolver>(h, protocol);
        case SolverKind::CentralizedPtas: return std::make_unique<CentralizedPtasSolver>(protocol.epsilon);
        case SolverKind::Exact: return std::make_unique<ExactSolver>();
    }
    throw std::invalid_argument("unknown solver");
}

bool feasible(const ExtendedGraph& h, std::span<const VertexId> strategy) {
    std::vector<std::uint8_t> used(h.num_nodes(), 0);
    for (VertexId v : strategy) {
        if (used[h.master(v)]++) return false;
    }
    return independence_check(h, strategy);
}

std::vector<double> policy_index(PolicyKind policy, const PolicyState& state, std::uint64_t t,
                                 std::size_t num_nodes) {
    return policy == PolicyKind::Proposed ? compute_index(state, static_cast<double>(t))
                                              : llr_index(state, static_cast<double>(t), num_nodes);
}

ChannelModel channel_model(const ExperimentConfig& c, std::size_t n, std::size_t m, std::uint64_t seed) {
    return ChannelModel::random(c.channels.rate_table_kbps, c.channels.max_rate_kbps, c.channels.sigma, n, m,
                                derive_seed(seed, streams::kAssignment));
}

// Per-round bookkeeping shared by the regret and periodic suites.
struct PlayedRound {
    Strategy strategy;
    double observed = 0.0;
    double expected = 0.0;
    double estimated = 0.0;
    std::uint64_t messages = 0;
    std::size_t mini_rounds = 0;
    double theta = 0.0;
    bool feasible = true;
};

class Learner {
public:
    Learner(const ExperimentConfig& c, const ExtendedGraph& h, const ChannelModel& model, PolicyKind policy,
            std::uint64_t seed)
        : config_(c),
          h_(h),
          model_(model),
          policy_(policy),
          state_(h.num_vertices()),
          sampler_(model, derive_seed(seed, streams::kNoise)),
          solver_(make_solver(c.run.solver, h, c.protocol)) {}

    // Decides a strategy for slot t and plays it for `slots` consecutive slots.
    // Returns one record per slot; the decision fields are repeated.
    void play(std::uint64_t t, std::size_t slots, std::vector<PlayedRound>& out) {
        const auto index = policy_index(policy_, state_, t, h_.num_nodes());
        MwisResult chosen = solver_->solve(h_, index);
        PlayedRound base;
        base.strategy = std::move(chosen.members);
        base.feasible = feasible(h_, base.strategy);
        base.estimated = estimated_weight(state_, index, base.strategy);
        ProtocolCosts costs;
        if (auto* d = dynamic_cast<DistributedSolver*>(solver_.get())) {
            costs = d->last_decision().costs;
            base.messages = costs.max_messages();
            base.mini_rounds = costs.mini_rounds_used;
        }
        base.theta = account_round(costs, config_.timing).theta;
        for (VertexId v : base.strategy) base.expected += model_.true_mean(v);

        std::vector<double> observations(base.strategy.size());
        for (std::size_t s = 0; s < slots; ++s) {
            sampler_.sample_all(rates_);
            PlayedRound round = base;
            for (std::size_t i = 0; i < round.strategy.size(); ++i) {
                observations[i] = rates_[round.strategy[i]];
                round.observed += observations[i];
            }
            state_.update(round.strategy, observations);
            out.push_back(std::move(round));
        }
    }

private:
    const ExperimentConfig& config_;
    const ExtendedGraph& h_;
    const ChannelModel& model_;
    PolicyKind policy_;
    PolicyState state_;
    ChannelSampler sampler_;
    std::unique_ptr<MwisSolver> solver_;
    std::vector<double> rates_;
};

}  // namespace

// ---------------------------------------------------------------- convergence

ConvergenceResult run_convergence_suite(const ExperimentConfig& config) {
    validate(config);
    struct Job {
        std::size_t n, m;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const auto& [n, m] : config.convergence.cases) {
        for (std::uint64_t seed : config.convergence.seeds) jobs.push_back({n, m, seed});
    }
    ConvergenceResult result;
    result.cases.resize(jobs.size());
    parallel_for(jobs.size(), config.run.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        NetworkSpec spec{job.n, job.m, config.network.target_avg_degree, false};
        const auto g = generate_random_network(spec, derive_seed(job.seed, streams::kNetwork));
        const auto h = build_extended_graph(g);
        const auto model = channel_model(config, job.n, job.m, job.seed);
        ProtocolConfig protocol = config.protocol;
        protocol.max_mini_rounds = job.n;
        DistributedAccess access(h, protocol);
        const auto views = access.initial_views(model.true_means());
        const auto decision = access.decide_strategy(views, job.n);

        ConvergenceCase& out = result.cases[i];
        out.seed = job.seed;
        out.num_nodes = job.n;
        out.num_channels = job.m;
        out.weight_after_mini_round = decision.weight_after_mini_round;
        const double last = out.weight_after_mini_round.empty() ? 0.0 : out.weight_after_mini_round.back();
        out.weight_after_mini_round.resize(job.n, last);
        out.mini_rounds_used = decision.costs.mini_rounds_used;
        out.max_messages = decision.costs.max_messages();
        out.independent = feasible(h, decision.winners);
    });
    return result;
}

void write_convergence_csv(std::ostream& out, const ConvergenceResult& result) {
    out << "seed,num_nodes,num_channels,mini_round,summed_weight\n";
    out << std::setprecision(12);
    for (const auto& c : result.cases) {
        for (std::size_t tau = 0; tau < c.weight_after_mini_round.size(); ++tau) {
            out << c.seed << ',' << c.num_nodes << ',' << c.num_channels << ',' << tau + 1 << ','
                << c.weight_after_mini_round[tau] << '\n';
        }
    }
}

// ---------------------------------------------------------------- regret

RegretResult run_regret_suite(const ExperimentConfig& config) {
    validate(config);
    const auto policies = policies_of(config.run.policy);
    std::vector<std::uint64_t> seeds = config.run.seeds;
    std::sort(seeds.begin(), seeds.end());

    RegretResult result;
    result.max_rate_kbps = config.channels.max_rate_kbps;
    result.traces.resize(seeds.size() * policies.size());
    const double beta = 1.0 + config.protocol.epsilon;

    parallel_for(seeds.size(), config.run.threads, [&](std::size_t si) {
        const std::uint64_t seed = seeds[si];
        const auto g = generate_random_network(config.network, derive_seed(seed, streams::kNetwork));
        const auto h = build_extended_graph(g);
        const auto model = channel_model(config, g.num_nodes(), g.num_channels(), seed);
        const double optimum = oracle_optimum(h, model.true_means());

        for (std::size_t pi = 0; pi < policies.size(); ++pi) {
            RegretTrace& trace = result.traces[si * policies.size() + pi];
            trace.seed = seed;
            trace.policy = policies[pi];
            trace.optimum = optimum;
            trace.beta = beta;
            const std::size_t n = config.run.horizon;
            for (auto* v : {&trace.observed, &trace.expected, &trace.effective, &trace.cum_regret,
                            &trace.cum_beta_regret, &trace.cum_practical_regret, &trace.cum_practical_beta_regret}) {
                v->reserve(n);
            }

            Learner learner(config, h, model, policies[pi], seed);
            std::vector<PlayedRound> rounds;
            for (std::uint64_t t = 1; t <= n; ++t) {
                rounds.clear();
                learner.play(t, 1, rounds);
                const PlayedRound& r = rounds.front();
                // theta may vary per round under the per-mini-round timing rule.
                const RegretStep step = regret_step(optimum, r.observed, beta, r.theta);
                RegretStep cum = trace.cum_regret.empty()
                                     ? RegretStep{}
                                     : RegretStep{trace.cum_regret.back(), trace.cum_beta_regret.back(),
                                                  trace.cum_practical_regret.back(),
                                                  trace.cum_practical_beta_regret.back()};
                trace.strategy_size.push_back(static_cast<std::uint32_t>(r.strategy.size()));
                trace.observed.push_back(r.observed);
                trace.expected.push_back(r.expected);
                trace.effective.push_back(r.theta * r.observed);
                trace.cum_regret.push_back(cum.regret + step.regret);
                trace.cum_beta_regret.push_back(cum.beta_regret + step.beta_regret);
                trace.cum_practical_regret.push_back(cum.practical_regret + step.practical_regret);
                trace.cum_practical_beta_regret.push_back(cum.practical_beta_regret + step.practical_beta_regret);
                trace.messages.push_back(r.messages);
                trace.mini_rounds_used.push_back(static_cast<std::uint32_t>(r.mini_rounds));
                trace.cumulative_effective += r.theta * r.observed;
                if (!r.feasible) ++trace.independence_violations;
            }
        }
    });
    return result;
}

void write_regret_csv(std::ostream& out, const RegretResult& result, std::uint64_t record_every) {
    if (record_every == 0) record_every = 1;
    const double k = result.max_rate_kbps;
    out << "seed,round,policy,chosen_strategy_size,observed_throughput,effective_throughput,cum_regret,"
           "cum_beta_regret,cum_practical_regret,messages,mini_rounds_used,cum_practical_beta_regret\n";
    out << std::setprecision(12);
    for (const auto& tr : result.traces) {
        const std::size_t n = tr.observed.size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t round = i + 1;
            if (round % record_every != 0 && round != n) continue;
            out << tr.seed << ',' << round << ',' << to_string(tr.policy) << ',' << tr.strategy_size[i] << ','
                << tr.observed[i] * k << ',' << tr.effective[i] * k << ',' << tr.cum_regret[i] * k << ','
                << tr.cum_beta_regret[i] * k << ',' << tr.cum_practical_regret[i] * k << ',' << tr.messages[i]
                << ',' << tr.mini_rounds_used[i] << ',' << tr.cum_practical_beta_regret[i] * k << '\n';
        }
    }
}

// ---------------------------------------------------------------- periodic

PeriodicResult run_periodic_suite(const ExperimentConfig& config) {
    validate(config);
    const auto policies = policies_of(config.run.policy);
    std::vector<std::uint64_t> seeds = config.periodic.seeds;
    std::sort(seeds.begin(), seeds.end());

    struct Job {
        std::uint64_t seed;
        std::size_t y;
        PolicyKind policy;
    };
    std::vector<Job> jobs;
    for (std::uint64_t seed : seeds) {
        for (std::size_t y : config.periodic.periods) {
            for (PolicyKind p : policies) jobs.push_back({seed, y, p});
        }
    }

    PeriodicResult result;
    result.max_rate_kbps = config.channels.max_rate_kbps;
    result.traces.resize(jobs.size());
    parallel_for(jobs.size(), config.run.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        NetworkSpec spec{config.periodic.num_nodes, config.periodic.num_channels, config.network.target_avg_degree,
                         false};
        const auto g = generate_random_network(spec, derive_seed(job.seed, streams::kNetwork));
        const auto h = build_extended_graph(g);
        const auto model = channel_model(config, g.num_nodes(), g.num_channels(), job.seed);

        Learner learner(config, h, model, job.policy, job.seed);
        std::vector<PlayedRound> rounds;
        rounds.reserve(config.periodic.updates * job.y);
        for (std::size_t z = 0; z < config.periodic.updates; ++z) {
            learner.play(static_cast<std::uint64_t>(z * job.y + 1), job.y, rounds);
        }
        std::vector<double> observed(rounds.size());
        std::vector<double> estimated(rounds.size());
        PeriodicTrace& trace = result.traces[i];
        for (std::size_t t = 0; t < rounds.size(); ++t) {
            observed[t] = rounds[t].observed;
            estimated[t] = rounds[t].estimated;
            if (!rounds[t].feasible) ++trace.independence_violations;
        }
        TimingModel timing = config.timing;
        timing.period_slots = job.y;
        auto series = periodic_throughput(observed, estimated, timing);
        trace.seed = job.seed;
        trace.period_slots = job.y;
        trace.policy = job.policy;
        trace.actual = std::move(series.actual);
        trace.estimated = std::move(series.estimated);
        trace.actual_running = std::move(series.actual_running);
        trace.estimated_running = std::move(series.estimated_running);
    });
    return result;
}

void write_periodic_csv(std::ostream& out, const PeriodicResult& result) {
    const double k = result.max_rate_kbps;
    out << "seed,y,policy,period,actual_throughput,estimated_throughput,avg_actual_throughput,"
           "avg_estimated_throughput\n";
    out << std::setprecision(12);
    for (const auto& tr : result.traces) {
        for (std::size_t z = 0; z < tr.actual.size(); ++z) {
            out << tr.seed << ',' << tr.period_slots << ',' << to_string(tr.policy) << ',' << z + 1 << ','
                << tr.actual[z] * k << ',' << tr.estimated[z] * k << ',' << tr.actual_running[z] * k << ','
                << tr.estimated_running[z] * k << '\n';
        }
    }
}

// ---------------------------------------------------------------- mwis bench

BenchResult run_mwis_bench(const ExperimentConfig& config, bool enforce_bounds) {
    validate(config);
    struct Job {
        double epsilon;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (double eps : config.bench.epsilons) {
        for (std::size_t i = 0; i < config.bench.instances; ++i) jobs.push_back({eps, config.bench.base_seed + i});
    }
    BenchResult result;
    result.rows.resize(jobs.size());
    parallel_for(jobs.size(), config.run.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        std::mt19937_64 rng(derive_seed(job.seed, streams::kWeights));
        std::uniform_int_distribution<std::size_t> nodes(1, config.bench.max_nodes);
        std::uniform_int_distribution<std::size_t> channels(1, config.bench.max_channels);
        NetworkSpec spec{nodes(rng), channels(rng), config.network.target_avg_degree, false};
        const auto g = generate_random_network(spec, derive_seed(job.seed, streams::kNetwork));
        const auto h = build_extended_graph(g);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        WeightMap weights(h.num_vertices());
        for (auto& w : weights) w = unit(rng);

        BenchRow& row = result.rows[i];
        row.seed = job.seed;
        row.num_nodes = spec.num_nodes;
        row.num_channels = spec.num_channels;
        row.epsilon = job.epsilon;
        ExactSolver exact;
        const auto best = exact.solve(h, weights);
        const auto ptas = robust_ptas(h, weights, job.epsilon);
        ProtocolConfig protocol = config.protocol;
        protocol.epsilon = job.epsilon;
        DistributedAccess access(h, protocol);
        const auto views = access.initial_views(weights);
        const auto one = access.decide_strategy(views, 1);
        const auto full = access.decide_strategy(views, spec.num_nodes);
        row.exact = best.total_weight;
        row.ptas = ptas.total_weight;
        row.distributed_one = total_weight(one.winners, weights);
        row.distributed_full = total_weight(full.winners, weights);
        row.all_independent = feasible(h, best.members) && feasible(h, ptas.members) && feasible(h, one.winners) &&
                              feasible(h, full.winners);
        if (enforce_bounds) {
            const double rho = 1.0 + job.epsilon;
            const double tol = 1e-9 * std::max(1.0, row.exact);
            if (!row.all_independent) throw std::runtime_error("mwis-bench: dependent set returned");
            if (row.ptas * rho + tol < row.exact || row.ptas > row.exact + tol)
                throw std::runtime_error("mwis-bench: centralized PTAS outside [OPT/rho, OPT]");
            if (row.distributed_full * rho + tol < row.exact)
                throw std::runtime_error("mwis-bench: distributed (D = N) below OPT/rho");
            if (row.distributed_full + tol < row.distributed_one)
                throw std::runtime_error("mwis-bench: D = N weight below D = 1 weight");
        }
    });
    return result;
}

void write_bench_csv(std::ostream& out, const BenchResult& result) {
    out << "seed,num_nodes,num_channels,epsilon,exact,centralized_ptas,distributed_d1,distributed_dn,"
           "ratio_ptas,ratio_distributed\n";
    out << std::setprecision(12);
    for (const auto& r : result.rows) {
        const auto ratio = [&](double w) { return w > 0.0 ? r.exact / w : (r.exact > 0.0 ? std::numeric_limits<double>::infinity() : 1.0); };
        out << r.seed << ',' << r.num_nodes << ',' << r.num_channels << ',' << r.epsilon << ',' << r.exact << ','
            << r.ptas << ',' << r.distributed_one << ',' << r.distributed_full << ',' << ratio(r.ptas) << ','
            << ratio(r.distributed_full) << '\n';
    }
}

}  // namespace crn
