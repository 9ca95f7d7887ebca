#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "crn/experiments.hpp"

using namespace crn;

namespace {

ExperimentConfig small() {
    ExperimentConfig c;
    c.run.horizon = 300;
    c.run.seeds = {3, 1, 2};
    c.convergence.cases = {{20, 2}, {30, 3}};
    c.convergence.seeds = {1, 2};
    c.periodic.periods = {1, 5};
    c.periodic.updates = 40;
    c.periodic.num_nodes = 20;
    c.periodic.num_channels = 3;
    c.bench.instances = 20;
    return c;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("derived seeds are stable and distinct") {
    CHECK(derive_seed(1, streams::kNetwork) == derive_seed(1, streams::kNetwork));
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 50; ++s)
        for (std::uint64_t k : {streams::kNetwork, streams::kAssignment, streams::kNoise, streams::kWeights})
            seen.insert(derive_seed(s, k));
    CHECK(seen.size() == 200);
}

TEST_CASE("convergence suite") {
    auto r = run_convergence_suite(small());
    REQUIRE(r.cases.size() == 4);
    for (const auto& c : r.cases) {
        CHECK(c.weight_after_mini_round.size() == c.num_nodes);
        CHECK(std::is_sorted(c.weight_after_mini_round.begin(), c.weight_after_mini_round.end()));
        CHECK(c.independent);
        for (std::size_t tau = c.mini_rounds_used; tau < c.num_nodes; ++tau)
            CHECK(c.weight_after_mini_round[tau] == c.weight_after_mini_round.back());
    }
    std::ostringstream out;
    write_convergence_csv(out, r);
    CHECK(out.str().rfind("seed,num_nodes,num_channels,mini_round,summed_weight\n", 0) == 0);
    CHECK(lines(out.str()) == 1 + 2 * 20 + 2 * 30);
}

TEST_CASE("regret suite pairs policies on identical streams") {
    auto c = small();
    auto both = run_regret_suite(c);
    REQUIRE(both.traces.size() == 6);
    CHECK(both.traces[0].seed == 1);
    CHECK(both.traces[0].policy == PolicyKind::Proposed);
    CHECK(both.traces[1].policy == PolicyKind::Llr);
    for (const auto& t : both.traces) {
        CHECK(t.independence_violations == 0);
        CHECK(t.observed.size() == 300);
    }
    c.run.policy = PolicyChoice::Proposed;
    auto alone = run_regret_suite(c);
    CHECK(alone.traces[0].observed == both.traces[0].observed);
    CHECK(alone.traces[0].cum_regret == both.traces[0].cum_regret);

    // Noise-free paired streams: with sigma = 0 every observation is the
    // strategy's expected weight.
    c.channels.sigma = 0.0;
    c.run.policy = PolicyChoice::Both;
    for (const auto& t : run_regret_suite(c).traces) {
        for (std::size_t i = 0; i < t.observed.size(); ++i) CHECK(t.observed[i] == doctest::Approx(t.expected[i]));
    }
}

TEST_CASE("regret CSV schema and thinning") {
    auto c = small();
    c.run.seeds = {1};
    auto r = run_regret_suite(c);
    std::ostringstream all, thin;
    write_regret_csv(all, r, 1);
    write_regret_csv(thin, r, 100);
    CHECK(all.str().rfind("seed,round,policy,chosen_strategy_size,observed_throughput,effective_throughput,"
                          "cum_regret,cum_beta_regret,cum_practical_regret,messages,mini_rounds_used",
                          0) == 0);
    CHECK(lines(all.str()) == 1 + 2 * 300);
    CHECK(lines(thin.str()) == 1 + 2 * 3);
}

TEST_CASE("periodic suite") {
    auto c = small();
    c.periodic.updates = 1000;
    c.periodic.periods = {1};
    c.run.policy = PolicyChoice::Proposed;
    auto r = run_periodic_suite(c);
    REQUIRE(r.traces.size() == 1);
    CHECK(r.traces[0].actual.size() == 1000);
    CHECK(r.traces[0].independence_violations == 0);
    std::ostringstream out;
    write_periodic_csv(out, r);
    CHECK(lines(out.str()) == 1001);
}

TEST_CASE("mwis bench") {
    auto r = run_mwis_bench(small());
    CHECK(r.rows.size() == 40);
    for (const auto& row : r.rows) {
        CHECK(row.all_independent);
        CHECK(row.distributed_full >= row.distributed_one - 1e-12);
        CHECK(row.ptas <= row.exact + 1e-12);
    }
}

TEST_CASE("suites are deterministic") {
    auto c = small();
    auto csv = [&] {
        std::ostringstream out;
        write_regret_csv(out, run_regret_suite(c), 1);
        write_convergence_csv(out, run_convergence_suite(c));
        write_periodic_csv(out, run_periodic_suite(c));
        write_bench_csv(out, run_mwis_bench(c));
        return out.str();
    };
    const auto first = csv();
    c.run.threads = 3;
    CHECK(csv() == first);
}
