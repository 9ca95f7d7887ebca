#include "crn/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace crn {

using nlohmann::json;

const char* to_string(PolicyKind p) { return p == PolicyKind::Proposed ? "proposed" : "llr"; }

const char* to_string(PolicyChoice p) {
    switch (p) {
        case PolicyChoice::Proposed: return "proposed";
        case PolicyChoice::Llr: return "llr";
        case PolicyChoice::Both: return "both";
    }
    return "?";
}

const char* to_string(SolverKind s) {
    switch (s) {
        case SolverKind::Distributed: return "distributed";
        case SolverKind::CentralizedPtas: return "centralized_ptas";
        case SolverKind::Exact: return "exact";
    }
    return "?";
}

void ExperimentConfig::apply_seed_offset(std::uint64_t offset) {
    for (auto* seeds : {&run.seeds, &convergence.seeds, &periodic.seeds}) {
        for (auto& s : *seeds) s += offset;
    }
    bench.base_seed += offset;
}

namespace {

// Walks one JSON object, reading known keys and rejecting the rest.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    void finish() const {
        for (const auto& [key, _] : node_.items()) {
            if (!seen_.count(key)) throw ConfigError(field(key), "unknown key");
        }
    }

    template <class T>
    void read(const char* key, T& out) {
        seen_.insert(key);
        auto it = node_.find(key);
        if (it == node_.end()) return;
        try {
            out = it->template get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(field(key), std::string("wrong type: ") + e.what());
        }
    }

    template <class Fn>
    void section(const char* key, Fn&& fn) {
        seen_.insert(key);
        auto it = node_.find(key);
        if (it == node_.end()) return;
        Section child(*it, field(key));
        fn(child);
        child.finish();
    }

    template <class E>
    void read_enum(const char* key, E& out, std::initializer_list<std::pair<const char*, E>> names) {
        std::string text;
        seen_.insert(key);
        auto it = node_.find(key);
        if (it == node_.end()) return;
        if (!it->is_string()) throw ConfigError(field(key), "expected a string");
        text = it->template get<std::string>();
        for (const auto& [name, value] : names) {
            if (text == name) {
                out = value;
                return;
            }
        }
        throw ConfigError(field(key), "unrecognized value '" + text + "'");
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

const std::initializer_list<std::pair<const char*, PolicyChoice>> kPolicyNames{
    {"proposed", PolicyChoice::Proposed}, {"llr", PolicyChoice::Llr}, {"both", PolicyChoice::Both}};
const std::initializer_list<std::pair<const char*, SolverKind>> kSolverNames{
    {"distributed", SolverKind::Distributed},
    {"centralized_ptas", SolverKind::CentralizedPtas},
    {"exact", SolverKind::Exact}};
const std::initializer_list<std::pair<const char*, DecisionSlotRule>> kRuleNames{
    {"fixed", DecisionSlotRule::Fixed}, {"per_mini_round", DecisionSlotRule::PerMiniRound}};

void require(bool ok, const char* field, const char* message) {
    if (!ok) throw ConfigError(field, message);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    ExperimentConfig c;
    {
        Section root(doc, "");
        root.section("network", [&](Section& s) {
            s.read("num_nodes", c.network.num_nodes);
            s.read("num_channels", c.network.num_channels);
            s.read("target_avg_degree", c.network.target_avg_degree);
            s.read("require_connected", c.network.require_connected);
        });
        root.section("protocol", [&](Section& s) {
            s.read("r", c.protocol.radius);
            s.read("D", c.protocol.max_mini_rounds);
            s.read("epsilon", c.protocol.epsilon);
        });
        root.section("channels", [&](Section& s) {
            s.read("rate_table_kbps", c.channels.rate_table_kbps);
            s.read("sigma", c.channels.sigma);
            s.read("max_rate_kbps", c.channels.max_rate_kbps);
        });
        root.section("timing", [&](Section& s) {
            s.read("t_b_ms", c.timing.broadcast_ms);
            s.read("t_l_ms", c.timing.computation_ms);
            s.read("t_d_ms", c.timing.transmission_ms);
            s.read("decision_mini_rounds", c.timing.decision_mini_rounds);
            s.read_enum("decision_rule", c.timing.rule, kRuleNames);
            s.read("y", c.timing.period_slots);
        });
        root.section("run", [&](Section& s) {
            s.read("horizon", c.run.horizon);
            s.read("seeds", c.run.seeds);
            s.read_enum("policy", c.run.policy, kPolicyNames);
            s.read_enum("solver", c.run.solver, kSolverNames);
            s.read("threads", c.run.threads);
        });
        root.section("output", [&](Section& s) {
            s.read("directory", c.output.directory);
            s.read("formats", c.output.formats);
            s.read("record_every", c.output.record_every);
        });
        root.section("convergence", [&](Section& s) {
            s.read("cases", c.convergence.cases);
            s.read("seeds", c.convergence.seeds);
        });
        root.section("periodic", [&](Section& s) {
            s.read("periods", c.periodic.periods);
            s.read("updates", c.periodic.updates);
            s.read("num_nodes", c.periodic.num_nodes);
            s.read("num_channels", c.periodic.num_channels);
            s.read("seeds", c.periodic.seeds);
        });
        root.section("bench", [&](Section& s) {
            s.read("instances", c.bench.instances);
            s.read("max_nodes", c.bench.max_nodes);
            s.read("max_channels", c.bench.max_channels);
            s.read("epsilons", c.bench.epsilons);
            s.read("base_seed", c.bench.base_seed);
        });
        root.finish();
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    auto rule = c.timing.rule == DecisionSlotRule::Fixed ? "fixed" : "per_mini_round";
    json doc = {
        {"network",
         {{"num_nodes", c.network.num_nodes},
          {"num_channels", c.network.num_channels},
          {"target_avg_degree", c.network.target_avg_degree},
          {"require_connected", c.network.require_connected}}},
        {"protocol", {{"r", c.protocol.radius}, {"D", c.protocol.max_mini_rounds}, {"epsilon", c.protocol.epsilon}}},
        {"channels",
         {{"rate_table_kbps", c.channels.rate_table_kbps},
          {"sigma", c.channels.sigma},
          {"max_rate_kbps", c.channels.max_rate_kbps}}},
        {"timing",
         {{"t_b_ms", c.timing.broadcast_ms},
          {"t_l_ms", c.timing.computation_ms},
          {"t_d_ms", c.timing.transmission_ms},
          {"decision_mini_rounds", c.timing.decision_mini_rounds},
          {"decision_rule", rule},
          {"y", c.timing.period_slots}}},
        {"run",
         {{"horizon", c.run.horizon},
          {"seeds", c.run.seeds},
          {"policy", to_string(c.run.policy)},
          {"solver", to_string(c.run.solver)},
          {"threads", c.run.threads}}},
        {"output",
         {{"directory", c.output.directory}, {"formats", c.output.formats}, {"record_every", c.output.record_every}}},
        {"convergence", {{"cases", c.convergence.cases}, {"seeds", c.convergence.seeds}}},
        {"periodic",
         {{"periods", c.periodic.periods},
          {"updates", c.periodic.updates},
          {"num_nodes", c.periodic.num_nodes},
          {"num_channels", c.periodic.num_channels},
          {"seeds", c.periodic.seeds}}},
        {"bench",
         {{"instances", c.bench.instances},
          {"max_nodes", c.bench.max_nodes},
          {"max_channels", c.bench.max_channels},
          {"epsilons", c.bench.epsilons},
          {"base_seed", c.bench.base_seed}}},
    };
    return doc.dump(2);
}

void validate(const ExperimentConfig& c) {
    require(c.network.num_nodes >= 1, "network.num_nodes", "must be at least 1");
    require(c.network.num_channels >= 1, "network.num_channels", "must be at least 1");
    require(c.network.target_avg_degree > 0.0, "network.target_avg_degree", "must be positive");
    require(c.protocol.radius >= 1, "protocol.r", "must be at least 1");
    require(c.protocol.max_mini_rounds >= 1, "protocol.D", "must be at least 1");
    require(c.protocol.epsilon > 0.0, "protocol.epsilon", "must be positive");
    require(!c.channels.rate_table_kbps.empty(), "channels.rate_table_kbps", "must not be empty");
    require(c.channels.sigma >= 0.0, "channels.sigma", "must be non-negative");
    require(c.channels.max_rate_kbps > 0.0, "channels.max_rate_kbps", "must be positive");
    for (double rate : c.channels.rate_table_kbps) {
        require(rate >= 0.0 && rate <= c.channels.max_rate_kbps, "channels.rate_table_kbps",
                "every rate must lie in [0, max_rate_kbps]");
    }
    require(c.timing.broadcast_ms >= 0.0, "timing.t_b_ms", "must be non-negative");
    require(c.timing.computation_ms >= 0.0, "timing.t_l_ms", "must be non-negative");
    require(c.timing.transmission_ms >= 0.0, "timing.t_d_ms", "must be non-negative");
    require(c.timing.round_ms() > 0.0, "timing", "round length must be positive");
    require(c.timing.period_slots >= 1, "timing.y", "must be at least 1");
    require(c.run.horizon >= 1, "run.horizon", "must be at least 1");
    require(!c.run.seeds.empty(), "run.seeds", "needs at least one seed");
    require(c.output.record_every >= 1, "output.record_every", "must be at least 1");
    for (const auto& f : c.output.formats) require(f == "csv", "output.formats", "only 'csv' is supported");
    require(!c.convergence.seeds.empty(), "convergence.seeds", "needs at least one seed");
    for (const auto& [n, m] : c.convergence.cases) {
        require(n >= 1 && m >= 1, "convergence.cases", "every case needs N >= 1 and M >= 1");
    }
    require(!c.periodic.periods.empty(), "periodic.periods", "needs at least one period length");
    for (std::size_t y : c.periodic.periods) require(y >= 1, "periodic.periods", "every y must be at least 1");
    require(c.periodic.updates >= 1, "periodic.updates", "must be at least 1");
    require(c.periodic.num_nodes >= 1, "periodic.num_nodes", "must be at least 1");
    require(c.periodic.num_channels >= 1, "periodic.num_channels", "must be at least 1");
    require(!c.periodic.seeds.empty(), "periodic.seeds", "needs at least one seed");
    require(c.bench.instances >= 1, "bench.instances", "must be at least 1");
    require(c.bench.max_nodes >= 1, "bench.max_nodes", "must be at least 1");
    require(c.bench.max_channels >= 1, "bench.max_channels", "must be at least 1");
    require(c.bench.max_nodes * c.bench.max_channels <= kExactSizeGuard, "bench",
            "max_nodes * max_channels exceeds the exact-solver guard");
    require(!c.bench.epsilons.empty(), "bench.epsilons", "needs at least one epsilon");
    for (double e : c.bench.epsilons) require(e > 0.0, "bench.epsilons", "every epsilon must be positive");
}

}  // namespace crn
