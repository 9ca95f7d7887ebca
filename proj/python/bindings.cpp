#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "crn/channels.hpp"
#include "crn/config.hpp"
#include "crn/experiments.hpp"
#include "crn/graph_model.hpp"
#include "crn/learning.hpp"
#include "crn/metrics.hpp"
#include "crn/mwis.hpp"
#include "crn/protocol.hpp"
#include "crn/timing.hpp"

namespace py = pybind11;
using namespace crn;

namespace {

std::vector<Point> to_points(const std::vector<std::pair<double, double>>& xy) {
    std::vector<Point> p;
    p.reserve(xy.size());
    for (auto [x, y] : xy) p.push_back({x, y});
    return p;
}

template <class Fn>
std::string csv_of(Fn&& write) {
    std::ostringstream out;
    write(out);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Distributed spectrum access: conflict graphs, MWIS solvers, bandit learning and experiments.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<ConflictGraph>(m, "ConflictGraph")
        .def(py::init([](const std::vector<std::pair<double, double>>& xy, std::size_t num_channels) {
                 return ConflictGraph::from_positions(to_points(xy), num_channels);
             }),
             py::arg("positions"), py::arg("num_channels"))
        .def_property_readonly("num_nodes", &ConflictGraph::num_nodes)
        .def_property_readonly("num_channels", &ConflictGraph::num_channels)
        .def_property_readonly("positions",
                               [](const ConflictGraph& g) {
                                   std::vector<std::pair<double, double>> xy;
                                   for (const auto& p : g.positions()) xy.emplace_back(p.x, p.y);
                                   return xy;
                               })
        .def("edges", &ConflictGraph::edges)
        .def("adjacent", &ConflictGraph::adjacent)
        .def("average_degree", &ConflictGraph::average_degree)
        .def("connected", &ConflictGraph::connected)
        .def("to_text", [](const ConflictGraph& g) { return csv_of([&](std::ostream& o) { write_graph(o, g); }); })
        .def_static("from_text", [](const std::string& text) {
            std::istringstream in(text);
            return read_graph(in);
        });

    m.def(
        "generate_random_network",
        [](std::size_t n, std::size_t channels, double degree, std::uint64_t seed, bool connected) {
            return generate_random_network({n, channels, degree, connected}, seed);
        },
        py::arg("num_nodes"), py::arg("num_channels"), py::arg("target_avg_degree"), py::arg("seed"),
        py::arg("require_connected") = true);

    py::class_<ExtendedGraph>(m, "ExtendedGraph")
        .def(py::init(&build_extended_graph), py::arg("graph"))
        .def_property_readonly("num_nodes", &ExtendedGraph::num_nodes)
        .def_property_readonly("num_channels", &ExtendedGraph::num_channels)
        .def_property_readonly("num_vertices", &ExtendedGraph::num_vertices)
        .def("vertex", &ExtendedGraph::vertex, py::arg("node"), py::arg("channel"))
        .def("arm", [](const ExtendedGraph& h, VertexId v) {
            auto a = h.arm(v);
            return std::make_pair(a.node, a.channel);
        })
        .def("neighbors", [](const ExtendedGraph& h, VertexId v) {
            auto n = h.neighbors(v);
            return std::vector<VertexId>(n.begin(), n.end());
        })
        .def("adjacent", &ExtendedGraph::adjacent)
        .def("num_edges", &ExtendedGraph::num_edges);

    m.def(
        "r_hop_neighborhood",
        [](const ExtendedGraph& h, VertexId center, std::size_t radius) {
            return r_hop_neighborhood(h, center, radius).members;
        },
        py::arg("h"), py::arg("center"), py::arg("radius"));
    m.def("independence_check", [](const ExtendedGraph& h, const std::vector<VertexId>& s) {
        return independence_check(h, s);
    });

    py::class_<MwisResult>(m, "MwisResult")
        .def_readonly("members", &MwisResult::members)
        .def_readonly("total_weight", &MwisResult::total_weight);
    m.def(
        "exact_mwis",
        [](const ExtendedGraph& h, const std::vector<double>& w, std::optional<std::vector<VertexId>> subset,
           std::size_t guard) {
            std::vector<VertexId> all;
            if (subset) {
                all = *subset;
            } else {
                for (VertexId v = 0; v < h.num_vertices(); ++v) all.push_back(v);
            }
            return exact_mwis(h, all, w, guard);
        },
        py::arg("h"), py::arg("weights"), py::arg("subset") = py::none(), py::arg("size_guard") = kExactSizeGuard);
    m.def(
        "robust_ptas", [](const ExtendedGraph& h, const std::vector<double>& w, double eps) {
            return robust_ptas(h, w, eps);
        },
        py::arg("h"), py::arg("weights"), py::arg("epsilon"));

    py::class_<PolicyState>(m, "PolicyState")
        .def(py::init<std::size_t>(), py::arg("num_arms"))
        .def_property_readonly("round", &PolicyState::round)
        .def_property_readonly("empirical_means", &PolicyState::empirical_means)
        .def_property_readonly("play_counts", &PolicyState::play_counts)
        .def("update", [](PolicyState& s, const std::vector<VertexId>& played, const std::vector<double>& obs) {
            s.update(played, obs);
        });
    m.def("compute_index", &compute_index, py::arg("state"), py::arg("t"));
    m.def("llr_index", &llr_index, py::arg("state"), py::arg("t"), py::arg("max_strategy_size"));
    m.attr("UNPLAYED_INDEX") = kUnplayedIndex;

    py::class_<ProtocolConfig>(m, "ProtocolConfig")
        .def(py::init([](std::size_t r, std::size_t d, double eps) { return ProtocolConfig{r, d, eps}; }),
             py::arg("r") = 2, py::arg("D") = 5, py::arg("epsilon") = 0.5)
        .def_readwrite("r", &ProtocolConfig::radius)
        .def_readwrite("D", &ProtocolConfig::max_mini_rounds)
        .def_readwrite("epsilon", &ProtocolConfig::epsilon);

    py::class_<DistributedAccess>(m, "DistributedAccess")
        .def(py::init<const ExtendedGraph&, ProtocolConfig>(), py::arg("h"), py::arg("config"), py::keep_alive<1, 2>())
        .def(
            "decide_strategy",
            [](const DistributedAccess& a, const std::vector<double>& w, std::optional<std::size_t> d) {
                auto views = a.initial_views(w);
                auto dec = d ? a.decide_strategy(views, *d) : a.decide_strategy(views);
                py::dict out;
                out["winners"] = dec.winners;
                out["weight_after_mini_round"] = dec.weight_after_mini_round;
                out["mini_rounds_used"] = dec.costs.mini_rounds_used;
                out["max_messages"] = dec.costs.max_messages();
                out["truncated_candidates"] = dec.truncated_candidates;
                return out;
            },
            py::arg("weights"), py::arg("max_mini_rounds") = py::none());

    py::class_<TimingModel>(m, "TimingModel")
        .def(py::init<>())
        .def_readwrite("t_b_ms", &TimingModel::broadcast_ms)
        .def_readwrite("t_l_ms", &TimingModel::computation_ms)
        .def_readwrite("t_d_ms", &TimingModel::transmission_ms)
        .def_readwrite("y", &TimingModel::period_slots)
        .def_property_readonly("t_m_ms", &TimingModel::mini_round_ms)
        .def_property_readonly("t_a_ms", &TimingModel::round_ms)
        .def_property_readonly("theta", &TimingModel::theta)
        .def("periodic_fraction", &TimingModel::periodic_fraction);

    m.def(
        "regret_step",
        [](double r1, double observed, double beta, double theta) {
            auto s = regret_step(r1, observed, beta, theta);
            return py::make_tuple(s.regret, s.beta_regret, s.practical_regret, s.practical_beta_regret);
        },
        py::arg("optimum"), py::arg("observed"), py::arg("beta"), py::arg("theta"));
    m.def("oracle_optimum", [](const ExtendedGraph& h, const std::vector<double>& mu) { return oracle_optimum(h, mu); });

    m.def("default_config", [] { return serialize_config(ExperimentConfig{}); });
    m.def("normalize_config", [](const std::string& text) { return serialize_config(parse_config(text)); });
    m.def(
        "run_suite",
        [](const std::string& suite, const std::string& config_text) {
            const auto c = parse_config(config_text);
            py::gil_scoped_release release;
            if (suite == "convergence")
                return csv_of([&](std::ostream& o) { write_convergence_csv(o, run_convergence_suite(c)); });
            if (suite == "regret")
                return csv_of([&](std::ostream& o) { write_regret_csv(o, run_regret_suite(c), c.output.record_every); });
            if (suite == "periodic")
                return csv_of([&](std::ostream& o) { write_periodic_csv(o, run_periodic_suite(c)); });
            if (suite == "mwis-bench")
                return csv_of([&](std::ostream& o) { write_bench_csv(o, run_mwis_bench(c)); });
            throw std::invalid_argument("unknown suite '" + suite + "'");
        },
        py::arg("suite"), py::arg("config") = "{}");
}
