#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crn/graph_model.hpp"
#include "crn/learning.hpp"
#include "crn/mwis.hpp"

using namespace crn;

TEST_CASE("update folds observations into running means") {
    PolicyState s(3);
    s.update(std::vector<VertexId>{0}, std::vector<double>{0.5});
    s.update(std::vector<VertexId>{0}, std::vector<double>{1.0});
    CHECK(s.empirical_mean(0) == doctest::Approx(0.75));
    CHECK(s.play_count(0) == 2);
    CHECK(s.play_count(1) == 0);
    CHECK(s.round() == 2);

    s.update(std::vector<VertexId>{}, std::vector<double>{});
    CHECK(s.round() == 3);
    CHECK(s.empirical_mean(0) == doctest::Approx(0.75));

    PolicyState seq(1);
    for (double x : {0.2, 0.4, 0.6}) seq.update(std::vector<VertexId>{0}, std::vector<double>{x});
    CHECK(seq.empirical_mean(0) == doctest::Approx(0.4).epsilon(1e-15));

    CHECK_THROWS(s.update(std::vector<VertexId>{1}, std::vector<double>{}));
    CHECK_THROWS(s.update(std::vector<VertexId>{5}, std::vector<double>{0.1}));
    CHECK_THROWS(s.update(std::vector<VertexId>{1, 1}, std::vector<double>{0.1, 0.2}));
    CHECK_THROWS(s.update(std::vector<VertexId>{1}, std::vector<double>{1.5}));
    CHECK(s.round() == 3);  // rejected updates leave the state alone
}

TEST_CASE("proposed index") {
    PolicyState s(9);
    s.update(std::vector<VertexId>{0}, std::vector<double>{0.5});
    auto w = compute_index(s, 1000.0);
    // 1000^(2/3) / 9 = 100 / 9.
    const long double expect = 0.5L + std::sqrt(std::log(100.0L / 9.0L));
    CHECK(w[0] == doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
    // 30-digit evaluation: 2.05175565365552059...
    CHECK(w[0] == doctest::Approx(2.0517556536555206).epsilon(1e-14));
    CHECK(w[1] == kUnplayedIndex);

    // Clamp: t^(2/3) <= K m gives the bare mean.
    auto early = compute_index(s, 27.0);  // 27^(2/3) = 9 = K m
    CHECK(early[0] == 0.5);
    CHECK_THROWS(compute_index(s, 0.0));
}

TEST_CASE("proposed index is non-increasing in m and never below the mean") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double t : {10.0, 1e3, 1e5, 1e7}) {
        PolicyState s(4);
        double previous = kUnplayedIndex;
        for (int m = 1; m <= 64; m *= 2) {
            while (s.play_count(0) < static_cast<std::uint64_t>(m)) s.update(std::vector<VertexId>{0}, std::vector<double>{0.5});
            auto w = compute_index(s, t);
            CHECK(w[0] <= previous);
            CHECK(w[0] >= s.empirical_mean(0));
            previous = w[0];
        }
    }
}

TEST_CASE("LLR index") {
    PolicyState s(2);
    s.update(std::vector<VertexId>{0}, std::vector<double>{0.5});
    CHECK(llr_index(s, std::numbers::e, 15)[0] == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(llr_index(s, std::numbers::e, 15)[1] == kUnplayedIndex);
    CHECK_THROWS(llr_index(s, 10.0, 0));
    for (int i = 0; i < 100000; ++i) s.update(std::vector<VertexId>{0}, std::vector<double>{0.5});
    const double m = 100001.0;
    CHECK(llr_index(s, 100.0, 15)[0] == doctest::Approx(0.5 + std::sqrt(16.0 * std::log(100.0) / m)));
    CHECK(llr_index(s, 100.0, 15)[0] - 0.5 < 0.03);
}

TEST_CASE("strategy selection") {
    auto one = build_extended_graph(ConflictGraph::from_positions({{0, 0}}, 2));
    ExactSolver exact;
    CHECK(select_strategy(one, std::vector<double>{0.3, 0.8}, exact) == Strategy{1});
    CHECK(select_strategy(one, std::vector<double>{0.0, 0.0}, exact).empty());

    PolicyState s(2);
    s.update(std::vector<VertexId>{1}, std::vector<double>{0.4});
    auto index = compute_index(s, 5.0);
    CHECK(estimated_weight(s, index, Strategy{1}) == doctest::Approx(index[1]));
    CHECK(estimated_weight(s, index, Strategy{0}) == 0.0);
}
