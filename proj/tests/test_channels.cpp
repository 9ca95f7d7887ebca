#include <doctest.h>

#include <cmath>

#include "crn/channels.hpp"

using namespace crn;

TEST_CASE("channel means come from the rate table") {
    auto model = ChannelModel::random(kDefaultRateTable, 1350.0, 0.1, 15, 3, 7);
    CHECK(model.num_arms() == 45);
    for (NodeId i = 0; i < 15; ++i) {
        for (ChannelId j = 0; j < 3; ++j) {
            const double mean = model.true_mean(i, j);
            CHECK(mean == kDefaultRateTable[model.channel_type(i, j)] / 1350.0);
            CHECK(model.true_mean(static_cast<VertexId>(i * 3 + j)) == mean);
        }
    }
    CHECK(model.to_kbps(1.0) == 1350.0);
    auto again = ChannelModel::random(kDefaultRateTable, 1350.0, 0.1, 15, 3, 7);
    CHECK(again.true_means() == model.true_means());
}

TEST_CASE("channel model validation") {
    CHECK_THROWS(ChannelModel({}, 1.0, 0.1, 1, 1, {0}));
    CHECK_THROWS(ChannelModel({1.0}, 1.0, -0.1, 1, 1, {0}));
    CHECK_THROWS(ChannelModel({1.0}, 1.0, 0.1, 1, 2, {0}));
    CHECK_THROWS(ChannelModel({2.0}, 1.0, 0.1, 1, 1, {0}));
    CHECK_THROWS(ChannelModel({1.0}, 1.0, 0.1, 1, 1, {3}));
}

TEST_CASE("noise-free samples equal the mean") {
    ChannelModel model({300, 600}, 1200, 0.0, 2, 1, {0, 1});
    ChannelSampler sampler(model, 3);
    for (int i = 0; i < 10; ++i) {
        CHECK(sampler.sample(0, 0) == 0.25);
        CHECK(sampler.sample(VertexId{1}) == 0.5);
    }
}

TEST_CASE("Monte Carlo sample mean and variance") {
    ChannelModel model({600}, 1200, 0.1, 1, 1, {0});
    ChannelSampler sampler(model, 99);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sampler.sample(VertexId{0});
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 5 * 0.1 / std::sqrt(n));
    CHECK(var == doctest::Approx(0.01).epsilon(0.02));
}

TEST_CASE("per-pair streams do not interact") {
    ChannelModel model(kDefaultRateTable, 1350, 0.1, 3, 2,
                       std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
    ChannelSampler a(model, 5);
    ChannelSampler b(model, 5);
    std::vector<double> all;
    for (int i = 0; i < 50; ++i) {
        a.sample_all(all);
        REQUIRE(all.size() == 6);
        CHECK(b.sample(VertexId{4}) == all[4]);
    }
    ChannelSampler c(model, 6);
    CHECK(c.sample(VertexId{4}) != ChannelSampler(model, 5).sample(VertexId{4}));
}
