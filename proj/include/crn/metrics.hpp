#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crn/graph_model.hpp"
#include "crn/mwis.hpp"
#include "crn/timing.hpp"

namespace crn {

/// R_1: weight of an exact MWIS of H under the true means (normalized units).
double oracle_optimum(const ExtendedGraph& h, std::span<const double> true_means,
                      std::size_t size_guard = kExactSizeGuard);

/// Per-round contributions to the four regret series.
struct RegretStep {
    double regret = 0.0;                  // R_1 - R_x(t)
    double beta_regret = 0.0;             // R_1 / beta - R_x(t)
    double practical_regret = 0.0;        // R_1 - theta R_x(t)
    double practical_beta_regret = 0.0;   // R_1 / beta - theta R_x(t)
};

RegretStep regret_step(double optimum, double observed, double beta, double theta);

/// Cumulative regret series for one run.
class RegretSeries {
public:
    RegretSeries(double optimum, double beta, double theta);

    const RegretStep& add(double observed);

    double optimum() const { return optimum_; }
    double beta() const { return beta_; }
    double theta() const { return theta_; }
    std::size_t rounds() const { return cumulative_.size(); }
    const RegretStep& at(std::size_t round_index) const { return cumulative_.at(round_index); }
    const RegretStep& back() const { return cumulative_.back(); }

private:
    double optimum_;
    double beta_;
    double theta_;
    std::vector<RegretStep> cumulative_;
};

struct PeriodicSeries {
    std::vector<double> actual;              // R_P(z)
    std::vector<double> estimated;           // W_P(z)
    std::vector<double> actual_running;      // running average of R_P
    std::vector<double> estimated_running;   // running average of W_P
    std::size_t dropped_slots = 0;           // incomplete final period
};

/// Groups slots into periods of y = timing.period_slots. `observed[t]` is R_x of
/// slot t, `estimated[t]` the estimated strategy weight W_x at slot t (only the
/// first slot of every period is read). The first slot of a period pays the
/// decision overhead and delivers t_d worth of data; the rest deliver t_a.
PeriodicSeries periodic_throughput(std::span<const double> observed, std::span<const double> estimated,
                                   const TimingModel& timing);

}  // namespace crn
