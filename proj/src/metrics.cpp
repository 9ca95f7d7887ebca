#include "crn/metrics.hpp"

#include <numeric>
#include <stdexcept>

namespace crn {

double oracle_optimum(const ExtendedGraph& h, std::span<const double> true_means, std::size_t size_guard) {
    std::vector<VertexId> all(h.num_vertices());
    std::iota(all.begin(), all.end(), VertexId{0});
    return exact_mwis(h, all, true_means, size_guard).total_weight;
}

RegretStep regret_step(double optimum, double observed, double beta, double theta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    return {optimum - observed, optimum / beta - observed, optimum - theta * observed,
            optimum / beta - theta * observed};
}

RegretSeries::RegretSeries(double optimum, double beta, double theta)
    : optimum_(optimum), beta_(beta), theta_(theta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
}

const RegretStep& RegretSeries::add(double observed) {
    const RegretStep step = regret_step(optimum_, observed, beta_, theta_);
    RegretStep sum = cumulative_.empty() ? RegretStep{} : cumulative_.back();
    sum.regret += step.regret;
    sum.beta_regret += step.beta_regret;
    sum.practical_regret += step.practical_regret;
    sum.practical_beta_regret += step.practical_beta_regret;
    cumulative_.push_back(sum);
    return cumulative_.back();
}

PeriodicSeries periodic_throughput(std::span<const double> observed, std::span<const double> estimated,
                                   const TimingModel& timing) {
    timing.validate();
    if (observed.size() != estimated.size()) throw std::invalid_argument("observed/estimated length mismatch");
    const std::size_t y = timing.period_slots;
    const double ta = timing.round_ms();
    const double td = timing.transmission_ms;
    const auto yd = static_cast<double>(y);

    PeriodicSeries out;
    const std::size_t periods = observed.size() / y;
    out.dropped_slots = observed.size() - periods * y;
    double actual_sum = 0.0;
    double estimated_sum = 0.0;
    for (std::size_t z = 0; z < periods; ++z) {
        const std::size_t first = z * y;
        double delivered = observed[first] * td;
        for (std::size_t t = first + 1; t < first + y; ++t) delivered += observed[t] * ta;
        const double rp = delivered / (yd * ta);
        const double wp = ((yd - 1.0) * ta + td) * estimated[first] / (yd * ta);
        out.actual.push_back(rp);
        out.estimated.push_back(wp);
        // Running averages: ((z-1) avg + x) / z, kept as sums to avoid drift.
        actual_sum += rp;
        estimated_sum += wp;
        out.actual_running.push_back(actual_sum / static_cast<double>(z + 1));
        out.estimated_running.push_back(estimated_sum / static_cast<double>(z + 1));
    }
    return out;
}

}  // namespace crn
