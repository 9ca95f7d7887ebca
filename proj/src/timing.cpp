#include "crn/timing.hpp"

#include <stdexcept>

namespace crn {

double TimingModel::periodic_fraction(std::size_t y) const {
    if (y == 0) throw std::invalid_argument("period must contain at least one slot");
    const double ta = round_ms();
    const auto yd = static_cast<double>(y);
    return ((yd - 1.0) * ta + transmission_ms) / (yd * ta);
}

void TimingModel::validate() const {
    if (!(broadcast_ms >= 0.0) || !(computation_ms >= 0.0))
        throw std::invalid_argument("timing: t_b and t_l must be non-negative");
    if (!(transmission_ms >= 0.0)) throw std::invalid_argument("timing: t_d must be non-negative");
    if (!(round_ms() > 0.0)) throw std::invalid_argument("timing: round length must be positive");
    if (period_slots == 0) throw std::invalid_argument("timing: y must be at least 1");
}

}  // namespace crn
