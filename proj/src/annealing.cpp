#include "basket/annealing.hpp"

#include <cmath>
#include <stdexcept>

namespace basket {

namespace {

double reflect_into(double v, double lo, double hi) {
  if (lo == hi) return lo;
  // Fold the real line onto [lo, hi] like a ray bouncing between mirrors.
  const double width = hi - lo;
  double t = std::fmod(v - lo, 2.0 * width);
  if (t < 0.0) t += 2.0 * width;
  return t <= width ? lo + t : hi - (t - width);
}

}  // namespace

AnnealResult anneal_minimize(const std::function<double(double, double)>& objective,
                             const Box2& bounds, RngState& rng,
                             const AnnealSchedule& schedule,
                             std::optional<std::pair<double, double>> start) {
  if (!(bounds.x_lo <= bounds.x_hi && bounds.y_lo <= bounds.y_hi)) {
    throw std::invalid_argument("anneal_minimize: malformed bounds");
  }
  const double width_x = bounds.x_hi - bounds.x_lo;
  const double width_y = bounds.y_hi - bounds.y_lo;

  double x = start ? start->first : 0.5 * (bounds.x_lo + bounds.x_hi);
  double y = start ? start->second : 0.5 * (bounds.y_lo + bounds.y_hi);
  x = reflect_into(x, bounds.x_lo, bounds.x_hi);
  y = reflect_into(y, bounds.y_lo, bounds.y_hi);

  double current = objective(x, y);
  AnnealResult best{x, y, current};

  double temp = schedule.initial_temp;
  for (int level = 0; level < schedule.levels; ++level) {
    const double scale =
        schedule.step_fraction * std::pow(temp / schedule.initial_temp, schedule.step_power);
    const double sigma_x = scale * width_x;
    const double sigma_y = scale * width_y;
    for (int k = 0; k < schedule.proposals_per_level; ++k) {
      const double cand_x = reflect_into(x + sigma_x * rng.normal(), bounds.x_lo, bounds.x_hi);
      const double cand_y = reflect_into(y + sigma_y * rng.normal(), bounds.y_lo, bounds.y_hi);
      const double value = objective(cand_x, cand_y);
      const double delta = value - current;
      if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temp)) {
        x = cand_x;
        y = cand_y;
        current = value;
        if (value < best.value) best = {x, y, value};
      }
    }
    temp *= schedule.cooling;
  }
  return best;
}

}  // namespace basket
