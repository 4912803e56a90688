#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "basket/rng.hpp"

namespace basket {

// Geometric cooling schedule with temperature-scaled Gaussian steps.
struct AnnealSchedule {
  double initial_temp = 10.0;
  double cooling = 0.95;
  int levels = 200;
  int proposals_per_level = 50;
  // Proposal sigma per axis = step_fraction * (T/T0)^step_power * axis width.
  double step_fraction = 0.5;
  double step_power = 0.75;
};

struct Box2 {
  double x_lo, x_hi;
  double y_lo, y_hi;
};

struct AnnealResult {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

// Simulated annealing over a 2-D box: Metropolis acceptance exp(-delta/T) on
// increases, proposals reflected back into the box, best visited point kept.
// Fully deterministic given the RngState.
AnnealResult anneal_minimize(const std::function<double(double, double)>& objective,
                             const Box2& bounds, RngState& rng,
                             const AnnealSchedule& schedule = {},
                             std::optional<std::pair<double, double>> start = std::nullopt);

}  // namespace basket
