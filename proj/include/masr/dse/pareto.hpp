#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace masr::dse {

struct ParetoPoint {
  std::string id;
  double cycles = 0.0;
  double energy = 0.0;
  double area = 0.0;
  bool dominated = false;
};

enum class Objective { energy, area };

/// True if `a` is no worse than `b` in cycles and the objective, and better in one.
[[nodiscard]] bool dominates(const ParetoPoint& a, const ParetoPoint& b, Objective obj) noexcept;

/// Sets `dominated` on every point for the (cycles, objective) pair. Exact ties keep the
/// point with the smallest id, so the result does not depend on input order.
void mark_front(std::span<ParetoPoint> points, Objective obj);

/// Non-dominated points sorted by ascending cycles (ties by id).
[[nodiscard]] std::vector<ParetoPoint> pareto_front(std::vector<ParetoPoint> points, Objective obj);

}  // namespace masr::dse
